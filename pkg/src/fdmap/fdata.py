"""Functional data containers and quadrature-weighted L2 geometry.

Two representations are supported and accepted everywhere downstream:

* :class:`DiscretizedDataset` -- curves sampled on a shared grid, with
  quadrature weights turning sums into integrals.
* :class:`BasisDataset` -- coefficient vectors in a :class:`~fdmap.basis.Basis`,
  with the Gram matrix acting as the metric.

A plain 2-D array is treated as multivariate data with unit weights, which is
how classical (non-functional) diffusion maps are run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.spatial.distance import cdist

from .basis import Basis
from .exceptions import (DimensionError, InvalidGridError,
                         RepresentationMismatchError, SingularFitError)

#: Size of the uniform grid used for L1 distances between basis curves.
L1_GRID_SIZE = 512


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def trapezoidal_weights(points) -> np.ndarray:
    """Composite trapezoid weights for an increasing, possibly uneven grid.

    >>> trapezoidal_weights([0, 1, 3]).tolist()
    [0.5, 1.5, 1.0]
    """
    t = np.asarray(points, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise InvalidGridError("a grid needs at least two points")
    h = np.diff(t)
    if not np.all(h > 0) or not np.all(np.isfinite(t)):
        raise InvalidGridError("grid points must be finite and strictly increasing")
    w = np.zeros_like(t)
    w[:-1] += h / 2
    w[1:] += h / 2
    return w


@dataclass(frozen=True, eq=False)
class SamplingGrid:
    """Evaluation points shared by all curves, with quadrature weights."""

    points: np.ndarray
    weights: np.ndarray = None

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        # validates ordering even when weights are given
        default = trapezoidal_weights(points)
        weights = default if self.weights is None else np.asarray(self.weights, float)
        if weights.shape != points.shape:
            raise InvalidGridError("weights and points differ in length")
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise InvalidGridError("quadrature weights must be finite and nonnegative")
        object.__setattr__(self, "points", _frozen(points))
        object.__setattr__(self, "weights", _frozen(weights))

    @classmethod
    def uniform(cls, start, stop, n_points):
        return cls(np.linspace(start, stop, n_points))

    @classmethod
    def unit(cls, n_points):
        """Grid ``0..n_points-1`` with unit weights (plain Euclidean metric)."""
        return cls(np.arange(n_points, dtype=float), np.ones(n_points))

    def __len__(self):
        return self.points.size

    @property
    def domain(self):
        return float(self.points[0]), float(self.points[-1])

    def __eq__(self, other):
        return (isinstance(other, SamplingGrid)
                and np.array_equal(self.points, other.points)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None


def _check_values(values, n_cols=None, what="values"):
    values = np.array(values, dtype=float, ndmin=2)
    if values.ndim != 2:
        raise DimensionError(f"{what} must be a 2-D array")
    if n_cols is not None and values.shape[1] != n_cols:
        raise DimensionError(
            f"{what} has {values.shape[1]} columns, expected {n_cols}")
    if not np.all(np.isfinite(values)):
        raise DimensionError(f"{what} contains non-finite entries")
    return _frozen(values)


def _check_labels(labels, n):
    if labels is None:
        return None
    labels = np.asarray(labels)
    if labels.shape != (n,):
        raise DimensionError(f"expected {n} labels, got shape {labels.shape}")
    labels = labels.copy()
    labels.setflags(write=False)
    return labels


@dataclass(frozen=True, eq=False)
class DiscretizedDataset:
    """N curves sampled on a common grid; row ``i`` is ``x_i(t_1..t_M)``."""

    grid: SamplingGrid
    values: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        grid = self.grid
        if not isinstance(grid, SamplingGrid):
            grid = SamplingGrid(grid)
            object.__setattr__(self, "grid", grid)
        values = _check_values(self.values, len(grid))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", _check_labels(self.labels, len(values)))

    @property
    def n_samples(self):
        return self.values.shape[0]

    def __len__(self):
        return self.n_samples

    def curve(self, i):
        return self.values[i]

    def subset(self, index):
        labels = None if self.labels is None else self.labels[index]
        return DiscretizedDataset(self.grid, self.values[index], labels)

    def truncate(self, n_points):
        """Keep only the first ``n_points`` samples of every curve."""
        if not 2 <= n_points <= len(self.grid):
            raise DimensionError(f"cannot truncate to {n_points} points")
        pts = self.grid.points[:n_points]
        return DiscretizedDataset(SamplingGrid(pts), self.values[:, :n_points],
                                  self.labels)


@dataclass(frozen=True, eq=False)
class BasisDataset:
    """N curves ``x_i(t) = c_i^T phi(t)`` stored as an N x K coefficient matrix."""

    basis: Basis
    coefficients: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        coefs = _check_values(self.coefficients, self.basis.n_basis, "coefficients")
        object.__setattr__(self, "coefficients", coefs)
        object.__setattr__(self, "labels", _check_labels(self.labels, len(coefs)))

    @property
    def n_samples(self):
        return self.coefficients.shape[0]

    def __len__(self):
        return self.n_samples

    def curve(self, i):
        return self.coefficients[i]

    def subset(self, index):
        labels = None if self.labels is None else self.labels[index]
        return BasisDataset(self.basis, self.coefficients[index], labels)

    def evaluate(self, points) -> np.ndarray:
        """Curve values at ``points``, shape (N, len(points))."""
        return self.coefficients @ self.basis.evaluate(points).T

    def to_discretized(self, grid) -> DiscretizedDataset:
        if not isinstance(grid, SamplingGrid):
            grid = SamplingGrid(grid)
        return DiscretizedDataset(grid, self.evaluate(grid.points), self.labels)


FunctionalDataset = Union[DiscretizedDataset, BasisDataset]


def as_dataset(data) -> FunctionalDataset:
    """Wrap a plain array as multivariate data (unit weights); pass datasets through."""
    if isinstance(data, (DiscretizedDataset, BasisDataset)):
        return data
    values = np.array(data, dtype=float, ndmin=2)
    return DiscretizedDataset(SamplingGrid.unit(values.shape[1]), values)


def same_representation(a: FunctionalDataset, b: FunctionalDataset) -> bool:
    if isinstance(a, DiscretizedDataset) and isinstance(b, DiscretizedDataset):
        return a.grid == b.grid
    if isinstance(a, BasisDataset) and isinstance(b, BasisDataset):
        return a.basis == b.basis
    return False


def gram_matrix(basis: Basis) -> np.ndarray:
    """Inner products ``int phi_k phi_l`` over the basis domain (K x K)."""
    return np.array(basis.gram)


def _sym_sqrt(gram):
    evals, evecs = np.linalg.eigh(gram)
    evals = np.clip(evals, 0.0, None)
    return (evecs * np.sqrt(evals)) @ evecs.T


def _resolve(x, ds):
    if np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0):
        return ds.curve(int(x))
    x = np.asarray(x, dtype=float)
    width = (len(ds.grid) if isinstance(ds, DiscretizedDataset)
             else ds.basis.n_basis)
    if x.shape != (width,):
        raise RepresentationMismatchError(
            f"curve of shape {x.shape} does not match the dataset "
            f"representation of width {width}")
    return x


def l2_distance(x, y, ds: FunctionalDataset) -> float:
    """L2 distance between two curves of ``ds`` (indices or raw vectors)."""
    ds = as_dataset(ds)
    d = _resolve(x, ds) - _resolve(y, ds)
    if isinstance(ds, DiscretizedDataset):
        sq = np.sum(ds.grid.weights * d * d)
    else:
        sq = d @ ds.basis.gram @ d
    return float(np.sqrt(max(sq, 0.0)))


def l1_distance(x, y, ds: FunctionalDataset, n_points: int = L1_GRID_SIZE) -> float:
    """L1 distance; basis curves are compared on a uniform fine grid."""
    ds = as_dataset(ds)
    d = _resolve(x, ds) - _resolve(y, ds)
    if isinstance(ds, DiscretizedDataset):
        return float(np.sum(ds.grid.weights * np.abs(d)))
    t = ds.basis.fine_grid(n_points)
    diff = ds.basis.evaluate(t) @ d
    return float(np.sum(trapezoidal_weights(t) * np.abs(diff)))


def l2_embedding(ds: FunctionalDataset) -> np.ndarray:
    """Rows ``y_i`` with ``||y_i - y_j||_2`` equal to the L2 distance of curves."""
    ds = as_dataset(ds)
    if isinstance(ds, DiscretizedDataset):
        return ds.values * np.sqrt(ds.grid.weights)
    return ds.coefficients @ _sym_sqrt(ds.basis.gram)


def pairwise_distances(ds: FunctionalDataset, metric: str = "l2",
                       n_points: int = L1_GRID_SIZE) -> np.ndarray:
    """Full N x N matrix of L2 or L1 distances, exactly symmetric with zero diagonal."""
    ds = as_dataset(ds)
    if metric == "l2":
        y = l2_embedding(ds)
        dist = cdist(y, y, "euclidean")
    elif metric == "l1":
        if isinstance(ds, DiscretizedDataset):
            vals, w = ds.values, ds.grid.weights
        else:
            t = ds.basis.fine_grid(n_points)
            vals, w = ds.evaluate(t), trapezoidal_weights(t)
        # w >= 0, so w|x - y| = |wx - wy|
        y = vals * w
        dist = cdist(y, y, "cityblock")
    else:
        raise ValueError(f"unknown metric {metric!r}")
    dist = np.triu(dist, 1)
    return dist + dist.T


def smooth_to_basis(raw: DiscretizedDataset, basis: Basis) -> BasisDataset:
    """Weighted least-squares projection of sampled curves onto ``basis``.

    Minimizes ``sum_j w_j (x(t_j) - c^T phi(t_j))^2`` for every curve.
    """
    t = raw.grid.points
    a, b = basis.domain
    span = b - a
    if t[0] < a - 1e-12 * span or t[-1] > b + 1e-12 * span:
        raise RepresentationMismatchError(
            f"grid span [{t[0]}, {t[-1]}] exceeds basis domain [{a}, {b}]")
    k = basis.n_basis
    if k > len(t):
        raise SingularFitError(
            f"{basis!r} has more functions than the {len(t)} grid points")
    sw = np.sqrt(raw.grid.weights)
    design = basis.evaluate(t) * sw[:, None]
    rank = np.linalg.matrix_rank(design)
    if rank < k:
        raise SingularFitError(
            f"design matrix of {basis!r} on this grid has rank {rank} < {k}")
    coefs, *_ = np.linalg.lstsq(design, (raw.values * sw).T, rcond=None)
    return BasisDataset(basis, coefs.T, raw.labels)


def residual_norms(raw: DiscretizedDataset, fitted: BasisDataset) -> np.ndarray:
    """Quadrature L2 norm of ``raw - fitted`` for every curve."""
    resid = raw.values - fitted.evaluate(raw.grid.points)
    return np.sqrt(np.sum(raw.grid.weights * resid ** 2, axis=1))
