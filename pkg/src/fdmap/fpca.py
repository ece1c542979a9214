"""Functional principal component analysis.

Both routes reduce the functional eigenproblem to a symmetric matrix one,
``W^1/2 Sigma W^1/2 u = lambda u``, where ``W`` is the quadrature weight matrix
(discretized curves) or the basis Gram matrix (basis coefficients). Component
functions are ``W^-1/2 u`` and scores ``X W xi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .embedding import Embedding, fix_signs
from .exceptions import (DimensionError, NonInvertibleMetricError,
                         RepresentationMismatchError)
from .fdata import BasisDataset, DiscretizedDataset, same_representation

#: Metric eigenvalues below this fraction of the largest are treated as zero.
METRIC_FLOOR = 1e-12


def metric_roots(W):
    """Return ``(W^1/2, W^-1/2)`` of a symmetric positive-definite metric."""
    W = np.asarray(W, dtype=float)
    if W.ndim == 1:
        if np.any(W <= METRIC_FLOOR * W.max()):
            raise NonInvertibleMetricError("quadrature weights contain zeros")
        r = np.sqrt(W)
        return np.diag(r), np.diag(1.0 / r)
    evals, evecs = np.linalg.eigh(0.5 * (W + W.T))
    if evals[0] <= METRIC_FLOOR * max(evals[-1], 0.0):
        raise NonInvertibleMetricError(
            f"metric is not invertible (smallest eigenvalue {evals[0]:.3e}, "
            f"largest {evals[-1]:.3e})")
    r = np.sqrt(evals)
    return (evecs * r) @ evecs.T, (evecs / r) @ evecs.T


@dataclass(frozen=True, eq=False)
class FpcaModel:
    """Fitted principal components.

    Attributes
    ----------
    eigenvalues : ndarray, shape (L,)
    components : ndarray, shape (L, M) or (L, K)
        Discretized component functions or their basis coefficients.
    explained_variance_ratio : ndarray, shape (L,)
        Share of the total spectrum carried by each component.
    spectrum : ndarray
        Every eigenvalue of the weighted covariance, used for the ratios.
    mean : ndarray
        Mean curve (samples or coefficients) removed before fitting.
    metric : ndarray
        Quadrature weights (1-D) or Gram matrix (2-D).
    """

    eigenvalues: np.ndarray
    components: np.ndarray
    explained_variance_ratio: np.ndarray
    spectrum: np.ndarray
    mean: np.ndarray
    metric: np.ndarray
    reference: object
    scores: np.ndarray
    labels: Optional[np.ndarray] = None

    @property
    def n_components(self):
        return self.eigenvalues.size

    @property
    def cumulative_explained_variance(self):
        return np.cumsum(self.explained_variance_ratio)

    def _weighted(self, centered):
        if self.metric.ndim == 1:
            return centered * self.metric
        return centered @ self.metric

    def transform(self, ds) -> np.ndarray:
        """Scores of ``ds`` (same grid or basis as the fit), shape (N, L)."""
        if isinstance(self.reference, BasisDataset):
            ok = isinstance(ds, BasisDataset) and ds.basis == self.reference.basis
            data = getattr(ds, "coefficients", None)
        else:
            ok = (isinstance(ds, DiscretizedDataset)
                  and ds.grid == self.reference.grid)
            data = getattr(ds, "values", None)
        if not ok:
            raise RepresentationMismatchError(
                "dataset representation differs from the fitted one")
        return self._weighted(data - self.mean) @ self.components.T

    def reconstruct(self, scores) -> np.ndarray:
        """``mean + sum_l theta_l xi_l`` in the fitted representation."""
        scores = np.atleast_2d(scores)
        return self.mean + scores @ self.components[: scores.shape[1]]

    def components_on_grid(self, points) -> np.ndarray:
        """Component functions sampled at ``points``, shape (L, len(points))."""
        if isinstance(self.reference, BasisDataset):
            return self.components @ self.reference.basis.evaluate(points).T
        grid = self.reference.grid.points
        return np.array([np.interp(points, grid, c) for c in self.components])

    def embedding(self) -> Embedding:
        return Embedding(self.scores, "fpca", self.eigenvalues, self.labels,
                         {"explained_variance_ratio":
                          self.explained_variance_ratio.tolist()})


def _fit(data, metric, n_components, reference):
    n, width = data.shape
    if n < 2:
        raise DimensionError("FPCA needs at least two curves")
    if not 1 <= n_components <= min(n, width):
        raise DimensionError(
            f"n_components must lie in [1, {min(n, width)}], got {n_components}")
    mean = data.mean(axis=0)
    x = data - mean
    sigma = x.T @ x / n
    w_half, w_inv_half = metric_roots(metric)
    a = w_half @ sigma @ w_half
    evals, evecs = np.linalg.eigh(0.5 * (a + a.T))
    order = np.argsort(-evals, kind="stable")
    evals, evecs = evals[order], evecs[:, order]
    spectrum = np.clip(evals, 0.0, None)
    u, _ = fix_signs(evecs[:, :n_components])
    xi = (w_inv_half @ u).T
    total = spectrum.sum()
    ratio = spectrum[:n_components] / total if total > 0 else np.zeros(n_components)
    weighted = x * metric if metric.ndim == 1 else x @ metric
    scores = weighted @ xi.T
    return FpcaModel(eigenvalues=spectrum[:n_components], components=xi,
                     explained_variance_ratio=ratio, spectrum=spectrum,
                     mean=mean, metric=np.asarray(metric), reference=reference,
                     scores=scores, labels=reference.labels)


def fpca_discretized(ds: DiscretizedDataset, n_components=2) -> FpcaModel:
    """FPCA of sampled curves with the quadrature weights as metric."""
    return _fit(np.asarray(ds.values), np.asarray(ds.grid.weights), n_components, ds)


def fpca_basis(ds: BasisDataset, n_components=2) -> FpcaModel:
    """FPCA of basis coefficients with the basis Gram matrix as metric."""
    return _fit(np.asarray(ds.coefficients), np.array(ds.basis.gram), n_components, ds)


def fpca(ds, n_components=2) -> FpcaModel:
    if isinstance(ds, BasisDataset):
        return fpca_basis(ds, n_components)
    if isinstance(ds, DiscretizedDataset):
        return fpca_discretized(ds, n_components)
    raise TypeError(f"expected a functional dataset, got {type(ds).__name__}")


def fpca_scores(model: FpcaModel, ds) -> np.ndarray:
    return model.transform(ds)
