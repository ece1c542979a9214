"""Truncated function bases: B-splines, Fourier and closed-form systems.

Every basis exposes ``evaluate(points) -> (len(points), n_basis)`` and a cached
Gram matrix of pairwise inner products, computed by composite trapezoid
quadrature on an internal fine grid.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import BSpline

from .exceptions import BasisError

#: Number of points of the internal grid used for Gram matrices.
GRAM_GRID_SIZE = 10001


def _check_domain(domain):
    a, b = (float(v) for v in domain)
    if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
        raise BasisError(f"the interval [{a}, {b}] is not well-defined")
    return a, b


class Basis:
    """Base class for a finite function basis on a closed interval.

    Subclasses implement :meth:`_evaluate` and :meth:`to_dict`.
    """

    kind = "abstract"

    def __init__(self, domain=(0.0, 1.0), gram_grid_size=GRAM_GRID_SIZE):
        self.domain = _check_domain(domain)
        self.gram_grid_size = int(gram_grid_size)

    @property
    def n_basis(self) -> int:
        raise NotImplementedError

    def _evaluate(self, points: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, points) -> np.ndarray:
        """Evaluate every basis function at ``points``.

        Returns
        -------
        ndarray, shape (n_points, n_basis)
        """
        points = np.atleast_1d(np.asarray(points, dtype=float))
        a, b = self.domain
        span = b - a
        if points.min() < a - 1e-12 * span or points.max() > b + 1e-12 * span:
            raise BasisError(
                f"points outside the basis domain [{a}, {b}] for {self!r}")
        values = np.asarray(self._evaluate(np.clip(points, a, b)), dtype=float)
        if not np.all(np.isfinite(values)):
            raise BasisError(f"{self!r} produced non-finite values")
        return values

    def fine_grid(self, n_points=None) -> np.ndarray:
        a, b = self.domain
        return np.linspace(a, b, n_points or self.gram_grid_size)

    @cached_property
    def gram(self) -> np.ndarray:
        """Matrix of inner products ``<phi_k, phi_l>`` on the basis domain."""
        from .fdata import trapezoidal_weights

        t = self.fine_grid()
        phi = self.evaluate(t)
        w = trapezoidal_weights(t)
        g = phi.T @ (w[:, None] * phi)
        return 0.5 * (g + g.T)

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Basis) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    def __repr__(self):
        return f"{type(self).__name__}(domain={self.domain}, n_basis={self.n_basis})"


class BSplineBasis(Basis):
    """B-spline basis with uniform interior knots.

    ``order`` follows the classical FDA convention: order = degree + 1, so
    ``order=3`` gives piecewise quadratics. End knots are repeated ``order``
    times so the basis spans the whole domain.

    Parameters
    ----------
    domain : tuple of float
    n_basis : int
        Number of basis functions, at least ``order``.
    order : int
        Polynomial order (degree + 1).
    knots : array_like, optional
        Full knot vector of length ``n_basis + order``. Uniform if omitted.
    """

    kind = "bspline"

    def __init__(self, domain=(0.0, 1.0), n_basis=9, order=3, knots=None,
                 gram_grid_size=GRAM_GRID_SIZE):
        super().__init__(domain, gram_grid_size)
        order = int(order)
        n_basis = int(n_basis)
        if order < 1:
            raise BasisError("B-spline order must be at least 1")
        if n_basis < order:
            raise BasisError(
                f"a B-spline basis of order {order} needs at least {order} "
                f"functions, got {n_basis}")
        a, b = self.domain
        if knots is None:
            interior = np.linspace(a, b, n_basis - order + 2)[1:-1]
            knots = np.concatenate([np.full(order, a), interior, np.full(order, b)])
        knots = np.asarray(knots, dtype=float)
        if knots.size != n_basis + order or np.any(np.diff(knots) < 0):
            raise BasisError("knot vector must be nondecreasing with "
                             "n_basis + order entries")
        self.order = order
        self._n_basis = n_basis
        self.knots = knots

    @property
    def n_basis(self):
        return self._n_basis

    @property
    def degree(self):
        return self.order - 1

    def _evaluate(self, points):
        dm = BSpline.design_matrix(points, self.knots, self.degree,
                                   extrapolate=False)
        return dm.toarray()

    def to_dict(self):
        return {"kind": self.kind, "domain": list(self.domain),
                "n_basis": self.n_basis, "order": self.order,
                "knots": self.knots.tolist()}


class FourierBasis(Basis):
    """Orthonormal Fourier basis ``1, sin, cos, sin(2.), cos(2.), ...``.

    With ``period`` equal to the domain length the functions are orthonormal
    in L2 of the domain.
    """

    kind = "fourier"

    def __init__(self, domain=(0.0, 1.0), n_basis=3, period=None,
                 gram_grid_size=GRAM_GRID_SIZE):
        super().__init__(domain, gram_grid_size)
        if int(n_basis) < 1:
            raise BasisError("n_basis must be positive")
        self._n_basis = int(n_basis)
        a, b = self.domain
        self.period = float(period) if period is not None else b - a

    @property
    def n_basis(self):
        return self._n_basis

    def _evaluate(self, points):
        a, _ = self.domain
        p = self.period
        omega = 2 * np.pi / p
        out = np.empty((points.size, self.n_basis))
        out[:, 0] = 1.0 / np.sqrt(p)
        for k in range(1, self.n_basis):
            freq = (k + 1) // 2
            trig = np.sin if k % 2 else np.cos
            out[:, k] = np.sqrt(2.0 / p) * trig(omega * freq * (points - a))
        return out

    def to_dict(self):
        return {"kind": self.kind, "domain": list(self.domain),
                "n_basis": self.n_basis, "period": self.period}


#: Named closed-form functions usable from serialized bases.
CLOSED_FORM_FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "one": np.ones_like,
    "sin(4x)": lambda x: np.sin(4 * x),
    "cos(8x)": lambda x: np.cos(8 * x),
    "sin(12x)": lambda x: np.sin(12 * x),
    "x^2+2x-2": lambda x: x ** 2 + 2 * x - 2,
}


class ClosedFormBasis(Basis):
    """Basis given by a list of named closed-form functions.

    Names must be keys of :data:`CLOSED_FORM_FUNCTIONS` unless explicit
    callables are supplied via ``functions``.
    """

    kind = "closed_form"

    def __init__(self, names: Sequence[str], domain=(0.0, 1.0), functions=None,
                 gram_grid_size=GRAM_GRID_SIZE):
        super().__init__(domain, gram_grid_size)
        names = list(names)
        if not names:
            raise BasisError("a closed-form basis needs at least one function")
        if functions is None:
            missing = [n for n in names if n not in CLOSED_FORM_FUNCTIONS]
            if missing:
                raise BasisError(f"unknown closed-form functions: {missing}")
            functions = [CLOSED_FORM_FUNCTIONS[n] for n in names]
        if len(functions) != len(names):
            raise BasisError("names and functions differ in length")
        self.names = names
        self.functions = list(functions)

    @property
    def n_basis(self):
        return len(self.names)

    def _evaluate(self, points):
        return np.column_stack(
            [np.broadcast_to(f(points), points.shape) for f in self.functions])

    def to_dict(self):
        return {"kind": self.kind, "domain": list(self.domain),
                "names": list(self.names)}


def basis_from_dict(spec: dict) -> Basis:
    """Rebuild a basis serialized with ``to_dict``."""
    kind = spec.get("kind")
    domain = tuple(spec["domain"])
    if kind == "bspline":
        return BSplineBasis(domain, spec["n_basis"], spec["order"],
                            knots=spec.get("knots"))
    if kind == "fourier":
        return FourierBasis(domain, spec["n_basis"], spec.get("period"))
    if kind == "closed_form":
        return ClosedFormBasis(spec["names"], domain)
    raise BasisError(f"unknown basis kind {kind!r}")
