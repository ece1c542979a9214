"""Diffusion maps on a kernel matrix.

The same code serves multivariate diffusion maps and functional diffusion maps:
everything here consumes a kernel matrix, and the functional part lives in how
that matrix was built (quadrature or Gram weighted distances).
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from .embedding import Embedding, fix_signs
from .exceptions import (DimensionError, DisconnectedGraphError,
                         NumericFailureError)
from .kernels import KernelMatrix, KernelSpec, build_kernel_matrix

logger = logging.getLogger(__name__)

#: Eigenvalues closer than this are reported as tied.
TIE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class DiffusionParams:
    """Density exponent ``alpha``, number of steps ``T`` and truncation.

    Exactly one of ``n_components`` (fixed L) and ``delta`` (automatic L) must
    be given.
    """

    alpha: float = 0.0
    T: int = 1
    n_components: Optional[int] = 2
    delta: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if int(self.T) != self.T or self.T < 1:
            raise ValueError(f"T must be a positive integer, got {self.T}")
        if (self.n_components is None) == (self.delta is None):
            raise ValueError("give exactly one of n_components and delta")
        if self.n_components is not None and self.n_components < 1:
            raise ValueError("n_components must be at least 1")
        if self.delta is not None and not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")


def _entries(K):
    return np.asarray(K.entries if isinstance(K, KernelMatrix) else K, dtype=float)


def alpha_normalize(K, alpha: float) -> np.ndarray:
    """Return ``k_ij / (d_i^alpha d_j^alpha)`` with ``d_i = sum_j k_ij``."""
    k = _entries(K)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0:
        return k.copy()
    q = k.sum(axis=1) ** alpha
    out = k / np.outer(q, q)
    return 0.5 * (out + out.T)


def _degrees(k_alpha):
    d = k_alpha.sum(axis=1)
    if np.any(d <= 0):
        bad = np.flatnonzero(d <= 0)
        raise DisconnectedGraphError(
            f"rows {bad.tolist()} of the normalized kernel have zero mass")
    return d


def transition_matrix(k_alpha) -> np.ndarray:
    """Row-stochastic Markov matrix ``p_ij = k_ij / d_i``."""
    k = _entries(k_alpha)
    return k / _degrees(k)[:, None]


def stationary_distribution(k_alpha) -> np.ndarray:
    """``pi_i = d_i / sum_k d_k`` for the normalized kernel."""
    d = _degrees(_entries(k_alpha))
    return d / d.sum()


@dataclass(frozen=True, eq=False)
class DiffusionModel:
    """Spectrum of the diffusion operator, with the trivial pair split off.

    ``eigenvalues[l-1]``, ``right[:, l-1]`` and ``left[:, l-1]`` hold
    ``lambda_l``, ``psi_l`` and ``phi_l`` for ``l = 1..N-1``. Eigenvectors are
    scaled so that ``psi_0`` is the all-ones vector and ``phi_0 = pi``, which
    makes ``sum_k phi_l(k)^2 / pi_k = 1``.
    """

    eigenvalues: np.ndarray
    right: np.ndarray
    left: np.ndarray
    stationary: np.ndarray
    degrees: np.ndarray
    transition: np.ndarray
    lambda0: float
    psi0: np.ndarray
    params: Optional[DiffusionParams] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def n_samples(self):
        return self.stationary.size

    def full_spectrum(self):
        """Eigenvalues and right/left eigenvectors including the trivial pair."""
        lam = np.concatenate([[self.lambda0], self.eigenvalues])
        psi = np.column_stack([self.psi0, self.right])
        phi = np.column_stack([self.stationary, self.left])
        return lam, psi, phi


def spectral_decompose(k_alpha, params: Optional[DiffusionParams] = None
                       ) -> DiffusionModel:
    """Eigendecompose the transition matrix through its symmetric conjugate.

    With ``D = diag(d)`` the matrix ``S = D^-1/2 K D^-1/2`` is symmetric and
    shares the spectrum of ``P = D^-1 K``; ``psi = D^-1/2 u`` and
    ``phi = D^1/2 u`` are the right and left eigenvectors of ``P``.
    """
    k = _entries(k_alpha)
    n = k.shape[0]
    if k.shape != (n, n) or n < 2:
        raise DimensionError("kernel must be a square matrix with N >= 2")
    d = _degrees(k)
    s = k / np.sqrt(np.outer(d, d))
    s = 0.5 * (s + s.T)
    try:
        evals, evecs = np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(
            f"symmetric eigensolver failed ({exc}); condition number of the "
            f"conjugated kernel is {np.linalg.cond(s):.3e}") from exc
    order = np.argsort(-evals, kind="stable")
    evals, evecs = evals[order], evecs[:, order]

    total = d.sum()
    scale = np.sqrt(total)
    psi = scale * evecs / np.sqrt(d)[:, None]
    phi = evecs * np.sqrt(d)[:, None] / scale

    # trivial pair: psi_0 constant, phi_0 = pi
    sign0 = np.sign(psi[:, 0].sum()) or 1.0
    psi0 = psi[:, 0] * sign0
    deviation = float(np.max(np.abs(psi0 - psi0.mean())))
    if deviation > 1e-8 or abs(evals[0] - 1.0) > 1e-10:
        raise NumericFailureError(
            f"leading eigenpair is not trivial (lambda_0={evals[0]!r}, "
            f"psi_0 spread={deviation:.3e}); the graph may be disconnected")

    right, signs = fix_signs(psi[:, 1:])
    left = phi[:, 1:] * signs
    lam = evals[1:]

    gaps = np.abs(np.diff(lam))
    tied = np.flatnonzero(gaps < TIE_TOLERANCE)
    diagnostics = {
        "psi0_deviation": deviation,
        "lambda0_error": float(abs(evals[0] - 1.0)),
        "tied_pairs": [(int(i) + 1, int(i) + 2) for i in tied],
    }
    if tied.size:
        logger.info("tied eigenvalues at indices %s", diagnostics["tied_pairs"])
    if lam.size and lam[0] > 1 - 1e-6:
        warnings.warn(f"lambda_1 = {lam[0]!r} is within 1e-6 of 1; the graph is "
                      "close to disconnected", RuntimeWarning, stacklevel=2)

    return DiffusionModel(
        eigenvalues=lam, right=right, left=left, stationary=d / total,
        degrees=d, transition=k / d[:, None], lambda0=float(evals[0]),
        psi0=np.ones(n), params=params, diagnostics=diagnostics)


def select_dimension(model, delta: float, T: int) -> int:
    """Largest ``l`` with ``lambda_l^T > delta * lambda_1^T`` (at least 1)."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    lam = model.eigenvalues if isinstance(model, DiffusionModel) else np.asarray(model)
    lam_t = lam ** T
    passing = np.flatnonzero(lam_t > delta * lam_t[0])
    return max(int(passing[-1]) + 1 if passing.size else 1, 1)


def embed(model: DiffusionModel, T: int = 1, n_components: int = 2,
          labels=None, method: str = "fdm") -> Embedding:
    """Diffusion map coordinates ``lambda_l^T psi_l`` for ``l = 1..L``."""
    n = model.n_samples
    if not 1 <= n_components <= n - 1:
        raise DimensionError(
            f"embedding dimension must lie in [1, {n - 1}], got {n_components}")
    if int(T) != T or T < 1:
        raise ValueError(f"T must be a positive integer, got {T}")
    lam = model.eigenvalues[:n_components]
    coords = model.right[:, :n_components] * lam ** T
    return Embedding(coords, method, lam, labels, {"T": int(T)})


def transition_power(model: DiffusionModel, T: int) -> np.ndarray:
    """``P^T`` by repeated multiplication (independent of the eigensolver)."""
    p = model.transition
    out = p.copy()
    for _ in range(int(T) - 1):
        out = out @ p
    return out


def diffusion_distance(model: DiffusionModel, i: int, j: int, T: int = 1) -> float:
    """``sqrt(sum_k (P^T_ik - P^T_jk)^2 / pi_k)`` computed from matrix powers."""
    pt = transition_power(model, T)
    diff = pt[i] - pt[j]
    return float(np.sqrt(np.sum(diff ** 2 / model.stationary)))


def diffusion_distance_matrix(model: DiffusionModel, T: int = 1) -> np.ndarray:
    """All pairwise diffusion distances from matrix powers."""
    rows = transition_power(model, T) / np.sqrt(model.stationary)
    d = cdist(rows, rows, "euclidean")
    np.fill_diagonal(d, 0.0)
    return d


def spectral_distance(model: DiffusionModel, i: int, j: int, T: int = 1,
                      n_components: Optional[int] = None) -> float:
    """``sqrt(sum_{l<=L} lambda_l^{2T} (psi_l(i) - psi_l(j))^2)``."""
    L = model.eigenvalues.size if n_components is None else n_components
    lam = model.eigenvalues[:L]
    diff = model.right[i, :L] - model.right[j, :L]
    return float(np.sqrt(np.sum(lam ** (2 * T) * diff ** 2)))


class DiffusionMap:
    """Diffusion map estimator on functional or multivariate data.

    Parameters
    ----------
    kernel : str
        ``"gaussian"`` or ``"laplacian"``.
    sigma : float
        Kernel bandwidth.
    alpha : float
        Density normalization exponent in [0, 1].
    T : int
        Number of random-walk steps.
    n_components : int, optional
        Embedding dimension. Ignored when ``delta`` is given.
    delta : float, optional
        Precision threshold for automatic dimension selection.

    Examples
    --------
    >>> from fdmap.datasets import gen_moons_functional
    >>> emb = DiffusionMap(sigma=0.2, alpha=0.5).fit_transform(gen_moons_functional(40))
    >>> emb.coordinates.shape
    (40, 2)
    """

    def __init__(self, kernel="gaussian", sigma=1.0, alpha=0.0, T=1,
                 n_components=2, delta=None, method="fdm"):
        self.kernel = KernelSpec(kernel, sigma)
        self.params = DiffusionParams(alpha, T, None if delta is not None
                                      else n_components, delta)
        self.method = method

    def fit(self, data):
        self.kernel_matrix_ = build_kernel_matrix(self.kernel, data)
        k_alpha = alpha_normalize(self.kernel_matrix_, self.params.alpha)
        self.model_ = spectral_decompose(k_alpha, self.params)
        if self.params.delta is not None:
            self.n_components_ = select_dimension(self.model_, self.params.delta,
                                                  self.params.T)
        else:
            self.n_components_ = self.params.n_components
        self.labels_ = getattr(data, "labels", None)
        return self

    def transform(self):
        emb = embed(self.model_, self.params.T, self.n_components_,
                    self.labels_, self.method)
        emb.info.update(kernel=self.kernel.family, sigma=self.kernel.sigma,
                        alpha=self.params.alpha)
        return emb

    def fit_transform(self, data) -> Embedding:
        return self.fit(data).transform()
