"""Low-dimensional coordinates shared by every method."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass(frozen=True, eq=False)
class Embedding:
    """N x L coordinate matrix with per-axis metadata.

    Attributes
    ----------
    coordinates : ndarray, shape (N, L)
    method : str
        ``"fdm"``, ``"dm"``, ``"fpca"`` or ``"isomap"``.
    eigenvalues : ndarray, shape (L,)
        Eigenvalue attached to each axis.
    labels : ndarray or None
        Labels copied from the input dataset, never used for fitting.
    """

    coordinates: np.ndarray
    method: str
    eigenvalues: np.ndarray
    labels: Optional[np.ndarray] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        coords = np.array(self.coordinates, dtype=float, ndmin=2)
        if coords.shape[1] < 1:
            raise ValueError("an embedding needs at least one axis")
        coords.setflags(write=False)
        object.__setattr__(self, "coordinates", coords)
        evals = np.array(self.eigenvalues, dtype=float).reshape(-1)
        if evals.size != coords.shape[1]:
            raise ValueError("one eigenvalue per axis is required")
        object.__setattr__(self, "eigenvalues", evals)

    @property
    def n_components(self):
        return self.coordinates.shape[1]

    def __len__(self):
        return self.coordinates.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coordinates, dtype=dtype)


def fix_signs(vectors: np.ndarray):
    """Flip columns so the largest-magnitude entry of each is positive.

    Ties in magnitude resolve to the first such entry. Returns the flipped
    array and the applied signs.
    """
    vectors = np.array(vectors, dtype=float)
    if vectors.size == 0:
        return vectors, np.ones(vectors.shape[1])
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs, signs
