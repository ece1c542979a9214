"""Isomap on functional data: k-NN graph, geodesics, classical MDS."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .embedding import Embedding, fix_signs
from .exceptions import DimensionError, DisconnectedGraphError
from .fdata import pairwise_distances


@dataclass(frozen=True)
class IsomapParams:
    n_neighbors: int = 10
    n_components: int = 2

    def __post_init__(self):
        if self.n_neighbors < 1:
            raise ValueError("n_neighbors must be at least 1")
        if self.n_components < 1:
            raise ValueError("n_components must be at least 1")


def knn_graph(dist: np.ndarray, n_neighbors: int) -> csr_matrix:
    """Symmetric k-NN graph (union of neighbourhoods) weighted by distance."""
    n = dist.shape[0]
    k = min(n_neighbors, n - 1)
    d = dist.copy()
    np.fill_diagonal(d, np.inf)
    nbrs = np.argsort(d, axis=1, kind="stable")[:, :k]
    rows = np.repeat(np.arange(n), k)
    cols = nbrs.ravel()
    adj = np.zeros_like(dist)
    adj[rows, cols] = dist[rows, cols]
    adj = np.maximum(adj, adj.T)
    return csr_matrix(adj)


def geodesic_distances(dist: np.ndarray, n_neighbors: int) -> np.ndarray:
    graph = knn_graph(dist, n_neighbors)
    n_comp, _ = connected_components(graph, directed=False)
    if n_comp > 1:
        raise DisconnectedGraphError(
            f"the {n_neighbors}-NN graph has {n_comp} connected components; "
            "increase n_neighbors")
    return shortest_path(graph, method="D", directed=False)


def classical_mds(dist: np.ndarray, n_components: int):
    """Coordinates ``sqrt(lambda_l) v_l`` of the double-centred squared distances.

    Returns ``(coordinates, eigenvalues)``; negative eigenvalues are clamped
    to zero with a warning.
    """
    n = dist.shape[0]
    h = np.eye(n) - 1.0 / n
    b = -0.5 * h @ (dist ** 2) @ h
    evals, evecs = np.linalg.eigh(0.5 * (b + b.T))
    order = np.argsort(-evals, kind="stable")[:n_components]
    evals, evecs = evals[order], evecs[:, order]
    if np.any(evals < 0):
        warnings.warn("classical MDS: negative eigenvalues clamped to zero",
                      RuntimeWarning, stacklevel=2)
        evals = np.clip(evals, 0.0, None)
    vecs, _ = fix_signs(evecs)
    return vecs * np.sqrt(evals), evals


def normalized_stress(geodesic: np.ndarray, coords: np.ndarray) -> float:
    """``sqrt(sum (g - d)^2 / sum g^2)`` over all pairs."""
    diff = coords[:, None, :] - coords[None, :, :]
    d = np.sqrt(np.sum(diff ** 2, axis=-1))
    return float(np.sqrt(np.sum((geodesic - d) ** 2) / np.sum(geodesic ** 2)))


def isomap_embed(ds, params: IsomapParams = IsomapParams()) -> Embedding:
    """Embed curves so Euclidean distances approximate L2 geodesics."""
    n = len(ds)
    if params.n_components > n - 1:
        raise DimensionError(f"cannot embed {n} curves in {params.n_components} dimensions")
    dist = pairwise_distances(ds, "l2")
    geo = geodesic_distances(dist, params.n_neighbors)
    coords, evals = classical_mds(geo, params.n_components)
    info = {"n_neighbors": params.n_neighbors,
            "stress": normalized_stress(geo, coords)}
    return Embedding(coords, "isomap", evals, getattr(ds, "labels", None), info)
