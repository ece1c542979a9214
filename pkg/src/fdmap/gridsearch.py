"""Hyperparameter sweeps scored by explicit, pluggable criteria."""

from __future__ import annotations

import csv
import itertools
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import spearmanr
from sklearn.metrics import silhouette_score

from .diffusion import DiffusionMap
from .exceptions import DataFormatError, FdmapError, ScorerError
from .fdata import BasisDataset, DiscretizedDataset, SamplingGrid
from .isomap import IsomapParams, isomap_embed

METHODS = ("fdm", "dm", "isomap")


def fractions(denominator, lo, hi):
    """``[k / denominator for lo <= k <= hi]``."""
    return [k / denominator for k in range(lo, hi + 1)]


@dataclass(frozen=True)
class SearchSpace:
    kernels: Sequence[str] = ("gaussian", "laplacian")
    sigmas: Sequence[float] = (1.0,)
    alphas: Sequence[float] = (0.0,)
    neighbors: Sequence[int] = (10,)
    T: int = 1
    n_components: int = 2

    def __post_init__(self):
        for name in ("kernels", "sigmas", "alphas", "neighbors"):
            values = tuple(getattr(self, name))
            if not values:
                raise ValueError(f"search space field {name!r} is empty")
            object.__setattr__(self, name, values)
        if any(s <= 0 for s in self.sigmas):
            raise ValueError("sigmas must be positive")
        if any(not 0 <= a <= 1 for a in self.alphas):
            raise ValueError("alphas must lie in [0, 1]")
        if any(k < 1 for k in self.neighbors):
            raise ValueError("neighbor counts must be positive")
        if self.T < 1 or self.n_components < 1:
            raise ValueError("T and n_components must be positive")

    def configurations(self, method="fdm"):
        if method == "isomap":
            return [{"n_neighbors": k} for k in self.neighbors]
        return [{"kernel": k, "sigma": s, "alpha": a}
                for k, s, a in itertools.product(self.kernels, self.sigmas,
                                                 self.alphas)]

    def size(self, method="fdm"):
        return len(self.configurations(method))

    @classmethod
    def cauchy(cls):
        """DM/FDM grid used for the Cauchy densities experiment."""
        return cls(sigmas=fractions(40, 4, 8), alphas=fractions(4, 0, 4))

    @classmethod
    def toy(cls):
        """FDM grid used for Moons, Swiss Roll and Phoneme."""
        return cls(sigmas=fractions(20, 4, 8), alphas=fractions(4, 0, 4),
                   neighbors=[5 * k for k in range(1, 6)])

    @classmethod
    def from_dict(cls, payload):
        keys = {"kernels", "sigmas", "alphas", "neighbors", "T", "n_components"}
        unknown = set(payload) - keys
        if unknown:
            raise ValueError(f"unknown search space keys: {sorted(unknown)}")
        return cls(**payload)

    @classmethod
    def from_file(cls, path):
        """Read a JSON search space; errors report the offending line."""
        text = Path(path).read_text()
        if not text.strip():
            raise DataFormatError(f"{path}: empty search space file")
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DataFormatError(
                f"{path}: line {exc.lineno}: {exc.msg}") from exc
        if not isinstance(payload, dict):
            raise DataFormatError(f"{path}: line 1: expected a JSON object")
        try:
            return cls.from_dict(payload)
        except (TypeError, ValueError) as exc:
            raise DataFormatError(f"{path}: {exc}") from exc

    def to_dict(self):
        return {"kernels": list(self.kernels), "sigmas": list(self.sigmas),
                "alphas": list(self.alphas), "neighbors": list(self.neighbors),
                "T": self.T, "n_components": self.n_components}


# -- scorers ---------------------------------------------------------------

def silhouette(coords, labels):
    labels = np.asarray(labels)
    if len(np.unique(labels)) < 2:
        raise ScorerError("silhouette needs at least two classes")
    return float(silhouette_score(coords, labels))


def one_nn_accuracy(coords, labels):
    """Leave-one-out 1-nearest-neighbour accuracy."""
    labels = np.asarray(labels)
    d = cdist(coords, coords)
    np.fill_diagonal(d, np.inf)
    return float(np.mean(labels[np.argmin(d, axis=1)] == labels))


def spearman_first(coords, parameter):
    """``|rho|`` between the first coordinate and a continuous parameter."""
    parameter = np.asarray(parameter, dtype=float)
    rho = spearmanr(np.asarray(coords)[:, 0], parameter)[0]
    return float(abs(rho)) if np.isfinite(rho) else 0.0


SCORERS: dict[str, Callable] = {
    "silhouette": silhouette,
    "1nn": one_nn_accuracy,
    "spearman": spearman_first,
}


def score_embedding(emb, target=None, scorer="silhouette") -> float:
    """Score an embedding against labels or a continuous parameter.

    ``target`` defaults to the embedding's labels.
    """
    target = emb.labels if target is None else target
    if target is None:
        raise ScorerError(f"scorer {scorer!r} needs labels or a parameter")
    target = np.asarray(target)
    if scorer == "spearman":
        if not np.issubdtype(target.dtype, np.number):
            raise ScorerError("spearman scorer needs a numeric parameter")
    elif scorer not in SCORERS:
        raise ScorerError(f"unknown scorer {scorer!r}")
    if len(target) != len(emb):
        raise ScorerError("target length differs from the embedding")
    return SCORERS[scorer](np.asarray(emb.coordinates), target)


def default_scorer(ds):
    labels = getattr(ds, "labels", None)
    if labels is not None and np.issubdtype(np.asarray(labels).dtype, np.floating):
        if len(np.unique(labels)) > max(10, len(labels) // 4):
            return "spearman"
    return "silhouette"


# -- search ----------------------------------------------------------------

@dataclass
class GridResult:
    rows: list = field(default_factory=list)
    method: str = "fdm"
    scorer: str = "silhouette"

    def __len__(self):
        return len(self.rows)

    @property
    def best(self):
        return self.rows[0]

    def to_csv(self, path, timing=True):
        """Write the ranked table; ``timing=False`` drops the wall-time column."""
        cols = ["rank", "method", "kernel", "sigma", "alpha", "n_neighbors",
                "T", "n_components", "scorer", "score", "status", "error"]
        if timing:
            cols.append("wall_time")
        with Path(path).open("w", newline="") as fh:
            writer = csv.DictWriter(fh, cols, lineterminator="\n", extrasaction="ignore")
            writer.writeheader()
            for rank, row in enumerate(self.rows, 1):
                out = dict(row, rank=rank)
                if isinstance(out.get("score"), float):
                    out["score"] = f"{out['score']:.17g}"
                writer.writerow(out)
        return Path(path)


def multivariate(ds):
    """Raw samples with unit weights, for classical diffusion maps."""
    if isinstance(ds, BasisDataset):
        values = ds.coefficients
    elif isinstance(ds, DiscretizedDataset):
        values = ds.values
    else:
        values = np.asarray(ds, dtype=float)
    labels = getattr(ds, "labels", None)
    return DiscretizedDataset(SamplingGrid.unit(values.shape[1]), values, labels)


def fit_configuration(ds, method, config, T=1, n_components=2):
    if method == "isomap":
        return isomap_embed(ds, IsomapParams(config["n_neighbors"], n_components))
    data = multivariate(ds) if method == "dm" else ds
    return DiffusionMap(config["kernel"], config["sigma"], config["alpha"], T,
                        n_components, method=method).fit_transform(data)


def run_grid(ds, space: SearchSpace, scorer: Optional[str] = None, method="fdm",
             target=None, timer=time.perf_counter) -> GridResult:
    """Fit and score every configuration; failures become rows with status ``failed``.

    Rows are sorted by score (descending); failed rows go last, and ties keep
    enumeration order so the ranking is deterministic.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    scorer = scorer or default_scorer(ds)
    if target is None:
        target = getattr(ds, "labels", None)
    rows = []
    for config in space.configurations(method):
        row = {"method": method, "kernel": config.get("kernel", ""),
               "sigma": config.get("sigma", ""), "alpha": config.get("alpha", ""),
               "n_neighbors": config.get("n_neighbors", ""), "T": space.T,
               "n_components": space.n_components, "scorer": scorer}
        start = timer()
        try:
            emb = fit_configuration(ds, method, config, space.T, space.n_components)
            row.update(score=score_embedding(emb, target, scorer), status="ok",
                       error="")
        except (FdmapError, ValueError, np.linalg.LinAlgError) as exc:
            row.update(score=float("nan"), status="failed",
                       error=f"{type(exc).__name__}: {exc}")
        row["wall_time"] = timer() - start
        rows.append(row)
    ok = [r for r in rows if r["status"] == "ok"]
    failed = [r for r in rows if r["status"] != "ok"]
    ok.sort(key=lambda r: -r["score"])
    return GridResult(ok + failed, method, scorer)
