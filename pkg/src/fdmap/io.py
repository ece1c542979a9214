"""Reading and writing curves, embeddings, models and manifests.

Formats
-------
* Curves CSV: one curve per row, optional leading ``label`` column, an
  optional header row (``label,s1,...,sM``). The grid lives in a JSON sidecar
  ``{"points": [...], "weights": [...]}``.
* Basis dataset JSON: ``{"basis": {...}, "coefficients": [[...]], "labels": [...]}``.
* Embedding CSV: ``index,label,coord_1..coord_L``.

Floats are written with 17 significant digits so files round-trip exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .basis import basis_from_dict
from .exceptions import DataFormatError
from .fdata import BasisDataset, DiscretizedDataset, SamplingGrid

FLOAT_FMT = "{:.17g}"


def _fmt(x):
    return FLOAT_FMT.format(float(x))


def _label_out(v):
    if isinstance(v, (float, np.floating)):
        return _fmt(v)
    return str(v)


def _is_float(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def write_grid_json(grid: SamplingGrid, path):
    payload = {"points": [float(p) for p in grid.points],
               "weights": [float(w) for w in grid.weights]}
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def read_grid_json(path) -> SamplingGrid:
    try:
        payload = json.loads(Path(path).read_text())
        return SamplingGrid(payload["points"], payload.get("weights"))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataFormatError(f"{path}: malformed grid sidecar ({exc})") from exc


def sidecar_path(csv_path) -> Path:
    p = Path(csv_path)
    return p.with_name(p.stem + ".grid.json")


def write_curves_csv(ds: DiscretizedDataset, path, sidecar=True):
    """Write ``ds`` as CSV (plus the grid sidecar unless ``sidecar`` is False)."""
    path = Path(path)
    m = len(ds.grid)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        header = [f"s{j + 1}" for j in range(m)]
        if ds.labels is not None:
            header.insert(0, "label")
        writer.writerow(header)
        for i, row in enumerate(ds.values):
            cells = [_fmt(v) for v in row]
            if ds.labels is not None:
                cells.insert(0, _label_out(ds.labels[i]))
            writer.writerow(cells)
    if sidecar:
        write_grid_json(ds.grid, sidecar_path(path))
    return path


def load_curves_csv(path, grid_sidecar=None, has_labels=None) -> DiscretizedDataset:
    """Load a rectangular curves CSV.

    Parameters
    ----------
    path : path-like
    grid_sidecar : path-like, optional
        JSON grid file. Defaults to ``<stem>.grid.json`` next to the CSV when
        it exists, otherwise the implicit grid ``0..M-1``.
    has_labels : bool, optional
        Whether the first column holds labels; detected from the header or
        from non-numeric first cells when omitted.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    header = None
    if not all(_is_float(c) for c in rows[0][1:]):
        header, rows = rows[0], rows[1:]
    if not rows:
        raise DataFormatError(f"{path}: no data rows")
    if has_labels is None:
        if header is not None:
            has_labels = header[0].strip().lower() == "label"
        else:
            has_labels = not all(_is_float(r[0]) for r in rows)
    width = len(rows[0])
    labels, values = [], []
    offset = 1 if header is not None else 0
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataFormatError(
                f"{path}: row {i + offset} has {len(row)} cells, expected {width}")
        cells = row[1:] if has_labels else row
        try:
            values.append([float(c) for c in cells])
        except ValueError as exc:
            raise DataFormatError(
                f"{path}: non-numeric cell in row {i + offset} ({exc})") from exc
        if has_labels:
            labels.append(row[0])
    values = np.asarray(values)
    if grid_sidecar is None and sidecar_path(path).exists():
        grid_sidecar = sidecar_path(path)
    if grid_sidecar is not None:
        grid = read_grid_json(grid_sidecar)
    else:
        grid = SamplingGrid(np.arange(values.shape[1], dtype=float))
    if len(grid) != values.shape[1]:
        raise DataFormatError(
            f"{path}: {values.shape[1]} samples per curve but the grid has "
            f"{len(grid)} points")
    lab = None
    if has_labels:
        lab = np.asarray(labels)
        if all(_is_float(v) for v in labels):
            lab = lab.astype(float)
    return DiscretizedDataset(grid, values, lab)


def write_basis_json(ds: BasisDataset, path):
    payload = {"basis": ds.basis.to_dict(),
               "coefficients": [[float(v) for v in row] for row in ds.coefficients]}
    if ds.labels is not None:
        payload["labels"] = [v.item() if hasattr(v, "item") else v
                             for v in ds.labels]
    Path(path).write_text(json.dumps(payload) + "\n")
    return Path(path)


def load_basis_json(path) -> BasisDataset:
    try:
        payload = json.loads(Path(path).read_text())
        basis = basis_from_dict(payload["basis"])
        return BasisDataset(basis, payload["coefficients"], payload.get("labels"))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataFormatError(f"{path}: malformed basis dataset ({exc})") from exc


def load_dataset(path):
    """Load either a basis JSON file or a curves CSV, by extension."""
    path = Path(path)
    if path.suffix == ".json":
        return load_basis_json(path)
    return load_curves_csv(path)


def write_dataset(ds, path):
    if isinstance(ds, BasisDataset):
        return write_basis_json(ds, Path(path).with_suffix(".json"))
    return write_curves_csv(ds, Path(path).with_suffix(".csv"))


def write_embedding_csv(emb, path):
    """Write ``index,label,coord_1..coord_L``; the label cell is empty when absent."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "label"]
                        + [f"coord_{l + 1}" for l in range(emb.n_components)])
        for i, row in enumerate(emb.coordinates):
            label = "" if emb.labels is None else _label_out(emb.labels[i])
            writer.writerow([i, label] + [_fmt(v) for v in row])
    return path


def read_embedding_csv(path):
    """Return ``(coordinates, labels)`` from an embedding CSV."""
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    coords = np.array([[float(c) for c in r[2:]] for r in rows[1:]])
    labels = [r[1] for r in rows[1:]]
    return coords, labels


def write_matrix_csv(matrix, path):
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in np.asarray(matrix):
            writer.writerow([_fmt(v) for v in row])
    return Path(path)


def diffusion_model_dict(model, n_components):
    """JSON-ready summary: eigenvalues, stationary distribution, kept eigenvectors."""
    return {
        "lambda0": model.lambda0,
        "eigenvalues": model.eigenvalues.tolist(),
        "stationary": model.stationary.tolist(),
        "right_eigenvectors": model.right[:, :n_components].T.tolist(),
        "left_eigenvectors": model.left[:, :n_components].T.tolist(),
        "params": None if model.params is None else vars(model.params),
        "diagnostics": model.diagnostics,
    }


def write_json(payload, path):
    Path(path).write_text(json.dumps(payload, indent=2, default=_json_default) + "\n")
    return Path(path)


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
