"""Command-line entry point: ``fdmap generate | embed | gridsearch``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.
Output paths without a directory are placed under ``$FDMAP_OUTPUT_DIR`` when
that variable is set.
"""

from __future__ import annotations

import argparse
import os
import platform
import sys
import time
import warnings
from pathlib import Path

import numpy as np
import scipy

from . import __version__, datasets, io
from .diffusion import DiffusionMap
from .exceptions import (DataFormatError, DimensionError, FdmapError,
                         NumericFailureError)
from .fdata import DiscretizedDataset
from .fpca import fpca
from .gridsearch import SCORERS, SearchSpace, multivariate, run_grid
from .isomap import IsomapParams, isomap_embed

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3
OUTPUT_ENV = "FDMAP_OUTPUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out_path(value):
    p = Path(value)
    base = os.environ.get(OUTPUT_ENV)
    if base and not p.is_absolute() and p.parent == Path("."):
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _manifest(args, **extra):
    payload = {
        "command": args.command,
        "arguments": {k: v for k, v in vars(args).items() if k != "func"},
        "versions": {"fdmap": __version__, "numpy": np.__version__,
                     "scipy": scipy.__version__, "python": platform.python_version()},
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    payload.update(extra)
    return payload


def _manifest_path(out):
    return out.with_name(out.stem + ".manifest.json")


def cmd_generate(args):
    if args.dataset == "cauchy":
        ds = datasets.gen_cauchy(args.n or 25, seed=args.seed)
    elif args.dataset == "moons":
        ds = datasets.gen_moons_functional(args.n or 200, args.noise, args.seed)
    elif args.dataset == "swissroll":
        ds = datasets.gen_swiss_roll_functional(args.n or 300, args.seed)
    else:
        ds = datasets.gen_phoneme_surrogate(args.n or 300, args.seed)
    out = _out_path(args.out or args.dataset)
    path = io.write_dataset(ds, out)
    print(path)
    return EXIT_OK


def _load(args):
    path = Path(args.data)
    if not path.exists():
        raise DataFormatError(f"{path}: no such file")
    ds = io.load_dataset(path)
    if args.truncate:
        if not isinstance(ds, DiscretizedDataset):
            raise UsageError("--truncate applies to sampled curves only")
        ds = ds.truncate(args.truncate)
    if args.bspline:
        if not isinstance(ds, DiscretizedDataset):
            raise UsageError("--bspline applies to sampled curves only")
        ds = datasets.preprocess_phoneme(ds, len(ds.grid), args.bspline, args.order)
    return ds


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.method} requires {', '.join(missing)}")


def cmd_embed(args):
    ds = _load(args)
    extra = {}
    if args.method in ("fdm", "dm"):
        _require(args, "sigma", "alpha")
        data = multivariate(ds) if args.method == "dm" else ds
        est = DiffusionMap(args.kernel, args.sigma, args.alpha, args.T,
                           args.dim, args.delta, method=args.method)
        emb = est.fit_transform(data)
        extra["model"] = io.diffusion_model_dict(est.model_, emb.n_components)
        if args.dump_kernel:
            io.write_matrix_csv(est.kernel_matrix_.entries, _out_path(args.dump_kernel))
    elif args.method == "fpca":
        model = fpca(ds, args.dim)
        emb = model.embedding()
        extra["explained_variance_ratio"] = model.explained_variance_ratio.tolist()
    else:
        _require(args, "neighbors")
        emb = isomap_embed(ds, IsomapParams(args.neighbors, args.dim))
        extra["stress"] = emb.info["stress"]
    out = _out_path(args.out or f"{args.method}_embedding.csv")
    io.write_embedding_csv(emb, out)
    io.write_json(_manifest(args, eigenvalues=emb.eigenvalues.tolist(), **extra),
                  _manifest_path(out))
    print(out)
    return EXIT_OK


def cmd_gridsearch(args):
    ds = _load(args)
    space = SearchSpace.from_file(args.space)
    result = run_grid(ds, space, args.scorer, args.method)
    out = _out_path(args.out or f"{args.method}_grid.csv")
    result.to_csv(out, timing=False)
    timings = [{"kernel": r["kernel"], "sigma": r["sigma"], "alpha": r["alpha"],
                "n_neighbors": r["n_neighbors"], "wall_time": r["wall_time"]}
               for r in result.rows]
    io.write_json(_manifest(args, space=space.to_dict(), scorer=result.scorer,
                            timings=timings), _manifest_path(out))
    best = result.best
    print(f"{out}: best {best['status']} score={best['score']:.6g} "
          f"kernel={best['kernel']} sigma={best['sigma']} alpha={best['alpha']} "
          f"n_neighbors={best['n_neighbors']}")
    return EXIT_OK


def _data_options(p):
    p.add_argument("--data", required=True, help="curves CSV or basis JSON")
    p.add_argument("--truncate", type=int, help="keep the first N samples")
    p.add_argument("--bspline", type=int, metavar="K",
                   help="smooth onto a B-spline basis with K functions")
    p.add_argument("--order", type=int, default=3, help="B-spline order (degree+1)")
    p.add_argument("--out")


def build_parser():
    parser = _Parser(prog="fdmap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic dataset")
    g.add_argument("dataset", choices=["cauchy", "moons", "swissroll", "phoneme"])
    g.add_argument("--n", type=int)
    g.add_argument("--noise", type=float, default=0.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("embed", help="embed a dataset")
    e.add_argument("method", choices=["fdm", "dm", "fpca", "isomap"])
    _data_options(e)
    e.add_argument("--kernel", choices=["gaussian", "laplacian"], default="gaussian")
    e.add_argument("--sigma", type=float)
    e.add_argument("--alpha", type=float)
    e.add_argument("--T", type=int, default=1)
    e.add_argument("--dim", type=int, default=2)
    e.add_argument("--delta", type=float)
    e.add_argument("--neighbors", type=int)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--dump-kernel", help="also write the kernel matrix as CSV")
    e.set_defaults(func=cmd_embed)

    s = sub.add_parser("gridsearch", help="rank hyperparameter configurations")
    s.add_argument("method", choices=["fdm", "dm", "isomap"])
    _data_options(s)
    s.add_argument("--space", required=True, help="JSON search space file")
    s.add_argument("--scorer", choices=sorted(SCORERS))
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gridsearch)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fdmap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailureError as exc:
        print(f"fdmap: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FdmapError, ValueError, OSError) as exc:
        print(f"fdmap: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
