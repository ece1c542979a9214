import json

import numpy as np
import pytest

from fdmap.cli import EXIT_DATA, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main
from fdmap.datasets import phoneme_extract_path
from fdmap.io import load_curves_csv, read_embedding_csv


@pytest.fixture
def out(tmp_path, monkeypatch):
    monkeypatch.setenv("FDMAP_OUTPUT_DIR", str(tmp_path))
    return tmp_path


def test_generate_cauchy(out):
    assert main(["generate", "cauchy", "--out", "cauchy"]) == EXIT_OK
    ds = load_curves_csv(out / "cauchy.csv")
    assert ds.values.shape == (50, 300)
    assert (out / "cauchy.grid.json").exists()


def test_generate_deterministic(out):
    main(["generate", "moons", "--n", "200", "--seed", "7", "--noise", "0.05", "--out", "a"])
    main(["generate", "moons", "--n", "200", "--seed", "7", "--noise", "0.05", "--out", "b"])
    assert (out / "a.json").read_bytes() == (out / "b.json").read_bytes()


def test_generate_invalid(out, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "circles"])
    assert exc.value.code == EXIT_USAGE
    assert "usage" in capsys.readouterr().err


def test_embed_fdm_cauchy(out):
    main(["generate", "cauchy", "--out", "cauchy"])
    code = main(["embed", "fdm", "--data", str(out / "cauchy.csv"), "--kernel", "gaussian",
                 "--sigma", "0.1", "--alpha", "0.0", "--out", "fdm.csv",
                 "--dump-kernel", "k.csv"])
    assert code == EXIT_OK
    coords, labels = read_embedding_csv(out / "fdm.csv")
    assert coords.shape == (50, 2)
    manifest = json.loads((out / "fdm.manifest.json").read_text())
    assert manifest["arguments"]["sigma"] == 0.1
    assert len(manifest["eigenvalues"]) == 2
    assert "versions" in manifest
    assert np.loadtxt(out / "k.csv", delimiter=",").shape == (50, 50)


def test_embed_fpca_moons(out):
    main(["generate", "moons", "--out", "moons"])
    assert main(["embed", "fpca", "--data", str(out / "moons.json"), "--dim", "2",
                 "--out", "f.csv"]) == EXIT_OK
    coords, _ = read_embedding_csv(out / "f.csv")
    assert coords.shape == (200, 2)


def test_embed_isomap_phoneme(out):
    code = main(["embed", "isomap", "--data", str(phoneme_extract_path()),
                 "--truncate", "100", "--bspline", "9", "--neighbors", "10",
                 "--dim", "2", "--out", "iso.csv"])
    assert code == EXIT_OK
    assert "stress" in json.loads((out / "iso.manifest.json").read_text())


def test_embed_dm_delta(out):
    main(["generate", "moons", "--n", "40", "--out", "m"])
    assert main(["embed", "dm", "--data", str(out / "m.json"), "--sigma", "0.5",
                 "--alpha", "1", "--delta", "0.1", "--out", "dm.csv"]) == EXIT_OK


def test_embed_missing_params(out, capsys):
    main(["generate", "moons", "--n", "20", "--out", "m"])
    code = main(["embed", "fdm", "--data", str(out / "m.json"), "--sigma", "0.2"])
    assert code == EXIT_USAGE
    assert "--alpha" in capsys.readouterr().err
    assert main(["embed", "isomap", "--data", str(out / "m.json")]) == EXIT_USAGE


def test_embed_missing_file(out):
    assert main(["embed", "fpca", "--data", str(out / "none.csv")]) == EXIT_DATA


def test_embed_bad_sigma(out):
    main(["generate", "moons", "--n", "20", "--out", "m"])
    assert main(["embed", "fdm", "--data", str(out / "m.json"), "--sigma", "-1",
                 "--alpha", "0"]) == EXIT_DATA


def test_embed_numeric_failure(out):
    main(["generate", "cauchy", "--out", "c"])
    # a vanishing bandwidth makes the kernel (numerically) the identity
    assert main(["embed", "fdm", "--data", str(out / "c.csv"), "--sigma", "1e-6",
                 "--alpha", "0"]) == EXIT_NUMERIC


def test_gridsearch_cauchy(out, capsys):
    main(["generate", "cauchy", "--out", "c"])
    space = out / "space.json"
    space.write_text(json.dumps({"kernels": ["gaussian", "laplacian"],
                                 "sigmas": [0.1, 0.125, 0.15, 0.175, 0.2],
                                 "alphas": [0, 0.25, 0.5, 0.75, 1]}))
    args = ["gridsearch", "fdm", "--data", str(out / "c.csv"), "--space", str(space),
            "--scorer", "1nn"]
    assert main(args + ["--out", "g1.csv"]) == EXIT_OK
    assert main(args + ["--out", "g2.csv"]) == EXIT_OK
    rows = (out / "g1.csv").read_text().splitlines()
    assert len(rows) == 51
    assert (out / "g1.csv").read_bytes() == (out / "g2.csv").read_bytes()
    manifest = json.loads((out / "g1.manifest.json").read_text())
    assert len(manifest["timings"]) == 50


def test_gridsearch_bad_space(out, capsys):
    main(["generate", "moons", "--n", "20", "--out", "m"])
    space = out / "s.json"
    space.write_text("")
    assert main(["gridsearch", "fdm", "--data", str(out / "m.json"),
                 "--space", str(space)]) == EXIT_DATA
    space.write_text('{\n"sigmas": [0.1\n}')
    assert main(["gridsearch", "fdm", "--data", str(out / "m.json"),
                 "--space", str(space)]) == EXIT_DATA
    assert "line 3" in capsys.readouterr().err
