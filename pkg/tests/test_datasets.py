import collections

import numpy as np
import pytest

from fdmap import datasets
from fdmap.datasets import (PHONEME_COUNTS, cauchy_density, gen_cauchy,
                            gen_moons_functional, gen_phoneme_surrogate,
                            gen_swiss_roll_functional, load_phoneme_extract,
                            moons, preprocess_phoneme)
from fdmap.fdata import smooth_to_basis
from fdmap.io import load_curves_csv, write_curves_csv


class TestCauchy:
    def test_default_shape(self):
        ds = gen_cauchy()
        assert ds.values.shape == (50, 300)
        counts = collections.Counter(ds.labels.tolist())
        assert counts == {1.0: 25, 1.5: 25}

    def test_peak(self):
        t = np.array([2.0])
        assert cauchy_density(t, 2.0, 1.0)[0] == pytest.approx(1 / np.pi)
        assert cauchy_density(t, 2.0, 0.5)[0] == pytest.approx(2 / np.pi)

    def test_grid_density(self):
        t = gen_cauchy().grid.points
        middle, right = np.diff(t[100:200]), np.diff(t[200:])
        assert np.all((t[100:200] > -5) & (t[100:200] < 5))
        assert np.mean(middle) / np.mean(right) == pytest.approx(2.0, rel=0.03)

    def test_mass(self):
        ds = gen_cauchy()
        mass = ds.values @ ds.grid.weights
        assert np.all(mass > 0)
        assert np.all(mass <= ds.labels)
        sub = ds.truncate(200)
        assert np.all(sub.values @ sub.grid.weights < mass)

    def test_deterministic(self):
        assert np.array_equal(gen_cauchy(seed=1).values, gen_cauchy(seed=2).values)


class TestMoons:
    def test_upper_circle(self):
        pts, labels = moons(200)
        upper = pts[labels == 0]
        assert np.allclose(np.sum(upper ** 2, axis=1), 1.0, atol=1e-15)

    def test_balanced(self):
        ds = gen_moons_functional(200)
        assert collections.Counter(ds.labels.tolist()) == {0: 100, 1: 100}

    def test_round_trip(self):
        ds = gen_moons_functional(50, noise=0.05, seed=3)
        raw = ds.to_discretized(np.linspace(0, 1, 200))
        assert np.allclose(smooth_to_basis(raw, ds.basis).coefficients,
                           ds.coefficients, atol=1e-6)

    def test_seeded_noise(self):
        a = gen_moons_functional(30, 0.1, seed=7).coefficients
        b = gen_moons_functional(30, 0.1, seed=7).coefficients
        c = gen_moons_functional(30, 0.1, seed=8).coefficients
        assert np.array_equal(a, b) and not np.array_equal(a, c)


class TestSwissRoll:
    def test_shape(self):
        ds = gen_swiss_roll_functional(300, seed=0)
        assert ds.coefficients.shape == (300, 3)
        assert np.allclose(ds.coefficients.mean(axis=0), 0, atol=1e-12)
        assert np.allclose(ds.coefficients.std(axis=0), 1)

    def test_parameter(self):
        pts, t = datasets.swiss_roll(100, seed=4)
        assert np.all((t >= 1.5 * np.pi) & (t <= 4.5 * np.pi))
        assert np.allclose(pts[:, 0], t * np.cos(t))
        # the label orders curves along the roll: angle recovered from t
        order = np.argsort(t)
        assert np.all(np.diff(t[order]) > 0)

    def test_raw(self):
        ds = gen_swiss_roll_functional(20, seed=1, normalize=False)
        pts, t = datasets.swiss_roll(20, seed=1)
        assert np.array_equal(ds.coefficients, pts)
        assert np.array_equal(ds.labels, t)

    def test_deterministic(self):
        a = gen_swiss_roll_functional(50, seed=5)
        b = gen_swiss_roll_functional(50, seed=5)
        assert np.array_equal(a.coefficients, b.coefficients)


class TestPhoneme:
    def test_extract(self):
        ds = load_phoneme_extract()
        assert ds.values.shape == (300, 256)
        counts = collections.Counter(ds.labels.tolist())
        assert counts == {"aa": 46, "ao": 72, "dcl": 47, "iy": 77, "sh": 58}

    def test_extract_matches_generator(self):
        fresh = gen_phoneme_surrogate()
        stored = load_phoneme_extract()
        assert np.array_equal(fresh.values, stored.values)
        assert np.array_equal(fresh.grid.points, stored.grid.points)

    def test_full_size_counts(self, tmp_path):
        ds = gen_phoneme_surrogate(1500, seed=1)
        path = write_curves_csv(ds, tmp_path / "full.csv")
        loaded = load_curves_csv(path)
        assert loaded.values.shape == (1500, 256)
        assert dict(collections.Counter(loaded.labels.tolist())) == PHONEME_COUNTS

    def test_truncate(self):
        ds = load_phoneme_extract()
        assert datasets.truncate(ds, 100).values.shape == (300, 100)

    def test_preprocess(self):
        ds = preprocess_phoneme(load_phoneme_extract())
        assert ds.coefficients.shape == (300, 9)
        assert ds.basis.order == 3


def test_single_curve_file(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text("1,2,3,4\n")
    ds = load_curves_csv(path)
    assert len(ds) == 1
    assert ds.grid.points.tolist() == [0, 1, 2, 3]
