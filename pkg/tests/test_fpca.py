import numpy as np
import pytest

from fdmap.basis import ClosedFormBasis, FourierBasis
from fdmap.exceptions import (DimensionError, NonInvertibleMetricError,
                              RepresentationMismatchError)
from fdmap.fdata import BasisDataset, DiscretizedDataset, SamplingGrid
from fdmap.fpca import fpca, fpca_basis, fpca_discretized, fpca_scores, metric_roots

from conftest import random_curves


def brute_force_pca(x):
    """Plain PCA: eigendecomposition of the sample covariance of rows of x."""
    xc = x - x.mean(axis=0)
    cov = xc.T @ xc / x.shape[0]
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals)[::-1]
    return evals[order], xc @ evecs[:, order]


def match_sign(a, b):
    s = np.sign(np.sum(a * b, axis=0))
    return a * s


def test_identical_curves():
    grid = SamplingGrid(np.linspace(0, 1, 20))
    ds = DiscretizedDataset(grid, np.tile(np.sin(grid.points), (5, 1)))
    m = fpca_discretized(ds, 3)
    assert np.all(np.abs(m.eigenvalues) <= 1e-14)


def test_rank_one(rng):
    t = np.linspace(0, 1, 50)
    a = rng.standard_normal(12)
    ds = DiscretizedDataset(SamplingGrid(t), np.outer(a, np.cos(3 * t)))
    m = fpca_discretized(ds, 2)
    assert m.eigenvalues[1] / m.eigenvalues[0] <= 1e-10
    ratio = m.scores[:, 0] / (a - a.mean())
    assert np.allclose(ratio, ratio[0])


def test_uniform_grid_matches_pca_up_to_sqrt_h(rng):
    # unit weights: W = I, so scores are plain PCA scores
    values = rng.standard_normal((15, 8))
    ds = DiscretizedDataset(SamplingGrid.unit(8), values)
    m = fpca_discretized(ds, 4)
    evals, scores = brute_force_pca(values)
    assert np.allclose(m.eigenvalues, evals[:4], atol=1e-10)
    assert np.allclose(match_sign(m.scores, scores[:, :4]), scores[:, :4], atol=1e-8)


def test_orthonormal_basis_is_pca(rng):
    c = rng.standard_normal((20, 5))
    ds = BasisDataset(FourierBasis((0, 1), 5), c)
    m = fpca_basis(ds, 5)
    evals, scores = brute_force_pca(c)
    assert np.allclose(m.eigenvalues, evals, atol=1e-5)
    assert np.allclose(match_sign(m.scores, scores), scores, atol=1e-5)


def test_cross_representation(rng):
    basis = ClosedFormBasis(["sin(4x)", "cos(8x)", "sin(12x)"])
    coef = BasisDataset(basis, rng.standard_normal((25, 3)))
    fine = coef.to_discretized(np.linspace(0, 1, 1001))
    a = fpca_basis(coef, 2).scores
    b = fpca_discretized(fine, 2).scores
    assert np.allclose(match_sign(b, a), a, atol=1e-4)


def test_full_rank_cumulative(fourier_data):
    m = fpca(fourier_data, 5)
    assert m.cumulative_explained_variance[-1] == pytest.approx(1.0, abs=1e-10)
    assert np.all(np.diff(m.eigenvalues) <= 1e-12)
    assert np.all(m.explained_variance_ratio >= 0)


def test_w_orthonormal(curves):
    m = fpca(curves, 4)
    gram = (m.components * curves.grid.weights) @ m.components.T
    assert np.allclose(gram, np.eye(4), atol=1e-8)


def test_w_orthonormal_basis(fourier_data):
    m = fpca(fourier_data, 3)
    g = m.components @ m.metric @ m.components.T
    assert np.allclose(g, np.eye(3), atol=1e-8)


def test_scores(curves):
    m = fpca(curves, 3)
    assert np.abs(m.scores.mean(axis=0)).max() <= 1e-10
    assert np.allclose(m.scores.var(axis=0), m.eigenvalues, atol=1e-8)
    assert np.allclose(fpca_scores(m, curves), m.scores, atol=1e-12)


def test_reconstruction(rng):
    t = np.linspace(0, 1, 40)
    basis_curves = np.vstack([np.sin(2 * np.pi * t), t ** 2, np.cos(5 * t)])
    values = rng.standard_normal((10, 3)) @ basis_curves
    ds = DiscretizedDataset(SamplingGrid(t), values)
    m = fpca(ds, 3)
    assert np.allclose(m.reconstruct(m.scores), values, atol=1e-6)
    errors = [np.linalg.norm(m.reconstruct(m.scores[:, :k]) - values) for k in (1, 2, 3)]
    assert errors[0] >= errors[1] >= errors[2]


def test_components_on_grid(fourier_data):
    m = fpca(fourier_data, 2)
    pts = np.linspace(0, 1, 7)
    expected = m.components @ fourier_data.basis.evaluate(pts).T
    assert np.allclose(m.components_on_grid(pts), expected)


def test_dimension_errors(curves):
    with pytest.raises(DimensionError):
        fpca(curves, 0)
    with pytest.raises(DimensionError):
        fpca(curves, len(curves) + 1)


def test_mismatch(curves, rng):
    m = fpca(curves, 2)
    other = random_curves(rng, m=30)
    with pytest.raises(RepresentationMismatchError):
        m.transform(other)


def test_singular_gram():
    ds = BasisDataset(ClosedFormBasis(["one", "one"]), [[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]])
    with pytest.raises(NonInvertibleMetricError):
        fpca_basis(ds, 1)


def test_metric_roots():
    w = np.array([[2.0, 0.5], [0.5, 1.0]])
    half, inv_half = metric_roots(w)
    assert np.allclose(half @ half, w)
    assert np.allclose(inv_half @ w @ inv_half, np.eye(2))


def test_embedding(fourier_data):
    emb = fpca(fourier_data, 2).embedding()
    assert emb.method == "fpca"
    assert emb.coordinates.shape == (10, 2)
