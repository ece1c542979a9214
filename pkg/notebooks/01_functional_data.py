"""
Functional data, quadrature and basis smoothing
===============================================

Curves are stored either as samples on a shared grid or as coefficients in
a basis. Both carry the same L2 geometry.
"""

import numpy as np

from fdmap import BSplineBasis, DiscretizedDataset, SamplingGrid
from fdmap.fdata import l1_distance, l2_distance, smooth_to_basis

# an uneven grid gets trapezoid weights that sum to its span
t = np.concatenate([np.linspace(0, 0.5, 40), np.linspace(0.52, 1, 10)])
grid = SamplingGrid(t)
print("weights sum to", grid.weights.sum())

rng = np.random.default_rng(0)
values = np.sin(2 * np.pi * t) + 0.1 * rng.standard_normal((5, t.size))
ds = DiscretizedDataset(grid, values)
print("L2 distance between curves 0 and 1:", l2_distance(0, 1, ds))
print("L1 distance between curves 0 and 1:", l1_distance(0, 1, ds))

# project onto a quadratic B-spline basis with 9 functions
smooth = smooth_to_basis(ds, BSplineBasis((0, 1), n_basis=9, order=3))
print("coefficients:", smooth.coefficients.shape)
print("distance after smoothing, via the Gram matrix:", l2_distance(0, 1, smooth))
