"""
Functional PCA on two representations
=====================================

The same Swiss Roll curves analysed as basis coefficients and as samples.
"""

import numpy as np

from fdmap import fpca
from fdmap.datasets import gen_swiss_roll_functional

ds = gen_swiss_roll_functional(300, seed=0)
model = fpca(ds, 3)
print("eigenvalues:", np.round(model.eigenvalues, 4))
print("explained variance:", np.round(model.explained_variance_ratio, 4))

sampled = ds.to_discretized(np.linspace(0, 1, 400))
other = fpca(sampled, 3)
print("eigenvalues from samples:", np.round(other.eigenvalues, 4))

# score variance equals the eigenvalue
print("score variances:", np.round(model.scores.var(axis=0), 4))

# principal component functions on a grid
print(model.components_on_grid(np.linspace(0, 1, 5)).round(3))
