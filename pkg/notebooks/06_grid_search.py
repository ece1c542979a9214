"""
Hyperparameter search
=====================

Every configuration is fitted and scored; failures are kept as rows.
"""

from fdmap.datasets import gen_moons_functional
from fdmap.gridsearch import SearchSpace, run_grid

ds = gen_moons_functional(200)
space = SearchSpace.toy()
result = run_grid(ds, space, scorer="silhouette", method="fdm")
print(f"{len(result)} configurations")
for row in result.rows[:5]:
    print(f"{row['kernel']:9s} sigma={row['sigma']:<5} alpha={row['alpha']:<5} "
          f"silhouette={row['score']:.3f}")

iso = run_grid(ds, space, scorer="1nn", method="isomap")
print("best isomap k:", iso.best["n_neighbors"], "score", round(iso.best["score"], 3))
