"""
Counting and sampling affine subspaces
======================================

The number of k-dimensional subspaces of F_q^n is a Gaussian binomial.
Sampling draws k random vectors until they are independent, which is
exactly uniform; a histogram over all lines of F_3^2 shows it.
"""

from collections import Counter

import numpy as np

from varsample import (
    Field,
    RandomSource,
    count_affine_subspaces,
    count_linear_subspaces,
    enumerate_affine_subspaces,
    sample_affine_subspace,
)

for n, k, q in [(2, 1, 3), (4, 2, 3), (3, 1, 5), (4, 2, 101)]:
    n1 = count_linear_subspaces(n, k, q)
    n2 = count_affine_subspaces(n, k, q)
    print(f"n={n} k={k} q={q}: linear {n1}, affine {n2}, N1/q^(k(n-k)) = {n1 / q ** (k * (n - k)):.4f}")

F = Field(3)
lines = enumerate_affine_subspaces(F, 2, 1)
print("distinct lines in F_3^2:", len(lines))

rng = RandomSource(3)
hits = Counter(sample_affine_subspace(F, 2, 1, rng).canonical() for _ in range(12_000))
freq = np.array([hits[a.canonical()] for a in lines])
print("counts per line:", freq.tolist())
print("chi-square statistic:", round(float(((freq - freq.mean()) ** 2 / freq.mean()).sum()), 2), "on", len(lines) - 1, "dof")
