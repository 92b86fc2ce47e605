"""Positive and negative type, checked on Gram matrices.

Mixtures of spherical functions are of positive type; functions of the form
psi = psi0 + A tr(xi^2) + integral (1 - phi) d nu are of negative type, so that
exp(-t psi) is of positive type for every t > 0.
"""

import numpy as np

from lkmatrix import (
    DiscreteOmegaMeasure,
    LevyTriple,
    OmegaParam,
    bochner_kernel,
    lk_kernel,
    negative_type_check,
    positive_type_check,
    sample_points,
    schoenberg_check,
    trace_square,
)

rng = np.random.default_rng(2)
points = sample_points(rng, 10, 3)

mu = DiscreteOmegaMeasure(((OmegaParam([0.5]), 0.4), (OmegaParam([], 2.0), 0.6)))
report = positive_type_check(bochner_kernel(mu), points)
print(f"mixture of spherical functions: min eigenvalue {report.min_eig:.3e} -> {report.verdict}")

triple = LevyTriple(0.1, 0.5, [(OmegaParam([1.0]), 2.0), (OmegaParam([], 0.3), 0.5)])
report = negative_type_check(lk_kernel(triple), points)
print(f"Levy-Khinchin function: max projected eigenvalue {report.max_eig:.3e} -> {report.verdict}")
for t, r in zip((0.1, 1.0, 10.0), schoenberg_check(lk_kernel(triple), points, [0.1, 1.0, 10.0])):
    print(f"  exp(-{t:g} psi): min eigenvalue {r.min_eig:.3e} -> {r.verdict}")

# tr(xi^2)^2 grows too fast to be of negative type; the check notices.
report = negative_type_check(lambda xi: trace_square(xi) ** 2, points)
print(f"\ntr(xi^2)^2: max projected eigenvalue {report.max_eig:.3e} -> {report.verdict}")
