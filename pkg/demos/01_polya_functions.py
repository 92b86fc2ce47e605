"""Modified Polya functions: shape, small-lambda behaviour and log-derivative.

Pi(omega, lam) = exp(-gamma lam^2) / prod_k (1 + alpha_k lam^2) is even,
equals 1 at the origin and decreases in |lam|. Near the origin it behaves like
1 - ||omega|| lam^2, where ||omega|| = gamma + sum(alpha).
"""

import numpy as np

from lkmatrix import OmegaParam, omega_norm, one_minus_polya_bound, polya_eval, polya_log_deriv_closed
from lkmatrix.polya import polya_log_deriv_series

omega = OmegaParam([1.0, 0.25], gamma=0.1)
print(f"omega = {omega}, ||omega|| = {omega_norm(omega)}")

lam = np.linspace(0, 3, 7)
print("\n  lam     Pi(omega, lam)   1 - ||omega|| lam^2")
for x, v in zip(lam, polya_eval(omega, lam)):
    print(f"{x:5.2f}   {v:.10f}    {1 - omega_norm(omega) * x * x:+.6f}")

# The quadratic approximation is also a global bound on 1 - Pi.
s = np.linspace(0, 10, 1001)
gap = one_minus_polya_bound(omega, s) - (1 - polya_eval(omega, s))
print(f"\nmin over s in [0, 10] of 2||omega|| s^2 - (1 - Pi): {gap.min():.3e}  (never negative)")

# The logarithmic derivative has a closed form and, inside the disc
# max(alpha) lam^2 < 1, a power series. Near the edge of the disc the series
# needs many more terms.
print("\n  lam     closed form          series, 64 terms     series, 400 terms")
for x in (0.1, 0.5, 0.9):
    print(f"{x:5.2f}   {polya_log_deriv_closed(omega, x):+.15f}   "
          f"{polya_log_deriv_series(omega, x):+.15f}   {polya_log_deriv_series(omega, x, 400):+.15f}")
