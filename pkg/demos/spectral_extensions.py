"""The eigenvalue-to-boundary-condition sweep.

Every mu < 0 in the real-decay window is the single eigenvalue of
exactly one self-adjoint boundary condition -alpha f''(0) + 2 beta f(0)
= 0; the sweep below constructs the decaying eigenfunction in closed
form and reads the condition off its boundary data.  alpha never
vanishes: the Friedrichs condition (f(0) = 0) has no eigenvalues.
"""

import numpy as np

from bessel4.forms import residual_expression
from bessel4.solutions import Params
from bessel4.spectral import (decaying_regular_solution,
                              extension_for_eigenvalue, oscillation_floor,
                              sk_no_eigenvalue_scan)

P = Params(1.0)
print(f"{'mu':>10} {'alpha':>12} {'beta':>12} {'f(0)':>12} {'residual':>10}")
grid = np.geomspace(0.02, 20.0, 25)
for mu in -np.geomspace(15.0, 1e-3, 10):
    cand = decaying_regular_solution(float(mu), P)
    e = extension_for_eigenvalue(float(mu), P)
    res = residual_expression(cand.fn, float(mu), grid, P)
    print(f"{mu:10.4f} {e.alpha:12.8f} {e.beta:12.8f} "
          f"{cand.boundary.f0:12.6f} {res:10.1e}")

print("\nno eigenvalues for the jump-space operator "
      "(normalized defect of the eigen relation):")
for row in sk_no_eigenvalue_scan(0.5, P, [-10.0, -1.0, -0.1, -0.01]):
    print(f"  mu = {row['mu']:8.3f}: defect {row['defect']:.3f}")

print("\npositive spectral values oscillate without decay "
      "(sqrt(x (J^2 + Y^2)) floor on [50, 100]):")
for L in (1.0, 4.0, 25.0):
    print(f"  L = {L:5.1f}: floor {oscillation_floor(L, P):.4f}")
