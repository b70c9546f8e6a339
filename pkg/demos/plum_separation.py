"""Separation of variables for the planar fourth-order expression.

With the angular factor A cos 2theta + B sin 2theta the substitution
collapses to the fourth-order radial equation; any other separation
constant leaves uncancelled terms.
"""

import numpy as np

from bessel4.plum import (SeparatedSolution, angular_criticality_check,
                          apply_plum, plum_residual)
from bessel4.solutions import Params, SolutionHandle, SolutionKind

P = Params(1.0)
h = SolutionHandle(SolutionKind.jtype, 1.0, P)
u = SeparatedSolution.from_handle(h, A=1.0, B=0.5)

print("P[u] / u along a ray (theta = 0.4); the ratio is the spectral "
      "value L = 9:")
for r in (0.3, 1.0, 2.5, 5.0):
    val = u.radial.derivs(np.array([r]), 0)[0][0] * u.angular(0.4)
    print(f"  r = {r:4.1f}: {apply_plum(u, r, 0.4) / val:.12f}")

r_grid = np.linspace(0.2, 5.0, 10)
t_grid = np.linspace(0.0, np.pi, 8, endpoint=False)
for kind in (SolutionKind.jtype, SolutionKind.ktype):
    uu = SeparatedSolution.from_handle(SolutionHandle(kind, 1.0, P), A=0.8, B=0.6)
    print(f"max separation residual ({kind.value} radial, 10 x 8 grid): "
          f"{plum_residual(uu, r_grid, t_grid):.2e}")

print("\nthe separation constant is critical:")
for c in (4.0, 1.0, 0.0):
    print(f"  w'' = -{c} w reduces to the radial equation: "
          f"{angular_criticality_check(c)}")
