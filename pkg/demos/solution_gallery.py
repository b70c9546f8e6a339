"""A tour of the four fourth-order Bessel-type solutions.

Prints a small table of values, shows that each solution satisfies the
equation to near machine precision, and watches jtype collapse onto the
classical J0 as M shrinks.
"""

import numpy as np

from bessel4 import classical as cb
from bessel4.forms import residual_expression
from bessel4.solutions import (Params, SolutionHandle, SolutionKind,
                               eval_solution, spectral_value)

lam, M = 1.0, 1.0
params = Params(M)
print(f"lambda = {lam}, M = {M}, spectral value L = "
      f"{spectral_value(lam, params):.6g}, gamma = {params.gamma:.6g}\n")

xs = np.array([0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
handles = {k.value: SolutionHandle(k, lam, params) for k in SolutionKind}
print(f"{'x':>6} {'jtype':>13} {'ytype':>13} {'itype':>13} {'ktype':>13}")
for x in xs:
    row = [eval_solution(handles[k], float(x))
           for k in ("jtype", "ytype", "itype", "ktype")]
    print(f"{x:6.2f} " + " ".join(f"{v:13.6g}" for v in row))

print("\nequation residuals on 40 log-spaced points in [0.01, 30]:")
grid = np.geomspace(0.01, 30.0, 40)
L = spectral_value(lam, params)
for k in SolutionKind:
    r = residual_expression(handles[k.value], L, grid, params)
    print(f"  {k.value:6s} max relative residual {r:.3e}")

print("\nthe regular pair is normalized at the origin:")
for k in ("jtype", "itype"):
    print(f"  {k}(0) = {eval_solution(handles[k], 0.0):.15f}")

print("\nclassical limit: max |jtype - J0| on [0.1, 10] as M shrinks")
xs = np.linspace(0.1, 10.0, 100)
for m in (1.0, 0.1, 0.01, 0.001):
    h = SolutionHandle(SolutionKind.jtype, lam, Params(m))
    dev = np.max(np.abs(eval_solution(h, xs) - cb.j0(xs)))
    print(f"  M = {m:7.3f}: {dev:.3e}")
