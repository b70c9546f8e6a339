"""The generalized Hankel pair in action on the fixture suite.

Forward-transforms each test function, checks the Parseval and moment
identities, and reconstructs values through the inverse transform.
"""

import numpy as np

from bessel4.fixtures import load_suite
from bessel4.solutions import Params
from bessel4.transforms import (generalized_forward, generalized_parseval,
                                generalized_roundtrip, moment_identity_defect,
                                vanishing_moment)

P = Params(1.0)
for fx in load_suite():
    print(f"--- {fx.name} ({fx.expression}), M = {P.M}")
    lams = np.array([0.25, 1.0, 4.0, 16.0])
    fwd = generalized_forward(fx, P, lams, x_cut=fx.x_cut)
    for lam, g in zip(lams, fwd.values):
        print(f"  g({lam:5.2f}) = {g:+.8f}")
    lhs, rhs = generalized_parseval(fx, P, x_cut=fx.x_cut)
    print(f"  Parseval: spectral side {lhs:.8f}  function side {rhs:.8f}"
          f"  (rel defect {abs(lhs - rhs) / abs(rhs):.1e})")
    print(f"  moment identity defect |int g dn - f(0)|: "
          f"{moment_identity_defect(fx, P, x_cut=fx.x_cut):.1e}")
    pts = [0.0, 0.5, 1.5]
    rt = generalized_roundtrip(fx, P, pts, x_cut=fx.x_cut)
    for p, v in zip(pts, rt.values):
        truth = float(np.atleast_1d(fx(p))[0])
        print(f"  roundtrip at x = {p}: {v:+.8f}  (true {truth:+.8f})")
    print()

print("vanishing spectral moment of the regular solution:")
for eta in (0.5, 1.0, 5.0):
    print(f"  eta = {eta}: {vanishing_moment(eta, P):+.2e}")
