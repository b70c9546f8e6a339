"""Fourth-order Bessel-type special functions and their operator calculus.

The library covers the closed-form solution basis of the fourth-order
Bessel-type equation (x y'')'' - ((9/x + 8x/M) y')' = Lambda x y on
(0, infinity), Frobenius series at the regular singular origin, the
symplectic/Dirichlet boundary-form calculus, the self-adjoint extension
family and its eigenvalue map, the generalized Hankel transform pair on
the weighted and jump measure spaces, and the separable fourth-order
partial differential expression in the plane.
"""

from .classical import BesselKind, eval_bessel, eval_bessel_derivative
from .solutions import (
    CDPair,
    Params,
    SolutionHandle,
    SolutionKind,
    cd_params,
    eval_solution,
    eval_solution_derivs,
    spectral_value,
)

__version__ = "0.1.0"

__all__ = [
    "BesselKind",
    "eval_bessel",
    "eval_bessel_derivative",
    "Params",
    "CDPair",
    "SolutionHandle",
    "SolutionKind",
    "cd_params",
    "eval_solution",
    "eval_solution_derivs",
    "spectral_value",
    "__version__",
]
