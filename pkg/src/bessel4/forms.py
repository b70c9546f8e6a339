"""The fourth-order expression, its boundary forms, and endpoint limits.

Central objects:

* ``apply_expression``: (x f'')'' - ((9/x + 8x/M) f')', expanded once to
  x f'''' + 2 f''' - (9/x + 8x/M) f'' + (9/x^2 - 8/M) f' and evaluated
  from analytic derivative bundles; near the origin it switches to exact
  symbolic application on a local log-power series, because the expanded
  form cancels x^-5-sized pieces down to O(1) there and float evaluation
  would drown the residual in rounding noise.
* the symplectic form [f, g](x) from the Green identity and the Dirichlet
  form [f, g]_D(x), with interval checkers for both integral identities.
* ``boundary_data``: the limits f(0), f''(0) by Richardson extrapolation
  on a ratio-2 geometric grid; the repeated-exponent ladder (2, 2, 4, 4)
  absorbs the x^(2k) ln x corrections that maximal-domain functions
  carry.  Both limits are cross-checked against the boundary-form
  identities [f,1](0+) = -8 f''(0) and [f,x^2](0+) = 16 f(0).
* ``apply_jump_operator``: the operator of the jump space, equal to
  -8 f''(0)/k at the origin and x^-1 (expression) elsewhere.
* ``apply_higher_order``: the sixth- and eighth-order analogues.

All bundles are immutable views; everything here is pure.
"""

from dataclasses import dataclass

import numpy as np

from .logseries import DiffOp, LogPowerSeries
from .quadrature import adaptive_quad
from .solutions import (Params, SolutionHandle, eval_solution_derivs,
                        series_radius, solution_series)

# ---------------------------------------------------------------------------
# function bundles


class FnBundle:
    """Value-and-derivatives view of a function on (0, inf).

    Subclasses provide ``derivs(x, order)`` returning rows d^0..d^order on
    the points x, and may expose a local log-power series near 0 through
    ``local_series(x)`` plus the radius where it is valid.
    """

    series_valid_below = 0.0

    def derivs(self, x, order=4):
        raise NotImplementedError

    def local_series(self, x=0.0):
        return None

    def value(self, x):
        return self.derivs(x, 0)[0]

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = self.derivs(arr, 0)[0]
        return float(out[0]) if np.ndim(x) == 0 else out


class SolutionBundle(FnBundle):
    """Bundle over one of the four closed-form solutions."""

    def __init__(self, handle: SolutionHandle):
        self.handle = handle
        self.series_valid_below = series_radius(handle)

    def derivs(self, x, order=4):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        return np.atleast_2d(eval_solution_derivs(self.handle, arr, order))

    def local_series(self, x=0.0):
        if np.all(np.atleast_1d(x) < self.series_valid_below):
            return solution_series(self.handle)
        return None


class SeriesBundle(FnBundle):
    """Exact log-power series valid on all of (0, inf).

    This is how the patched multipliers 1, x, x^2 and the Frobenius basis
    enter the boundary-form calculus: their near-origin behaviour is the
    whole point, and the patching region far from 0 never matters for
    0+ limits.
    """

    def __init__(self, series: LogPowerSeries, label=""):
        self.series = series
        self.label = label
        self.series_valid_below = np.inf

    @classmethod
    def monomial(cls, power, coeff=1.0):
        return cls(LogPowerSeries.monomial(power, coeff), label=f"x^{power}")

    def derivs(self, x, order=4):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        stack = self.series.derivatives(order)
        return np.vstack([np.atleast_1d(s.evaluate(arr)) for s in stack])

    def local_series(self, x=0.0):
        return self.series


class PolyGaussBundle(FnBundle):
    """p(x) * exp(-sigma x^2), with polynomial p given by coefficients.

    Derivatives are polynomial algebra, hence exact; these bundles build
    the smooth minimal-domain test family (leading power >= 4 keeps
    x^-1 * expression square-integrable near 0).
    """

    def __init__(self, coeffs, sigma=0.5):
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.sigma = float(sigma)
        self._polys = [np.polynomial.Polynomial(self.coeffs)]

    def _poly(self, n):
        while len(self._polys) <= n:
            p = self._polys[-1]
            # (p e^{-s x^2})' = (p' - 2 s x p) e^{-s x^2}
            self._polys.append(p.deriv() - 2.0 * self.sigma
                               * p * np.polynomial.Polynomial([0.0, 1.0]))
        return self._polys[n]

    def derivs(self, x, order=4):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        damp = np.exp(-self.sigma * arr * arr)
        return np.vstack([self._poly(n)(arr) * damp for n in range(order + 1)])

    def boundary_exact(self):
        c = self.coeffs
        f0 = c[0] if len(c) > 0 else 0.0
        f2 = 2.0 * (c[2] if len(c) > 2 else 0.0) - 2.0 * self.sigma * c[0]
        return f0, f2


class ProductBundle(FnBundle):
    """Pointwise product of two bundles, derivatives by the Leibniz rule.

    The main use is smooth cutoffs: solution * (plateau that is 1 near 0
    and vanishes beyond a finite radius) keeps the boundary data of the
    solution while forcing square-integrability at infinity.
    """

    def __init__(self, left: FnBundle, right: FnBundle):
        self.left = left
        self.right = right
        # below a plateau's flat region the product IS the left factor,
        # so the left near-origin series stays valid there
        self.series_valid_below = min(left.series_valid_below,
                                      getattr(right, "flat_until", 0.0))

    def derivs(self, x, order=4):
        import math as _math
        dl = self.left.derivs(x, order)
        dr = self.right.derivs(x, order)
        rows = []
        for n in range(order + 1):
            acc = None
            for i in range(n + 1):
                term = _math.comb(n, i) * dl[i] * dr[n - i]
                acc = term if acc is None else acc + term
            rows.append(acc)
        return np.vstack(rows)

    def local_series(self, x=0.0):
        if np.all(np.atleast_1d(x) < self.series_valid_below):
            return self.left.local_series(x)
        return None


class PlateauBundle(FnBundle):
    """Smooth plateau: exactly 1 on [0, a], exactly 0 on [b, inf).

    The ramp is the degree-9 polynomial smoothstep (C^4 at both
    junctions), so every derivative used here is an exact polynomial;
    multiplying by the plateau changes nothing near the origin and
    forces square-integrability at infinity.
    """

    _STEP = np.polynomial.Polynomial([0, 0, 0, 0, 0, 126, -420, 540, -315, 70])

    def __init__(self, a=1.0, b=3.0):
        if not 0.0 < a < b:
            raise ValueError("need 0 < a < b")
        self.a, self.b = float(a), float(b)
        self.series_valid_below = 0.0
        self.flat_until = self.a
        self._polys = [self._STEP]

    def _poly(self, n):
        while len(self._polys) <= n:
            self._polys.append(self._polys[-1].deriv())
        return self._polys[n]

    def derivs(self, x, order=4):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        width = self.b - self.a
        s = np.clip((x - self.a) / width, 0.0, 1.0)
        ramp = (x > self.a) & (x < self.b)
        rows = [np.where(x <= self.a, 1.0, np.where(ramp, 1.0 - self._STEP(s), 0.0))]
        for n in range(1, order + 1):
            dv = np.where(ramp, -self._poly(n)(s) / width ** n, 0.0)
            rows.append(dv)
        return np.vstack(rows)


class LinComboBundle(FnBundle):
    def __init__(self, weights, bundles):
        self.weights = list(map(float, weights))
        self.bundles = list(bundles)
        self.series_valid_below = min(b.series_valid_below for b in bundles)

    def derivs(self, x, order=4):
        out = None
        for w, b in zip(self.weights, self.bundles):
            d = w * b.derivs(x, order)
            out = d if out is None else out + d
        return out

    def local_series(self, x=0.0):
        if not np.all(np.atleast_1d(x) < self.series_valid_below):
            return None
        acc = LogPowerSeries()
        for w, b in zip(self.weights, self.bundles):
            s = b.local_series(x)
            if s is None:
                return None
            acc = acc + s.scale(w)
        return acc


def as_bundle(obj) -> FnBundle:
    if isinstance(obj, FnBundle):
        return obj
    if isinstance(obj, SolutionHandle):
        return SolutionBundle(obj)
    if isinstance(obj, LogPowerSeries):
        return SeriesBundle(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a function bundle")


# ---------------------------------------------------------------------------
# the fourth-order expression

def expression_op(params: Params, Lambda=None) -> DiffOp:
    """x D^4 + 2 D^3 - (9/x + 8x/M) D^2 + (9/x^2 - 8/M) D [- Lambda x]."""
    m = params.M
    ops = [(1, 4, 1), (0, 3, 2), (-1, 2, -9), (1, 2, -8.0 / m),
           (-2, 1, 9), (0, 1, -8.0 / m)]
    if Lambda is not None:
        ops.append((1, 0, -float(Lambda)))
    return DiffOp(ops)


def apply_expression(f, x, params: Params):
    """(x f'')'' - ((9/x + 8x/M) f')' at the points x."""
    f = as_bundle(f)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    op = expression_op(params)
    small = arr < f.series_valid_below
    out = np.empty_like(arr)
    if np.any(small):
        series = f.local_series(arr[small])
        if series is not None:
            out[small] = np.atleast_1d(op.apply(series).evaluate(arr[small]))
        else:
            small = np.zeros_like(small)
    if np.any(~small):
        d = f.derivs(arr[~small], 4)
        out[~small] = op.evaluate_on(d, arr[~small])
    return float(out[0]) if np.ndim(x) == 0 else out


def residual_expression(f, Lambda, grid, params: Params):
    """max over the grid of |expression[f] - Lambda x f| / (1 + |Lambda x f|)."""
    if isinstance(f, SolutionHandle):
        f = SolutionBundle(f)
    f = as_bundle(f)
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    op_res = None
    worst = 0.0
    small = grid < f.series_valid_below
    if np.any(small):
        series = f.local_series(grid[small])
        if series is not None:
            op_res = expression_op(params, Lambda=Lambda).apply(series)
            num = np.abs(np.atleast_1d(op_res.evaluate(grid[small])))
            den = 1.0 + np.abs(Lambda * grid[small]
                               * np.atleast_1d(series.evaluate(grid[small])))
            worst = float(np.max(num / den))
        else:
            small = np.zeros_like(small)
    if np.any(~small):
        xs = grid[~small]
        d = f.derivs(xs, 4)
        lhs = expression_op(params).evaluate_on(d, xs)
        rhs = Lambda * xs * d[0]
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs)))))
    return worst


# ---------------------------------------------------------------------------
# boundary forms

def symplectic_form(f, g, x, params: Params):
    """[f, g](x) = g (x f'')' - (x g'')' f - x (g' f'' - g'' f')
    - (9/x + 8x/M) (g f' - g' f), for real-valued bundles."""
    f, g = as_bundle(f), as_bundle(g)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    df = f.derivs(arr, 3)
    dg = g.derivs(arr, 3)
    w = 9.0 / arr + 8.0 * arr / params.M
    val = (dg[0] * (arr * df[3] + df[2])
           - (arr * dg[3] + dg[2]) * df[0]
           - arr * (dg[1] * df[2] - dg[2] * df[1])
           - w * (dg[0] * df[1] - dg[1] * df[0]))
    return float(val[0]) if np.ndim(x) == 0 else val


def dirichlet_form(f, g, x, params: Params):
    """[f, g]_D(x) = -g (x f'')' + g' x f'' + g (9/x + 8x/M) f'."""
    f, g = as_bundle(f), as_bundle(g)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    df = f.derivs(arr, 3)
    dg = g.derivs(arr, 1)
    w = 9.0 / arr + 8.0 * arr / params.M
    val = (-dg[0] * (arr * df[3] + df[2]) + dg[1] * arr * df[2]
           + dg[0] * w * df[1])
    return float(val[0]) if np.ndim(x) == 0 else val


def greens_check(f, g, a, b, params: Params, tol=1e-9):
    """Defect of the Green identity on [a, b]; small for smooth bundles."""
    f, g = as_bundle(f), as_bundle(g)

    def integrand(x):
        return (g.derivs(x, 0)[0] * apply_expression(f, x, params)
                - f.derivs(x, 0)[0] * apply_expression(g, x, params))

    quad = adaptive_quad(integrand, a, b, tol=tol)
    boundary = symplectic_form(f, g, b, params) - symplectic_form(f, g, a, params)
    return abs(quad.value - boundary)


def dirichlet_check(f, g, a, b, params: Params, tol=1e-9):
    """Defect of the Dirichlet identity on [a, b]."""
    f, g = as_bundle(f), as_bundle(g)

    def energy(x):
        df = f.derivs(x, 2)
        dg = g.derivs(x, 2)
        return x * df[2] * dg[2] + (9.0 / x + 8.0 * x / params.M) * df[1] * dg[1]

    def rhs_int(x):
        return apply_expression(f, x, params) * g.derivs(x, 0)[0]

    lhs = adaptive_quad(energy, a, b, tol=tol).value
    boundary = dirichlet_form(f, g, b, params) - dirichlet_form(f, g, a, params)
    rhs = adaptive_quad(rhs_int, a, b, tol=tol).value
    return abs(lhs - boundary - rhs)


# ---------------------------------------------------------------------------
# boundary limits at 0+

@dataclass(frozen=True)
class BoundaryData:
    f0: float
    f2: float


class NotInMaximalDomain(ValueError):
    """The 0+ cross-checks failed: the function has no boundary data."""


_ONE = SeriesBundle.monomial(0)
_XSQ = SeriesBundle.monomial(2)


def _ladder(values, exponents=(2, 2, 4, 4)):
    """Richardson on a ratio-2 grid; values ordered largest step first.

    The doubled exponents eliminate the h^2 and h^4 blocks twice each,
    which absorbs h^(2k) ln h corrections alongside the pure powers.
    """
    seq = list(map(float, values))
    for e in exponents:
        fac = 2.0 ** e
        seq = [(fac * seq[i + 1] - seq[i]) / (fac - 1.0)
               for i in range(len(seq) - 1)]
        if len(seq) == 1:
            break
    return seq[-1]


def boundary_data(f, params: Params, x0=1e-2, levels=4, check_tol=1e-5,
                  check=True) -> BoundaryData:
    """Extrapolated limits f(0+), f''(0+) for a maximal-domain function.

    Cross-checks against the symplectic-form identities; a relative
    mismatch above check_tol raises NotInMaximalDomain.
    """
    f = as_bundle(f)
    grid = x0 / 2.0 ** np.arange(levels + 1)
    d = f.derivs(grid, 2)
    f0 = _ladder(d[0])
    f2 = _ladder(d[2])
    if check:
        s1 = _ladder(symplectic_form(f, _ONE, grid, params))
        s2 = _ladder(symplectic_form(f, _XSQ, grid, params))
        scale = 1.0 + abs(f0) + abs(f2)
        if abs(s1 - (-8.0 * f2)) > 8.0 * check_tol * scale \
                or abs(s2 - 16.0 * f0) > 16.0 * check_tol * scale:
            raise NotInMaximalDomain(
                f"boundary cross-checks failed: [f,1](0+)={s1:.3e} vs "
                f"-8 f''(0)={-8.0 * f2:.3e}; [f,x^2](0+)={s2:.3e} vs "
                f"16 f(0)={16.0 * f0:.3e}")
    return BoundaryData(f0=float(f0), f2=float(f2))


# ---------------------------------------------------------------------------
# jump-space operator and higher-order expressions

def apply_jump_operator(f, k, x, params: Params, boundary: BoundaryData = None):
    """Value of the jump-space operator at x (x = 0 uses -8 f''(0) / k)."""
    if k <= 0.0:
        raise ValueError("k must be positive")
    f = as_bundle(f)
    scalar = np.ndim(x) == 0
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(arr)
    zero = arr == 0.0
    if np.any(zero):
        if boundary is None:
            exact = getattr(f, "boundary_exact", None)
            if exact is not None:
                f0, f2 = exact()
                boundary = BoundaryData(f0, f2)
            else:
                boundary = boundary_data(f, params)
        out[zero] = -8.0 / k * boundary.f2
    if np.any(~zero):
        xs = arr[~zero]
        out[~zero] = apply_expression(f, xs, params) / xs
    return float(out[0]) if scalar else out


def apply_higher_order(order, f, x, params: Params):
    """The sixth- or eighth-order Lagrange-symmetric expression at x.

    Needs derivative data to the matching order; accepts an FnBundle whose
    ``derivs`` honours order 6 or 8, or a LogPowerSeries bundle.
    """
    from .frobenius import higher_order_op  # local import to avoid a cycle
    op = higher_order_op(order, params)
    f = as_bundle(f)
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    series = f.local_series(arr) if np.all(arr < f.series_valid_below) else None
    if series is not None:
        out = np.atleast_1d(op.apply(series).evaluate(arr))
    else:
        d = f.derivs(arr, order)
        out = op.evaluate_on(d, arr)
    return float(out[0]) if np.ndim(x) == 0 else out


def dirichlet_integral(f, params: Params, upper=40.0, tol=1e-9):
    """integral over (0, upper) of x f''^2 + (9/x + 8x/M) f'^2,
    with the [upper, 2*upper] segment returned as a tail estimate."""
    f = as_bundle(f)

    def energy(x):
        d = f.derivs(x, 2)
        return x * d[2] ** 2 + (9.0 / x + 8.0 * x / params.M) * d[1] ** 2

    main = adaptive_quad(energy, 0.0, upper, tol=tol)
    tail = adaptive_quad(energy, upper, 2.0 * upper, tol=tol)
    return main.value + tail.value, abs(tail.value)
