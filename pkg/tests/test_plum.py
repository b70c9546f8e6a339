"""Planar expression and separation of variables."""

import numpy as np
import pytest

from bessel4 import forms as F
from bessel4 import plum
from bessel4.solutions import Params, SolutionHandle, SolutionKind

P1 = Params(1.0)


def test_zero_solution():
    zero = F.SeriesBundle(F.LogPowerSeries({}))
    u = plum.SeparatedSolution(radial=zero, A=1.0, B=1.0, params=P1, Lambda=0.0)
    assert plum.apply_plum(u, 1.0, 0.3) == 0.0


@pytest.mark.parametrize("kind", [SolutionKind.jtype, SolutionKind.ktype])
@pytest.mark.parametrize("amps", [(1.0, 0.0), (0.3, -0.8)])
def test_separation_identity_on_polar_grid(kind, amps):
    h = SolutionHandle(kind, 1.0, P1)
    u = plum.SeparatedSolution.from_handle(h, A=amps[0], B=amps[1])
    r_grid = np.linspace(0.2, 5.0, 10)
    t_grid = np.linspace(0.0, np.pi, 8, endpoint=False)
    assert plum.plum_residual(u, r_grid, t_grid) < 1e-5


def test_linearity_of_the_expression():
    h1 = SolutionHandle(SolutionKind.jtype, 1.0, P1)
    h2 = SolutionHandle(SolutionKind.ktype, 1.0, P1)
    u1 = plum.SeparatedSolution.from_handle(h1)
    u2 = plum.SeparatedSolution.from_handle(h2)
    both = plum.SeparatedSolution(
        radial=F.LinComboBundle([1.0, 1.0],
                                [F.SolutionBundle(h1), F.SolutionBundle(h2)]),
        A=1.0, B=0.0, params=P1, Lambda=h1.Lambda)
    r, th = 1.4, 0.6
    assert plum.apply_plum(both, r, th) == pytest.approx(
        plum.apply_plum(u1, r, th) + plum.apply_plum(u2, r, th), rel=1e-12)


def test_angular_direction_is_exact():
    h = SolutionHandle(SolutionKind.jtype, 1.0, P1)
    u = plum.SeparatedSolution.from_handle(h, A=1.0, B=0.3)
    thetas = np.linspace(0.1, 3.0, 9)
    pr = plum.apply_plum(u, np.array([1.3]), thetas).ravel()
    w = u.angular(thetas)
    ratio = pr / w
    assert (ratio.max() - ratio.min()) / abs(ratio.mean()) < 1e-12


def test_separation_residual_cases():
    sb = F.SolutionBundle(SolutionHandle(SolutionKind.jtype, 1.0, P1))
    grid = np.linspace(0.5, 5.0, 11)
    assert plum.separation_residual(sb, P1, 9.0, grid) < 1e-6
    one = F.SeriesBundle.monomial(0)
    assert plum.separation_residual(one, P1, 0.0, grid) == 0.0
    # v = x^2 at Lambda = 0 leaves exactly -4 gamma
    xsq = F.SeriesBundle.monomial(2)
    d = xsq.derivs(grid, 4)
    g = P1.gamma
    resid = d[4] + 2 / grid * d[3] - (9 / grid ** 2 + g) * d[2] \
        + (9 / grid ** 3 - g / grid) * d[1]
    assert np.allclose(resid, -4.0 * g)


def test_radial_matches_symmetric_form_expansion():
    sb = F.SolutionBundle(SolutionHandle(SolutionKind.ktype, 1.0, P1))
    grid = np.linspace(0.5, 5.0, 9)
    d = sb.derivs(grid, 4)
    g = P1.gamma
    radial = d[4] + 2 / grid * d[3] - (9 / grid ** 2 + g) * d[2] \
        + (9 / grid ** 3 - g / grid) * d[1]
    lagrange = F.apply_expression(sb, grid, P1) / grid
    assert np.max(np.abs(radial - lagrange)) < 1e-10


def test_angular_criticality():
    assert plum.angular_criticality_check(4.0) is True
    assert plum.angular_criticality_check(1.0) is False
    assert plum.angular_criticality_check(0.0) is False
    with pytest.raises(ValueError):
        plum.angular_criticality_check(-1.0)
