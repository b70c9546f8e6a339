"""The fourth-order solution family: maps, values, derivatives, series."""

import numpy as np
import pytest

from bessel4 import classical as cb
from bessel4 import solutions as S
from bessel4.solutions import (CDPair, Params, SolutionHandle, SolutionKind,
                               cd_params, eval_solution, eval_solution_derivs,
                               spectral_value)

GRID = [(0.5, 1.0), (1.0, 1.0), (2.0, 0.5), (1.0, 4.0)]


def test_spectral_map_values():
    assert spectral_value(0.0, Params(3.0)) == 0.0
    assert spectral_value(1.0, Params(1.0)) == 9.0
    assert spectral_value(2.0, Params(0.5)) == 80.0


def test_cd_parameters():
    assert cd_params(0.0, Params(2.0)) == CDPair(2.0, 1.0)
    cd = cd_params(2.0, Params(1.0))
    assert cd.c == pytest.approx(np.sqrt(12.0)) and cd.d == 2.0
    assert cd_params(0.0, Params(8.0)) == CDPair(1.0, 1.0)


def test_params_invariants():
    p = Params(0.4)
    assert p.gamma * p.M == pytest.approx(8.0, rel=1e-15)
    with pytest.raises(ValueError):
        Params(0.0)
    with pytest.raises(ValueError):
        Params(-1.0)


@pytest.mark.parametrize("kind", ["jtype", "itype"])
@pytest.mark.parametrize("lam,M", GRID + [(0.0, 1.0)])
def test_regular_pair_equals_one_at_origin(kind, lam, M):
    h = SolutionHandle(SolutionKind(kind), lam, Params(M))
    assert eval_solution(h, 0.0) == pytest.approx(1.0, abs=1e-13)


def test_ytype_ktype_reject_origin():
    h = SolutionHandle(SolutionKind.ktype, 1.0, Params(1.0))
    with pytest.raises(ValueError):
        eval_solution(h, 0.0)
    with pytest.raises(ValueError):
        SolutionHandle(SolutionKind.ytype, 0.0, Params(1.0))


@pytest.mark.parametrize("kind", ["jtype", "ytype", "itype", "ktype"])
@pytest.mark.parametrize("lam,M", GRID)
def test_series_matches_direct_formula_at_seam(kind, lam, M):
    h = SolutionHandle(SolutionKind(kind), lam, Params(M))
    a, _, _ = S._structure(h.kind, lam, h.params)
    for z in (1e-2, 0.9999):
        x = np.array([z / a])
        v_series = S.solution_series(h).evaluate(x)
        v_direct = S._direct_derivs(h.kind, lam, h.params, x, 0)[0]
        assert v_series[0] == pytest.approx(v_direct[0], rel=2e-12, abs=1e-14)
    x = np.array([0.5 / a, 1.5 / a])
    d_series = S._series_derivs(h, x, 4)
    d_direct = S._direct_derivs(h.kind, lam, h.params, x, 4)
    assert np.max(np.abs(d_series - d_direct)
                  / (np.abs(d_direct) + 1e-10)) < 5e-11


def central_fd(f, x, k, h):
    if k == 1:
        return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
    if k == 2:
        return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h)
                - f(x + 2 * h)) / (12 * h * h)
    raise ValueError


@pytest.mark.parametrize("kind", ["jtype", "ytype", "itype", "ktype"])
def test_derivatives_match_finite_differences(kind):
    h = SolutionHandle(SolutionKind(kind), 1.0, Params(1.0))
    f = lambda x: eval_solution(h, x)
    for x0 in (0.3, 1.0, 5.0):
        d = eval_solution_derivs(h, x0, 2)
        assert d[1] == pytest.approx(central_fd(f, x0, 1, 1e-4), rel=1e-6)
        assert d[2] == pytest.approx(central_fd(f, x0, 2, 1e-4), rel=1e-5,
                                     abs=1e-7)


def test_ktype_order4_derivative_matches_fd_at_five():
    h = SolutionHandle(SolutionKind.ktype, 1.0, Params(1.0))
    f3 = lambda x: eval_solution_derivs(h, x, 3)[3]
    d4 = eval_solution_derivs(h, 5.0, 4)[4]
    fd = central_fd(f3, 5.0, 1, 1e-3)
    assert d4 == pytest.approx(fd, rel=1e-5)


def test_lambda_zero_collapses_jtype_to_one():
    h = SolutionHandle(SolutionKind.jtype, 0.0, Params(2.0))
    d = eval_solution_derivs(h, np.array([0.25, 1.0, 7.0]), 4)
    assert np.allclose(d[0], 1.0) and np.max(np.abs(d[1:])) < 1e-14


def test_classical_limit_is_monotone():
    xs = np.linspace(0.1, 10.0, 60)
    prev = None
    for M in (1.0, 0.1, 0.01, 0.001):
        h = SolutionHandle(SolutionKind.jtype, 1.0, Params(M))
        dev = np.max(np.abs(eval_solution(h, xs) - cb.j0(xs)))
        if prev is not None:
            assert dev < prev
        prev = dev
    assert prev < 5e-3


def test_basis_independence_at_one():
    rows = [eval_solution_derivs(SolutionHandle(k, 1.0, Params(1.0)), 1.0, 3)
            for k in SolutionKind]
    m = np.array(rows)
    m /= np.abs(m).max(axis=1, keepdims=True)
    assert abs(np.linalg.det(m)) > 1e-12


@pytest.mark.parametrize("lam", [0.1, 1.0, 5.0])
def test_realness_and_finiteness(lam):
    xs = np.geomspace(1e-3, 30.0, 25)
    for kind in SolutionKind:
        h = SolutionHandle(kind, lam, Params(1.0))
        v = eval_solution(h, xs)
        assert np.all(np.isfinite(v)) and v.dtype == np.float64


def test_ktype_decay_beats_half_rate():
    h = SolutionHandle(SolutionKind.ktype, 1.0, Params(1.0))
    c = cd_params(1.0, Params(1.0)).c
    vals = [abs(eval_solution(h, x)) * np.exp(c * x / 2.0)
            for x in (20.0, 40.0, 80.0)]
    assert vals[2] < vals[1] < vals[0] and vals[2] < 1e-12


def test_second_derivative_at_zero_closed_form():
    # both regular solutions have f''(0) = -M Lambda / 16
    for lam, M in GRID:
        P = Params(M)
        L = spectral_value(lam, P)
        for kind in (SolutionKind.jtype, SolutionKind.itype):
            h = SolutionHandle(kind, lam, P)
            f2 = eval_solution_derivs(h, 0.0, 2)[2]
            assert f2 == pytest.approx(-M * L / 16.0, rel=1e-12, abs=1e-14)


def test_ktype_scale_series_matches_handle_series():
    lam, M = 1.0, 1.0
    c = cd_params(lam, Params(M)).c
    s1 = S.solution_series(SolutionHandle(SolutionKind.ktype, lam, Params(M)))
    s2 = S.ktype_scale_series(c, M)
    for key, v in s1.items():
        assert s2.coeff(*key) == pytest.approx(v, rel=1e-12, abs=1e-15)
