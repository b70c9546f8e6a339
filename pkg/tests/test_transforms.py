"""Transforms: classical pair, generalized pair, kernels, fixtures."""

import numpy as np
import pytest

from bessel4 import transforms as tr
from bessel4.fixtures import load_suite, parse_suite
from bessel4.solutions import Params

P1 = Params(1.0)


def expfn(x):
    return np.exp(-np.asarray(x, dtype=float))


def test_hankel_forward_exponential_closed_form():
    r = tr.hankel_forward(expfn, [0.5, 1.0, 2.0])
    # own derivation: integral x J0(sx) e^-x dx = (1 + s^2)^(-3/2)
    expect = (1.0 + r.grid ** 2) ** (-1.5)
    assert np.max(np.abs(r.values - expect)) < 1e-6


def test_hankel_forward_zero_function():
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    r = tr.hankel_forward(zero, [0.5, 1.5])
    assert np.all(r.values == 0.0)


def test_hankel_parseval():
    lhs, rhs = tr.hankel_parseval(expfn)
    assert lhs == pytest.approx(rhs, rel=1e-5)


def test_hankel_roundtrip_smooth():
    v = tr.hankel_roundtrip(expfn, 1.0)
    assert v == pytest.approx(np.exp(-1.0), abs=1e-4)


def test_hankel_roundtrip_indicator():
    ind = lambda x: np.where(np.asarray(x, dtype=float) <= 1.0, 1.0, 0.0)
    assert tr.hankel_roundtrip(ind, 0.5, x_cut=1.0) == pytest.approx(1.0, abs=1e-3)
    assert tr.hankel_roundtrip(ind, 1.0, x_cut=1.0) == pytest.approx(0.5, abs=1e-2)


def test_generalized_forward_zero_and_escalation():
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    r = tr.generalized_forward(zero, P1, [0.5, 1.0], f0=0.0)
    assert np.all(r.values == 0.0)
    g_ = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2)
    fixed = tr.generalized_forward(g_, P1, [0.7, 2.0], x_cut=9.0)
    auto = tr.generalized_forward(g_, P1, [0.7, 2.0], tol=1e-9)
    assert auto.diagnostics["converged"]
    assert np.max(np.abs(fixed.values - auto.values)) < 1e-8


def test_generalized_forward_matches_direct_quadrature():
    # dual route: one lambda point against plain adaptive quadrature
    from bessel4.quadrature import adaptive_quad
    from bessel4.solutions import SolutionHandle, SolutionKind, eval_solution
    lam = 1.3
    h = SolutionHandle(SolutionKind.jtype, lam, P1)
    g_ = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2)
    direct = adaptive_quad(
        lambda x: np.asarray(x) * eval_solution(h, np.asarray(x)) * g_(x),
        0.0, 9.0, tol=1e-11).value + P1.M / 2.0
    r = tr.generalized_forward(g_, P1, [lam], x_cut=9.0)
    assert r.values[0] == pytest.approx(direct, rel=1e-9)


@pytest.mark.parametrize("M", [0.5, 1.0, 2.0])
def test_parseval_gaussian(M):
    g_ = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2)
    lhs, rhs = tr.generalized_parseval(g_, Params(M), x_cut=9.0)
    assert abs(lhs - rhs) / abs(rhs) < 1e-4


def test_moment_identity_gaussian():
    g_ = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2)
    assert tr.moment_identity_defect(g_, P1, x_cut=9.0) < 1e-4


def test_roundtrip_gaussian_including_origin():
    g_ = lambda x: np.exp(-np.asarray(x, dtype=float) ** 2)
    pts = [0.0, 0.5, 1.0, 2.0]
    r = tr.generalized_roundtrip(g_, P1, pts, x_cut=9.0)
    expect = np.array([1.0, np.exp(-0.25), np.exp(-1.0), np.exp(-4.0)])
    assert np.max(np.abs(r.values - expect)) < 1e-3


@pytest.mark.parametrize("eta,M", [(1.0, 1.0), (5.0, 0.5), (0.5, 2.0)])
def test_vanishing_moment(eta, M):
    assert abs(tr.vanishing_moment(eta, Params(M))) < 1e-5


def test_vanishing_moment_rejects_origin():
    with pytest.raises(ValueError):
        tr.vanishing_moment(0.0, P1)


def test_classical_kernel_closed_form_vs_quadrature():
    closed = tr.ortho_kernel_classical(1.0, 2.0, 50.0)
    quad = tr.ortho_kernel_classical(1.0, 2.0, 50.0, method="quad")
    assert closed == pytest.approx(quad, abs=1e-8)


def test_classical_kernel_cesaro_average_off_diagonal():
    from bessel4.quadrature import adaptive_quad
    avg = adaptive_quad(
        lambda X: tr.ortho_kernel_classical(1.0, 2.0, X), 50.0, 100.0,
        tol=1e-6).value / 50.0
    assert abs(avg) < 1e-2


def test_classical_kernel_diagonal_grows():
    k1 = tr.ortho_kernel_classical(1.0, 1.0 + 1e-9, 50.0)
    k2 = tr.ortho_kernel_classical(1.0, 1.0 + 1e-9, 100.0)
    assert k2 > k1 > 1.0


def test_generalized_kernel_closed_form_vs_quadrature():
    closed = tr.ortho_kernel_generalized(1.0, 2.0, P1, 50.0)
    quad = tr.ortho_kernel_generalized(1.0, 2.0, P1, 50.0, method="quad")
    assert closed == pytest.approx(quad, abs=1e-7)


def test_generalized_kernel_continuous_near_diagonal():
    vals = [tr.ortho_kernel_generalized(1.0, 1.0 + d, P1, 20.0)
            for d in (1e-3, 5e-4, 2.5e-4)]
    assert abs(vals[2] - vals[1]) < abs(vals[1] - vals[0]) + 1e-3


def test_generalized_kernel_m_to_zero_limit():
    kc = tr.ortho_kernel_classical(1.0, 2.0, 50.0)
    prev = None
    for M in (1.0, 0.1, 0.01):
        dev = abs(tr.ortho_kernel_generalized(1.0, 2.0, Params(M), 50.0) - kc)
        if prev is not None:
            assert dev < prev
        prev = dev
    assert prev < 1e-3


def test_weak_delta_probes():
    assert tr.weak_delta_probe("classical", 1.0, 200.0) == \
        pytest.approx(1.0, abs=2e-2)
    assert tr.weak_delta_probe("generalized", 1.0, 200.0, params=P1) == \
        pytest.approx(1.0, abs=2e-2)
    with pytest.raises(ValueError):
        tr.weak_delta_probe("nope", 1.0, 200.0)


def test_fixture_suite_contents():
    suite = load_suite()
    names = [fx.name for fx in suite]
    assert names == ["gaussian", "bump", "expdamp"]
    gaussian = suite[0]
    assert gaussian(0.0) == 1.0
    assert suite[1](np.array([0.0, 2.0, 3.0]))[1:] == pytest.approx([0.0, 0.0])
    with pytest.raises(ValueError):
        parse_suite("bad | exp(-x) | unknown_class")
    with pytest.raises(ValueError):
        parse_suite("too | few")


def test_jtype_multi_evaluators_match_handles():
    from bessel4.solutions import SolutionHandle, SolutionKind, \
        eval_solution, eval_solution_derivs
    lams = np.array([0.3, 1.0, 2.5])
    x = 7.0
    multi = tr.jtype_eval_multi(lams, x, P1)
    single = [eval_solution(SolutionHandle(SolutionKind.jtype, l, P1), x)
              for l in lams]
    assert np.allclose(multi, single, rtol=1e-13)
    dm = tr.jtype_derivs_multi(lams, x, P1, order=3)
    for i, l in enumerate(lams):
        ds = eval_solution_derivs(SolutionHandle(SolutionKind.jtype, l, P1),
                                  x, 3)
        assert np.allclose(dm[:, i], ds, rtol=1e-12)


def test_generalized_inverse_of_zero_is_zero():
    zero = lambda lam: np.zeros_like(np.asarray(lam, dtype=float))
    r = tr.generalized_inverse(zero, P1, [0.0, 0.5, 2.0])
    assert np.all(r.values == 0.0)
