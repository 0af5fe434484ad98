"""Spherical functions: series, hypergeometric core, integral and cosine
routes, eigen-ODE, Plancherel density."""

import math

import mpmath as mp
import numpy as np
import pytest
from numpy.testing import assert_allclose

from naharm import nagroup as na
from naharm import spherical as sp
from naharm.errors import ConvergenceError

mp.mp.dps = 30


def phi_oracle(alg, lam, r):
    """Independent evaluation through mpmath's hypergeometric code."""
    alpha = (alg.m + alg.k - 1) / 2.0
    rho = alg.Q
    L = 2.0 * lam
    return complex(mp.hyp2f1(0.5 * (rho - 1j * L), 0.5 * (rho + 1j * L),
                             alpha + 1.0, -mp.sinh(mp.mpf(r) / 2) ** 2))


# ---------------------------------------------------------------------------
# gauss_2f1
# ---------------------------------------------------------------------------

def test_2f1_basics():
    assert sp.gauss_2f1(0.3, 1.2, 2.1, 0.0) == 1.0
    assert sp.gauss_2f1(0.0, 1.2, 2.1, 0.7) == 1.0
    # 2F1(1,1;2;z) = -log(1-z)/z
    assert_allclose(sp.gauss_2f1(1.0, 1.0, 2.0, 0.5), 2.0 * math.log(2.0), rtol=1e-14)


def test_2f1_terminating_is_polynomial():
    # 2F1(-3, b; c; z) is a cubic, summed exactly
    b, c, z = 1.7, 2.4, 0.93
    expected = complex(mp.hyp2f1(-3, b, c, z))
    assert_allclose(sp.gauss_2f1(-3.0, b, c, z), expected, rtol=1e-14)


def test_2f1_guards():
    with pytest.raises(ValueError, match="nonpositive integer"):
        sp.gauss_2f1(0.3, 0.7, -2.0, 0.5)
    with pytest.raises(ValueError, match="z in"):
        sp.gauss_2f1(0.3, 0.7, 1.0, 1.2)
    with pytest.raises(ConvergenceError) as exc:
        sp.gauss_2f1(0.5, 0.5, 1.5, 0.999999, max_terms=10)
    assert exc.value.partial is not None


def test_2f1_vectorized_matches_scalar():
    z = np.array([0.0, 0.2, 0.77])
    vec = sp.gauss_2f1(0.5 - 1j, 0.5 + 1j, 1.5, z)
    for i, zi in enumerate(z):
        assert_allclose(vec[i], sp.gauss_2f1(0.5 - 1j, 0.5 + 1j, 1.5, float(zi)), rtol=1e-14)


# ---------------------------------------------------------------------------
# Jacobi / spherical function routes
# ---------------------------------------------------------------------------

def test_phi_normalization_and_terminating(desk):
    params = sp.JacobiParams.from_algebra(desk)
    assert sp.jacobi_phi(params, 1.7, 0.0) == 1.0
    # i lam = alpha + beta + 1 terminates the series at the constant term
    lam = -1j * params.rho
    for s_ in (0.3, 1.0, 2.2):
        assert_allclose(sp.jacobi_phi(params, lam, s_), 1.0, atol=1e-14)
    # group form: phi_{-iQ/2} == 1
    for r in (0.4, 1.7):
        assert_allclose(sp.spherical_phi(desk, -1j * desk.Q / 2.0, r), 1.0, atol=1e-14)


def test_phi_evenness(desk):
    for lam in (0.5, 1.0, 3.0, 5.0):
        for r in (0.25, 0.5, 1.0, 2.0):
            d = abs(sp.spherical_phi_series(desk, lam, r) - sp.spherical_phi_series(desk, -lam, r))
            assert d < 1e-12


def test_phi_against_mpmath(desk, quat):
    for alg in (desk, quat):
        for lam in (0.0, 1.0, 5.0, 1.0 + 0.5j):
            for r in (0.3, 1.0, 2.0):
                got = sp.spherical_phi_series(alg, lam, r)
                assert abs(got - phi_oracle(alg, lam, r)) < 1e-12


def test_phi_bounded_by_one_for_real_lambda(desk):
    lams = np.linspace(0.0, 12.0, 25)
    rs = np.linspace(0.05, 3.5, 21)
    vals = np.array([[abs(sp.spherical_phi(desk, l, r)) for r in rs] for l in lams])
    assert vals.max() <= 1.0 + 1e-12


def test_dispatcher_handles_large_lambda(desk):
    # series route is unusable at lambda r ~ 200; dispatcher must stay accurate
    for lam, r in [(60.0, 1.0), (100.0, 2.0), (40.0, 3.0)]:
        got = sp.spherical_phi(desk, lam, r)
        assert abs(got - phi_oracle(desk, lam, r)) < 1e-10


def test_koornwinder_route(desk, quat):
    for alg in (desk, quat):
        for lam in (0.5, 5.0, 1.0 - 0.5j):
            for t in (0.5, 1.5):
                got = complex(sp.koornwinder_phi(alg, np.array([lam]), t)[0])
                assert abs(got - phi_oracle(alg, lam, t)) < 1e-10
    # t -> 0+ limit tends to phi(0) = 1
    assert abs(complex(sp.koornwinder_phi(desk, np.array([0.0]), 1e-3)[0]) - 1.0) < 1e-2
    with pytest.raises(ValueError, match="positive"):
        sp.koornwinder_phi(desk, np.array([1.0]), 0.0)


def test_integral_representation(desk, quat, rng):
    # y = e: the integrand collapses to the Poisson normalization
    e = na.identity(desk)
    assert abs(sp.spherical_phi_integral(desk, 1.3, e) - 1.0) < 1e-6
    # A-axis agreement with the series route
    y = na.point(desk, np.zeros(2), np.zeros(1), t=1.0)
    assert abs(sp.spherical_phi_integral(desk, 1.0, y) - sp.spherical_phi_series(desk, 1.0, 1.0)) < 1e-6
    # radiality: two off-axis points at equal distance give equal values
    p1 = na.point(desk, [0.6, -0.3], [0.4], t=0.5)
    r = na.distance_to_origin(desk, p1)
    p2 = na.point(desk, [0.0, 0.0], [0.0], t=r)
    v1 = sp.spherical_phi_integral(desk, 1.0, p1)
    v2 = sp.spherical_phi_integral(desk, 1.0, p2)
    assert abs(v1 - v2) < 1e-6
    with pytest.raises(ValueError, match="desk"):
        sp.spherical_phi_integral(quat, 1.0, na.identity(quat))


def test_eigen_ode(desk):
    grid = np.linspace(0.1, 3.0, 12)
    # phi identically 1 at lambda = -iQ/2 has zero eigenvalue
    assert sp.eigen_ode_residual(desk, -1j * desk.Q / 2.0, grid) < 1e-10
    r1 = sp.eigen_ode_residual(desk, 1.0, grid, h=5e-2)
    r2 = sp.eigen_ode_residual(desk, 1.0, grid, h=2.5e-2)
    assert r2 < r1  # refinement reduces the stencil residual
    with pytest.raises(ValueError, match="0.05"):
        sp.eigen_ode_residual(desk, 1.0, np.array([0.01, 0.5]))


def test_plancherel_density(desk, quat):
    params = sp.JacobiParams.from_algebra(desk)
    lams = np.linspace(0.2, 30.0, 40)
    assert_allclose(sp.plancherel_density(params, lams), sp.plancherel_density(params, -lams),
                    rtol=1e-12)
    assert sp.plancherel_density(params, 0.0) == 0.0
    # closed form for (m, k) = (2, 1): pi (2 lam)^3 / (32 tanh(pi lam))
    for lam in (0.3, 1.0, 5.0):
        cf = math.pi * (2 * lam) ** 3 / (32.0 * math.tanh(math.pi * lam))
        assert_allclose(sp.plancherel_density(params, lam), cf, rtol=1e-12)
    # polynomial growth: density / lam^{n-1} bounded above and below
    for alg in (desk, quat):
        p = sp.JacobiParams.from_algebra(alg)
        lams = np.linspace(10.0, 100.0, 50)
        ratio = sp.plancherel_density(p, lams) / lams ** (alg.n - 1)
        assert ratio.max() / ratio.min() < 3.0


def test_jacobi_params_charts(desk):
    p = sp.JacobiParams.from_algebra(desk)
    assert (p.k, p.n) == (1, 4) and p.rho == desk.Q
    p47 = sp.JacobiParams.from_kn(4, 7)
    assert (p47.alpha, p47.beta) == (2.5, 1.5)
    with pytest.raises(ValueError):
        sp.JacobiParams(alpha=0.0, beta=1.0)
