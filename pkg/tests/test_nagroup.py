"""Group law, metric, Cayley/ball model, inversion, derivatives, spheres."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from naharm import nagroup as na
from naharm.abel import volume_weight
from naharm.poisson import support_box
from naharm.quad import DEFAULT_SPEC, gauss_legendre_panels, sphere_area
from naharm.radial import gevrey_bump


def rand_point(alg, rng, scale=1.2):
    return na.point(alg, rng.normal(0, scale, alg.m), rng.normal(0, scale, alg.k),
                    t=rng.normal(0, 1.0))


def max_coord_diff(p, q):
    return max(float(np.max(np.abs(p.X - q.X))), float(np.max(np.abs(p.Z - q.Z))), abs(p.t - q.t))


def test_identity_and_n_subgroup_law(desk, rng):
    e = na.identity(desk)
    p = rand_point(desk, rng)
    assert max_coord_diff(na.multiply(desk, p, e), p) == 0.0
    # (X,0,1)(Y,0,1) = (X+Y, [X,Y]/2, 1)
    X, Y = rng.normal(size=2), rng.normal(size=2)
    prod = na.multiply(desk, na.point(desk, X, [0.0], a=1.0), na.point(desk, Y, [0.0], a=1.0))
    assert_allclose(prod.X, X + Y, atol=1e-15)
    from naharm.htype import bracket

    assert_allclose(prod.Z, 0.5 * bracket(desk, X, Y), atol=1e-15)
    assert prod.t == 0.0


def test_associativity(quat, rng):
    for _ in range(300):
        p, q, w = (rand_point(quat, rng) for _ in range(3))
        lhs = na.multiply(quat, na.multiply(quat, p, q), w)
        rhs = na.multiply(quat, p, na.multiply(quat, q, w))
        assert max_coord_diff(lhs, rhs) < 1e-12


def test_inverse(desk, quat, rng):
    assert max_coord_diff(na.inverse(desk, na.identity(desk)), na.identity(desk)) == 0.0
    for alg in (desk, quat):
        for _ in range(100):
            p = rand_point(alg, rng)
            assert max_coord_diff(na.multiply(alg, p, na.inverse(alg, p)), na.identity(alg)) < 1e-12
    pa = na.point(desk, [0.0, 0.0], [0.0], a=3.7)
    assert_allclose(na.inverse(desk, pa).a, 1 / 3.7, rtol=1e-15)


def test_distance_axis_and_ball_model(desk, rng):
    assert na.distance_to_origin(desk, na.identity(desk)) == 0.0
    for a in (0.2, 1.0, 5.0):
        p = na.point(desk, [0.0, 0.0], [0.0], a=a)
        assert_allclose(na.distance_to_origin(desk, p), abs(math.log(a)), atol=1e-14)
    for _ in range(200):
        p = rand_point(desk, rng, 1.5)
        rho = na.cayley(desk, p).rho
        assert_allclose(math.log((1 + rho) / (1 - rho)), na.distance_to_origin(desk, p), atol=1e-10)


def test_distance_symmetry_and_triangle(quat, rng):
    for _ in range(500):
        p, q = rand_point(quat, rng), rand_point(quat, rng)
        assert abs(na.distance(quat, p, q) - na.distance(quat, q, p)) < 1e-10
    for _ in range(100):
        p, q, w = (rand_point(quat, rng) for _ in range(3))
        assert na.distance(quat, p, w) <= na.distance(quat, p, q) + na.distance(quat, q, w) + 1e-10


def test_cayley_axis_and_round_trip(desk, quat, rng):
    b = na.cayley(desk, na.identity(desk))
    assert b.rho == 0.0
    for a in (0.3, 2.4):
        b = na.cayley(desk, na.point(desk, [0.0, 0.0], [0.0], a=a))
        assert_allclose(b.lp, (a - 1) / (a + 1), rtol=1e-14)
        assert_allclose(np.abs(b.Xp).max(), 0.0, atol=1e-16)
    for alg in (desk, quat):
        for _ in range(500):
            p = rand_point(alg, rng)
            assert max_coord_diff(na.cayley_inverse(alg, na.cayley(alg, p)), p) < 1e-10


def test_cayley_inverse_axis_and_guard(desk):
    p = na.cayley_inverse(desk, na.BallPoint(Xp=np.zeros(2), Zp=np.zeros(1), lp=0.6))
    assert_allclose(p.a, 1.6 / 0.4, rtol=1e-14)
    assert max_coord_diff(na.cayley_inverse(desk, na.cayley(desk, na.identity(desk))),
                          na.identity(desk)) < 1e-15
    with pytest.raises(ValueError, match="rho < 1"):
        na.cayley_inverse(desk, na.BallPoint(Xp=np.array([0.8, 0.0]), Zp=np.array([0.5]), lp=0.4))


def test_geodesic_inversion(desk, rng):
    for a in (0.4, 3.0):
        s = na.geodesic_inversion(desk, na.point(desk, [0.0, 0.0], [0.0], a=a))
        assert_allclose(s.a, 1.0 / a, rtol=1e-14)
    for _ in range(500):
        p = rand_point(desk, rng)
        s = na.geodesic_inversion(desk, p)
        assert max_coord_diff(na.geodesic_inversion(desk, s), p) < 1e-10
        assert abs(na.distance_to_origin(desk, s) - na.distance_to_origin(desk, p)) < 1e-10


def test_ball_estimates(quat, rng):
    # points with d <= R satisfy e^-R <= a <= e^R, |X|^2 <= 8 e^{R/2} cosh(R/2),
    # |Z| <= 2 e^{R/2} cosh(R/2)
    R = 2.0
    count = 0
    while count < 500:
        p = rand_point(quat, rng, 1.5)
        if na.distance_to_origin(quat, p) > R:
            continue
        count += 1
        assert math.exp(-R) - 1e-12 <= p.a <= math.exp(R) + 1e-12
        assert float(p.X @ p.X) <= 8.0 * math.exp(R / 2) * math.cosh(R / 2) + 1e-9
        assert float(np.linalg.norm(p.Z)) <= 2.0 * math.exp(R / 2) * math.cosh(R / 2) + 1e-9


# ---------------------------------------------------------------------------
# left-invariant derivatives
# ---------------------------------------------------------------------------

def test_field_0_on_log_a(desk, rng):
    p = rand_point(desk, rng)
    val = na.left_invariant_derivative(desk, lambda q: q.t, p, (0,))
    assert_allclose(val, 1.0, atol=1e-9)


def test_field_z_direction(desk, rng):
    # X_{m+i} applied to Z_i equals a
    p = rand_point(desk, rng)
    val = na.left_invariant_derivative(desk, lambda q: q.Z[0], p, (3,))
    assert_allclose(val, p.a, rtol=1e-8)


def test_first_order_matches_curve_definition(desk, quat, rng):
    for alg in (desk, quat):
        f = lambda q: math.cos(q.X[0]) * math.exp(0.3 * q.t) + q.Z[0] ** 2
        for _ in range(5):
            p = rand_point(alg, rng, 0.8)
            for j in range(alg.m + alg.k + 1):
                a_ = na.left_invariant_derivative(alg, f, p, (j,))
                b_ = na.curve_derivative(alg, f, p, j)
                assert abs(a_ - b_) < 1e-6 * max(1.0, abs(a_))


def test_cosh_r_derivative_bound(desk, rng):
    # |X_J cosh r| <= c cosh r on B_3 for |J| <= 2
    f = lambda q: math.cosh(na.distance_to_origin(desk, q))
    count = 0
    worst = 0.0
    while count < 15:
        p = rand_point(desk, rng, 1.0)
        if na.distance_to_origin(desk, p) > 3.0 or na.distance_to_origin(desk, p) < 0.2:
            continue
        count += 1
        for J in [(0,), (1,), (3,), (0, 0), (1, 2), (3, 1)]:
            val = na.left_invariant_derivative(desk, f, p, J)
            worst = max(worst, abs(val) / f(p))
    assert worst < 10.0


def test_multi_index_cap(desk, rng):
    with pytest.raises(ValueError, match="capped"):
        na.left_invariant_derivative(desk, lambda q: q.t, rand_point(desk, rng), (0, 0, 0, 0))


# ---------------------------------------------------------------------------
# Haar weight
# ---------------------------------------------------------------------------

def test_haar_weight_values(desk):
    assert na.haar_weight(desk, na.identity(desk)) == 1.0
    assert_allclose(na.haar_weight(desk, na.point(desk, [0, 0], [0], a=math.e)), math.exp(-2.0),
                    rtol=1e-14)


def test_haar_left_invariance(desk, rng):
    # int f(q p) dmu(p) = int f(p) dmu(p) for a bump f and fixed q
    bump = gevrey_bump(R=1.0)
    q = na.point(desk, [0.15, -0.1], [0.1], a=1.15)

    def integral(shift):
        R = 1.0 + (na.distance_to_origin(desk, q) if shift else 0.0)
        xm, zm, tm = support_box(desk, R)
        xs, wx = gauss_legendre_panels(-xm, xm, 3, 18)
        zs, wz = gauss_legendre_panels(-zm, zm, 3, 18)
        ts, wt = gauss_legendre_panels(-tm, tm, 2, 14)
        X1, X2, Zg, Tg = np.meshgrid(xs, xs, zs, ts, indexing="ij")
        W = (wx[:, None, None, None] * wx[None, :, None, None]
             * wz[None, None, :, None] * wt[None, None, None, :]).ravel()
        Xb = np.stack([X1.ravel(), X2.ravel()], axis=1)
        Zb = Zg.reshape(-1, 1)
        tb = Tg.ravel()
        if shift:
            # integrand p -> f(q p); the Haar density stays e^{-Q t_p}
            Xs, Zs, ts = na.mult_batch(desk, q.X, q.Z, q.t, Xb, Zb, tb)
            vals = bump(na.dist0_batch(desk, Xs, Zs, ts))
        else:
            vals = bump(na.dist0_batch(desk, Xb, Zb, tb))
        return float((vals * np.exp(-desk.Q * tb)) @ W)

    base = integral(False)
    # integrating f(qp) with Haar measure in p equals integrating f with the
    # same measure: substitute p' = qp numerically
    shifted = integral(True)
    assert abs(shifted - base) < 1e-4 * abs(base)


# ---------------------------------------------------------------------------
# radialization / v-radial projector / geodesic spheres
# ---------------------------------------------------------------------------

def test_radialize_fixes_radial_and_projects(desk, rng):
    bump = gevrey_bump(R=2.5)
    f = lambda p: float(bump(na.distance_to_origin(desk, p)))
    p = rand_point(desk, rng, 0.5)
    assert_allclose(na.radialize(desk, f, p), f(p), rtol=1e-9)

    small = DEFAULT_SPEC.with_(sphere_nodes=686)  # nested double sphere loop
    g = lambda p: p.X[0] ** 2 + 0.3 * p.Z[0] + math.sin(p.t)
    val1 = na.radialize(desk, g, p, small)
    rg = lambda q: na.radialize(desk, g, q, small)
    assert abs(na.radialize(desk, rg, p, small) - val1) < 1e-6


def test_radialize_depends_only_on_radius(desk, rng):
    g = lambda p: p.X[0] * p.Z[0] + math.cos(2 * p.t)
    p = rand_point(desk, rng)
    r = na.distance_to_origin(desk, p)
    q = na.point(desk, [0.0, 0.0], [0.0], t=r)
    assert abs(na.radialize(desk, g, p) - na.radialize(desk, g, q)) < 1e-6


def test_v_radial_projector(desk, quat, rng):
    f = lambda p: math.exp(-float(p.X @ p.X)) * (1 + p.Z[0]) * math.exp(0.1 * p.t)
    p = rand_point(desk, rng)
    assert_allclose(na.v_radial_project(desk, f, p), f(p), rtol=1e-12)
    odd = lambda p: p.X[0]
    assert abs(na.v_radial_project(desk, odd, p)) < 1e-12
    small = DEFAULT_SPEC.with_(sphere_nodes=1024)  # nested double sphere loop
    pq = rand_point(quat, rng)
    g4 = lambda p: p.X[0] ** 2 + p.X[1] * p.X[2]
    v1 = na.v_radial_project(quat, g4, pq, small)
    pi_g = lambda p: na.v_radial_project(quat, g4, p, small)
    assert abs(na.v_radial_project(quat, pi_g, pq, small) - v1) < 1e-8


def test_volume_consistency(desk):
    # int over B_R of a radial bump in (X, Z, t) coordinates with weight
    # e^{-Qt} against the polar form with the radial volume density
    R = 1.4
    bump = gevrey_bump(R=R)
    xm, zm, tm = support_box(desk, R)
    xs, wx = gauss_legendre_panels(-xm, xm, 2, 22)
    zs, wz = gauss_legendre_panels(-zm, zm, 2, 22)
    ts, wt = gauss_legendre_panels(-tm, tm, 2, 16)
    X1, X2, Zg, Tg = np.meshgrid(xs, xs, zs, ts, indexing="ij")
    W = (wx[:, None, None, None] * wx[None, :, None, None]
         * wz[None, None, :, None] * wt[None, None, None, :]).ravel()
    Xb = np.stack([X1.ravel(), X2.ravel()], axis=1)
    vals = bump(na.dist0_batch(desk, Xb, Zg.reshape(-1, 1), Tg.ravel()))
    cart = float((vals * np.exp(-desk.Q * Tg.ravel())) @ W)
    rs, wr = gauss_legendre_panels(0.0, R, 4, 24)
    polar = sphere_area(desk.n) * float((bump(rs) * volume_weight(desk, rs)) @ wr)
    assert abs(cart - polar) < 1e-3 * abs(polar)


def test_point_serialization(desk):
    p = na.point(desk, [0.5, -1.0], [2.0], a=2.0)
    arr = p.to_json_array()
    assert arr[:2] == [0.5, -1.0] and arr[2] == 2.0 and arr[3] == math.log(2.0)
