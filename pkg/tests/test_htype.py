"""H-type algebra construction and Clifford relations."""

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from naharm.errors import DimensionError
from naharm.htype import apply_JZ, bracket, build_htype


def test_dimension_table():
    assert (build_htype(1, 1).m, build_htype(1, 3).m) == (2, 6)
    assert build_htype(2, 2).m == 8
    assert build_htype(3, 1).m == 4
    alg = build_htype(1, 1)
    assert alg.n == 4 and alg.Q == 2.0  # complex hyperbolic plane row


def test_k1_is_ccw_rotation():
    alg = build_htype(1, 1)
    assert_allclose(alg.J[0], [[0.0, -1.0], [1.0, 0.0]])
    assert_allclose(alg.J[0] @ alg.J[0], -np.eye(2), atol=1e-15)


@pytest.mark.parametrize("k,b", [(1, 1), (1, 2), (2, 1), (3, 1), (3, 2)])
def test_clifford_relations_bruteforce(k, b):
    alg = build_htype(k, b)
    for i in range(k):
        Ji = alg.J[i]
        assert_allclose(Ji + Ji.T, 0, atol=1e-15)  # skew
        for j in range(k):
            anti = alg.J[i] @ alg.J[j] + alg.J[j] @ alg.J[i]
            assert_allclose(anti, -2.0 * (i == j) * np.eye(alg.m), atol=1e-14)


def test_octonionic_behind_flag():
    with pytest.raises(ValueError, match="allow_octonions"):
        build_htype(7, 1)
    alg = build_htype(7, 1, allow_octonions=True)
    assert alg.m == 8
    for i in range(7):
        for j in range(7):
            anti = alg.J[i] @ alg.J[j] + alg.J[j] @ alg.J[i]
            assert_allclose(anti, -2.0 * (i == j) * np.eye(8), atol=1e-14)


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_htype(4, 1)
    with pytest.raises(ValueError):
        build_htype(1, 0)
    with pytest.raises(ValueError):
        build_htype(1, -2)


def test_bracket_orientation_and_antisymmetry(desk, rng):
    # ccw orientation: <J(1,0), (0,1)> = <(0,1),(0,1)> = 1
    assert_allclose(bracket(desk, [1.0, 0.0], [0.0, 1.0]), [1.0])
    X = rng.normal(size=2)
    assert_allclose(bracket(desk, X, X), 0.0, atol=1e-14)
    for _ in range(100):
        X, Y = rng.normal(size=2), rng.normal(size=2)
        assert_allclose(bracket(desk, X, Y) + bracket(desk, Y, X), 0.0, atol=1e-13)


def test_bracket_lands_in_center(quat, rng):
    out = bracket(quat, rng.normal(size=4), rng.normal(size=4))
    assert out.shape == (quat.k,)


def test_apply_JZ_identities(quat, rng):
    assert_allclose(apply_JZ(quat, np.zeros(3), rng.normal(size=4)), np.zeros(4))
    for _ in range(1000):
        Z, X = rng.normal(size=3), rng.normal(size=4)
        JX = apply_JZ(quat, Z, X)
        assert_allclose(apply_JZ(quat, Z, JX), -(Z @ Z) * X, atol=1e-12)
        assert abs(JX @ X) < 1e-12 * max(1.0, (X @ X) * np.linalg.norm(Z))
        assert abs(JX @ JX - (Z @ Z) * (X @ X)) < 1e-12 * max(1.0, (X @ X) * (Z @ Z))


def test_bracket_duality(quat, rng):
    # <J_Z X, Y> = <Z, [X, Y]>
    for _ in range(200):
        Z, X, Y = rng.normal(size=3), rng.normal(size=4), rng.normal(size=4)
        lhs = apply_JZ(quat, Z, X) @ Y
        rhs = Z @ bracket(quat, X, Y)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


def test_dimension_mismatch_raises(desk):
    with pytest.raises(DimensionError):
        bracket(desk, [1.0, 0.0, 0.0], [0.0, 1.0])
    with pytest.raises(DimensionError):
        apply_JZ(desk, [1.0, 2.0], [1.0, 0.0])


def test_json_summary(desk):
    blob = json.loads(desk.to_json())
    assert blob["k"] == 1 and blob["m"] == 2 and blob["n"] == 4 and blob["Q"] == 2.0
    assert blob["J"] == [[0.0, -1.0, 1.0, 0.0]]  # row-major
