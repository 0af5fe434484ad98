"""Slow-decrease checker, witness search, and the explicit Phi_k witness."""

import math

import numpy as np
import pytest

from naharm import slowdecrease as sd
from naharm import spherical as sp
from naharm.abel import dual_abel
from naharm.meanvalue import phi_k_polynomial_form
from naharm.nagroup import geodesic_sphere
from naharm.quad import DEFAULT_SPEC


def test_constant_function_passes():
    w = sd.SlowDecreaseWitness(A=1.0, B=1.0, C=1.0, D=0.0, xi_range=(0.5, 50.0))
    out = sd.check_slow_decrease(lambda z: np.ones_like(np.asarray(z, complex)), w)
    assert out.status == "pass" and out.margin >= 1.0


def test_sinc_pass_and_fail():
    F = lambda z: np.sinc(np.asarray(z, complex) / np.pi)  # sin(z)/z
    good = sd.SlowDecreaseWitness(A=1.0, B=0.05, C=1.0, D=1.0, xi_range=(1.0, 120.0))
    assert sd.check_slow_decrease(F, good).status == "pass"
    greedy = sd.SlowDecreaseWitness(A=1.0, B=5e3, C=1.0, D=1.0, xi_range=(1.0, 120.0))
    assert sd.check_slow_decrease(F, greedy).status == "fail"


def test_monotone_in_disc_radius():
    F = lambda z: np.sinc(np.asarray(z, complex) / np.pi)
    w1 = sd.SlowDecreaseWitness(A=0.5, B=0.05, C=1.0, D=1.0, xi_range=(1.0, 80.0))
    w2 = sd.SlowDecreaseWitness(A=1.5, B=0.05, C=1.0, D=1.0, xi_range=(1.0, 80.0))
    m1 = sd.check_slow_decrease(F, w1).margin
    m2 = sd.check_slow_decrease(F, w2).margin
    assert m2 >= m1  # larger discs can only raise the sup


def test_witness_validation():
    with pytest.raises(ValueError):
        sd.SlowDecreaseWitness(A=0.0, B=1.0, C=1.0, D=0.0)
    with pytest.raises(ValueError):
        sd.SlowDecreaseWitness(A=1.0, B=1.0, C=1.0, D=-1.0)
    with pytest.raises(ValueError):
        sd.SlowDecreaseWitness(A=1.0, B=1.0, C=1.0, D=0.0, xi_range=(5.0, 2.0))


def test_find_witness_constant_function():
    F = lambda z: np.ones_like(np.asarray(z, complex))
    w = sd.find_witness(F, (1.0, 40.0), A_grid=[0.5, 1.0], B_grid=[1.0],
                        C_grid=[1.0], D_grid=[0.0, 1.0], xi_count=60)
    assert w is not None and (w.A, w.B, w.C, w.D) == (0.5, 1.0, 1.0, 0.0)


def test_find_witness_rejects_gaussian_decay():
    F = lambda z: np.exp(-np.asarray(z, complex) ** 2)
    w = sd.find_witness(F, (1.0, 50.0), A_grid=[0.5, 1.0, 2.0, 4.0], B_grid=[1e-6, 1e-3],
                        C_grid=[1.0], D_grid=[0.0, 1.0, 2.0, 4.0], xi_count=60)
    assert w is None


def test_leading_term_alone_passes_with_algebraic_witness():
    # B = A_lead / 2^{N+2}, D = N+1 certifies the pure oscillation term
    N, t = 2, 1.0
    A_lead = sd.leading_constant(N, t)
    A_disc = sd.paper_disc_constant(N, t)

    def lead(z):
        z = np.asarray(z, complex)
        return A_lead * z ** (-N - 1) * np.sin(z * t - N * math.pi / 2.0)

    w = sd.SlowDecreaseWitness(A=A_disc, B=A_lead / 2.0 ** (N + 2), C=1.0, D=N + 1.0,
                               xi_range=(72.0, 200.0))
    assert sd.check_slow_decrease(lead, w).status == "pass"


def test_disc_constant_scaling():
    # doubling t scales the disc constant by (sinh 2t / sinh t)^N
    N = 2
    ratio = sd.paper_disc_constant(N, 2.0) / sd.paper_disc_constant(N, 1.0)
    assert abs(ratio - (math.sinh(2.0) / math.sinh(1.0)) ** N) < 1e-12


def test_phi_k_report_structure():
    rep = sd.phi_lambda_slow_decrease_report((4, 7), 1.0)
    assert rep.status == "pass"
    assert rep.N == 2 and 60.0 < rep.xi0_conditions < 90.0
    assert rep.xi0_sharp <= rep.xi0_conditions + 2.0
    assert all(row[2] >= 0.99 for row in rep.rows)       # sine peaks located
    assert all(row[3] >= row[4] > 0 for row in rep.rows)  # sup >= sharp bound > 0
    # the crude printed chain does not close inside [xi0, 200]
    assert rep.xi0_crude is None
    with pytest.raises(ValueError, match="even k"):
        sd.phi_lambda_slow_decrease_report((3, 8), 1.0)


def test_checker_agrees_through_projection_slice(desk):
    # F(A sigma_t)(lambda) equals phi_lambda(t); the checker must agree on
    # both representations for the same witnesses
    t = 1.0
    dense = DEFAULT_SPEC.with_(sphere_nodes=16384)
    _, _, ty, wts = geodesic_sphere(desk, t, dense)

    def F_measure(z):  # Fourier transform of the Abel transform of sigma_t
        z = np.asarray(z, complex)
        return np.exp(np.multiply.outer(z * (-1j) + desk.Q / 2.0, ty)) @ wts

    def F_phi(z):
        return sp.koornwinder_phi(desk, np.asarray(z, complex), t)

    # the discrete sphere rule resolves the oscillation e^{-i lambda A(y)}
    # only while lambda t stays below its polynomial degree
    zs = np.linspace(2.0, 25.0, 24) + 0.3j
    assert np.max(np.abs(F_measure(zs) - F_phi(zs))) < 1e-5
    passing = sd.SlowDecreaseWitness(A=0.5, B=1e-3, C=1.0, D=1.5, xi_range=(5.0, 25.0))
    failing = sd.SlowDecreaseWitness(A=0.5, B=50.0, C=1.0, D=0.1, xi_range=(5.0, 25.0))
    for wit in (passing, failing):
        s1 = sd.check_slow_decrease(F_measure, wit).status
        s2 = sd.check_slow_decrease(F_phi, wit).status
        assert s1 == s2
    assert sd.check_slow_decrease(F_phi, passing).status == "pass"
    assert sd.check_slow_decrease(F_phi, failing).status == "fail"
