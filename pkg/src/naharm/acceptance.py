"""Acceptance suite: one runner per criterion, shared by pytest and the CLI.

Every criterion fixes its tolerances here; nothing is deferred to later
calibration.  Runners are deterministic (fixed seeds) and sized to keep
the whole suite well under the ten-minute budget.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import abel, deconvolve, meanvalue, nagroup, poisson, slowdecrease, spherical
from .htype import build_htype
from .quad import DEFAULT_SPEC, gauss_legendre_panels
from .radial import RadialFunction, gevrey_bump

__all__ = ["CriterionResult", "run_all", "CRITERIA"]

_SEED = 20240817


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    measure: float
    threshold: float
    comparator: str = "<"
    detail: str = ""
    seconds: float = 0.0

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return (f"[{flag}] criterion {self.cid:2d} {self.name}: "
                f"{self.measure:.3e} {self.comparator} {self.threshold:.1e}  {self.detail}")


_desk = None
_secondary = None


def desk_algebra():
    global _desk
    if _desk is None:
        _desk = build_htype(1, 1)
    return _desk


def secondary_algebra():
    global _secondary
    if _secondary is None:
        _secondary = build_htype(3, 1)
    return _secondary


def _result(cid, name, measure, threshold, detail="", comparator="<"):
    ok = measure < threshold if comparator == "<" else measure >= threshold
    return CriterionResult(cid=cid, name=name, passed=bool(ok), measure=float(measure),
                           threshold=float(threshold), comparator=comparator, detail=detail)


def criterion_1():
    """H-type identity over 1000 random Z for k in {1, 2, 3}."""
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for k in (1, 2, 3):
        alg = build_htype(k, 1)
        for _ in range(1000):
            Z = rng.normal(size=alg.k)
            JZ = np.einsum("k,kij->ij", Z, alg.J)
            E = JZ @ JZ + (Z @ Z) * np.eye(alg.m)
            worst = max(worst, float(np.linalg.norm(E, 2)))
    return _result(1, "H-type identity |J_Z^2 + |Z|^2 I|", worst, 1e-12, "k in {1,2,3}, 1000 Z each")


def criterion_2():
    """Group axioms on 1000 random triples (desk and k=3 algebras)."""
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    for alg in (desk_algebra(), secondary_algebra()):
        e = nagroup.identity(alg)
        for _ in range(1000):
            pts = [nagroup.point(alg, rng.normal(0, 1.2, alg.m), rng.normal(0, 1.2, alg.k),
                                 t=rng.normal(0, 1.0)) for _ in range(3)]
            p, q, w = pts
            lhs = nagroup.multiply(alg, nagroup.multiply(alg, p, q), w)
            rhs = nagroup.multiply(alg, p, nagroup.multiply(alg, q, w))
            worst = max(worst, float(np.max(np.abs(lhs.X - rhs.X))),
                        float(np.max(np.abs(lhs.Z - rhs.Z))), abs(lhs.t - rhs.t))
            pe = nagroup.multiply(alg, p, e)
            worst = max(worst, float(np.max(np.abs(pe.X - p.X))), abs(pe.t - p.t))
            pi = nagroup.multiply(alg, p, nagroup.inverse(alg, p))
            worst = max(worst, float(np.max(np.abs(pi.X))), float(np.max(np.abs(pi.Z))), abs(pi.t))
    return _result(2, "group axioms", worst, 1e-12, "assoc/identity/inverse, 1000 triples, k=1 and k=3")


def criterion_3():
    """Ball-model metric consistency and Cayley round trip on 500 points."""
    rng = np.random.default_rng(_SEED + 2)
    worst = 0.0
    for alg in (desk_algebra(), secondary_algebra()):
        for _ in range(500):
            p = nagroup.point(alg, rng.normal(0, 1.5, alg.m), rng.normal(0, 1.5, alg.k),
                              t=rng.normal(0, 1.0))
            b = nagroup.cayley(alg, p)
            r = nagroup.distance_to_origin(alg, p)
            worst = max(worst, abs(b.rho - math.tanh(r / 2.0)))
            p2 = nagroup.cayley_inverse(alg, b)
            worst = max(worst, float(np.max(np.abs(p2.X - p.X))),
                        float(np.max(np.abs(p2.Z - p.Z))), abs(p2.t - p.t))
    return _result(3, "metric + Cayley round trip", worst, 1e-10, "500 points, k=1 and k=3")


def criterion_4():
    """int_N P_a dn = 1 for a in {1/2, 1, 2}."""
    worst = 0.0
    for alg in (desk_algebra(), secondary_algebra()):
        for a in (0.5, 1.0, 2.0):
            val = poisson.poisson_kernel_normalization(alg, a, DEFAULT_SPEC)
            worst = max(worst, abs(val - 1.0))
    return _result(4, "Poisson normalization", worst, 1e-6, "a in {0.5,1,2}, k=1 and k=3")


def criterion_5():
    """Three-route agreement for phi_lambda on the desk algebra."""
    alg = desk_algebra()
    lam_list = [l + off for l in (0.0, 1.0, 5.0, 10.0) for off in (0.0, 0.5j, -0.5j)]
    worst_int = 0.0
    worst_koo = 0.0
    for lam in lam_list:
        for r in (0.5, 1.0, 2.0):
            ser = spherical.spherical_phi_series(alg, lam, r)
            y = nagroup.point(alg, np.zeros(2), np.zeros(1), t=r)
            intg = spherical.spherical_phi_integral(alg, lam, y)
            koo = complex(spherical.koornwinder_phi(alg, np.array([lam]), r)[0])
            worst_int = max(worst_int, abs(ser - intg))
            worst_koo = max(worst_koo, abs(ser - koo))
    return _result(5, "spherical three-route agreement", max(worst_int, worst_koo), 1e-6,
                   f"|series-integral|={worst_int:.1e}, |series-koornwinder|={worst_koo:.1e}")


def criterion_6():
    """Eigen-ODE residual on r in [0.1, 3] for lambda in {0.5, 1, 3}."""
    alg = desk_algebra()
    grid = np.linspace(0.1, 3.0, 25)
    worst = max(spherical.eigen_ode_residual(alg, lam, grid) for lam in (0.5, 1.0, 3.0))
    return _result(6, "eigen-ODE residual", worst, 1e-7, "5-point stencils, desk algebra")


def criterion_7():
    """Projection-slice F(Af) = spherical transform, bumps R in {0.5, 1, 2}."""
    alg = desk_algebra()
    lams = np.linspace(0.0, 20.0, 21)
    worst = 0.0
    for R in (0.5, 1.0, 2.0):
        f = gevrey_bump(R=R)
        ft = abel.spherical_transform_radial(alg, f, lams)
        af = lambda ts: np.array([abel.abel_transform(alg, f, float(t)) for t in np.atleast_1d(ts)])
        fa = abel.fourier_even(af, lams, R)
        worst = max(worst, float(np.max(np.abs(fa - ft))))
    return _result(7, "projection-slice", worst, 1e-5, "R in {0.5,1,2}, lambda in [0,20]")


def criterion_8():
    """Paley-Wiener growth: sup |f~| e^{-R|Im|}(1+|lam|)^j finite and stable."""
    alg = desk_algebra()
    f = gevrey_bump(R=1.0)

    def sups(nx, ny):
        xs = np.linspace(0.0, 20.0, nx)
        ys = np.linspace(-2.0, 2.0, ny)
        L = (xs[:, None] + 1j * ys[None, :]).ravel()
        vals = abel.spherical_transform_radial(alg, f, L)
        out = []
        for j in range(5):
            out.append(float(np.max(np.abs(vals) * np.exp(-1.0 * np.abs(L.imag))
                                    * (1.0 + np.abs(L)) ** j)))
        return np.array(out)

    coarse = sups(11, 5)
    fine = sups(21, 9)
    ratio = float(np.max(fine / coarse))
    ok = np.all(np.isfinite(fine)) and ratio < 1.25
    return CriterionResult(8, "Paley-Wiener growth bound", bool(ok), ratio, 1.25,
                           detail=f"sup ratios fine/coarse per j: {np.round(fine / coarse, 3).tolist()}")


def criterion_9():
    """Bessel/oscillatory layer: exact identity, remainder decay, a_0 check."""
    t = 1.0
    worst_exact = 0.0
    for nu in range(7):
        for lam in (0.7, 5.3, 37.0, 151.0):
            for tt in (0.6, 1.0):
                s, w = gauss_legendre_panels(0.0, tt, meanvalue.required_panels(lam, tt), 20)
                q = float(np.cos(lam * s) @ (w * (tt ** 2 - s ** 2) ** nu))
                worst_exact = max(worst_exact, abs(q - meanvalue.I_nu_exact(lam, tt, nu)))
    slope_onesided_ok = True
    slope_true_ok = True
    bounded_ok = True
    slopes = []
    for nu in (2, 3, 5):
        rep = meanvalue.asymptotics_report(nu, t)
        slopes.append(round(rep.fitted_slope, 3))
        if not (rep.fitted_slope <= -(nu + 1.5) + 0.2):
            slope_onesided_ok = False
        if abs(rep.fitted_slope - (-(nu + 2.0))) > 0.25:
            slope_true_ok = False
        half = len(rep.lambda_grid) // 2
        scaled = np.abs(rep.quadrature - rep.asymptotic) * rep.lambda_grid ** (nu + 1.5)
        if not np.isfinite(scaled).all() or np.max(scaled[half:]) > np.max(scaled[:half]):
            bounded_ok = False
    worst_a0 = 0.0
    for nu in (1, 2, 3):
        rep = meanvalue.taylor_split_check(t, nu)
        worst_a0 = max(worst_a0, abs(rep.a0_fit - rep.a0), abs(rep.a0_limit - rep.a0))
    ok = worst_exact < 1e-10 and slope_onesided_ok and slope_true_ok and bounded_ok and worst_a0 < 1e-8
    return CriterionResult(
        9, "Bessel/oscillatory layer", bool(ok), worst_exact, 1e-10,
        detail=(f"slopes {slopes} (paper bound one-sided <= -(nu+1.5)+0.2, true order -(nu+2)); "
                f"a0 err {worst_a0:.1e}; literal two-sided -(nu+3/2)+-0.2 window is "
                "unattainable (remainder is Theta(lam^-(nu+2))), see ledger"))


def criterion_10():
    """Slow decrease of Phi_4 with the explicit witness, and a found witness
    for phi_lambda(1) on the desk algebra."""
    k, n, t = 4, 7, 1.0
    N = (n - 3) // 2
    rep = slowdecrease.phi_lambda_slow_decrease_report((k, n), t)
    A_disc = slowdecrease.paper_disc_constant(N, t)
    B = slowdecrease.leading_constant(N, t) / 2.0 ** (N + 2)
    wit = slowdecrease.SlowDecreaseWitness(
        A=A_disc, B=B, C=1.0, D=N + 1.0, xi_range=(rep.xi0_conditions, 200.0))

    def phi4(z):
        return meanvalue.phi_k_polynomial_form((k, n), np.asarray(z, dtype=complex), t)

    checked = slowdecrease.check_slow_decrease(phi4, wit)
    alg = desk_algebra()

    def phi_desk(z):
        return spherical.koornwinder_phi(alg, np.asarray(z, dtype=complex), 1.0)

    found = slowdecrease.find_witness(
        phi_desk, (5.0, 60.0),
        A_grid=[0.1, 0.5], B_grid=[0.5], C_grid=[1.0],
        D_grid=[0.5, 1.0, 1.5, 2.0, 2.5, 3.0], xi_count=120)
    ok = checked.status == "pass" and rep.status == "pass" and found is not None
    detail = (f"xi0={rep.xi0_conditions:.1f}, margin={checked.margin:.2f}, "
              f"witness A={A_disc:.3f} D={N + 1}, report {rep.status}; "
              f"found witness for phi_lambda(1): "
              f"{None if found is None else (found.A, found.B, found.C, found.D)}")
    return CriterionResult(10, "slow-decrease certification", bool(ok),
                           checked.margin if checked.margin is not None else 0.0, 1.0,
                           comparator=">=", detail=detail)


def criterion_11():
    """Deconvolution demo: residual of M_t f_rec against g below 1e-2."""
    alg = desk_algebra()
    t, R = 1.0, 1.0
    f0 = gevrey_bump(R=R)
    # dense sphere for the forward map: the division by small phi_lambda(t)
    # near its zeros amplifies any error floor in g
    spec = DEFAULT_SPEC.with_(sphere_nodes=65536)
    g = deconvolve.forward_problem_rhs(alg, f0, t, spec)
    prob = deconvolve.default_problem(alg, g, t)
    res = deconvolve.solve(alg, prob, spec=spec, verify_radii=np.linspace(0.0, R + t, 41))
    err_f = float(np.max(np.abs(res.f_samples - f0(prob.r_grid))))
    return _result(11, "surjectivity demo (deconvolution)", res.residual, 1e-2,
                   f"|f_rec - f_true|_sup={err_f:.2e}, {len(res.zeros)} guarded zeros")


def criterion_12():
    """Mean-value property M_t phi_lambda(x) = phi_lambda(t) phi_lambda(x)."""
    alg = desk_algebra()
    lam, t = 1.3, 1.0
    rng = np.random.default_rng(_SEED + 12)
    phi = RadialFunction(eval=lambda r: np.real(spherical.spherical_phi_series(alg, lam, r)))
    phi_t = float(np.real(spherical.spherical_phi_series(alg, lam, t)))
    worst = 0.0
    for _ in range(20):
        x = nagroup.point(alg, rng.normal(0, 0.8, 2), rng.normal(0, 0.8, 1), t=rng.normal(0, 0.7))
        lhs = meanvalue.mean_value(alg, phi, x, t)
        rhs = phi_t * phi(nagroup.distance_to_origin(alg, x))
        worst = max(worst, abs(lhs - rhs))
    return _result(12, "mean-value property", worst, 1e-4, "20 random x, lambda=1.3, t=1")


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
]


def run_all(verbose=True):
    results = []
    for fn in CRITERIA:
        t0 = time.perf_counter()
        res = fn()
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if verbose:
            print(res.line(), flush=True)
    return results
