"""Numerical verifier for the Ehrenpreis slow-decrease condition.

An entire function F is slowly decreasing when there are constants
A, B, C > 0 and D >= 0 with

    sup { |F(zeta)| : |zeta - xi| <= A log(2 + |xi|) } >= B (C + |xi|)^{-D}

for all real xi.  The checker certifies the inequality on a finite
xi-range by sampling each disc on its boundary circle and its real chord
(the tested functions are entire of exponential type, so the maximum
modulus lives on the boundary; the real chord catches the proof-relevant
real suprema).  Reports state the sampled range explicitly: this is range
certification, not a global proof.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .meanvalue import I_tilde_nu, i_tilde_leading, phi_k_polynomial_form

__all__ = [
    "SlowDecreaseWitness",
    "check_slow_decrease",
    "find_witness",
    "phi_lambda_slow_decrease_report",
    "paper_disc_constant",
    "leading_constant",
    "PhiSlowDecreaseReport",
]


@dataclass(frozen=True)
class SlowDecreaseWitness:
    A: float
    B: float
    C: float
    D: float
    xi_range: tuple = (1.0, 200.0)
    disc_samples: int = 256
    status: Optional[str] = None      # "pass" / "fail" after checking
    worst_xi: Optional[float] = None
    margin: Optional[float] = None    # min over xi of sup/bound

    def __post_init__(self):
        if not (self.A > 0 and self.B > 0 and self.C > 0 and self.D >= 0):
            raise ValueError("need A, B, C > 0 and D >= 0")
        if not (0 <= self.xi_range[0] < self.xi_range[1]):
            raise ValueError("need 0 <= xi_min < xi_max")


def _disc_points(xi, radius, count):
    half = count // 2
    th = 2.0 * math.pi * np.arange(half) / half
    boundary = xi + radius * np.exp(1j * th)
    chord = xi + np.linspace(-radius, radius, count - half)
    return np.concatenate([boundary, chord])


def disc_sup(F, xi, radius, count=256):
    """Sampled sup of |F| over the disc U_xi (boundary circle + real chord)."""
    return float(np.max(np.abs(np.asarray(F(_disc_points(xi, radius, count))))))


def check_slow_decrease(F, witness, xi_count=201):
    """Check the slow-decrease inequality for F on the witness's xi-range.

    F must accept a complex numpy array.  Returns a copy of the witness
    with status/worst_xi/margin filled; pass means every sampled xi
    satisfied the bound.
    """
    xis = np.linspace(witness.xi_range[0], witness.xi_range[1], max(xi_count, 200))
    margin = math.inf
    worst = xis[0]
    for xi in xis:
        radius = witness.A * math.log(2.0 + abs(xi))
        sup = disc_sup(F, xi, radius, witness.disc_samples)
        bound = witness.B * (witness.C + abs(xi)) ** (-witness.D)
        ratio = sup / bound
        if ratio < margin:
            margin = ratio
            worst = xi
    return replace(witness, status="pass" if margin >= 1.0 else "fail",
                   worst_xi=float(worst), margin=float(margin))


def find_witness(F, xi_range, A_grid, B_grid, C_grid, D_grid, disc_samples=256, xi_count=200):
    """First witness in lexicographic (A, B, C, D) grid order that passes.

    Deterministic; returns None when the grid is exhausted.  The disc
    suprema depend only on A, so they are computed once per A value.
    """
    xis = np.linspace(xi_range[0], xi_range[1], xi_count)
    for A in A_grid:
        sups = np.array([disc_sup(F, xi, A * math.log(2.0 + abs(xi)), disc_samples) for xi in xis])
        for B in B_grid:
            for C in C_grid:
                for D in D_grid:
                    bounds = B * (C + np.abs(xis)) ** (-D)
                    ratios = sups / bounds
                    i = int(np.argmin(ratios))
                    if ratios[i] >= 1.0:
                        return SlowDecreaseWitness(
                            A=A, B=B, C=C, D=D, xi_range=tuple(xi_range),
                            disc_samples=disc_samples, status="pass",
                            worst_xi=float(xis[i]), margin=float(ratios[i]),
                        )
    return None


# ---------------------------------------------------------------------------
# the explicit Phi_k witness
# ---------------------------------------------------------------------------

def paper_disc_constant(N, t):
    """Disc-radius constant (N+1)! (sinh t)^N used in the U_xi definition."""
    return math.factorial(N + 1) * math.sinh(t) ** N


def leading_constant(N, t):
    """Verified leading coefficient N! (sinh t)^N of Phi_k's oscillation."""
    return math.factorial(N) * math.sinh(t) ** N


@dataclass
class PhiSlowDecreaseReport:
    k: int
    n: int
    N: int
    t: float
    A_disc: float              # (N+1)! (sinh t)^N
    A_lead: float              # N! (sinh t)^N
    C_sharp: float             # fitted |r|(1+lam)^{N+2} envelope constant
    C_crude: float             # fitted |r|(1+lam)^{N+3/2} envelope constant
    xi0_conditions: float      # first xi with t|V_xi| > 2pi and A log(2+xi) <= xi/2
    xi0_sharp: float           # first xi from which the sharp chain stays positive
    xi0_crude: Optional[float]  # same for the crude chain (None if never in range)
    xi_max: float
    rows: list = field(default_factory=list)  # (xi, lam0, sinval, supV, sharp, crude)
    status: str = "fail"

    def summary(self):
        return {
            "status": self.status,
            "xi0_conditions": self.xi0_conditions,
            "xi0_sharp": self.xi0_sharp,
            "xi0_crude": self.xi0_crude,
            "xi_max": self.xi_max,
            "A_disc": self.A_disc,
            "A_lead": self.A_lead,
        }


def _phi_k(params_kn, t):
    k, n = params_kn

    def F(z):
        z = np.asarray(z, dtype=complex)
        return phi_k_polynomial_form((k, n), z, t)

    return F


def phi_lambda_slow_decrease_report(params, t, xi_max=200.0, xi_count=80):
    """Numerical realization of the slow-decrease argument for Phi_k.

    For each xi the report locates the sine peak lam0 in V_xi, measures
    sup_{V_xi} |Phi_k|, and evaluates two lower bounds: the sharp
    pre-rearrangement one A_lead lam0^{-N-1} - C (lam0+1)^{-N-2}, and the
    crude printed chain A_disc (2 xi)^{-N-1} - C (xi/2+1)^{-N-3/2}.  The
    crude chain only closes far beyond the sharp one; status is the sharp
    chain plus the explicit xi0 conditions.
    """
    if hasattr(params, "k") and hasattr(params, "n"):
        k, n = int(params.k), int(params.n)
    else:
        k, n = params
    if k % 2 != 0 or k < 4:
        raise ValueError("explicit witness wired for even k >= 4; see find_witness otherwise")
    N = (n - 3) // 2
    A_disc = paper_disc_constant(N, t)
    A_lead = leading_constant(N, t)
    F = _phi_k((k, n), t)

    # remainder envelope constants fitted on a wide real grid
    lams = np.geomspace(30.0, 2.5 * xi_max + 100.0, 140)
    rem = np.abs(np.real(F(lams)) - i_tilde_leading(lams, t, N))
    C_sharp = float(np.max(rem * (1.0 + lams) ** (N + 2)))
    C_crude = float(np.max(rem * (1.0 + lams) ** (N + 1.5)))

    def conditions_hold(xi):
        radius = A_disc * math.log(2.0 + xi)
        return 2.0 * t * radius > 2.0 * math.pi and radius <= xi / 2.0

    xi0_conditions = None
    for xi in np.linspace(1.0, xi_max, 4000):
        if conditions_hold(xi):
            xi0_conditions = float(xi)
            break
    if xi0_conditions is None:
        raise ValueError(f"xi0 conditions never hold below xi_max={xi_max}")

    rows = []
    xis = np.linspace(xi0_conditions, xi_max, xi_count)
    for xi in xis:
        radius = A_disc * math.log(2.0 + xi)
        lo, hi = max(xi - radius, 1e-3), xi + radius
        # sine peaks of sin(lam t - N pi/2): lam = (N pi/2 + pi/2 + 2 pi j)/t
        j0 = math.ceil((lo * t - N * math.pi / 2.0 - math.pi / 2.0) / (2.0 * math.pi))
        lam0 = (N * math.pi / 2.0 + math.pi / 2.0 + 2.0 * math.pi * j0) / t
        lam0 = min(lam0, hi)
        sinval = math.sin(lam0 * t - N * math.pi / 2.0)
        grid = np.linspace(lo, hi, 512)
        supV = float(np.max(np.abs(np.real(F(grid)))))
        sharp = A_lead * lam0 ** (-N - 1) - C_sharp * (lam0 + 1.0) ** (-N - 2)
        crude = A_disc * (2.0 * xi) ** (-N - 1) - C_crude * (xi / 2.0 + 1.0) ** (-N - 1.5)
        rows.append((float(xi), float(lam0), float(sinval), supV, float(sharp), float(crude)))

    def first_stable(idx_ok):
        for i in range(len(rows)):
            if all(idx_ok(r) for r in rows[i:]):
                return float(rows[i][0])
        return None

    xi0_sharp = first_stable(lambda r: r[4] > 0 and r[3] >= r[4])
    xi0_crude = first_stable(lambda r: r[5] > 0 and r[3] >= r[5])
    ok = (
        xi0_sharp is not None
        and xi0_sharp <= xi0_conditions + (xis[1] - xis[0])
        and all(r[2] >= 0.99 for r in rows)
    )
    return PhiSlowDecreaseReport(
        k=k, n=n, N=N, t=t, A_disc=A_disc, A_lead=A_lead,
        C_sharp=C_sharp, C_crude=C_crude,
        xi0_conditions=xi0_conditions,
        xi0_sharp=xi0_sharp if xi0_sharp is not None else math.inf,
        xi0_crude=xi0_crude, xi_max=xi_max, rows=rows,
        status="pass" if ok else "fail",
    )
