"""Spherical functions phi_lambda and the Plancherel density.

Three independent evaluation routes:

  * jacobi series   -- phi_lambda(r) = phi^{(alpha,beta)}_{2 lambda}(r/2)
    through the Pfaff-transformed Gauss hypergeometric series (argument
    tanh^2), accumulated in extended precision.  The series condition
    number grows like exp(0.7 |lambda| r), so this route is for
    |lambda| r up to ~20.
  * cosine-transform (Koornwinder) route -- a Gauss-Jacobi rule whose
    weight absorbs the (t-s)^{(n-3)/2} endpoint factor; uniformly
    accurate in lambda, used for large |lambda| r and for zero location.
  * Poisson integral representation over N -- desk scale only, ties the
    spherical functions to the group geometry.

spherical_phi dispatches between the first two.  plancherel_density is
the Jacobi |c|^{-2} in the group parametrization (lambda -> 2 lambda).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .errors import ConvergenceError
from .meanvalue import cosh_cosine_integral
from .poisson import poisson_kernel_biradial
from .quad import DEFAULT_SPEC, integrate_N_biradial
from .nagroup import distance_to_origin

__all__ = [
    "JacobiParams",
    "gauss_2f1",
    "jacobi_phi",
    "spherical_phi",
    "spherical_phi_series",
    "spherical_phi_integral",
    "koornwinder_phi",
    "koornwinder_prefactor",
    "eigen_ode_residual",
    "ode_drift_coefficient",
    "plancherel_density",
    "SERIES_DOMAIN_LIMIT",
]

# |lambda| * r beyond which the Pfaff series loses more than ~3 digits
SERIES_DOMAIN_LIMIT = 20.0


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi parameters alpha = (m+k-1)/2, beta = (k-1)/2; rho = Q."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha >= self.beta > -0.5):
            raise ValueError("need alpha >= beta > -1/2")

    @property
    def rho(self):
        return self.alpha + self.beta + 1.0

    # the (k, n) chart of the same data, for the cosine-transform layer
    @property
    def k(self):
        return int(round(2.0 * self.beta + 1.0))

    @property
    def n(self):
        return int(round(2.0 * self.alpha + 2.0))

    @classmethod
    def from_algebra(cls, alg):
        return cls(alpha=(alg.m + alg.k - 1) / 2.0, beta=(alg.k - 1) / 2.0)

    @classmethod
    def from_kn(cls, k, n):
        return cls(alpha=(n - 2) / 2.0, beta=(k - 1) / 2.0)


def _params(obj):
    if isinstance(obj, JacobiParams):
        return obj
    return JacobiParams.from_algebra(obj)


def gauss_2f1(a, b, c, z, tol=1e-15, max_terms=10000):
    """2F1(a, b; c; z) by the power series, real z in [0, 1).

    Complex parameters allowed; c must not be a nonpositive integer.
    Terms are accumulated in extended precision; terminating series
    (a or b a nonpositive integer) are summed exactly.  Vectorized over z.
    """
    c_ = complex(c)
    if c_.imag == 0.0 and c_.real <= 0.0 and c_.real == round(c_.real):
        raise ValueError("c must not be a nonpositive integer")
    z = np.asarray(z)
    if np.any((np.real(z) < 0) | (np.real(z) >= 1.0)) or np.any(np.imag(z) != 0):
        raise ValueError("series route needs real z in [0, 1)")
    scalar = z.ndim == 0
    zl = np.atleast_1d(z).astype(np.clongdouble)
    al, bl, cl = np.clongdouble(a), np.clongdouble(b), np.clongdouble(c)
    term = np.ones_like(zl)
    total = term.copy()
    for j in range(max_terms):
        term = term * ((al + j) * (bl + j) / ((cl + j) * (j + 1.0))) * zl
        total += term
        if np.all(np.abs(term) <= tol * np.maximum(1.0, np.abs(total))):
            break
    else:
        raise ConvergenceError(
            f"2F1 series did not converge in {max_terms} terms (max z = {np.max(z)})",
            partial=np.asarray(total, dtype=complex),
        )
    out = np.asarray(total, dtype=complex)
    return complex(out[0]) if scalar else out.reshape(z.shape)


def jacobi_phi(params, lam, s):
    """Jacobi function phi_lam^{(alpha,beta)}(s), vectorized over s >= 0.

    Pfaff transformation maps the argument -sinh^2 s to tanh^2 s in [0,1):
    phi = (cosh s)^{-(rho - i lam)} 2F1((rho-i lam)/2, (alpha-beta+1-i lam)/2;
    alpha+1; tanh^2 s).  Even in lam; phi(0) = 1.
    """
    p = _params(params)
    s = np.asarray(s, dtype=float)
    scalar = s.ndim == 0
    s1 = np.atleast_1d(s)
    if np.any(s1 < 0):
        raise ValueError("s must be nonnegative")
    out = np.ones(s1.shape, dtype=complex)
    pos = s1 > 0
    if np.any(pos):
        sp = s1[pos]
        F = gauss_2f1(
            0.5 * (p.rho - 1j * lam),
            0.5 * (p.alpha - p.beta + 1.0 - 1j * lam),
            p.alpha + 1.0,
            np.tanh(sp) ** 2,
        )
        out[pos] = np.exp((-(p.rho) + 1j * lam) * np.log(np.cosh(sp))) * F
    return complex(out[0]) if scalar else out.reshape(s.shape)


def spherical_phi_series(alg, lam, r):
    """phi_lambda(r) = phi^{(alpha,beta)}_{2 lambda}(r/2) by the series route."""
    return jacobi_phi(_params(alg), 2.0 * lam, np.asarray(r, dtype=float) / 2.0)


def _phi_series_lambda_grid(alg, lams, r, tol=1e-15, max_terms=10000):
    """Series route vectorized over a lambda grid at one fixed radius."""
    p = _params(alg)
    if r == 0.0:
        return np.ones(len(lams), dtype=complex)
    s = r / 2.0
    w = np.clongdouble(np.tanh(s) ** 2)
    lamv = np.asarray(lams, dtype=complex).astype(np.clongdouble)
    a = 0.5 * (p.rho - 2j * lamv)
    b = 0.5 * (p.alpha - p.beta + 1.0 - 2j * lamv)
    c = np.clongdouble(p.alpha + 1.0)
    term = np.ones_like(lamv)
    total = term.copy()
    for j in range(max_terms):
        term = term * ((a + j) * (b + j) / ((c + j) * (j + 1.0))) * w
        total += term
        if np.all(np.abs(term) <= tol * np.maximum(1.0, np.abs(total))):
            break
    else:
        raise ConvergenceError(f"series did not converge at r={r}",
                               partial=np.asarray(total, dtype=complex))
    pref = np.exp((-(p.rho) + 2j * lamv) * np.clongdouble(np.log(np.cosh(s))))
    return np.asarray(pref * total, dtype=complex)


def koornwinder_prefactor(params, t):
    """Gamma((n-1)/2) Gamma(1/2) / (2^{(n-1)/2} Gamma(n/2)) (sinh t)^{n-2} (cosh t)^{k/2}."""
    p = _params(params)
    k, n = p.k, p.n
    return (
        math.gamma((n - 1) / 2.0) * math.gamma(0.5)
        / (2.0 ** ((n - 1) / 2.0) * math.gamma(n / 2.0))
        * math.sinh(t) ** (n - 2) * math.cosh(t) ** (k / 2.0)
    )


def koornwinder_phi(alg, lam, t, spec=DEFAULT_SPEC, order=None):
    """phi_lambda(t) through the cosine-transform integral.

    The printed formula holds in Jacobi variables, so the group function
    is the integral evaluated at (2 lambda, t/2) divided by the prefactor
    at t/2.  Uniformly accurate in lambda; t must be positive (the
    prefactor vanishes at t = 0).
    """
    if t <= 0:
        raise ValueError("t must be positive (prefactor vanishes at t = 0)")
    p = _params(alg)
    val = cosh_cosine_integral(p.k, p.n, 2.0 * np.asarray(lam, dtype=complex), t / 2.0,
                               nodes=spec.nodes_1d, order=order, method="jacobi")
    return val / koornwinder_prefactor(p, t / 2.0)


def spherical_phi(alg, lam, r):
    """phi_lambda(r): series for |lambda| r <= 20, cosine transform beyond.

    Even in lambda, phi_lambda(0) = 1, phi_{-iQ/2} identically 1.
    Scalar lam; vectorized over r.
    """
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r1 = np.atleast_1d(r)
    out = np.empty(r1.shape, dtype=complex)
    small = np.abs(lam) * r1 <= SERIES_DOMAIN_LIMIT
    if np.any(small):
        out[small] = np.atleast_1d(spherical_phi_series(alg, lam, r1[small]))
    for i in np.nonzero(~small)[0]:
        out[i] = koornwinder_phi(alg, lam, float(r1[i]))
    return complex(out[0]) if scalar else out.reshape(r.shape)


def phi_table(alg, lams, rs, spec=DEFAULT_SPEC):
    """Table phi_{lams[i]}(rs[j]) built column-by-column.

    Each radius beyond the series domain gets one Gauss-Jacobi rule shared
    by the whole lambda grid, which keeps large tables cheap.
    """
    lams = np.asarray(lams, dtype=complex)
    rs = np.asarray(rs, dtype=float)
    out = np.empty((len(lams), len(rs)), dtype=complex)
    lmax = float(np.max(np.abs(lams))) if len(lams) else 0.0
    for j, r in enumerate(rs):
        if r == 0.0:
            out[:, j] = 1.0
        elif lmax * r <= SERIES_DOMAIN_LIMIT:
            out[:, j] = _phi_series_lambda_grid(alg, lams, float(r))
        else:
            out[:, j] = koornwinder_phi(alg, lams, float(r), spec=spec)
    return out


# ---------------------------------------------------------------------------
# Poisson integral representation (desk scale)
# ---------------------------------------------------------------------------

def spherical_phi_integral(alg, lam, y, spec=DEFAULT_SPEC):
    """phi_lambda(y) = int_N P_lam(e, n) P_{-lam}(y, n) dn, desk algebra.

    For y = (0, 0, a) on the A-axis the integrand depends only on
    (|X|, |Z|) and the integral reduces to the bi-radial quadrant; general
    y goes through the recentered 3-D quadrature.  Numerically radial:
    the value depends on y only through d(y, e).
    """
    if not (alg.k == 1 and alg.m == 2):
        raise ValueError("integral representation is wired for the desk algebra k=1, m=2")
    Q = alg.Q
    c1 = 0.5 - 1j * lam / Q
    c2 = 0.5 + 1j * lam / Q
    on_axis = float(np.max(np.abs(y.X))) < 1e-14 and float(np.max(np.abs(y.Z))) < 1e-14
    if on_axis:
        ay = y.a

        def g(U, V):
            return (
                poisson_kernel_biradial(alg, 1.0, U, V) ** c1
                * poisson_kernel_biradial(alg, ay, U, V) ** c2
            )

        return complex(integrate_N_biradial(g, alg, spec))
    return _phi_integral_general(alg, lam, y, spec)


def _phi_integral_general(alg, lam, y, spec):
    # recentered: int P_1(n_y n)^{c1} P_{a_y}(n)^{c2} dn, n = (x1, x2, z)
    from .poisson import poisson_constant
    from .quad import panel_rule_from_edges, geometric_edges

    Q = alg.Q
    c1 = 0.5 - 1j * lam / Q
    c2 = 0.5 + 1j * lam / Q
    cmk = poisson_constant(alg)
    ay, Xy, Zy = y.a, y.X, y.Z

    ex = geometric_edges(512.0)
    ez = geometric_edges(8192.0)
    x1, wx1 = panel_rule_from_edges(np.concatenate([-ex[::-1], ex[1:]]), 10)
    z, wz = panel_rule_from_edges(np.concatenate([-ez[::-1], ez[1:]]), 10)
    X1, X2 = np.meshgrid(x1, x1, indexing="ij")
    WX = np.outer(wx1, wx1)
    total = 0.0 + 0.0j
    # n_y n = (X_y + X, Z_y + z + (1/2)[X_y, X])
    brk = 0.5 * (Xy[0] * X2 - Xy[1] * X1)  # <J1 X_y, X> for the desk J
    sx = (Xy[0] + X1) ** 2 + (Xy[1] + X2) ** 2
    p2_base = (ay + 0.25 * (X1 ** 2 + X2 ** 2)) ** 2
    for zi, wzi in zip(z, wz):
        p1 = cmk * ((1.0 + 0.25 * sx) ** 2 + (Zy[0] + zi + brk) ** 2) ** (-Q)
        p2 = cmk * ay ** Q * (p2_base + zi ** 2) ** (-Q)
        total += wzi * np.sum(WX * np.exp(c1 * np.log(p1) + c2 * np.log(p2)))
    return complex(total)


# ---------------------------------------------------------------------------
# eigen-ODE residual and Plancherel density
# ---------------------------------------------------------------------------

def ode_drift_coefficient(alg, r):
    """b(r) = ((m+k)/2) coth(r/2) + (k/2) tanh(r/2), the radial drift."""
    r = np.asarray(r, dtype=float)
    return 0.5 * (alg.m + alg.k) / np.tanh(r / 2.0) + 0.5 * alg.k * np.tanh(r / 2.0)


def eigen_ode_residual(alg, lam, r_grid, h=2e-3):
    """Max residual of phi'' + b(r) phi' + (lambda^2 + Q^2/4) phi over r_grid.

    Five-point central stencils with per-point step h; the grid must stay
    away from the coth singularity (r >= 0.05).
    """
    r_grid = np.asarray(r_grid, dtype=float)
    if np.any(r_grid < 0.05):
        raise ValueError("grid must satisfy r >= 0.05 (coth singularity)")
    ev = lam ** 2 + alg.Q ** 2 / 4.0
    worst = 0.0
    for r in r_grid:
        st = r + h * np.arange(-2.0, 3.0)
        ph = np.array([spherical_phi(alg, lam, s) for s in st])
        d1 = (ph[0] - 8 * ph[1] + 8 * ph[3] - ph[4]) / (12 * h)
        d2 = (-ph[0] + 16 * ph[1] - 30 * ph[2] + 16 * ph[3] - ph[4]) / (12 * h ** 2)
        res = abs(d2 + ode_drift_coefficient(alg, r) * d1 + ev * ph[2])
        worst = max(worst, float(res))
    return worst


def plancherel_density(params, lam):
    """|c(lambda)|^{-2} with the Jacobi c-function at argument 2 lambda.

    c_{alpha,beta}(mu) = 2^{rho - i mu} Gamma(alpha+1) Gamma(i mu)
      / [Gamma((rho + i mu)/2) Gamma((alpha - beta + 1 + i mu)/2)].

    Even and nonnegative on the real line with polynomial growth ~ lam^{n-1};
    the lambda -> 0 limit is 0.
    """
    p = _params(params)
    lam = np.asarray(lam, dtype=float)
    scalar = lam.ndim == 0
    mu = 2.0 * np.abs(np.atleast_1d(lam))
    out = np.zeros(mu.shape)
    nz = mu > 1e-13
    imu = 1j * mu[nz]
    logc = (
        (p.rho - imu) * math.log(2.0)
        + loggamma(p.alpha + 1.0)
        + loggamma(imu)
        - loggamma(0.5 * (p.rho + imu))
        - loggamma(0.5 * (p.alpha - p.beta + 1.0 + imu))
    )
    out[nz] = np.exp(-2.0 * np.real(logc))
    return float(out[0]) if scalar else out.reshape(lam.shape)
