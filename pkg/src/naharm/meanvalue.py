"""Sphere mean-value operator and the oscillatory-integral layer.

The oscillatory side works with the cosine transforms

    Phi_k(lambda) = int_0^t cos(lambda s) (cosh t - cosh s)^{(n-3)/2}
                    2F1(k/2, 1-k/2; (n-1)/2; (cosh t - cosh s)/(2 cosh t)) ds
    I~_nu(lambda) = int_0^t cos(lambda s) (cosh t - cosh s)^nu ds
    I_nu(lambda)  = int_0^t cos(lambda s) (t^2 - s^2)^nu ds

parametrized by free (k, n): the layer never needs a group realization,
only the pair of exponents, so it also runs at parameter values with no
H-type model.  I_nu has the exact half-integer Bessel closed form; I~_nu
has leading asymptotic nu! (sinh t)^nu lambda^{-nu-1} sin(lambda t - nu
pi/2) with remainder O(lambda^{-nu-2}).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import hyp2f1 as _sp_hyp2f1
from scipy.special import roots_jacobi

from .errors import UnderResolvedOscillationError
from .nagroup import NAPoint, dist0_batch, geodesic_sphere, mult_batch
from .quad import DEFAULT_SPEC, gauss_legendre_panels
from .radial import RadialFunction

__all__ = [
    "mean_value",
    "phi_k_integral",
    "phi_k_polynomial_form",
    "I_tilde_nu",
    "i_tilde_leading",
    "I_nu_exact",
    "bessel_half_integer",
    "taylor_split_check",
    "asymptotics_report",
    "OscillatoryIntegralReport",
    "TaylorSplitReport",
    "pochhammer",
    "poly_reduction_coeff",
]


# ---------------------------------------------------------------------------
# mean-value operator
# ---------------------------------------------------------------------------

def mean_value(alg, f, x, t, spec=DEFAULT_SPEC):
    """M_t f(x): average of f over the geodesic sphere of radius t around x.

    Equals (f * sigma_t)(x) with sigma_t the normalized surface measure on
    the sphere of radius t about the identity.  RadialFunction arguments
    take a vectorized path; other callables receive NAPoints.
    """
    if t <= 0:
        raise ValueError("sphere radius must be positive")
    Y, ZY, tY, w = geodesic_sphere(alg, t, spec)
    X, Z, tt = mult_batch(alg, x.X, x.Z, x.t, Y, ZY, tY)
    if isinstance(f, RadialFunction):
        return float(f(dist0_batch(alg, X, Z, tt)) @ w)
    vals = np.array([f(NAPoint(X=X[i], Z=Z[i], t=float(tt[i]))) for i in range(len(w))])
    return vals @ w


# ---------------------------------------------------------------------------
# oscillatory quadrature engines
# ---------------------------------------------------------------------------

def _kn(params):
    """Accept an algebra, a params object with (k, n), or a (k, n) pair."""
    if hasattr(params, "k") and hasattr(params, "n"):
        return int(params.k), int(params.n)
    k, n = params
    return int(k), int(n)


def _hyp_factor(k, n, warg):
    # terminating for even k; scipy handles the generic real case
    return _sp_hyp2f1(k / 2.0, 1.0 - k / 2.0, (n - 1) / 2.0, warg)


_gj_cache = {}


def _roots_jacobi_cached(order, N):
    # orders are quantized by the callers, so the cache stays small
    key = (order, round(N, 9))
    if key not in _gj_cache:
        _gj_cache[key] = roots_jacobi(order, N, 0.0)
    return _gj_cache[key]


def required_panels(lam, t):
    """Composite-GL panel count giving >= 10 panels per oscillation period."""
    width = np.max(np.abs(np.real(np.atleast_1d(lam)))) * t / (2.0 * math.pi)
    return int(max(32, math.ceil(10.0 * width)))


def cosh_cosine_integral(k, n, lam, t, nodes=20, panels=None, order=None, method="auto"):
    """Engine for int_0^t cos(lam s) (cosh t - cosh s)^N F(s) ds, N=(n-3)/2.

    Integer N: composite Gauss-Legendre panels (>= 10 per period, audited).
    Half-integer N: a single Gauss-Jacobi rule with weight (t-s)^N, which
    absorbs the endpoint branch point; order grows with the phase lam*t.
    """
    lam = np.asarray(lam, dtype=complex)
    N = (n - 3) / 2.0
    integer_N = abs(N - round(N)) < 1e-12 and N >= 0
    if method == "auto":
        method = "panels" if integer_N else "jacobi"
    if method == "panels":
        need = required_panels(lam, t)
        if panels is None:
            panels = need
        elif panels < need:
            raise UnderResolvedOscillationError(
                f"{panels} panels < {need} required for |lambda| t = "
                f"{np.max(np.abs(np.real(lam))) * t:.1f}"
            )
        # >= 10 panels per period bounds the phase per panel; 8 nodes are
        # then far past machine precision and keep long sweeps cheap
        s, w = gauss_legendre_panels(0.0, t, panels, min(nodes, 8))
        amp = (np.cosh(t) - np.cosh(s)) ** N * _hyp_factor(k, n, (np.cosh(t) - np.cosh(s)) / (2 * np.cosh(t)))
        out = np.cos(np.multiply.outer(lam, s)) @ (w * amp)
    else:
        if order is None:
            order = int(max(48, 0.75 * np.max(np.abs(np.real(lam))) * t + 60))
        order = 32 * int(np.ceil(order / 32.0))  # quantized for rule reuse
        x, wq = _roots_jacobi_cached(order, N)
        s = 0.5 * t * (x + 1.0)
        ts = np.maximum(t - s, 1e-300)
        g = np.where(t - s > 1e-9, (np.cosh(t) - np.cosh(s)) / ts, np.sinh(t))
        amp = (t / 2.0) ** (N + 1) * wq * g ** N * _hyp_factor(k, n, (np.cosh(t) - np.cosh(s)) / (2 * np.cosh(t)))
        out = np.cos(np.multiply.outer(lam, s)) @ amp
    return out if out.ndim else complex(out)


def phi_k_integral(params, lam, t, spec=DEFAULT_SPEC, panels=None):
    """Phi_k(lambda) for the (k, n) carried by params (algebra or pair).

    Even in lambda; entire in lambda (cosine transform of a compactly
    supported amplitude).  Vectorized over lambda.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    k, n = _kn(params)
    return cosh_cosine_integral(k, n, lam, t, nodes=spec.nodes_1d, panels=panels)


def pochhammer(nu, ell):
    """(nu)_ell = nu (nu+1) ... (nu+ell-1), empty product 1."""
    out = 1.0
    for i in range(ell):
        out *= nu + i
    return out


def poly_reduction_coeff(ell, M, N):
    """c_{ell,M} = (-1)^ell binom(M, ell) (1+M)_ell / (1+N)_ell; c_{0,M} = 1."""
    return (-1.0) ** ell * math.comb(M, ell) * pochhammer(1.0 + M, ell) / pochhammer(1.0 + N, ell)


def phi_k_polynomial_form(params, lam, t, spec=DEFAULT_SPEC):
    """Phi_k for even k >= 4 as a finite sum of I~ integrals.

    Phi_k(lam) = sum_{ell=0}^{M} 2^{-ell} c_{ell,M} (cosh t)^{-ell}
                 I~_{N+ell}(lam), with M = k/2 - 1, N = (n-3)/2.
    """
    k, n = _kn(params)
    if k % 2 != 0 or k < 4:
        raise ValueError("polynomial reduction needs even k >= 4")
    M = k // 2 - 1
    N = (n - 3) / 2.0
    if abs(N - round(N)) > 1e-12:
        raise ValueError("polynomial form needs integer N = (n-3)/2, i.e. odd n")
    N = int(round(N))
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros(lam.shape, dtype=complex)
    for ell in range(M + 1):
        out += (
            2.0 ** (-ell)
            * poly_reduction_coeff(ell, M, N)
            * math.cosh(t) ** (-ell)
            * I_tilde_nu(lam, t, N + ell, spec=spec)
        )
    return out if out.ndim else complex(out)


def I_tilde_nu(lam, t, nu, spec=DEFAULT_SPEC, panels=None):
    """I~_nu(lambda) = int_0^t cos(lambda s) (cosh t - cosh s)^nu ds."""
    if t <= 0 or nu < 0:
        raise ValueError("need t > 0 and nu >= 0")
    # reuse the engine with F == 1 by picking k=2 (terminating 2F1 equal to 1)
    lam = np.asarray(lam, dtype=complex)
    need = required_panels(lam, t)
    if panels is None:
        panels = need
    elif panels < need:
        raise UnderResolvedOscillationError(f"{panels} panels < {need} required")
    s, w = gauss_legendre_panels(0.0, t, panels, min(spec.nodes_1d, 8))
    out = np.cos(np.multiply.outer(lam, s)) @ (w * (np.cosh(t) - np.cosh(s)) ** nu)
    return out if out.ndim else complex(out)


def i_tilde_leading(lam, t, nu):
    """Leading large-lambda term nu! (sinh t)^nu lam^{-nu-1} sin(lam t - nu pi/2)."""
    lam = np.asarray(lam, dtype=float)
    return math.factorial(nu) * math.sinh(t) ** nu * lam ** (-nu - 1.0) * np.sin(lam * t - nu * math.pi / 2.0)


def _bessel_half_ascending(nu, z):
    # J_{nu+1/2}(z) = (z/2)^{nu+1/2} / Gamma(nu+3/2) sum_j (-z^2/4)^j / (j! (nu+3/2)_j)
    term = (z / 2.0) ** (nu + 0.5) / math.gamma(nu + 1.5)
    out = term.copy()
    for j in range(1, 60):
        term = term * (-(z ** 2) / 4.0) / (j * (nu + 0.5 + j))
        out += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(out)):
            break
    return out


def bessel_half_integer(nu, z):
    """J_{nu+1/2}(z) from the exact finite sums, z > 0, integer nu >= 0:

    J_{nu+1/2}(z) = sqrt(2/(pi z)) [ sin(z - nu pi/2) S_even(1/z)
                                   + cos(z - nu pi/2) S_odd(1/z) ].

    The finite sums cancel catastrophically when z is small against nu, so
    z < nu + 2 switches to the ascending power series (same function,
    stable branch).
    """
    if nu < 0 or int(nu) != nu:
        raise ValueError("nu must be a nonnegative integer")
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(z <= 0):
        raise ValueError("z must be positive")
    nu = int(nu)
    out = np.empty_like(z)
    small = z < nu + 2.0
    if np.any(small):
        out[small] = _bessel_half_ascending(nu, z[small])
    zb = z[~small]
    if zb.size:
        se = np.zeros_like(zb)
        for m_ in range(nu // 2 + 1):
            se += (-1.0) ** m_ * math.factorial(nu + 2 * m_) / (
                math.factorial(2 * m_) * math.factorial(nu - 2 * m_)) * (2.0 * zb) ** (-2 * m_)
        so = np.zeros_like(zb)
        for m_ in range((nu - 1) // 2 + 1) if nu >= 1 else []:
            so += (-1.0) ** m_ * math.factorial(nu + 2 * m_ + 1) / (
                math.factorial(2 * m_ + 1) * math.factorial(nu - 2 * m_ - 1)) * (2.0 * zb) ** (-2 * m_ - 1)
        phase = zb - nu * math.pi / 2.0
        out[~small] = np.sqrt(2.0 / (math.pi * zb)) * (np.sin(phase) * se + np.cos(phase) * so)
    return float(out[0]) if scalar else out


def I_nu_exact(lam, t, nu):
    """I_nu(lambda) = int_0^t cos(lambda s)(t^2-s^2)^nu ds, closed form.

    Equals sqrt(pi) 2^{nu-1/2} t^{2nu+1} (lam t)^{-nu-1/2} Gamma(nu+1)
    J_{nu+1/2}(lam t); the lambda -> 0 limit is the beta-integral
    t^{2nu+1} sqrt(pi) Gamma(nu+1) / (2 Gamma(nu+3/2)).
    """
    lam = np.asarray(lam, dtype=float)
    out = np.empty_like(lam)
    zero = np.abs(lam) * t < 1e-8
    out[zero] = t ** (2 * nu + 1) * math.sqrt(math.pi) * math.gamma(nu + 1) / (2.0 * math.gamma(nu + 1.5))
    lz = np.abs(lam[~zero])  # even in lambda
    out[~zero] = (
        math.sqrt(math.pi) * 2.0 ** (nu - 0.5) * t ** (2 * nu + 1) * math.gamma(nu + 1)
        * (lz * t) ** (-nu - 0.5) * bessel_half_integer(nu, lz * t)
    )
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# asymptotics reports
# ---------------------------------------------------------------------------

@dataclass
class OscillatoryIntegralReport:
    nu: int
    t: float
    lambda_grid: np.ndarray
    quadrature: np.ndarray
    asymptotic: np.ndarray
    fitted_slope: float
    scaled_remainder_sup: float  # sup |I~ - leading| lam^{nu+3/2}


def _envelope_slope(lams, vals, t, nu):
    """log-log slope of |vals| fitted at oscillation peaks of the remainder."""
    mask = np.abs(np.cos(lams * t - nu * math.pi / 2.0)) > 0.5
    mask &= np.abs(vals) > 0
    return float(np.polyfit(np.log(lams[mask]), np.log(np.abs(vals[mask])), 1)[0])


def asymptotics_report(nu, t, lam_min=50.0, lam_max=400.0, count=60, spec=DEFAULT_SPEC):
    """Quadrature vs leading asymptotic for I~_nu on a geometric grid."""
    lams = np.geomspace(lam_min, lam_max, count)
    quad_vals = np.real(I_tilde_nu(lams, t, nu, spec=spec))
    lead = i_tilde_leading(lams, t, nu)
    rem = quad_vals - lead
    slope = _envelope_slope(lams, rem, t, nu)
    scaled = float(np.max(np.abs(rem) * lams ** (nu + 1.5)))
    return OscillatoryIntegralReport(
        nu=nu, t=t, lambda_grid=lams, quadrature=quad_vals, asymptotic=lead,
        fitted_slope=slope, scaled_remainder_sup=scaled,
    )


@dataclass
class TaylorSplitReport:
    nu: int
    t: float
    a0: float                 # (sinh t / (2t))^nu
    a0_fit: float             # constant term recovered from a polynomial fit
    a0_limit: float           # direct s -> t limit of the ratio
    split_remainder_sup: float  # sup |I~ - a0 I_nu| (1+lam)^{nu+2} on the grid
    remainder_slope: float    # fitted decay slope of |I~ - leading|


def taylor_split_check(t, nu, lam_min=50.0, lam_max=400.0, count=60, spec=DEFAULT_SPEC):
    """Check (cosh t - cosh s)^nu = a0 (t^2-s^2)^nu + higher order, and its
    quadrature consequence I~_nu = a0 I_nu + O(lambda^{-nu-2})."""
    if t <= 0:
        raise ValueError("t must be positive")
    a0 = (math.sinh(t) / (2.0 * t)) ** nu

    def ratio(s):
        return ((np.cosh(t) - np.cosh(s)) / (t ** 2 - s ** 2)) ** nu

    # polynomial fit of the ratio in z = t^2 - s^2 near z = 0 (s -> t)
    s_fit = t * (1.0 - np.linspace(1e-4, 0.35, 25))
    z = t ** 2 - s_fit ** 2
    coeffs = np.polynomial.polynomial.polyfit(z, ratio(s_fit), 6)
    a0_fit = float(coeffs[0])
    # s -> t limit by third-order Richardson in z
    z0 = 1e-3 * t ** 2
    g1, g2, g3 = (float(ratio(np.array([math.sqrt(t ** 2 - w)]))[0])
                  for w in (z0, z0 / 2.0, z0 / 4.0))
    a0_limit = (g1 - 6.0 * g2 + 8.0 * g3) / 3.0

    lams = np.geomspace(lam_min, lam_max, count)
    itld = np.real(I_tilde_nu(lams, t, nu, spec=spec))
    split_rem = itld - a0 * I_nu_exact(lams, t, nu)
    lead_rem = itld - i_tilde_leading(lams, t, nu)
    return TaylorSplitReport(
        nu=nu, t=t, a0=a0, a0_fit=a0_fit, a0_limit=a0_limit,
        split_remainder_sup=float(np.max(np.abs(split_rem) * (1.0 + lams) ** (nu + 2))),
        remainder_slope=_envelope_slope(lams, lead_rem, t, nu),
    )
