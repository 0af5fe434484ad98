"""Poisson kernel, the functions P_lambda, Helgason-Fourier and Radon
transforms, and numeric derivative-bound checks.

The kernel is normalized so that int_N P_a dn = 1:

    P_a(X, Z) = c_{m,k} a^Q ((a + |X|^2/4)^2 + |Z|^2)^{-Q},
    c_{m,k} = 2^{k-1} pi^{-n/2} Gamma(n/2).

P_lambda(x, n0) = P(x, n0)^{1/2 - i lambda/Q} (principal power of a
positive base, so no branch cuts).  With this normalization the
horospherical form carries the constant:
P_lambda = c_{m,k}^{1/2 - i lambda/Q} exp((Q/2 - i lambda) A(sigma(n0^{-1} x))).

Full NA quadrature (Helgason-Fourier, Radon) is wired for desk scale
(k=1, m=2); the bi-radial pipelines run on any algebra.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .htype import bracket
from .nagroup import (
    dist0_batch,
    distance_to_origin,
    left_invariant_derivative,
    mult_batch,
    multiply,
    point,
    sigma_batch,
)
from .quad import DEFAULT_SPEC, gauss_legendre_panels
from .radial import RadialFunction

__all__ = [
    "poisson_constant",
    "poisson_kernel",
    "poisson_kernel_biradial",
    "poisson_kernel_normalization",
    "P_lambda",
    "P_lambda_horospherical",
    "horospherical_A",
    "helgason_fourier",
    "radon_transform",
    "check_Plambda_derivative_bound",
    "support_box",
    "DerivativeBoundReport",
]


def poisson_constant(alg):
    """c_{m,k} = 2^{k-1} pi^{-n/2} Gamma(n/2)."""
    return 2.0 ** (alg.k - 1) * math.pi ** (-alg.n / 2.0) * math.gamma(alg.n / 2.0)


def poisson_kernel_biradial(alg, a, U, V):
    """P_a as a function of the radii (|X|, |Z|); a may be batched too."""
    a = np.asarray(a, dtype=float)
    if np.any(a <= 0):
        raise ValueError("a must be positive")
    return (
        poisson_constant(alg)
        * a ** alg.Q
        * ((a + 0.25 * np.asarray(U) ** 2) ** 2 + np.asarray(V) ** 2) ** (-alg.Q)
    )


def poisson_kernel(alg, a, n):
    """P_a(X, Z); strictly positive."""
    X, Z = np.asarray(n[0], float), np.asarray(n[1], float)
    return float(poisson_kernel_biradial(alg, a, math.sqrt(X @ X), math.sqrt(Z @ Z)))


def poisson_kernel_normalization(alg, a, spec=DEFAULT_SPEC):
    """int_N P_a dn by bi-radial quadrature; equals 1 for every a."""
    from .quad import integrate_N_biradial

    return integrate_N_biradial(lambda U, V: poisson_kernel_biradial(alg, a, U, V), alg, spec)


def _n_inverse_times(alg, n0, n):
    """n0^{-1} n in N for n0 = (X0, Z0), n = (X, Z) (batched in n)."""
    X0, Z0 = n0
    X, Z = n
    return X - X0, Z - Z0 - 0.5 * bracket(alg, X0, X)


def _log_P(alg, a, Xr, Zr):
    """log P_a at translated coordinates, batched; base is positive."""
    u2 = np.sum(np.atleast_2d(Xr) ** 2, axis=-1)
    v2 = np.sum(np.atleast_2d(Zr) ** 2, axis=-1)
    return (
        math.log(poisson_constant(alg))
        + alg.Q * np.log(a)
        - alg.Q * np.log((a + 0.25 * u2) ** 2 + v2)
    )


def P_lambda(alg, lam, x, n0):
    """P_lambda(x, n0) = [P_a(n0^{-1} n)]^{1/2 - i lambda/Q} for x = n a."""
    Xr, Zr = _n_inverse_times(alg, (np.asarray(n0[0], float), np.asarray(n0[1], float)), (x.X, x.Z))
    logp = float(_log_P(alg, x.a, Xr, Zr)[0])
    return complex(np.exp((0.5 - 1j * lam / alg.Q) * logp))


def horospherical_A(alg, x, n0):
    """A(sigma(n0^{-1} x)): the horocyclic coordinate of the inverted point."""
    n0p = point(alg, -np.asarray(n0[0], float), -np.asarray(n0[1], float), a=1.0)
    y = multiply(alg, n0p, x)
    _, _, ts = sigma_batch(alg, y.X, y.Z, y.t)
    return float(ts)


def P_lambda_horospherical(alg, lam, x, n0):
    """c_{m,k}^{1/2 - i lambda/Q} e^{(Q/2 - i lambda) A(sigma(n0^{-1} x))}.

    The constant prefactor keeps the two representations equal for the
    normalized kernel.
    """
    A = horospherical_A(alg, x, n0)
    c = poisson_constant(alg)
    return complex(c ** (0.5 - 1j * lam / alg.Q) * np.exp((alg.Q / 2.0 - 1j * lam) * A))


# ---------------------------------------------------------------------------
# full NA quadrature at desk scale
# ---------------------------------------------------------------------------

def support_box(alg, R):
    """Coordinate bounds for B_R: |t| <= R, |X|^2 <= 8 e^{R/2} cosh(R/2),
    |Z| <= 2 e^{R/2} cosh(R/2)."""
    xmax = math.sqrt(8.0 * math.exp(R / 2.0) * math.cosh(R / 2.0))
    zmax = 2.0 * math.exp(R / 2.0) * math.cosh(R / 2.0)
    return xmax, zmax, R


def _na_grid(alg, R, nodes_xy=22, nodes_t=16):
    """Tensor Gauss-Legendre grid covering B_R in (X, Z, t), desk scale."""
    if not (alg.k == 1 and alg.m == 2):
        raise ValueError("full NA quadrature is wired for the desk algebra k=1, m=2")
    xmax, zmax, tmax = support_box(alg, R)
    x, wx = gauss_legendre_panels(-xmax, xmax, 2, nodes_xy)
    z, wz = gauss_legendre_panels(-zmax, zmax, 2, nodes_xy)
    t, wt = gauss_legendre_panels(-tmax, tmax, 2, nodes_t)
    X1, X2, Zg, Tg = np.meshgrid(x, x, z, t, indexing="ij")
    W = (
        wx[:, None, None, None]
        * wx[None, :, None, None]
        * wz[None, None, :, None]
        * wt[None, None, None, :]
    ).ravel()
    Xb = np.stack([X1.ravel(), X2.ravel()], axis=1)
    Zb = Zg.reshape(-1, 1)
    return Xb, Zb, Tg.ravel(), W


def _eval_on_batch(alg, f, Xb, Zb, tb):
    if isinstance(f, RadialFunction):
        return f(dist0_batch(alg, Xb, Zb, tb))
    return np.asarray(f(Xb, Zb, tb), dtype=float)


def helgason_fourier(alg, f, R, lam, n0, spec=DEFAULT_SPEC, nodes_xy=22, nodes_t=16):
    """f~(lambda, n0) = int_NA f(x) P_lambda(x, n0) dx with Haar e^{-Qt}.

    f vanishes outside B_R; it is a RadialFunction or a vectorized callable
    f(X, Z, t) on batches.  lam may be a scalar or an array: the grid and
    the log-kernel are shared across the whole lambda grid.
    """
    lam_arr = np.asarray(lam, dtype=complex)
    Xb, Zb, tb, W = _na_grid(alg, R, nodes_xy, nodes_t)
    F = _eval_on_batch(alg, f, Xb, Zb, tb)
    keep = F != 0.0
    if not np.any(keep):
        return np.zeros(lam_arr.shape, dtype=complex) if lam_arr.ndim else 0.0j
    Xb, Zb, tb, W, F = Xb[keep], Zb[keep], tb[keep], W[keep], F[keep]
    X0, Z0 = np.asarray(n0[0], float), np.asarray(n0[1], float)
    Xr, Zr = _n_inverse_times(alg, (X0, Z0), (Xb, Zb))
    logp = _log_P(alg, np.exp(tb), Xr, Zr)
    base = W * F * np.exp(-alg.Q * tb)
    expos = 0.5 - 1j * lam_arr.reshape(-1) / alg.Q
    out = np.empty(expos.shape, dtype=complex)
    for i0 in range(0, len(expos), 32):  # chunked to bound the (L, B) buffer
        blk = expos[i0:i0 + 32]
        out[i0:i0 + 32] = np.exp(blk[:, None] * logp[None, :]) @ base
    return out.reshape(lam_arr.shape) if lam_arr.ndim else complex(out[0])


def radon_transform(alg, f, a, n0, spec=DEFAULT_SPEC, nodes_xy=34):
    """f^(a, n0) = a^{-Q/2} int_N f(n0 sigma(n a)) dn, truncated N-quadrature.

    The integration box comes from the ball estimates at radius
    R' = supp(f) + d(n0, e) since d(sigma(n a), e) = d(n a, e).
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if not (alg.k == 1 and alg.m == 2):
        raise ValueError("full N quadrature is wired for the desk algebra k=1, m=2")
    if f.support_radius is None:
        raise ValueError("f must be compactly supported")
    X0, Z0 = np.asarray(n0[0], float), np.asarray(n0[1], float)
    d0 = distance_to_origin(alg, point(alg, X0, Z0, a=1.0))
    Rp = f.support_radius + d0 + 1e-9
    t = math.log(a)
    if abs(t) > Rp:
        return 0.0
    # |X|^2 <= 8 sqrt(a) cosh(R'/2), |Z| <= 2 sqrt(a) cosh(R'/2) at fixed a
    xmax = math.sqrt(8.0 * math.sqrt(a) * math.cosh(Rp / 2.0))
    zmax = 2.0 * math.sqrt(a) * math.cosh(Rp / 2.0)
    x, wx = gauss_legendre_panels(-xmax, xmax, 2, nodes_xy)
    z, wz = gauss_legendre_panels(-zmax, zmax, 2, nodes_xy)
    X1, X2, Zg = np.meshgrid(x, x, z, indexing="ij")
    W = (wx[:, None, None] * wx[None, :, None] * wz[None, None, :]).ravel()
    Xb = np.stack([X1.ravel(), X2.ravel()], axis=1)
    Zb = Zg.reshape(-1, 1)
    tb = np.full(len(W), t)
    Xs, Zs, ts = sigma_batch(alg, Xb, Zb, tb)
    Xp, Zp, tp = mult_batch(alg, X0, Z0, 0.0, Xs, Zs, ts)
    vals = _eval_on_batch(alg, f, Xp, Zp, tp)
    return math.exp(-0.5 * alg.Q * t) * float(vals @ W)


# ---------------------------------------------------------------------------
# derivative bounds
# ---------------------------------------------------------------------------

@dataclass
class DerivativeBoundReport:
    R: float
    lam: complex
    J: tuple
    ratios: np.ndarray          # per n0
    n0_norms: np.ndarray
    max_ratio: float = field(init=False)

    def __post_init__(self):
        self.max_ratio = float(np.max(self.ratios))


def _sample_ball(alg, R, count, seed):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        X = rng.normal(0.0, 0.6 * R, alg.m)
        Z = rng.normal(0.0, 0.6 * R, alg.k)
        t = rng.uniform(-R, R)
        if dist0_batch(alg, X, Z, t) < 0.99 * R:
            pts.append(point(alg, X, Z, t=t))
    return pts


def check_Plambda_derivative_bound(alg, R, lam, J, n0_list=None, samples=25, seed=4):
    """Max over sampled B_R of |X_J P_lambda(., n0)| divided by the claimed
    envelope e^{R |Im lambda|} (1+|lambda|)^{|J|} P_1(n0)^{1/2 + Im lambda/Q}.

    The returned ratios should stay bounded uniformly in n0.
    """
    J = tuple(J)
    if len(J) > 2:
        raise ValueError("bound check wired for |J| <= 2")
    if n0_list is None:
        n0_list = [
            (np.concatenate([[s], np.zeros(alg.m - 1)]), 0.5 * s * np.ones(alg.k) / math.sqrt(alg.k))
            for s in np.geomspace(0.1, 30.0, 10)
        ]
    pts = _sample_ball(alg, R, samples, seed)
    envelope_lam = math.exp(R * abs(lam.imag)) * (1.0 + abs(lam)) ** len(J)
    ratios = []
    norms = []
    for n0 in n0_list:
        X0, Z0 = np.asarray(n0[0], float), np.asarray(n0[1], float)
        p1 = poisson_kernel(alg, 1.0, (X0, Z0))
        env = envelope_lam * p1 ** (0.5 + lam.imag / alg.Q)
        worst = 0.0
        for p in pts:
            g = lambda q: P_lambda(alg, lam, q, (X0, Z0))
            val = left_invariant_derivative(alg, g, p, J) if J else g(p)
            worst = max(worst, abs(val))
        ratios.append(worst / env)
        norms.append(math.hypot(float(np.linalg.norm(X0)), float(np.linalg.norm(Z0))))
    return DerivativeBoundReport(R=R, lam=complex(lam), J=J, ratios=np.array(ratios), n0_norms=np.array(norms))
