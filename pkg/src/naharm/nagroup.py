"""NA group arithmetic and the ball model.

Points of the solvable group NA are stored as (X, Z, t) with t = log a;
keeping the A-coordinate in log form avoids positivity drift.  The module
provides the product law, inverses, the Riemannian distance, the Cayley
transform onto the unit ball and its closed-form inverse, the geodesic
inversion, left-invariant derivatives, Haar weights, geodesic-sphere
quadrature, and the radialization / v-radial projectors.

All operations are pure; points are immutable.  Batched variants operate
on arrays shaped (..., m), (..., k), (...) and are used by the sphere
machinery.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .htype import apply_JZ, bracket
from .quad import DEFAULT_SPEC, sphere_nodes

__all__ = [
    "NAPoint",
    "BallPoint",
    "identity",
    "point",
    "multiply",
    "inverse",
    "distance_to_origin",
    "distance",
    "cayley",
    "cayley_inverse",
    "geodesic_inversion",
    "left_invariant_derivative",
    "haar_weight",
    "radialize",
    "v_radial_project",
    "geodesic_sphere",
    "mult_batch",
    "dist0_batch",
    "cayley_inverse_batch",
    "sigma_batch",
    "curve_derivative",
]


@dataclass(frozen=True)
class NAPoint:
    """Group element (X, Z, a) with the A-part stored as t = log a."""

    X: np.ndarray
    Z: np.ndarray
    t: float

    @property
    def a(self):
        return math.exp(self.t)

    def to_json_array(self):
        return [*self.X.tolist(), *self.Z.tolist(), self.t]


@dataclass(frozen=True)
class BallPoint:
    """Cayley image (X', Z', l') with rho = |(X',Z',l')| < 1."""

    Xp: np.ndarray
    Zp: np.ndarray
    lp: float

    @property
    def rho(self):
        return math.sqrt(float(self.Xp @ self.Xp + self.Zp @ self.Zp + self.lp ** 2))


def point(alg, X, Z, a=None, t=None):
    X = np.asarray(X, dtype=float)
    Z = np.asarray(Z, dtype=float)
    if X.shape != (alg.m,) or Z.shape != (alg.k,):
        raise DimensionError(f"point needs X in R^{alg.m}, Z in R^{alg.k}")
    if (a is None) == (t is None):
        raise ValueError("give exactly one of a or t")
    if t is None:
        if a <= 0:
            raise ValueError("A-coordinate must be positive")
        t = math.log(a)
    if not np.all(np.isfinite(X)) or not np.all(np.isfinite(Z)) or not math.isfinite(t):
        raise ValueError("coordinates must be finite")
    return NAPoint(X=X, Z=Z, t=float(t))


def identity(alg):
    return NAPoint(X=np.zeros(alg.m), Z=np.zeros(alg.k), t=0.0)


# ---------------------------------------------------------------------------
# group law (batched cores + NAPoint wrappers)
# ---------------------------------------------------------------------------

def mult_batch(alg, X1, Z1, t1, X2, Z2, t2):
    """(X + a^(1/2) X', Z + a Z' + (1/2) a^(1/2) [X, X'], a a') in log-A form."""
    sqa = np.exp(0.5 * np.asarray(t1))[..., None]
    a = np.exp(np.asarray(t1))[..., None]
    X = X1 + sqa * X2
    Z = Z1 + a * Z2 + 0.5 * sqa * bracket(alg, X1, X2)
    return X, Z, np.asarray(t1) + np.asarray(t2)


def multiply(alg, p, q):
    X, Z, t = mult_batch(alg, p.X, p.Z, p.t, q.X, q.Z, q.t)
    return NAPoint(X=X, Z=Z, t=float(t))


def inverse(alg, p):
    """(-a^(-1/2) X, -a^(-1) Z, 1/a); solves multiply(p, inverse(p)) = e."""
    return NAPoint(X=-math.exp(-0.5 * p.t) * p.X, Z=-math.exp(-p.t) * p.Z, t=-p.t)


def _cosh2_half_excess(alg, X, Z, t):
    """cosh^2(r/2) - 1 = sinh^2(r/2), written without cancellation:

    (1/4) a^{-1} {(1-a)^2 + (1/2)(1+a)|X|^2 + |X|^4/16 + |Z|^2}.
    """
    a = np.exp(np.asarray(t))
    x2 = np.sum(np.asarray(X) ** 2, axis=-1)
    z2 = np.sum(np.asarray(Z) ** 2, axis=-1)
    return 0.25 * ((1.0 - a) ** 2 + 0.5 * (1.0 + a) * x2 + x2 ** 2 / 16.0 + z2) / a


def dist0_batch(alg, X, Z, t):
    return 2.0 * np.arcsinh(np.sqrt(_cosh2_half_excess(alg, X, Z, t)))


def distance_to_origin(alg, p):
    """Riemannian distance d(p, e); zero iff p is the identity."""
    return float(dist0_batch(alg, p.X, p.Z, p.t))


def distance(alg, p, q):
    """Left-invariant distance d(p, q) = d(p^{-1} q, e)."""
    return distance_to_origin(alg, multiply(alg, inverse(alg, p), q))


# ---------------------------------------------------------------------------
# Cayley transform and geodesic inversion
# ---------------------------------------------------------------------------

def cayley(alg, p):
    """Map onto the unit ball; |cayley(p)| = tanh(d(p,e)/2).

    The third component uses the product form
    l' = D^{-1} {(a-1+|X|^2/4)(1+a+|X|^2/4) + |Z|^2},
    the unique choice consistent with rho = tanh(r/2).
    """
    a = p.a
    x2 = float(p.X @ p.X)
    c = 1.0 + a + 0.25 * x2
    D0 = c * c + float(p.Z @ p.Z)
    Xp = (c * p.X - apply_JZ(alg, p.Z, p.X)) / D0
    Zp = 2.0 * p.Z / D0
    lp = ((a - 1.0 + 0.25 * x2) * c + float(p.Z @ p.Z)) / D0
    return BallPoint(Xp=Xp, Zp=Zp, lp=float(lp))


def cayley_inverse_batch(alg, Xp, Zp, lp):
    Xp = np.asarray(Xp, dtype=float)
    Zp = np.asarray(Zp, dtype=float)
    lp = np.asarray(lp, dtype=float)
    rho2 = np.sum(Xp ** 2, axis=-1) + np.sum(Zp ** 2, axis=-1) + lp ** 2
    if np.any(rho2 >= 1.0):
        raise ValueError("ball point must satisfy rho < 1")
    D = 4.0 / ((1.0 - lp) ** 2 + np.sum(Zp ** 2, axis=-1))
    u = 0.5 * (1.0 - lp) * D
    Z = 0.5 * D[..., None] * Zp
    X = u[..., None] * Xp + apply_JZ(alg, Z, Xp)
    a = u - 1.0 - 0.25 * np.sum(X ** 2, axis=-1)
    return X, Z, np.log(a)


def cayley_inverse(alg, b):
    X, Z, t = cayley_inverse_batch(alg, b.Xp, b.Zp, b.lp)
    return NAPoint(X=X, Z=Z, t=float(t))


def sigma_batch(alg, X, Z, t):
    """Geodesic inversion in coordinates, batched."""
    X = np.asarray(X, dtype=float)
    Z = np.asarray(Z, dtype=float)
    t = np.asarray(t, dtype=float)
    a = np.exp(t)
    c = a + 0.25 * np.sum(X ** 2, axis=-1)
    D1 = c * c + np.sum(Z ** 2, axis=-1)
    Xs = (-c[..., None] * X + apply_JZ(alg, Z, X)) / D1[..., None]
    return Xs, -Z / D1[..., None], t - np.log(D1)


def geodesic_inversion(alg, p):
    """Involutive isometry sigma fixing the origin's distance spheres."""
    X, Z, t = sigma_batch(alg, p.X, p.Z, p.t)
    return NAPoint(X=X, Z=Z, t=float(t))


def haar_weight(alg, p):
    """Left Haar density e^{-Q t} against Lebesgue dX dZ dt."""
    return math.exp(-alg.Q * p.t)


# ---------------------------------------------------------------------------
# left-invariant derivatives
# ---------------------------------------------------------------------------

def _shift(p, dX=None, dZ=None, dt=0.0):
    X = p.X if dX is None else p.X + dX
    Z = p.Z if dZ is None else p.Z + dZ
    return NAPoint(X=X, Z=Z, t=p.t + dt)


def _apply_field(alg, g, p, j, h):
    """One left-invariant field X_j applied to g at p by central differences."""
    m = alg.m
    if j == 0:
        # a d/da = d/dt
        return (g(_shift(p, dt=h)) - g(_shift(p, dt=-h))) / (2 * h)
    if 1 <= j <= m:
        ell = j - 1
        sqa = math.exp(0.5 * p.t)
        eX = np.zeros(m)
        eX[ell] = h
        val = (g(_shift(p, dX=eX)) - g(_shift(p, dX=-eX))) / (2 * h)
        # (1/2) <J_{u_i} X, e_ell> d/dZ_i
        coeff = 0.5 * alg.J[:, ell, :] @ p.X  # <J_i X, e_ell> = (J_i X)_ell
        for i in range(alg.k):
            if coeff[i] == 0.0:
                continue
            eZ = np.zeros(alg.k)
            eZ[i] = h
            val += coeff[i] * (g(_shift(p, dZ=eZ)) - g(_shift(p, dZ=-eZ))) / (2 * h)
        return sqa * val
    if m < j <= m + alg.k:
        i = j - m - 1
        eZ = np.zeros(alg.k)
        eZ[i] = h
        return math.exp(p.t) * (g(_shift(p, dZ=eZ)) - g(_shift(p, dZ=-eZ))) / (2 * h)
    raise ValueError(f"field index {j} outside 0..{m + alg.k}")


_H_BY_ORDER = {1: 1e-5, 2: 1e-4, 3: 8e-4}


def left_invariant_derivative(alg, f, p, J, h=None):
    """Apply the composed left-invariant operator X_J to f at p.

    J is a multi-index over {0,...,n-1} with |J| <= 3; index 0 is the
    A-direction a d/da, 1..m the v-directions, m+1..m+k the z-directions.
    Central differences with order-balanced steps.
    """
    J = tuple(J)
    if len(J) == 0:
        return f(p)
    if len(J) > 3:
        raise ValueError("multi-index length capped at 3")
    if h is None:
        h = _H_BY_ORDER[len(J)]
    scale = 1.0 + max(np.max(np.abs(p.X), initial=0.0), np.max(np.abs(p.Z), initial=0.0), abs(p.t))
    h = h * scale
    if h < 1e-12:
        raise ValueError("step size underflow")
    if len(J) == 1:
        return _apply_field(alg, f, p, J[0], h)
    inner = lambda q: left_invariant_derivative(alg, f, q, J[1:], h=None)
    return _apply_field(alg, inner, p, J[0], h)


def curve_derivative(alg, f, p, j, h=1e-5):
    """d/ds f(p exp(s Y_j)) at s=0; cross-validation oracle for |J| = 1."""
    m = alg.m

    def at(s):
        if j == 0:
            q = NAPoint(X=np.zeros(m), Z=np.zeros(alg.k), t=s)
        elif 1 <= j <= m:
            X = np.zeros(m)
            X[j - 1] = s
            q = NAPoint(X=X, Z=np.zeros(alg.k), t=0.0)
        else:
            Z = np.zeros(alg.k)
            Z[j - m - 1] = s
            q = NAPoint(X=np.zeros(m), Z=Z, t=0.0)
        return f(multiply(alg, p, q))

    return (at(h) - at(-h)) / (2 * h)


# ---------------------------------------------------------------------------
# geodesic spheres, radialization, v-radial projector
# ---------------------------------------------------------------------------

def geodesic_sphere(alg, r, spec=DEFAULT_SPEC):
    """Quadrature for the geodesic sphere S_r.

    Returns (X, Z, t, w): batched points y(omega) = C^{-1}(tanh(r/2) omega)
    and normalized weights.  The ball-model volume density is direction
    independent, so the induced normalized surface measure is the uniform
    measure in the direction omega.
    """
    if r <= 0:
        raise ValueError("sphere radius must be positive")
    omega, w = sphere_nodes(alg.n, spec)
    rho = math.tanh(0.5 * r)
    pts = rho * omega
    X, Z, t = cayley_inverse_batch(alg, pts[:, :alg.m], pts[:, alg.m:alg.m + alg.k], pts[:, -1])
    return X, Z, t, w


def radialize(alg, f, p, spec=DEFAULT_SPEC):
    """Average of f over the geodesic sphere through p.

    The result depends on p only through d(p, e), so R is a projection
    onto radial functions.  f takes an NAPoint.
    """
    r = distance_to_origin(alg, p)
    if r == 0.0:
        return f(p)
    X, Z, t, w = geodesic_sphere(alg, r, spec)
    vals = np.array([f(NAPoint(X=X[i], Z=Z[i], t=float(t[i]))) for i in range(len(w))])
    return float(vals @ w)


def v_radial_project(alg, f, p, spec=DEFAULT_SPEC):
    """(pi f)(X, Z, a): average of f(|X| omega, Z, a) over omega in S^{m-1}."""
    nx = math.sqrt(float(p.X @ p.X))
    omega, w = sphere_nodes(alg.m, spec)
    vals = np.array([f(NAPoint(X=nx * om, Z=p.Z, t=p.t)) for om in omega])
    return float(vals @ w)
