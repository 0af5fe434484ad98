"""Heisenberg-type algebras.

An H-type algebra here is the data (k, m, J) where J = (J_{u_1},...,J_{u_k})
are skew-symmetric orthogonal maps on R^m satisfying the Clifford relations

    J_{u_i} J_{u_j} + J_{u_j} J_{u_i} = -2 delta_ij I,

equivalently J_Z^2 = -|Z|^2 I for every Z in R^k.  The bracket of the
two-step nilpotent algebra v + z is recovered from <J_Z X, Y> = <Z, [X,Y]>.

Admissible dimension pairs: k=1 -> m=2b, k=2 -> m=4b, k=3 -> m=4b,
k=7 -> m=8b (b copies of the minimal Clifford module).  k=7 sits behind a
feature flag; the required constructions are k in {1,2,3}.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError

__all__ = ["HTypeAlgebra", "build_htype", "bracket", "apply_JZ"]

# minimal Clifford module dimension per k
_MIN_MODULE = {1: 2, 2: 4, 3: 4, 7: 8}


@dataclass(frozen=True)
class HTypeAlgebra:
    k: int
    m: int
    J: np.ndarray = field(repr=False)  # shape (k, m, m)

    @property
    def n(self):
        """dim NA = m + k + 1."""
        return self.m + self.k + 1

    @property
    def Q(self):
        """Homogeneous dimension m/2 + k."""
        return self.m / 2.0 + self.k

    def summary_dict(self):
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "Q": self.Q,
            "J": [Ji.ravel().tolist() for Ji in self.J],
        }

    def to_json(self, **kw):
        return json.dumps(self.summary_dict(), **kw)


def _quaternion_left_mults():
    """Left multiplication by i, j, k on H = R^4 with basis (1, i, j, k)."""
    Li = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
    Lj = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=float)
    Lk = np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=float)
    return Li, Lj, Lk


def _quaternion_product(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def _octonion_left_mults():
    """Left multiplication by e_1..e_7 on O = R^8.

    Cayley-Dickson over the quaternions: (a, b)(c, d) = (ac - conj(d) b,
    d a + b conj(c)).  Building the products from quaternion arithmetic
    keeps the table free of hand-copied sign errors.
    """
    conj = np.diag([1.0, -1.0, -1.0, -1.0])

    def omul(x, y):
        a, b = x[:4], x[4:]
        c, d = y[:4], y[4:]
        return np.concatenate([
            _quaternion_product(a, c) - _quaternion_product(conj @ d, b),
            _quaternion_product(d, a) + _quaternion_product(b, conj @ c),
        ])

    basis = np.eye(8)
    mats = []
    for i in range(1, 8):
        L = np.stack([omul(basis[i], basis[j]) for j in range(8)], axis=1)
        mats.append(L)
    return mats


def _minimal_module_maps(k):
    if k == 1:
        # counterclockwise rotation of R^2 (orientation convention)
        return [np.array([[0.0, -1.0], [1.0, 0.0]])]
    Li, Lj, Lk = _quaternion_left_mults()
    if k == 2:
        return [Li, Lj]
    if k == 3:
        return [Li, Lj, Lk]
    if k == 7:
        return _octonion_left_mults()
    raise ValueError(f"unsupported k={k}; admissible values are 1, 2, 3 (and 7 with allow_octonions)")


def build_htype(k, b, allow_octonions=False):
    """Construct the H-type algebra with b copies of the minimal module.

    k=1 uses the complex structure on R^2, k=2 a pair of anticommuting
    quaternionic structures, k=3 the quaternionic i, j, k, and k=7
    (behind the allow_octonions flag) the octonionic left multiplications.
    """
    if k not in _MIN_MODULE:
        raise ValueError(f"unsupported k={k}; admissible values are 1, 2, 3, 7")
    if k == 7 and not allow_octonions:
        raise ValueError("k=7 (octonionic) construction is optional; pass allow_octonions=True")
    if not isinstance(b, int) or b <= 0:
        raise ValueError(f"b must be a positive integer, got {b!r}")
    blocks = _minimal_module_maps(k)
    d = _MIN_MODULE[k]
    m = d * b
    J = np.zeros((k, m, m))
    for i, blk in enumerate(blocks):
        for c in range(b):
            J[i, c * d:(c + 1) * d, c * d:(c + 1) * d] = blk
    return HTypeAlgebra(k=k, m=m, J=J)


def _check_vec(v, length, name):
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != length:
        raise DimensionError(f"{name} must have length {length}, got shape {v.shape}")
    return v


def bracket(alg, X, Y):
    """Lie bracket [X, Y] in the center, component i = <J_{u_i} X, Y>.

    Accepts batched inputs with leading axes; the bracket is bilinear and
    antisymmetric.
    """
    X = _check_vec(X, alg.m, "X")
    Y = _check_vec(Y, alg.m, "Y")
    return np.einsum("kij,...j,...i->...k", alg.J, X, Y)


def apply_JZ(alg, Z, X):
    """J_Z X = sum_i Z_i J_{u_i} X; satisfies J_Z(J_Z X) = -|Z|^2 X."""
    Z = _check_vec(Z, alg.k, "Z")
    X = _check_vec(X, alg.m, "X")
    return np.einsum("...k,kij,...j->...i", Z, alg.J, X)
