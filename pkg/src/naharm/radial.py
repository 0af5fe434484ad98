"""Radial and even-line function carriers plus smooth test bumps."""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = ["RadialFunction", "EvenLineFunction", "gevrey_bump", "poly_bump"]


@dataclass(frozen=True)
class RadialFunction:
    """A function of the geodesic radius r >= 0.

    eval must accept numpy arrays; values vanish for r > support_radius
    when the support is bounded (enforced on call).
    """

    eval: Callable[[np.ndarray], np.ndarray]
    support_radius: Optional[float] = None
    note: str = ""

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        v = np.asarray(self.eval(r), dtype=float)
        if self.support_radius is not None:
            v = np.where(r <= self.support_radius, v, 0.0)
        return v if v.ndim else float(v)


@dataclass(frozen=True)
class EvenLineFunction:
    """An even function of t in R, e.g. an Abel transform."""

    eval: Callable[[np.ndarray], np.ndarray]
    support_radius: Optional[float] = None
    note: str = ""

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        v = np.asarray(self.eval(t), dtype=float)
        if self.support_radius is not None:
            v = np.where(np.abs(t) <= self.support_radius, v, 0.0)
        return v if v.ndim else float(v)


def gevrey_bump(R=1.0, amplitude=1.0):
    """C^infty bump exp(-r^2/(R^2 - r^2)) supported in [0, R].

    Smooth as a radial function on the group (a function of r^2) and flat
    to all orders at r = R, so truncated quadratures see a smooth
    integrand on the closed box.
    """

    def f0(r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        inside = np.abs(r) < R
        ri = r[inside]
        out[inside] = amplitude * np.exp(-ri ** 2 / (R ** 2 - ri ** 2))
        return out

    return RadialFunction(eval=f0, support_radius=R, note=f"gevrey bump R={R}")


def poly_bump(R=1.0, power=4, amplitude=1.0):
    """C^{power-1} bump (1 - (r/R)^2)^power on [0, R]; cheap and explicit."""

    def f0(r):
        r = np.asarray(r, dtype=float)
        w = 1.0 - (r / R) ** 2
        return amplitude * np.where(np.abs(r) < R, np.maximum(w, 0.0) ** power, 0.0)

    return RadialFunction(eval=f0, support_radius=R, note=f"poly bump R={R} p={power}")
