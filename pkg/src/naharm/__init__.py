"""naharm: numerics for harmonic analysis on harmonic NA (Damek-Ricci) spaces.

Builds Heisenberg-type algebras and their solvable extensions NA, and
cross-validates the explicit harmonic-analysis machinery on them at desk
scale: Poisson kernels, spherical functions by three routes, Abel /
Helgason-Fourier / Radon transforms, sphere mean-value operators, the
oscillatory-integral asymptotics behind them, and a numerical checker for
the Ehrenpreis slow-decrease condition that governs surjectivity of
radial convolution operators.
"""

from .htype import HTypeAlgebra, apply_JZ, bracket, build_htype
from .nagroup import (
    BallPoint,
    NAPoint,
    cayley,
    cayley_inverse,
    distance,
    distance_to_origin,
    geodesic_inversion,
    haar_weight,
    identity,
    left_invariant_derivative,
    multiply,
    inverse,
    point,
    radialize,
    v_radial_project,
)
from .quad import DEFAULT_SPEC, QuadratureSpec, integrate_1d, integrate_N_biradial, sphere_average
from .radial import EvenLineFunction, RadialFunction, gevrey_bump, poly_bump
from .poisson import P_lambda, helgason_fourier, poisson_kernel, radon_transform
from .spherical import (
    JacobiParams,
    gauss_2f1,
    jacobi_phi,
    koornwinder_phi,
    plancherel_density,
    spherical_phi,
    spherical_phi_integral,
)
from .abel import abel_transform, dual_abel, radial_inversion, spherical_transform_radial
from .meanvalue import I_nu_exact, I_tilde_nu, bessel_half_integer, mean_value, phi_k_integral
from .slowdecrease import SlowDecreaseWitness, check_slow_decrease, find_witness
from .deconvolve import DeconvolutionProblem, locate_phi_zeros, solve

__version__ = "0.1.0"
