"""Trigonometric deformation of Fourier analysis on the line: the
differential-difference operator, its intertwining operator V with explicit
kernel, the dual operator, and the quadrature machinery needed to evaluate
and verify them numerically."""

from .config import NUMERICS
from .errors import ContractError, DomainError, EvaluationError, NonConvergenceError
from .kernel import (
    constant_c,
    dktilde_dy,
    jacobi_kernel,
    kernel_K,
    kernel_K_limit_k1zero,
    kernel_K_limit_k2zero,
    kernel_K_mourou,
    ktilde,
    sigma,
    weight_A,
)
from .operators import (
    ScanReport,
    TestFunction,
    apply_V,
    apply_Vt,
    bump,
    cherednik_D,
    duality_gap,
    gaussian,
    get_test_function,
    intertwine_gap,
    monomial,
    plane_wave,
    positivity_scan,
)
from .params import KernelPoint, Multiplicity
from .quadrature import EvalResult, QuadratureRule, gauss_jacobi, gauss_legendre, integrate, tanh_sinh
from .specfun import gamma_real, hyp2f1, jacobi_phi, opdam_G

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "DomainError",
    "EvalResult",
    "EvaluationError",
    "KernelPoint",
    "Multiplicity",
    "NonConvergenceError",
    "NUMERICS",
    "QuadratureRule",
    "ScanReport",
    "TestFunction",
    "apply_V",
    "apply_Vt",
    "bump",
    "cherednik_D",
    "constant_c",
    "dktilde_dy",
    "duality_gap",
    "gamma_real",
    "gauss_jacobi",
    "gauss_legendre",
    "gaussian",
    "get_test_function",
    "hyp2f1",
    "integrate",
    "intertwine_gap",
    "jacobi_kernel",
    "jacobi_phi",
    "kernel_K",
    "kernel_K_limit_k1zero",
    "kernel_K_limit_k2zero",
    "kernel_K_mourou",
    "ktilde",
    "monomial",
    "opdam_G",
    "plane_wave",
    "positivity_scan",
    "sigma",
    "tanh_sinh",
    "weight_A",
]
