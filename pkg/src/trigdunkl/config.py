"""Central defaults: quadrature sizes, tolerances, and verification grids.

Every tunable lives here and nowhere else.  CLI flags override per run; no
environment variables are consulted.  The grids below are the built-in
verification grids driven by ``trigdunkl.verify`` and the acceptance tests.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Numerics:
    """Quadrature and finite-difference knobs.

    jacobi_nodes      Gauss-Jacobi nodes for kernel integrals (refined x2
                      for the error estimate).
    tanh_sinh_level   double-exponential level (step 2**-level) for the
                      complex-parameter kernel path and generic ``integrate``.
    operator_level    tanh-sinh level of the outer integrals of V and tV.
    nested_level      level used when V or tV appears inside another
                      integral (duality checking), where each abscissa costs
                      a full inner evaluation.
    fd_step_scale     relative step for finite-difference derivatives of
                      integral-operator outputs.
    series_max_terms  hypergeometric series term cap.
    """

    jacobi_nodes: int = 64
    refine_factor: int = 2
    tanh_sinh_level: int = 8
    operator_level: int = 6
    nested_level: int = 4
    fd_step_scale: float = 1e-4
    series_max_terms: int = 20_000


NUMERICS = Numerics()


def with_overrides(**kwargs) -> Numerics:
    return replace(NUMERICS, **kwargs)


# Default tolerances of the verification suites (overridable via --tol).
TOL_EIGEN = 1e-6          # |V(e^{i lam .})(x) - G(x)|  <=  tol * (1 + |G|)
TOL_KERNEL = 1e-7         # relative gap, direct kernel vs assembled kernel
TOL_BYPARTS = 1e-8        # relative gap between the two K-tilde integrals
TOL_DERIV = 1e-5          # relative gap, dK-tilde/dy vs finite difference
TOL_LIMITS = 1e-3         # relative gap, kernel at k ~ 0 vs closed form
TOL_DUALITY = 1e-6        # normalized duality gap
TOL_INTERTWINE = 1e-4     # |D(Vf) - V(f')|, finite-difference limited
TOL_CHEREDNIK = 1e-12     # relative gap between the two displayed forms
TOL_EIGEN_CHEREDNIK = 1e-5  # |D G - i lam G| <= tol * (1 + |lam G|)

# Multiplicity grid shared by all suites.
K_VALUES = (0.3, 0.7, 1.5)
K_GRID = tuple((a, b) for a in K_VALUES for b in K_VALUES)

# Eigenfunction / intertwining grid.
EIGEN_LAMBDAS = (0.0, 1.0, 2.5)
EIGEN_X = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)

# Kernel-consistency grid: y runs over fractions of |x|.
KERNEL_X = (-2.4, -1.3, -0.6, 0.6, 1.3, 2.4)
KERNEL_Y_FRACS = (0.0, 0.2, -0.2, 0.7, -0.7, 0.95, -0.95)

# Positivity scan grid; the fractions approaching -1 probe the regime of the
# historically disputed sign.
POSITIVITY_X = (-2.4, -1.3, -0.6, 0.6, 1.3, 2.4)
POSITIVITY_FRACS = (0.0, 0.5, -0.5, 0.9, -0.9, 0.99, -0.99, 0.9999, -0.9999)

# Vanishing-multiplicity consistency: kernel at k = LIMIT_EPS against the
# closed forms, 9 points per side.
LIMIT_EPS = 1e-4
LIMIT_K_OTHER = 0.75
LIMIT_X = (0.8, 1.5, 2.2)
LIMIT_FRACS = (-0.6, 0.0, 0.6)

# Dirac-at-zero behaviour: Vf(x) -> f(0) linearly in x.  The linear constant
# is fitted at the coarsest x; the margin absorbs the second-order term,
# whose sign makes the raw coarsest-point constant a slight underestimate.
DELTA_X = (0.1, 0.01, 0.001)
DELTA_MARGIN = 3.0

# Compact support half-width of the registered bump function.
BUMP_SUPPORT = 2.0

# Random-sample count for the Cherednik two-form agreement check.
CHEREDNIK_SAMPLES = 100
CHEREDNIK_SEED = 20260809
