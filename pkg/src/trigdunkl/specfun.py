"""Gamma, Gauss hypergeometric, Jacobi, and Opdam special functions.

All evaluators are pure functions of their arguments and safe to call
concurrently.  The hypergeometric evaluator accepts complex upper and lower
parameters but only a real argument Z < 1, which is all the hyperbolic
substitution Z = -sinh^2(x/2) ever produces.
"""

import cmath
import math

from .config import NUMERICS
from .errors import DomainError, NonConvergenceError
from .params import Multiplicity

# Lanczos approximation, g = 7, 9 terms: ~15 significant digits on the
# positive real axis.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Stirling series coefficients B_{2j} / (2j (2j-1)).
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)

_LOG_SQRT_2PI = 0.9189385332046727418


def gamma_real(x: float) -> float:
    """Gamma(x) for real x > 0 via the Lanczos approximation."""
    if isinstance(x, complex) or not math.isfinite(x):
        raise DomainError(f"gamma_real needs a finite real argument, got {x!r}")
    if x <= 0:
        raise DomainError(f"gamma_real is restricted to x > 0, got {x}")
    if x < 0.5:
        # recurrence instead of reflection keeps everything on the real axis
        return gamma_real(x + 1.0) / x
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def loggamma_right_half(w) -> complex:
    """Principal log-Gamma for Re w > 0: shifted Stirling series, no reflection."""
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)) or w.real <= 0:
        raise DomainError(f"loggamma_right_half needs Re w > 0, got {w!r}")
    shift = 0j
    while w.real < 12.0:
        shift += cmath.log(w)
        w += 1.0
    res = (w - 0.5) * cmath.log(w) - w + _LOG_SQRT_2PI
    w2 = w * w
    p = w
    for coeff in _STIRLING:
        res += coeff / p
        p *= w2
    return res - shift


def _is_nonpositive_integer(v) -> bool:
    v = complex(v)
    return v.imag == 0.0 and v.real <= 0.0 and v.real == int(v.real)


def _series_2f1(a, b, c, z, max_terms, tol=1e-17):
    """Power series sum_n (a)_n (b)_n / ((c)_n n!) z^n for |z| < 1."""
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    small_streak = 0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        if abs(term) <= tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 3:
                return total
        else:
            small_streak = 0
    raise NonConvergenceError(
        f"2F1 series did not converge within {max_terms} terms (z={z})",
        partial=total,
        est_error=abs(term),
    )


def hyp2f1(a, b, c, z, *, max_terms: int | None = None) -> complex:
    """Gauss hypergeometric 2F1(a, b; c; z) for complex a, b, c and real z < 1.

    Uses the power series directly for |z| < 1/2 and the Pfaff transformation
    onto w = z/(z-1) in [0, 1) otherwise, which covers every z <= 0 with a
    single convergent series.  Raises NonConvergenceError (carrying the
    partial sum) if the term budget runs out.
    """
    if isinstance(z, complex):
        if z.imag != 0.0:
            raise DomainError(f"hyp2f1 argument must be real, got {z!r}")
        z = z.real
    if not math.isfinite(z) or z >= 1.0:
        raise DomainError(f"hyp2f1 requires real z < 1, got {z}")
    for name, v in (("a", a), ("b", b), ("c", c)):
        cv = complex(v)
        if not (math.isfinite(cv.real) and math.isfinite(cv.imag)):
            raise DomainError(f"hyp2f1 parameter {name} must be finite, got {v!r}")
    if _is_nonpositive_integer(c):
        raise DomainError(f"hyp2f1 lower parameter c={c} is a non-positive integer")
    if max_terms is None:
        max_terms = NUMERICS.series_max_terms
    if z == 0.0:
        return 1.0 + 0.0j
    if abs(z) < 0.5:
        return _series_2f1(complex(a), complex(b), complex(c), z, max_terms)
    # Pfaff map: 1 - z > 0 here, so the prefactor power is principal and real
    # based.
    w = z / (z - 1.0)
    pre = cmath.exp(-complex(a) * math.log1p(-z))
    return pre * _series_2f1(complex(a), complex(c) - complex(b), complex(c), w, max_terms)


def jacobi_phi(alpha: float, beta: float, lam, t: float) -> complex:
    """Even hypergeometric eigenfunction of the hyperbolic Jacobi operator.

    phi_lam^{alpha,beta}(t) = 2F1((r + i lam)/2, (r - i lam)/2; alpha + 1;
    -sinh^2 t) with r = alpha + beta + 1.  Invariant under lam -> -lam.
    """
    if _is_nonpositive_integer(complex(alpha) + 1):
        raise DomainError(f"alpha + 1 = {alpha + 1} is a non-positive integer")
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise DomainError(f"non-finite spectral parameter {lam!r}")
    r = complex(alpha) + complex(beta) + 1.0
    zz = -math.sinh(t) ** 2
    return hyp2f1((r + 1j * lam) / 2, (r - 1j * lam) / 2, complex(alpha) + 1.0, zz)


def opdam_G(k: Multiplicity, lam, x: float) -> complex:
    """Eigenfunction G_{i lam} deforming the exponential e^{i lam x}.

    Built from the two hypergeometric blocks
        F1 = 2F1(rho + i lam, rho - i lam; k1 + k2 + 1/2; -sinh^2(x/2))
        F2 = 2F1(rho + 1 + i lam, rho + 1 - i lam; k1 + k2 + 3/2; -sinh^2(x/2))
    with rho = k1/2 + k2, as
        G = F1 + (rho + i lam) / (2 k1 + 2 k2 + 1) * sinh(x) * F2.
    Normalized so G(0) = 1 for every admissible parameter pair.
    """
    lam = complex(lam)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise DomainError(f"non-finite spectral parameter {lam!r}")
    k1, k2 = complex(k.k1), complex(k.k2)
    s = k1 + k2
    if _is_nonpositive_integer(s + 0.5) or _is_nonpositive_integer(s + 1.5):
        raise DomainError(f"k1 + k2 = {s} hits a hypergeometric pole")
    rho = k.rho
    zz = -math.sinh(x / 2.0) ** 2
    f1 = hyp2f1(rho + 1j * lam, rho - 1j * lam, s + 0.5, zz)
    f2 = hyp2f1(rho + 1.0 + 1j * lam, rho + 1.0 - 1j * lam, s + 1.5, zz)
    return f1 + (rho + 1j * lam) / (2.0 * s + 1.0) * math.sinh(x) * f2
