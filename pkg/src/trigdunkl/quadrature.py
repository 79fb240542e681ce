"""Quadrature rules resolving algebraic endpoint singularities.

Two families cover everything the kernel formulas need:

* Gauss rules (Legendre and Jacobi) built by the Golub-Welsch method from
  the three-term recurrence of the weight ``(1-t)^alpha (1+t)^beta``.  The
  Jacobi rules absorb real endpoint powers exactly.
* tanh-sinh (double exponential) rules for everything else, in particular
  complex endpoint exponents, where a classical weight cannot absorb the
  singularity.

Tanh-sinh abscissae crowd the endpoints double-exponentially, far below the
resolution of ``1 - |t|`` in floating point.  Public rule objects are
therefore truncated where node floats stay distinct and strictly inside
(-1, 1); integration drivers regenerate the full tail internally and work
with exact endpoint distances (``gap_lo = 1 + t``, ``gap_hi = 1 - t``), so
integrable singularities like t^{p-1} with small p > 0 are still resolved.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import NUMERICS
from .errors import DomainError, EvaluationError
from .specfun import gamma_real

_MAX_GAUSS_N = 512
_MAX_TS_LEVEL = 12
_TS_FULL_GAP = 1e-280   # keep tail nodes while 1-|t| stays comfortably normal
_TS_PUBLIC_GAP = 1e-12  # node floats are distinct and < 1 above this gap


@dataclass(frozen=True)
class EvalResult:
    """A numeric value with an error estimate and the rule that produced it."""

    value: complex
    est_error: float
    method: str


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a concrete rule on the open interval (-1, 1).

    For tanh-sinh rules, ``gap_lo`` / ``gap_hi`` hold the distances 1 + t and
    1 - t computed without cancellation; they are None for Gauss rules.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    gap_lo: np.ndarray | None = None
    gap_hi: np.ndarray | None = None

    def __post_init__(self):
        if np.any(np.diff(self.nodes) <= 0):
            raise DomainError(f"{self.kind}: nodes not strictly increasing")
        if np.any(self.weights <= 0):
            raise DomainError(f"{self.kind}: non-positive weight")
        if self.nodes[0] <= -1.0 or self.nodes[-1] >= 1.0:
            raise DomainError(f"{self.kind}: node outside (-1, 1)")


@lru_cache(maxsize=256)
def _gauss_jacobi_arrays(n: int, alpha: float, beta: float):
    """Golub-Welsch nodes/weights for the weight (1-t)^alpha (1+t)^beta."""
    apb = alpha + beta
    diag = np.zeros(n)
    if apb + 2.0 != 0.0:
        diag[0] = (beta - alpha) / (apb + 2.0)
    for m in range(1, n):
        diag[m] = (beta * beta - alpha * alpha) / ((2 * m + apb) * (2 * m + apb + 2.0))
    off = np.zeros(n - 1)
    for m in range(1, n):
        if m == 1:
            b2 = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((apb + 2.0) ** 2 * (apb + 3.0))
        else:
            b2 = (
                4.0 * m * (m + alpha) * (m + beta) * (m + apb)
                / ((2 * m + apb) ** 2 * (2 * m + apb + 1.0) * (2 * m + apb - 1.0))
            )
        off[m - 1] = math.sqrt(b2)
    jac = np.diag(diag)
    if n > 1:
        jac += np.diag(off, 1) + np.diag(off, -1)
    nodes, vecs = np.linalg.eigh(jac)
    mu0 = (
        2.0 ** (apb + 1.0)
        * gamma_real(alpha + 1.0)
        * gamma_real(beta + 1.0)
        / gamma_real(apb + 2.0)
    )
    weights = mu0 * vecs[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _check_gauss_n(n):
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= _MAX_GAUSS_N:
        raise DomainError(f"node count must be an integer in 1..{_MAX_GAUSS_N}, got {n!r}")


def gauss_legendre(n: int) -> QuadratureRule:
    """Classical Gauss-Legendre rule on (-1, 1), exact to degree 2n - 1."""
    _check_gauss_n(n)
    nodes, weights = _gauss_jacobi_arrays(n, 0.0, 0.0)
    return QuadratureRule(f"legendre(n={n})", nodes, weights)


def gauss_jacobi(n: int, alpha: float, beta: float) -> QuadratureRule:
    """Gauss rule for the weight (1-t)^alpha (1+t)^beta, alpha, beta > -1.

    The weight function is absorbed into the weights: summing f over the
    nodes integrates f times the weight exactly for polynomial f of degree
    up to 2n - 1.
    """
    _check_gauss_n(n)
    for name, v in (("alpha", alpha), ("beta", beta)):
        if isinstance(v, complex) or not math.isfinite(v) or v <= -1.0:
            raise DomainError(f"{name} must be a finite real > -1, got {v!r}")
    nodes, weights = _gauss_jacobi_arrays(n, float(alpha), float(beta))
    return QuadratureRule(f"jacobi(n={n},alpha={alpha},beta={beta})", nodes, weights)


@lru_cache(maxsize=32)
def _tanh_sinh_full(level: int):
    """Full double-exponential node set at step h = 2**-level.

    Returns (nodes, weights, gap_lo, gap_hi, coarse_mask); coarse_mask marks
    the nodes shared with level - 1, so one evaluation pass yields both sums.
    Arrays run out to endpoint gaps ~ 1e-280; callers must use the gap
    arrays, not 1 -/+ node, near the ends.
    """
    h = 2.0 ** (-level)
    jmax = int(math.asinh(-math.log(_TS_FULL_GAP / 2.0) / math.pi) / h)
    j = np.arange(-jmax, jmax + 1)
    u = j * h
    sigma = 0.5 * math.pi * np.sinh(u)
    e = np.exp(-2.0 * np.abs(sigma))
    gap_small = 2.0 * e / (1.0 + e)        # 1 - |t|
    gap_large = 2.0 / (1.0 + e)            # 1 + |t|
    nodes = np.sign(sigma) * (1.0 - gap_small)
    gap_hi = np.where(sigma >= 0, gap_small, gap_large)
    gap_lo = np.where(sigma >= 0, gap_large, gap_small)
    sech = 2.0 * np.exp(-np.abs(sigma)) / (1.0 + e)
    weights = h * 0.5 * math.pi * np.cosh(u) * sech * sech
    coarse = (j % 2 == 0)
    keep = weights > 0.0
    out = tuple(a[keep] for a in (nodes, weights, gap_lo, gap_hi, coarse))
    for a in out:
        a.setflags(write=False)
    return out


def tanh_sinh(level: int) -> QuadratureRule:
    """Double-exponential rule on (-1, 1); each level halves the step size."""
    if not isinstance(level, int) or isinstance(level, bool) or not 1 <= level <= _MAX_TS_LEVEL:
        raise DomainError(f"level must be an integer in 1..{_MAX_TS_LEVEL}, got {level!r}")
    nodes, weights, gap_lo, gap_hi, _ = _tanh_sinh_full(level)
    keep = np.minimum(gap_lo, gap_hi) >= _TS_PUBLIC_GAP
    return QuadratureRule(
        f"tanh-sinh(level={level})",
        nodes[keep], weights[keep], gap_lo[keep], gap_hi[keep],
    )


def _eval_integrand(f, xs):
    vals = np.asarray([f(float(x)) for x in xs])
    bad = ~np.isfinite(vals) if not np.iscomplexobj(vals) else ~(
        np.isfinite(vals.real) & np.isfinite(vals.imag)
    )
    if np.any(bad):
        node = float(xs[np.argmax(bad)])
        raise EvaluationError(f"integrand is not finite at x={node!r}", node=node)
    return vals


def _ts_sums(level, f, lo, hi):
    nodes, weights, gap_lo, gap_hi, coarse = _tanh_sinh_full(level)
    half = 0.5 * (hi - lo)
    # abscissae as exact offsets from the nearer endpoint
    xs = np.where(nodes <= 0.0, lo + half * gap_lo, hi - half * gap_hi)
    vals = _eval_integrand(f, xs) * weights
    fine = vals.sum() * half
    coarse_sum = 2.0 * vals[coarse].sum() * half
    return fine, coarse_sum


def _gauss_value(nodes, weights, f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    xs = mid + half * nodes
    return (_eval_integrand(f, xs) * weights).sum() * half


def integrate(rule: QuadratureRule, f, interval) -> EvalResult:
    """Integrate f over a finite interval with the affinely mapped rule.

    The error estimate compares against the next refinement (2n nodes for
    Gauss rules, level + 1 for tanh-sinh) and the refined value is returned.
    Jacobi rules integrate f against the rule's endpoint weight transplanted
    onto the interval, i.e. f is only the smooth factor of the integrand.
    """
    lo, hi = interval
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"integration interval must be finite, got {interval!r}")
    if not lo < hi:
        raise DomainError(f"require lo < hi, got ({lo}, {hi})")
    kind = rule.kind
    if kind.startswith("tanh-sinh"):
        level = int(kind.split("level=")[1].rstrip(")"))
        refined = min(level + 1, _MAX_TS_LEVEL)
        fine, coarse = _ts_sums(refined, f, lo, hi)
        return EvalResult(_as_scalar(fine), abs(fine - coarse), f"{kind}->level={refined}")
    # Gauss rule: rebuild the refined companion from the descriptor.
    n = len(rule.nodes)
    n_ref = min(NUMERICS.refine_factor * n, _MAX_GAUSS_N)
    if kind.startswith("jacobi"):
        alpha = float(kind.split("alpha=")[1].split(",")[0])
        beta = float(kind.split("beta=")[1].rstrip(")"))
        ref_nodes, ref_weights = _gauss_jacobi_arrays(n_ref, alpha, beta)
    else:
        ref_nodes, ref_weights = _gauss_jacobi_arrays(n_ref, 0.0, 0.0)
    base = _gauss_value(rule.nodes, rule.weights, f, lo, hi)
    fine = _gauss_value(ref_nodes, ref_weights, f, lo, hi)
    return EvalResult(_as_scalar(fine), abs(fine - base), f"{kind}->n={n_ref}")


def _as_scalar(v):
    v = complex(v)
    return v.real if v.imag == 0.0 else v
