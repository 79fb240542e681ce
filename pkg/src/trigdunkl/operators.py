"""Differential-difference operator, intertwining operator, dual, and scans.

The intertwining operator V maps smooth functions to smooth functions,
turns d/dx into the differential-difference operator D, fixes the value at
the origin, and for nonzero x is the integral of the kernel against f over
(-|x|, |x|).  Its dual tV integrates the kernel times the measure density
over {|x| > |y|} and is truncated here to the declared compact support of
its argument.

Test inputs come from a small registry of vectorized functions rather than
arbitrary user callables, which keeps every operator evaluation
reproducible.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from . import config
from .config import NUMERICS
from .errors import ContractError, DomainError
from .kernel import _kernel_values, kernel_K, weight_A
from .params import Multiplicity
from .quadrature import EvalResult, _tanh_sinh_full


@dataclass(frozen=True)
class TestFunction:
    """A registered analytic input to the operators.

    ``eval`` and ``deriv`` accept scalars or numpy arrays elementwise.
    ``support`` is the half-width a of a compact support [-a, a]; functions
    without it cannot be fed to the dual operator.
    """

    __test__ = False  # not a pytest collectable despite the name

    id: str
    eval: Callable
    deriv: Optional[Callable] = None
    support: Optional[float] = None


def plane_wave(lam) -> TestFunction:
    lam = complex(lam)
    if lam.imag == 0.0:
        lam = lam.real
    return TestFunction(
        id=f"plane_wave({lam})",
        eval=lambda y: np.exp(1j * lam * np.asarray(y, dtype=float)),
        deriv=lambda y: 1j * lam * np.exp(1j * lam * np.asarray(y, dtype=float)),
    )


def monomial(p: int) -> TestFunction:
    p = int(p)
    if p < 0:
        raise DomainError(f"monomial degree must be >= 0, got {p}")
    if p == 0:
        return TestFunction("monomial(0)", lambda y: np.ones_like(np.asarray(y, dtype=float)),
                            lambda y: np.zeros_like(np.asarray(y, dtype=float)))
    return TestFunction(
        id=f"monomial({p})",
        eval=lambda y: np.asarray(y, dtype=float) ** p,
        deriv=lambda y: p * np.asarray(y, dtype=float) ** (p - 1),
    )


def gaussian(width: float = 1.0) -> TestFunction:
    if width <= 0:
        raise DomainError(f"gaussian width must be > 0, got {width}")
    w2 = float(width) ** 2
    return TestFunction(
        id=f"gaussian({float(width)})",
        eval=lambda y: np.exp(-np.asarray(y, dtype=float) ** 2 / w2),
        deriv=lambda y: -2.0 * np.asarray(y, dtype=float) / w2
        * np.exp(-np.asarray(y, dtype=float) ** 2 / w2),
    )


def bump(a: float = config.BUMP_SUPPORT) -> TestFunction:
    """Smooth bump exp(-1 / (1 - (y/a)^2)) on (-a, a), zero outside."""
    a = float(a)
    if a <= 0:
        raise DomainError(f"bump support must be > 0, got {a}")

    def _eval(y):
        y = np.asarray(y, dtype=float)
        s = y / a
        inside = np.abs(s) < 1.0
        out = np.zeros(s.shape, dtype=float)
        si = s[inside]
        out[inside] = np.exp(-1.0 / (1.0 - si * si))
        return out if out.ndim else out.item()

    def _deriv(y):
        y = np.asarray(y, dtype=float)
        s = y / a
        inside = np.abs(s) < 1.0
        out = np.zeros(s.shape, dtype=float)
        si = s[inside]
        q = 1.0 - si * si
        out[inside] = np.exp(-1.0 / q) * (-2.0 * si / a) / (q * q)
        return out if out.ndim else out.item()

    return TestFunction(id=f"bump({a})", eval=_eval, deriv=_deriv, support=a)


_REGISTRY = {
    "plane_wave": (plane_wave, True),
    "monomial": (monomial, True),
    "gaussian": (gaussian, False),
    "bump": (bump, False),
}


def get_test_function(spec: str) -> TestFunction:
    """Build a registry function from ``name`` or ``name:param``."""
    name, _, param = spec.partition(":")
    if name not in _REGISTRY:
        raise DomainError(f"unknown test function {name!r}; known: {sorted(_REGISTRY)}")
    factory, requires_param = _REGISTRY[name]
    if not param:
        if requires_param:
            raise DomainError(f"{name} needs a parameter, e.g. {name}:1.5")
        return factory()
    value = int(param) if name == "monomial" else float(param)
    return factory(value)


_D_FORMS = ("regularized", "cothtanh")


def cherednik_D(k: Multiplicity, f: TestFunction, x: float, form: str = "cothtanh"):
    """First-order differential-difference deformation of d/dx.

    ``regularized`` uses the exponential-difference coefficients and is
    undefined at x = 0; ``cothtanh`` uses the coth/tanh coefficients and at
    x = 0 evaluates the removable limit (1 + 2 k1 + 2 k2) f'(0) - (k1/2 +
    k2) f(0).  Both forms agree identically for x != 0.
    """
    if form not in _D_FORMS:
        raise DomainError(f"form must be one of {_D_FORMS}, got {form!r}")
    if f.deriv is None:
        raise ContractError(f"{f.id} has no derivative; the operator needs one")
    k1, k2 = k.k1, k.k2
    rho = k.rho
    if form == "regularized":
        if x == 0:
            raise DomainError("regularized form has a pole at x = 0; use cothtanh")
        coeff = k1 / (1.0 - math.exp(-x)) + 2.0 * k2 / (1.0 - math.exp(-2.0 * x))
        return f.deriv(x) + coeff * (f.eval(x) - f.eval(-x)) - rho * f.eval(x)
    if x == 0:
        return (1.0 + 2.0 * (k1 + k2)) * f.deriv(0.0) - rho * f.eval(0.0)
    th = math.tanh(x / 2.0)
    coeff = (k1 + k2) / (2.0 * th) + k2 * th / 2.0
    return f.deriv(x) + coeff * (f.eval(x) - f.eval(-x)) - rho * f.eval(-x)


def _v_halves(k, f, x, level):
    """Both half-interval sums of the V integral with refinement estimates."""
    t, w, glo, ghi, coarse = _op_rule(level)
    xa = abs(x)
    total = 0.0
    est = 0.0
    for side in (+1, -1):
        if side > 0:
            y = 0.5 * xa * glo          # runs over (0, |x|); gap at y -> |x|
            gap = 0.5 * xa * ghi
        else:
            y = -0.5 * xa * ghi         # runs over (-|x|, 0); gap at y -> -|x|
            gap = 0.5 * xa * glo
        kv = _kernel_values(k, x, y, gap=gap)
        vals = kv * np.asarray(f.eval(y)) * w
        fine = vals.sum() * 0.5 * xa
        half = 2.0 * vals[coarse].sum() * 0.5 * xa
        total = total + fine
        est += abs(fine - half)
    return total, est


_BATCH = 64  # outer abscissae per kernel batch, keeps temporaries ~10 MB


@lru_cache(maxsize=32)
def _op_rule(level):
    """Double-exponential rule truncated at endpoint gap 1e-60.

    Operator integrands behave like gap^{k1+k2-1} times smooth factors, so
    the discarded tail is O(gap_cut^{Re(k1+k2)}); the truncation keeps the
    nested gap products (outer abscissa times inner endpoint distance)
    representable in double precision.
    """
    t, w, glo, ghi, coarse = _tanh_sinh_full(level)
    keep = np.minimum(glo, ghi) >= 1e-60
    return t[keep], w[keep], glo[keep], ghi[keep], coarse[keep]


def _v_values(k, f, xs, level):
    """Values of Vf over an array of nonzero points (no error estimates)."""
    t, w, glo, ghi, _ = _op_rule(level)
    xs = np.asarray(xs, dtype=float)
    out = np.zeros(xs.shape, dtype=complex)
    for i in range(0, xs.size, _BATCH):
        xb = xs[i:i + _BATCH]
        xa = np.abs(xb)[:, None]
        acc = 0.0
        for side in (+1, -1):
            if side > 0:
                y, gap = 0.5 * xa * glo, 0.5 * xa * ghi
            else:
                y, gap = -0.5 * xa * ghi, 0.5 * xa * glo
            kv = _kernel_values(k, xb[:, None], y, gap=gap)
            acc = acc + (kv * np.asarray(f.eval(y)) * w).sum(axis=1)
        out[i:i + _BATCH] = acc * 0.5 * xa[:, 0]
    return out


def _vt_values(k, g, ys, level):
    """Values of tVg over an array of points inside the support of g."""
    a = float(g.support)
    t, w, glo, ghi, _ = _op_rule(level)
    ys = np.asarray(ys, dtype=float)
    out = np.zeros(ys.shape, dtype=complex)
    inside = np.flatnonzero(np.abs(ys) < a)
    for i in range(0, inside.size, _BATCH):
        idx = inside[i:i + _BATCH]
        yb = ys[idx]
        ya = np.abs(yb)[:, None]
        span = a - ya
        acc = 0.0
        for side in (+1, -1):
            if side > 0:
                x = np.where(t <= 0.0, ya + 0.5 * span * glo, a - 0.5 * span * ghi)
                gap = 0.5 * span * glo
            else:
                x = np.where(t >= 0.0, -ya - 0.5 * span * ghi, -a + 0.5 * span * glo)
                gap = 0.5 * span * ghi
            kv = _kernel_values(k, x, yb[:, None], gap=gap)
            acc = acc + (kv * np.asarray(g.eval(x)) * np.asarray(weight_A(k, x)) * w).sum(axis=1)
        out[idx] = acc * 0.5 * span[:, 0]
    return out


def apply_V(k: Multiplicity, f: TestFunction, x: float, *, level=None) -> EvalResult:
    """Intertwining operator applied to a registered function at x.

    At x = 0 returns f(0), the defining point evaluation; elsewhere the
    kernel integral over (-|x|, |x|), split at 0 with a double-exponential
    rule per half so the algebraic vanishing of the kernel at y = -/+ x is
    resolved.
    """
    if not math.isfinite(x):
        raise DomainError(f"non-finite evaluation point {x!r}")
    if x == 0:
        return EvalResult(_scalar(f.eval(0.0)), 0.0, "point-evaluation")
    lv = NUMERICS.operator_level if level is None else int(level)
    value, est = _v_halves(k, f, x, lv)
    return EvalResult(
        _scalar(value), float(est),
        f"tanh-sinh(level={lv}) x kernel(n={NUMERICS.jacobi_nodes})",
    )


def apply_Vt(k: Multiplicity, g: TestFunction, y: float, *, level=None) -> EvalResult:
    """Dual operator: kernel integral against g and the measure over |x| > |y|.

    Truncated to the declared support [-a, a] of g; identically zero once
    |y| >= a.
    """
    if g.support is None:
        raise ContractError(f"{g.id} declares no compact support; the dual needs one")
    if not math.isfinite(y):
        raise DomainError(f"non-finite evaluation point {y!r}")
    a = float(g.support)
    ya = abs(y)
    lv = NUMERICS.nested_level if level is None else int(level)
    if ya >= a:
        return EvalResult(0.0, 0.0, "empty-domain")
    t, w, glo, ghi, coarse = _op_rule(lv)
    span = a - ya
    total = 0.0
    est = 0.0
    for side in (+1, -1):
        if side > 0:
            x = np.where(t <= 0.0, ya + 0.5 * span * glo, a - 0.5 * span * ghi)
            gap = 0.5 * span * glo          # |x| - |y| at the singular end
        else:
            x = np.where(t >= 0.0, -ya - 0.5 * span * ghi, -a + 0.5 * span * glo)
            gap = 0.5 * span * ghi
        kv = _kernel_values(k, x, y, gap=gap)
        vals = kv * np.asarray(g.eval(x)) * np.asarray(weight_A(k, x)) * w
        fine = vals.sum() * 0.5 * span
        half = 2.0 * vals[coarse].sum() * 0.5 * span
        total = total + fine
        est += abs(fine - half)
    return EvalResult(
        _scalar(total), float(est),
        f"tanh-sinh(level={lv}) x kernel(n={NUMERICS.jacobi_nodes})",
    )


def duality_gap(k: Multiplicity, f: TestFunction, g: TestFunction, *, level=None) -> float:
    """Normalized defect of the pairing identity between V and its dual.

    |LHS - RHS| / max(|LHS|, |RHS|, 1) with LHS the measure-weighted pairing
    of Vf with g over supp g and RHS the plain pairing of f with tVg.
    """
    if g.support is None:
        raise ContractError(f"{g.id} declares no compact support")
    a = float(g.support)
    lv = NUMERICS.nested_level if level is None else int(level)
    t, w, glo, ghi, _ = _op_rule(lv)

    lhs = 0.0
    rhs = 0.0
    for side in (+1, -1):
        xs = side * 0.5 * a * (glo if side > 0 else ghi)
        vf = _v_values(k, f, xs, lv)
        lhs = lhs + (vf * np.asarray(g.eval(xs)) * np.asarray(weight_A(k, xs)) * w).sum() * 0.5 * a
        tv = _vt_values(k, g, xs, lv)
        rhs = rhs + (np.asarray(f.eval(xs)) * tv * w).sum() * 0.5 * a

    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


def intertwine_gap(k: Multiplicity, f: TestFunction, x: float, *, level=None) -> float:
    """Defect |D(Vf)(x) - V(f')(x)| of the intertwining identity.

    D acts on Vf through a centered difference with step 1e-4 max(1, |x|),
    so the result is finite-difference limited.
    """
    if x == 0:
        raise DomainError("intertwining defect is evaluated away from x = 0")
    if f.deriv is None:
        raise ContractError(f"{f.id} has no derivative")
    lv = NUMERICS.operator_level if level is None else int(level)
    h = NUMERICS.fd_step_scale * max(1.0, abs(x))
    vf = lambda t: apply_V(k, f, t, level=lv).value
    d_vf = (vf(x + h) - vf(x - h)) / (2.0 * h)
    th = math.tanh(x / 2.0)
    coeff = (k.k1 + k.k2) / (2.0 * th) + k.k2 * th / 2.0
    lhs = d_vf + coeff * (vf(x) - vf(-x)) - k.rho * vf(-x)
    f_prime = TestFunction(id=f"{f.id}'", eval=f.deriv, support=f.support)
    rhs = apply_V(k, f_prime, x, level=lv).value
    return abs(lhs - rhs)


@dataclass(frozen=True)
class ScanReport:
    """Grid of kernel values with the running minimum and its location."""

    k_grid: tuple
    x_grid: tuple
    y_fractions: tuple
    cells: tuple            # (k1, k2, x, y, value) per cell, grid order
    min_value: float
    argmin: tuple           # (k1, k2, x, y)
    all_positive: bool


def positivity_scan(k_grid, x_grid, y_fraction_grid, *, nodes=None) -> ScanReport:
    """Kernel values over a (k, x, y = fraction |x|) grid, tracking the minimum.

    Restricted to real positive parameter pairs, where strict positivity is
    the expected outcome; fractions approaching -1 probe y near -x.
    """
    k_grid = tuple((float(k1), float(k2)) for k1, k2 in k_grid)
    x_grid = tuple(float(x) for x in x_grid)
    fracs = tuple(float(fr) for fr in y_fraction_grid)
    for k1, k2 in k_grid:
        if not (k1 > 0 and k2 > 0):
            raise DomainError(f"scan needs real k1, k2 > 0, got ({k1}, {k2})")
    for x in x_grid:
        if x == 0 or not math.isfinite(x):
            raise DomainError(f"scan x values must be finite and nonzero, got {x}")
    for fr in fracs:
        if not abs(fr) < 1.0:
            raise DomainError(f"y fractions must satisfy |fraction| < 1, got {fr}")

    cells = []
    min_value = math.inf
    argmin = None
    for k1, k2 in k_grid:
        k = Multiplicity(k1, k2)
        for x in x_grid:
            for fr in fracs:
                y = fr * abs(x)
                value = kernel_K(k, x, y, nodes=nodes).value
                cells.append((k1, k2, x, y, value))
                if value < min_value:
                    min_value = value
                    argmin = (k1, k2, x, y)
    return ScanReport(
        k_grid=k_grid,
        x_grid=x_grid,
        y_fractions=fracs,
        cells=tuple(cells),
        min_value=min_value,
        argmin=argmin,
        all_positive=min_value > 0.0,
    )


def _scalar(v):
    v = complex(v)
    return v.real if v.imag == 0.0 else v
