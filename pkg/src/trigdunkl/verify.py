"""Built-in verification suites over the acceptance grids.

Each suite returns a list of row dicts {check, point, lhs, rhs, gap, tol,
pass}; the CLI serializes them and turns the aggregate into an exit code.
The tolerance argument, when given, replaces the suite's default for every
row.
"""

from . import config
from .kernel import (
    dktilde_dy,
    kernel_K,
    kernel_K_limit_k1zero,
    kernel_K_limit_k2zero,
    kernel_K_mourou,
    ktilde,
)
from .operators import (
    bump,
    duality_gap,
    intertwine_gap,
    monomial,
    plane_wave,
    positivity_scan,
    apply_V,
)
from .params import Multiplicity
from .specfun import opdam_G


def _pt(**kw):
    return " ".join(f"{name}={value!r}" for name, value in kw.items())


def _row(check, point, lhs, rhs, gap, tol):
    return {
        "check": check,
        "point": point,
        "lhs": lhs,
        "rhs": rhs,
        "gap": float(gap),
        "tol": float(tol),
        "pass": bool(gap <= tol),
    }


def suite_eigen(tol=None):
    base = config.TOL_EIGEN if tol is None else tol
    rows = []
    for k1, k2 in config.K_GRID:
        k = Multiplicity(k1, k2)
        for lam in config.EIGEN_LAMBDAS:
            f = plane_wave(lam)
            for x in config.EIGEN_X:
                lhs = apply_V(k, f, x).value
                rhs = opdam_G(k, lam, x)
                gap = abs(lhs - rhs)
                rows.append(_row(
                    "eigenfunction", _pt(k1=k1, k2=k2, lam=lam, x=x),
                    lhs, rhs, gap, base * (1.0 + abs(rhs)),
                ))
    return rows


def _kernel_grid_points():
    for k1, k2 in config.K_GRID:
        k = Multiplicity(k1, k2)
        for x in config.KERNEL_X:
            for fr in config.KERNEL_Y_FRACS:
                yield k, x, fr * abs(x)


def suite_kernel_consistency(tol=None):
    tol_kernel = config.TOL_KERNEL if tol is None else tol
    tol_byparts = config.TOL_BYPARTS if tol is None else tol
    tol_deriv = config.TOL_DERIV if tol is None else tol
    rows = []
    for k, x, y in _kernel_grid_points():
        point = _pt(k1=k.k1, k2=k.k2, x=x, y=y)
        direct = kernel_K(k, x, y).value
        assembled = kernel_K_mourou(k, x, y).value
        gap = abs(direct - assembled) / abs(direct)
        rows.append(_row("kernel_direct_vs_assembled", point,
                         direct, assembled, gap, tol_kernel))

        td = ktilde(k, x, y, "direct").value
        tb = ktilde(k, x, y, "byparts").value
        gap = abs(td - tb) / abs(td)
        rows.append(_row("ktilde_direct_vs_byparts", point, td, tb, gap, tol_byparts))

        if y != 0.0:
            h = 1e-5
            dk = dktilde_dy(k, x, y).value
            fd = (ktilde(k, x, y + h, "byparts").value
                  - ktilde(k, x, y - h, "byparts").value) / (2.0 * h)
            gap = abs(dk - fd) / abs(dk)
            rows.append(_row("dktilde_vs_finite_difference", point, dk, fd, gap, tol_deriv))
    return rows


def suite_limits(tol=None):
    base = config.TOL_LIMITS if tol is None else tol
    eps = config.LIMIT_EPS
    other = config.LIMIT_K_OTHER
    rows = []
    for x in config.LIMIT_X:
        for fr in config.LIMIT_FRACS:
            y = fr * x
            point = _pt(x=x, y=y)
            near = kernel_K(Multiplicity(eps, other), x, y).value
            closed = kernel_K_limit_k1zero(other, x, y)
            gap = abs(near - closed) / abs(closed)
            rows.append(_row("kernel_limit_k1_to_zero", point, near, closed, gap, base))
    for x in config.LIMIT_X:
        for fr in config.LIMIT_FRACS:
            y = fr * x
            point = _pt(x=x, y=y)
            near = kernel_K(Multiplicity(other, eps), x, y).value
            closed = kernel_K_limit_k2zero(other, x, y)
            gap = abs(near - closed) / abs(closed)
            rows.append(_row("kernel_limit_k2_to_zero", point, near, closed, gap, base))
    return rows


def suite_positivity(tol=None):
    # gap is the amount by which a cell fails strict positivity
    rows = []
    report = positivity_scan(config.K_GRID, config.POSITIVITY_X, config.POSITIVITY_FRACS)
    for k1, k2, x, y, value in report.cells:
        point = _pt(k1=k1, k2=k2, x=x, y=y)
        gap = max(0.0, -value)
        row = _row("kernel_positive", point, value, 0.0, gap, 0.0)
        row["pass"] = bool(value > 0.0)
        rows.append(row)
    min_row = _row("scan_min_positive", _pt(k1=report.argmin[0], k2=report.argmin[1],
                                            x=report.argmin[2], y=report.argmin[3]),
                   report.min_value, 0.0, max(0.0, -report.min_value), 0.0)
    min_row["pass"] = report.all_positive
    rows.append(min_row)
    return rows


def suite_duality(tol=None):
    base = config.TOL_DUALITY if tol is None else tol
    f = bump(config.BUMP_SUPPORT)
    g = bump(config.BUMP_SUPPORT)
    rows = []
    for k1, k2 in config.K_GRID:
        k = Multiplicity(k1, k2)
        gap = duality_gap(k, f, g)
        rows.append(_row("duality_pairing", _pt(k1=k1, k2=k2, a=g.support),
                         gap, 0.0, gap, base))
    return rows


def suite_intertwine(tol=None):
    base = config.TOL_INTERTWINE if tol is None else tol
    rows = []
    for k1, k2 in config.K_GRID:
        k = Multiplicity(k1, k2)
        for f in (plane_wave(1.5), monomial(2)):
            for x in config.EIGEN_X:
                gap = intertwine_gap(k, f, x)
                rows.append(_row("intertwine_derivative", _pt(k1=k1, k2=k2, x=x, f=f.id),
                                 gap, 0.0, gap, base))
    return rows


SUITES = {
    "eigen": suite_eigen,
    "duality": suite_duality,
    "intertwine": suite_intertwine,
    "kernel-consistency": suite_kernel_consistency,
    "positivity": suite_positivity,
    "limits": suite_limits,
}


def run_suite(name: str, tol=None):
    if name == "all":
        rows = []
        for key in ("eigen", "duality", "intertwine", "kernel-consistency",
                    "positivity", "limits"):
            rows.extend(SUITES[key](tol))
        return rows
    return SUITES[name](tol)
