
import numpy as np
import pytest

from trigdunkl import (
    ContractError,
    DomainError,
    Multiplicity,
    TestFunction,
    apply_V,
    apply_Vt,
    bump,
    cherednik_D,
    duality_gap,
    gaussian,
    get_test_function,
    intertwine_gap,
    kernel_K,
    monomial,
    opdam_G,
    plane_wave,
    positivity_scan,
)

K_GRID = [(a, b) for a in (0.3, 0.7, 1.5) for b in (0.3, 0.7, 1.5)]


def opdam_function(k, lam):
    """Eigenfunction as a registry-style input with a numeric derivative."""
    def ev(x):
        return opdam_G(k, lam, float(x))

    def dv(x):
        h = 1e-5 * max(1.0, abs(x))
        return (ev(x + h) - ev(x - h)) / (2.0 * h)

    return TestFunction(id=f"eigen({lam})", eval=ev, deriv=dv)


class TestRegistry:
    def test_ids_and_support(self):
        assert plane_wave(1.5).id == "plane_wave(1.5)"
        assert bump(2.0).support == 2.0
        assert gaussian().support is None

    def test_derivatives_match_finite_differences(self):
        h = 1e-6
        for f in (plane_wave(1.3), monomial(3), gaussian(0.8), bump(2.0)):
            for x in (-1.4, -0.3, 0.9, 1.7):
                fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h)
                assert abs(f.deriv(x) - fd) <= 1e-6 * (1.0 + abs(fd))

    def test_bump_vanishes_outside(self):
        g = bump(2.0)
        assert g.eval(2.0) == 0.0
        assert g.eval(-2.5) == 0.0
        assert g.deriv(2.1) == 0.0
        assert g.eval(np.array([-3.0, 0.0, 3.0]))[2] == 0.0

    def test_parser(self):
        assert get_test_function("plane_wave:2.5").id == "plane_wave(2.5)"
        assert get_test_function("bump:1.5").support == 1.5
        assert get_test_function("gaussian").id == "gaussian(1.0)"
        with pytest.raises(DomainError):
            get_test_function("sinc")
        with pytest.raises(DomainError):
            get_test_function("plane_wave")


class TestCherednikD:
    def test_constant_function(self):
        k = Multiplicity(0.7, 0.4)
        val = cherednik_D(k, monomial(0), 0.9)
        assert val == pytest.approx(-(0.7 / 2 + 0.4), rel=1e-14)

    def test_forms_agree_random_samples(self):
        rng = np.random.default_rng(20260809)
        for _ in range(100):
            k = Multiplicity(rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0))
            x = rng.uniform(0.05, 2.5) * rng.choice([-1.0, 1.0])
            c0, c1, c2, c3 = rng.standard_normal(4)
            f = TestFunction(
                "smooth",
                eval=lambda t, c0=c0, c1=c1, c2=c2, c3=c3:
                    c0 + c1 * t + c2 * t * t + c3 * np.cos(t),
                deriv=lambda t, c1=c1, c2=c2, c3=c3: c1 + 2 * c2 * t - c3 * np.sin(t),
            )
            a = cherednik_D(k, f, x, "regularized")
            b = cherednik_D(k, f, x, "cothtanh")
            assert abs(a - b) <= 1e-12 * max(abs(a), 1.0)

    def test_eigenfunction_equation(self):
        for k1, k2, lam, x in ((0.5, 0.5, 1.3, 0.8), (0.3, 1.5, 2.0, -1.2),
                               (1.5, 0.7, 0.5, 1.9)):
            k = Multiplicity(k1, k2)
            f = opdam_function(k, lam)
            val = cherednik_D(k, f, x)
            target = 1j * lam * f.eval(x)
            assert abs(val - target) <= 1e-5 * (1.0 + abs(target))

    def test_origin_limit_mode(self):
        k = Multiplicity(0.6, 0.9)
        f = plane_wave(2.0)
        val = cherednik_D(k, f, 0.0, "cothtanh")
        expected = (1.0 + 2.0 * 1.5) * 2.0j - (0.6 / 2 + 0.9)
        assert val == pytest.approx(expected, rel=1e-12)
        # consistency with the eigen-equation at the origin
        g = opdam_function(k, 1.1)
        assert abs(cherednik_D(k, g, 0.0) - 1.1j) <= 1e-5

    def test_regularized_pole_at_origin(self):
        with pytest.raises(DomainError):
            cherednik_D(Multiplicity(0.5, 0.5), plane_wave(1.0), 0.0, "regularized")

    def test_requires_derivative(self):
        f = TestFunction("no-deriv", eval=lambda t: t)
        with pytest.raises(ContractError):
            cherednik_D(Multiplicity(0.5, 0.5), f, 1.0)


class TestApplyV:
    def test_plane_wave_reproduces_eigenfunction(self):
        k = Multiplicity(0.5, 0.5)
        res = apply_V(k, plane_wave(1.5), 1.0)
        target = opdam_G(k, 1.5, 1.0)
        assert abs(res.value - target) <= 1e-6 * (1.0 + abs(target))

    def test_constant_function_gives_lambda_zero(self):
        k = Multiplicity(0.7, 1.1)
        for x in (0.5, -1.7):
            res = apply_V(k, monomial(0), x)
            target = opdam_G(k, 0.0, x)
            assert abs(res.value - target) <= 1e-6 * (1.0 + abs(target))

    def test_point_evaluation_at_origin(self):
        k = Multiplicity(0.5, 0.5)
        assert apply_V(k, gaussian(), 0.0).value == 1.0
        assert apply_V(k, plane_wave(2.0), 0.0).value == 1.0

    def test_origin_continuity(self):
        # Vf(x) -> f(0) linearly; constant fitted at the coarse end with a
        # safety margin covering the curvature term
        k = Multiplicity(0.7, 0.4)
        f = gaussian()
        gaps = [abs(apply_V(k, f, x).value - 1.0) for x in (0.1, 0.01, 0.001)]
        assert gaps[0] > gaps[1] > gaps[2]
        c_bound = 3.0 * gaps[0] / 0.1
        assert gaps[1] <= c_bound * 0.01
        assert gaps[2] <= c_bound * 0.001


class TestApplyVt:
    def test_requires_support(self):
        with pytest.raises(ContractError):
            apply_Vt(Multiplicity(0.5, 0.5), gaussian(), 0.3)

    def test_zero_outside_support(self):
        k = Multiplicity(0.5, 0.5)
        g = bump(2.0)
        assert apply_Vt(k, g, 2.0).value == 0.0
        assert apply_Vt(k, g, -3.7).value == 0.0

    def test_zero_function(self):
        k = Multiplicity(0.5, 0.5)
        zero = TestFunction("zero", eval=lambda x: np.zeros_like(np.asarray(x, float)),
                            support=1.0)
        assert apply_Vt(k, zero, 0.2).value == 0.0

    def test_positive_for_positive_input(self):
        k = Multiplicity(0.7, 0.4)
        assert apply_Vt(k, bump(2.0), 0.5).value > 0


class TestDuality:
    def test_zero_function_gap(self):
        k = Multiplicity(0.5, 0.5)
        zero = TestFunction("zero", eval=lambda x: np.zeros_like(np.asarray(x, float)),
                            support=2.0)
        assert duality_gap(k, zero, bump(2.0)) == 0.0

    def test_bump_pair(self):
        gap = duality_gap(Multiplicity(0.7, 0.4), bump(2.0), bump(2.0))
        assert gap <= 1e-6

    def test_mixed_pair(self):
        gap = duality_gap(Multiplicity(0.3, 1.5), plane_wave(1.0), bump(2.0))
        assert gap <= 1e-6


class TestIntertwine:
    @pytest.mark.parametrize("f_name", ["plane_wave:1.5", "monomial:2"])
    def test_gap_small(self, f_name):
        f = get_test_function(f_name)
        for k1, k2, x in ((1.0, 1.0, 1.0), (0.3, 0.7, -0.5), (1.5, 0.3, 2.0)):
            assert intertwine_gap(Multiplicity(k1, k2), f, x) <= 1e-4

    def test_linearity_scaling(self):
        k = Multiplicity(0.7, 0.4)
        f1 = monomial(2)
        f2 = TestFunction("2y^2", eval=lambda y: 2.0 * np.asarray(y, float) ** 2,
                          deriv=lambda y: 4.0 * np.asarray(y, float))
        g1 = intertwine_gap(k, f1, 1.0)
        g2 = intertwine_gap(k, f2, 1.0)
        assert g2 <= 2.0 * g1 + 1e-9

    def test_origin_rejected(self):
        with pytest.raises(DomainError):
            intertwine_gap(Multiplicity(0.5, 0.5), monomial(2), 0.0)


class TestPositivityScan:
    def test_single_cell_matches_kernel(self):
        report = positivity_scan([(0.5, 0.5)], [1.0], [0.3])
        assert len(report.cells) == 1
        direct = kernel_K(Multiplicity(0.5, 0.5), 1.0, 0.3).value
        assert report.cells[0][4] == direct
        assert report.min_value == direct
        assert report.all_positive

    def test_full_grid_positive(self):
        report = positivity_scan(
            K_GRID, (0.6, -0.6, 1.3, -1.3, 2.4, -2.4),
            (0.0, 0.5, -0.5, 0.9, -0.9, 0.99, -0.99, 0.9999, -0.9999))
        assert report.all_positive
        assert report.min_value > 0
        assert len(report.cells) == 9 * 6 * 9

    def test_near_negative_diagonal_positive(self):
        # positive x with y approaching -x, the historically contested regime
        report = positivity_scan([(0.5, 0.5), (1.5, 1.5)], [0.6, 1.3, 2.4], [-0.9999])
        assert report.all_positive

    def test_argmin_consistency(self):
        report = positivity_scan([(0.3, 0.3)], [0.6, 1.3], [0.0, -0.99])
        values = [c[4] for c in report.cells]
        assert report.min_value == min(values)
        k1, k2, x, y = report.argmin
        match = [c for c in report.cells if c[2] == x and c[3] == y]
        assert match[0][4] == report.min_value

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            positivity_scan([(0.0, 0.5)], [1.0], [0.0])
        with pytest.raises(DomainError):
            positivity_scan([(0.5, 0.5)], [0.0], [0.0])
        with pytest.raises(DomainError):
            positivity_scan([(0.5, 0.5)], [1.0], [1.0])
