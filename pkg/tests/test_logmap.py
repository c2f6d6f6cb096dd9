import math

import numpy as np
import pytest

from iho.errors import DomainError, GridMismatch, InterpolationError, ValidationError
from iho.grids import SampledFunction
from iho.lct import SL2Matrix, iho_matrix, kernel_constant
from iho.logmap import (
    HalfLineSpec,
    TwoLineFunction,
    heaviside,
    heaviside_split,
    peak_frequency,
    phi_abgamma,
    plateau_window,
    spectrum_map_pipeline,
    u_exp_forward,
    u_exp_inverse,
    wlemma_eigenfunction,
)
from iho.oscillator import EigenParams, ode_residual, psi_even, psi_odd
from iho.specfun import complex_gamma

X = np.arange(-8000, 8001) * 1e-3


def gauss(x):
    return np.exp(-np.asarray(x) ** 2 / 2).astype(complex)


class TestHeaviside:
    def test_values(self):
        assert list(heaviside([-1.0, 0.0, 2.0])) == [0.0, 0.5, 1.0]

    def test_split_even_gaussian(self):
        f = SampledFunction.from_grid(X, gauss(X))
        p, m = heaviside_split(f)
        assert np.array_equal(p.values + m.values, f.values)
        assert np.array_equal(p.values, m.values[::-1])

    def test_support_right(self):
        f = SampledFunction.from_grid(X, np.where(X > 1, gauss(X - 3), 0))
        _, m = heaviside_split(f)
        assert not np.any(m.values)

    def test_norms_add(self):
        f = SampledFunction.from_grid(X, gauss(X - 0.3))
        p, m = heaviside_split(f)
        zero_sample = f.dx * abs(f.values[X == 0][0]) ** 2
        assert p.norm() ** 2 + m.norm() ** 2 == pytest.approx(f.norm() ** 2 - zero_sample / 2, rel=1e-13)


class TestUExp:
    def test_spec_validation(self):
        with pytest.raises(ValidationError):
            HalfLineSpec(1.0, 0.0, 10)
        with pytest.raises(ValidationError):
            HalfLineSpec(0.0, 1.0, 1)

    def test_power_law_plus_channel(self):
        spec = HalfLineSpec(-3.0, 2.0, 201)
        g = u_exp_forward(lambda x: phi_abgamma(1, 0, 0.0, x), spec)
        assert np.allclose(g.plus.values, 1, atol=1e-14)
        assert not np.any(g.minus.values)

    def test_gaussian_channels(self):
        spec = HalfLineSpec(-4.0, 2.0, 301)
        f = SampledFunction.from_grid(X, gauss(X))
        g = u_exp_forward(f, spec)
        t = spec.t
        want = np.exp(-np.exp(2 * t) / 2) * np.exp(t / 2)
        assert np.max(np.abs(g.plus.values - want)) < 1e-6
        assert np.max(np.abs(g.minus.values - want)) < 1e-6

    @pytest.mark.parametrize("shift", [0.0, 0.8, -1.5])
    def test_norm_preserved(self, shift):
        spec = HalfLineSpec(-14.0, math.log(8.0), 20001)
        f = SampledFunction.from_grid(X, gauss(X - shift))
        g = u_exp_forward(f, spec)
        assert g.norm() / f.norm() == pytest.approx(1, abs=1e-4)

    def test_out_of_range(self):
        f = SampledFunction.from_grid(X, gauss(X))
        with pytest.raises(InterpolationError):
            u_exp_forward(f, HalfLineSpec(-1.0, 3.0, 10))

    def test_ulemma_on_grid(self):
        spec = HalfLineSpec(-2.0, 2.0, 101)
        a, b, gamma = 0.3 - 1j, 2.0, 0.7
        g = u_exp_forward(lambda x: phi_abgamma(a, b, gamma, x), spec)
        ph = np.exp(1j * gamma * spec.t)
        assert np.max(np.abs(g.plus.values - a * ph)) <= 1e-10
        assert np.max(np.abs(g.minus.values - b * ph)) <= 1e-10

    def test_intertwines_dilation(self):
        # (xp + px) f = -i (2 x f' + f); U_exp of it should equal -2i d/dt U_exp f.
        spec = HalfLineSpec(-3.0, 1.5, 2001)
        f = lambda x: np.exp(-((x - 0.4) ** 2))
        df = lambda x: -2 * (x - 0.4) * f(x)
        dil = lambda x: -1j * (2 * x * df(x) + f(x))
        lhs = u_exp_forward(dil, spec)
        g = u_exp_forward(f, spec)
        for left, ch in ((lhs.plus, g.plus), (lhs.minus, g.minus)):
            deriv = np.gradient(ch.values, spec.dt, edge_order=2)
            assert np.max(np.abs(left.values + 2j * deriv)) <= 1e-3

    def test_two_line_grid_check(self):
        with pytest.raises(GridMismatch):
            TwoLineFunction(SampledFunction(0, 0.1, np.ones(5)), SampledFunction(0, 0.2, np.ones(5)))


class TestUExpInverse:
    def test_constant_channels(self):
        spec = HalfLineSpec(-5.0, 3.0, 801)
        g = TwoLineFunction(SampledFunction(-5.0, spec.dt, np.ones(801)), SampledFunction(-5.0, spec.dt, np.zeros(801)))
        f = u_exp_inverse(g, np.linspace(-2, 2, 8))
        xs = f.x
        assert np.allclose(f.values, np.where(xs > 0, np.abs(xs) ** -0.5, 0))

    def test_round_trip(self):
        spec = HalfLineSpec(-12.0, math.log(7.9), 20001)
        f = SampledFunction.from_grid(X, gauss(X - 0.5))
        back = u_exp_inverse(u_exp_forward(f, spec), X)
        assert np.max(np.abs(back.values - f.values)) <= 1e-4

    def test_zero(self):
        spec = HalfLineSpec(-1.0, 1.0, 11)
        z = SampledFunction(-1.0, spec.dt, np.zeros(11))
        out = u_exp_inverse(TwoLineFunction(z, z), np.linspace(-2, 2, 5))
        assert not np.any(out.values)

    def test_origin_eta_half(self):
        spec = HalfLineSpec(-12.0, 1.0, 1301)
        plus = SampledFunction(-12.0, spec.dt, 3.0 * np.exp(spec.t / 2))
        minus = SampledFunction(-12.0, spec.dt, 1.0 * np.exp(spec.t / 2))
        out = u_exp_inverse(TwoLineFunction(plus, minus), np.linspace(-2, 2, 5))
        assert out.values[2] == pytest.approx(2.0)

    def test_origin_singular(self):
        # Constant channels invert to |x|^{-1/2}, which has no value at 0.
        spec = HalfLineSpec(-5.0, 1.0, 61)
        one = SampledFunction(-5.0, spec.dt, np.ones(61))
        with pytest.raises(DomainError):
            u_exp_inverse(TwoLineFunction(one, one), np.linspace(-2, 2, 5))


class TestPhi:
    def test_examples(self):
        assert phi_abgamma(1, 0, 0, 4.0) == pytest.approx(0.5)
        assert phi_abgamma(0, 1, 0, -4.0) == pytest.approx(0.5)

    def test_origin(self):
        with pytest.raises(DomainError):
            phi_abgamma(1, 1, 0, 0.0)


class TestWlemma:
    GRID = np.arange(-3000, 3001) * 1e-3

    @pytest.mark.parametrize("omega,a,gamma", [(1.0, 1.0, 0.5), (1.0, 0.7, 1.0), (2.0, 1.3, -0.4)])
    def test_ode_residual(self, omega, a, gamma):
        A = iho_matrix(omega, a)
        f = lambda x: wlemma_eigenfunction(A, gamma, x)
        assert ode_residual(f, 2 * omega * gamma, omega, self.GRID) <= 1e-3

    @pytest.mark.parametrize("gamma", [0.5, 1.0])
    def test_span(self, gamma):
        A = iho_matrix(1.0, 1.0)
        x = self.GRID
        w = wlemma_eigenfunction(A, gamma, x)
        lam = 2 * gamma
        basis = np.stack([psi_even(EigenParams.make(lam, 1.0), x), psi_odd(EigenParams.make(lam, 1.0, "odd"), x)], 1)
        coef, *_ = np.linalg.lstsq(basis, w, rcond=None)
        assert np.linalg.norm(basis @ coef - w) / np.linalg.norm(w) <= 1e-3

    def test_value_at_origin(self):
        A = iho_matrix(1.0, 1.0)
        got = wlemma_eigenfunction(A, 0.0, 0.0)
        want = kernel_constant(A.inverse()) * (-2j * A.b / A.beta) ** 0.25 * complex_gamma(0.25) / 2
        assert got == pytest.approx(want, rel=1e-12)

    def test_beta_zero(self):
        with pytest.raises(DomainError):
            wlemma_eigenfunction(SL2Matrix(0.0, 1.0, -1.0, 0.0), 0.5, 1.0)


class TestPipeline:
    X16 = np.linspace(-16, 16, 4097)
    SPEC = HalfLineSpec(-1.5, 2.5, 400)

    def run(self, omega, fn):
        f = SampledFunction.sample(lambda x: plateau_window(x) * fn(x), self.X16)
        return spectrum_map_pipeline(omega, 1.0, f, self.SPEC)

    def test_plateau_window(self):
        w = plateau_window(np.array([0.0, 8.0, 11.0, 14.0, 20.0]))
        assert w[0] == 1 and w[1] == 1 and w[3] == 0 and w[4] == 0
        assert w[2] == pytest.approx(0.5)
        with pytest.raises(ValidationError):
            plateau_window(1.0, 3.0, 2.0)

    def test_wlemma_input_peak(self):
        A = iho_matrix(1.0, 1.0)
        g = self.run(1.0, lambda x: wlemma_eigenfunction(A, 1.0, x))
        pk = peak_frequency(g.plus)
        assert abs(pk.frequency - 1.0) <= pk.bin_width
        # The closed-form eigenfunction lives on one half-line after the transform.
        assert g.minus.norm() < 0.1 * g.plus.norm()

    def test_even_lambda0_peak(self):
        g = self.run(1.0, lambda x: psi_even(EigenParams.make(0.0, 1.0), x))
        for ch in (g.plus, g.minus):
            pk = peak_frequency(ch)
            assert abs(pk.frequency) <= pk.bin_width

    def test_zero(self):
        g = self.run(1.0, lambda x: np.zeros_like(x, dtype=complex))
        assert g.norm() == 0

    def test_peak_frequency_pure_tone(self):
        t = np.linspace(0, 20, 500)
        ch = SampledFunction.from_grid(t, np.exp(1.7j * t))
        pk = peak_frequency(ch)
        assert abs(pk.frequency - 1.7) < pk.bin_width / 4
        assert pk.bin_width == pytest.approx(2 * math.pi / (500 * ch.dx))
