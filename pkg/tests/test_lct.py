import cmath
import math
import warnings

import numpy as np
import pytest
import scipy.signal

from iho.errors import DomainError, GridMismatch, TruncationWarning, ValidationError
from iho.grids import SampledFunction
from iho.lct import (
    QuadraticForm,
    SL2Matrix,
    chirp_z,
    compose,
    fast_output_grid,
    group_law_check,
    iho_matrix,
    kernel,
    kernel_constant,
    kernel_eigen_defects,
    lct_apply_direct,
    lct_apply_fast,
    matrix_from_quadratic,
    metaplectic_sign,
    quadratic_coeffs,
    random_sl2,
    unitarity_check,
)

FOURIER = SL2Matrix(0.0, 1.0, -1.0, 0.0)
SHEAR = SL2Matrix(1.0, 1.0, 0.0, 1.0)


def gaussian(L=12.0, dx=0.01, shift=0.0):
    x = np.arange(-round(L / dx), round(L / dx) + 1) * dx
    return SampledFunction.from_grid(x, np.exp(-((x - shift) ** 2) / 2).astype(complex))


class TestSL2:
    def test_det_enforced(self):
        with pytest.raises(ValidationError):
            SL2Matrix(1, 1, 1, 1)

    def test_compose_examples(self):
        A = SL2Matrix(2.0, 1.0, 3.0, 2.0)
        assert np.allclose(compose(A, A.inverse()).to_array(), np.eye(2), atol=1e-14)
        assert np.allclose(compose(FOURIER, FOURIER).to_array(), -np.eye(2))

    def test_compose_random_det(self, rng):
        for _ in range(20):
            A1, A2 = random_sl2(rng), random_sl2(rng)
            M = compose(A2, A1)
            assert M.a * M.beta - M.b * M.alpha == pytest.approx(1, abs=1e-12)

    def test_b_zero_rejected(self):
        with pytest.raises(DomainError):
            kernel(SL2Matrix(2.0, 0.0, 0.0, 0.5), 0.0, 0.0)


class TestKernel:
    def test_fourier(self):
        u, x = 0.7, -1.3
        assert kernel(FOURIER, u, x) == pytest.approx(cmath.sqrt(1 / (2j * math.pi)) * cmath.exp(-1j * u * x))

    def test_modulus(self, rng):
        for _ in range(10):
            A = random_sl2(rng)
            u, x = rng.normal(size=2) * 3
            assert abs(kernel(A, u, x)) == pytest.approx(1 / math.sqrt(2 * math.pi * abs(A.b)), rel=1e-13)

    def test_origin(self):
        assert kernel(SHEAR, 0.0, 0.0) == kernel_constant(SHEAR)

    def test_constant_branch(self):
        assert cmath.phase(kernel_constant(SL2Matrix(1, 2, 0, 1))) == pytest.approx(-math.pi / 4)
        assert cmath.phase(kernel_constant(SL2Matrix(1, -2, 0, 1))) == pytest.approx(math.pi / 4)

    def test_eigen_relations(self, rng):
        for _ in range(5):
            A = random_sl2(rng)
            pos, mom = kernel_eigen_defects(A, 0.4, np.linspace(-2, 2, 9))
            assert pos < 1e-6 and mom < 1e-6


class TestDirect:
    def test_fourier_gaussian(self):
        f = gaussian()
        g = lct_apply_direct(FOURIER, f)
        want = cmath.exp(-1j * math.pi / 4) * np.exp(-g.x**2 / 2)
        assert np.max(np.abs(g.values - want)) <= 1e-6

    def test_shear_gaussian(self):
        f = gaussian()
        g = lct_apply_direct(SHEAR, f)
        u = g.x
        c = kernel_constant(SHEAR)
        want = c * np.exp(0.5j * u * u) * cmath.sqrt(2 * math.pi / (1 - 1j)) * np.exp(-u * u / (2 * (1 - 1j)))
        assert np.max(np.abs(g.values - want)) <= 1e-6

    def test_zero(self):
        f = gaussian().with_values(np.zeros(2401, dtype=complex))
        assert not np.any(lct_apply_direct(SHEAR, f).values)

    def test_truncation_warning(self):
        f = gaussian(L=3.0, dx=0.05)
        with pytest.warns(TruncationWarning):
            lct_apply_direct(FOURIER, f)

    def test_no_warning_when_decayed(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            lct_apply_direct(FOURIER, gaussian(L=10.0, dx=0.1))


class TestChirpZ:
    def test_against_scipy(self, rng):
        x = rng.normal(size=37) + 1j * rng.normal(size=37)
        w = cmath.exp(-0.31j)
        a = cmath.exp(0.2j)
        want = scipy.signal.czt(x, m=50, w=w, a=a)
        assert np.allclose(chirp_z(x, 50, w, a), want, rtol=0, atol=1e-11)

    def test_dft_special_case(self, rng):
        x = rng.normal(size=64).astype(complex)
        assert np.allclose(chirp_z(x, 64, cmath.exp(-2j * math.pi / 64)), np.fft.fft(x), atol=1e-11)

    def test_rejects_off_circle(self):
        with pytest.raises(DomainError):
            chirp_z(np.ones(4), 4, 1.1)


class TestFast:
    @pytest.mark.parametrize("A", [FOURIER, SHEAR, SL2Matrix(0.5, -0.7, 1.0, 0.6)], ids=["fourier", "shear", "negb"])
    def test_matches_direct(self, A):
        f = gaussian(L=10.0, dx=0.05)
        u = fast_output_grid(A, f)
        fast = lct_apply_fast(A, f)
        direct = lct_apply_direct(A, f, u)
        assert np.allclose(fast.x, u)
        assert np.max(np.abs(fast.values - direct.values)) <= 1e-8

    def test_arbitrary_output_grid(self):
        f = gaussian(L=10.0, dx=0.05)
        u = np.linspace(-3.3, 4.1, 301)
        fast = lct_apply_fast(SHEAR, f, u)
        assert np.max(np.abs(fast.values - lct_apply_direct(SHEAR, f, u).values)) <= 1e-8

    def test_narrow_gaussian_modulus(self):
        sigma = 0.1
        x = np.arange(-400, 401) * 0.005
        f = SampledFunction.from_grid(x, np.exp(-x * x / (2 * sigma**2)).astype(complex))
        A = SL2Matrix(1.0, 2.0, 0.0, 1.0)
        u = np.linspace(-1, 1, 41)
        g = lct_apply_fast(A, f, u)
        # Near u = 0 the output is a broad chirp of modulus sqrt(2 pi) sigma / sqrt(2 pi |b|).
        assert abs(g.values[20]) == pytest.approx(math.sqrt(2 * math.pi) * sigma / math.sqrt(2 * math.pi * 2), rel=1e-2)
        assert np.max(np.abs(g.values - lct_apply_direct(A, f, u).values)) <= 1e-8


class TestGroupLaw:
    def test_fourier_squared(self):
        f = gaussian(L=10.0, dx=0.05)
        assert group_law_check(FOURIER, FOURIER, f) <= 1e-5

    def test_inverse_pair(self):
        f = gaussian(L=10.0, dx=0.05, shift=0.5)
        assert group_law_check(SHEAR.inverse(), SHEAR, f) <= 1e-5

    def test_minus_identity_reflects(self):
        f = gaussian(L=10.0, dx=0.05, shift=0.7)
        A = SL2Matrix(0.5, -0.7, 1.0, 0.6)
        minus_inv = SL2Matrix(-A.beta, A.b, A.alpha, -A.a)
        assert group_law_check(minus_inv, A, f) <= 1e-5

    def test_sign_needed(self):
        # Two positive-b rotations whose product has negative b pick up -1.
        th = 0.6 * math.pi
        R = SL2Matrix(math.cos(th), math.sin(th), -math.sin(th), math.cos(th))
        assert compose(R, R).b < 0
        assert metaplectic_sign(R, R) == -1
        f = gaussian(L=10.0, dx=0.05)
        assert group_law_check(R, R, f) <= 1e-5
        assert group_law_check(R, R, f, track_sign=False) > 1.0

    def test_random_pairs_fast(self, rng):
        f = gaussian(L=10.0, dx=0.05)
        mid = np.arange(-1600, 1601) * 0.025
        for _ in range(5):
            A1, A2 = random_sl2(rng), random_sl2(rng)
            if abs(compose(A2, A1).b) < 0.2:
                continue
            assert group_law_check(A2, A1, f, method="fast", mid_grid=mid) <= 1e-5

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            group_law_check(SHEAR, SHEAR, gaussian(L=8.0, dx=0.1), method="magic")


class TestUnitarity:
    def test_gaussian_fourier(self):
        f = gaussian(L=10.0, dx=0.05)
        assert unitarity_check(FOURIER, f, f) <= 1e-6

    def test_orthogonal_pair(self):
        f = gaussian(L=10.0, dx=0.05)
        g = f.with_values(f.x * f.values)
        assert abs(f.inner(g)) < 1e-12
        assert unitarity_check(FOURIER, f, g) <= 1e-6

    def test_hermite_shear(self):
        f = gaussian(L=10.0, dx=0.05)
        h = f.with_values(f.x * f.values)
        assert unitarity_check(SHEAR, h, h) <= 1e-6
        assert unitarity_check(SHEAR, h, h, method="fast") <= 1e-6

    def test_grid_mismatch(self):
        with pytest.raises(GridMismatch):
            unitarity_check(SHEAR, gaussian(L=8.0, dx=0.1), gaussian(L=8.0, dx=0.05))


class TestQuadratic:
    def test_examples(self):
        assert quadratic_coeffs(SL2Matrix.identity()) == QuadraticForm(0, 1, 0)
        Q = quadratic_coeffs(FOURIER)
        assert (Q.E, Q.F, Q.G) == (0, -1, 0)

    def test_det_minus_one(self, rng):
        for _ in range(20):
            assert quadratic_coeffs(random_sl2(rng)).det == pytest.approx(-1, abs=1e-12)

    def test_e_zero_rejected(self):
        with pytest.raises(DomainError):
            matrix_from_quadratic(QuadraticForm(0, 1, 0), 1.0)

    def test_a_zero_rejected(self):
        with pytest.raises(DomainError):
            matrix_from_quadratic(QuadraticForm(-1, 0, 1), 0.0)

    def test_example_q(self):
        A = matrix_from_quadratic(QuadraticForm(-1, 0, 1), 1.0)
        assert np.allclose(A.to_array(), [[1, 1], [-0.5, 0.5]])
        Q = quadratic_coeffs(A)
        assert (Q.E, Q.F, Q.G) == pytest.approx((-1, 0, 1), abs=1e-12)

    @pytest.mark.parametrize("a_param", [0.5, 1.0, 2.0])
    def test_round_trip(self, rng, a_param):
        for _ in range(10):
            Q = quadratic_coeffs(random_sl2(rng))
            if abs(Q.E) < 1e-3:
                continue
            R = quadratic_coeffs(matrix_from_quadratic(Q, a_param))
            assert (R.E, R.F, R.G) == pytest.approx((Q.E, Q.F, Q.G), abs=1e-10)


class TestIhoMatrix:
    def test_examples(self):
        assert np.allclose(iho_matrix(1.0, 1.0).to_array(), [[1, 1], [-0.5, 0.5]])
        assert np.allclose(iho_matrix(2.0, 2.0).to_array(), [[2, 1], [-0.5, 0.25]])

    @pytest.mark.parametrize("omega,a", [(1.0, 1.0), (2.0, 0.3), (0.7, -1.5)])
    def test_hamiltonian_coefficients(self, omega, a):
        # omega (E, F, G) = (-omega^2, 0, 1) are the x^2, (xp+px), p^2 coefficients of p^2 - omega^2 x^2.
        Q = quadratic_coeffs(iho_matrix(omega, a))
        assert (omega * Q.E, omega * Q.F, omega * Q.G) == pytest.approx((-omega**2, 0, 1), abs=1e-12)

    def test_printed_variant_only_unimodular_at_a_equals_omega(self):
        omega = 2.0
        for a in (1.0, 2.0, 3.0):
            det = a * (1 / (2 * omega)) - (a / omega) * (-omega / (2 * a))
            assert (abs(det - 1) < 1e-14) == (a == omega)

    def test_rejects_bad_omega(self):
        with pytest.raises(DomainError):
            iho_matrix(0.0)
