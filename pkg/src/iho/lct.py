"""The SL(2,R)-parameterized unitary integral transform ``W_A``.

For ``A = [[a, b], [alpha, beta]]`` with ``det A = 1`` and ``b != 0``::

    (W_A f)(u) = c(A) int exp[(i/2b)(a x^2 - 2 u x + beta u^2)] f(x) dx,
    c(A) = sqrt(1 / (2 pi i b))    (principal square root)

``W_A`` intertwines ``x -> u = a x + b p``, ``p -> p_u = alpha x + beta p``.
Two evaluation paths are provided: direct trapezoidal quadrature (O(N M)) and
the chirp - Fourier - chirp factorization with a Bluestein chirp-z transform
(O(N log N)).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridMismatch, TruncationWarning, ValidationError
from .grids import SampledFunction

__all__ = [
    "SL2Matrix",
    "QuadraticForm",
    "kernel_constant",
    "kernel",
    "chirp_z",
    "lct_apply_direct",
    "lct_apply_fast",
    "fast_output_grid",
    "compose",
    "metaplectic_sign",
    "group_law_check",
    "unitarity_check",
    "quadratic_coeffs",
    "matrix_from_quadratic",
    "iho_matrix",
    "kernel_eigen_defects",
    "random_sl2",
]

DET_TOL = 1e-12
_B_ZERO = 1e-14


@dataclass(frozen=True)
class SL2Matrix:
    """Real 2x2 matrix ``[[a, b], [alpha, beta]]`` with unit determinant."""

    a: float
    b: float
    alpha: float
    beta: float

    def __post_init__(self):
        for name in ("a", "b", "alpha", "beta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if abs(self.det - 1.0) > DET_TOL:
            raise ValidationError(f"matrix is not in SL(2,R): det = {self.det!r}")

    @property
    def det(self) -> float:
        return self.a * self.beta - self.b * self.alpha

    @classmethod
    def fourier(cls) -> "SL2Matrix":
        return cls(0.0, 1.0, -1.0, 0.0)

    @classmethod
    def identity(cls) -> "SL2Matrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, m) -> "SL2Matrix":
        m = np.asarray(m, dtype=float)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.alpha, self.beta]])

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.beta, -self.b, -self.alpha, self.a)

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return compose(self, other)

    def require_b(self) -> None:
        if abs(self.b) < _B_ZERO:
            raise DomainError("the integral kernel needs b != 0")


@dataclass(frozen=True)
class QuadraticForm:
    """Coefficients of ``E x^2 + F (x p + p x) + G p^2``."""

    E: float
    F: float
    G: float

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F


def kernel_constant(A: SL2Matrix) -> complex:
    """``c(A) = sqrt(1 / (2 pi i b))``; phase ``-pi/4`` for ``b > 0`` and ``+pi/4`` for ``b < 0``."""
    A.require_b()
    return cmath.sqrt(1.0 / (2j * math.pi * A.b))


def kernel(A: SL2Matrix, u, x):
    """``W(A; u, x) = c(A) exp[(i/2b)(a x^2 - 2 u x + beta u^2)]`` (broadcasting)."""
    A.require_b()
    u = np.asarray(u, dtype=float)
    x = np.asarray(x, dtype=float)
    phase = (A.a * x * x - 2 * u * x + A.beta * u * u) / (2 * A.b)
    out = kernel_constant(A) * np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


def chirp_z(x, m: int, w: complex, a: complex = 1.0) -> np.ndarray:
    """Bluestein chirp-z transform ``X_k = sum_n x_n a^(-n) w^(n k)``, ``k < m``.

    ``w`` and ``a`` must have unit modulus (points on the unit circle).
    """
    x = np.asarray(x, dtype=complex)
    n = x.size
    if abs(abs(w) - 1) > 1e-12 or abs(abs(a) - 1) > 1e-12:
        raise DomainError("chirp_z here supports unit-modulus w and a only")
    theta = cmath.phase(w)
    phi = cmath.phase(a)
    kn = np.arange(n, dtype=float)
    km = np.arange(m, dtype=float)
    # n k = (n^2 + k^2 - (k - n)^2) / 2
    pre = x * np.exp(1j * (0.5 * theta * kn * kn - phi * kn))
    length = 1 << int(math.ceil(math.log2(n + m - 1)))
    lags = np.arange(-(n - 1), m, dtype=float)
    chirp = np.exp(-0.5j * theta * lags * lags)
    kern = np.zeros(length, dtype=complex)
    kern[:m] = chirp[n - 1 :]
    kern[length - (n - 1) :] = chirp[: n - 1]
    buf = np.zeros(length, dtype=complex)
    buf[:n] = pre
    conv = np.fft.ifft(np.fft.fft(buf) * np.fft.fft(kern))[:m]
    return conv * np.exp(0.5j * theta * km * km)


def _check_support(f: SampledFunction, rel: float = 1e-8) -> None:
    vals = np.abs(f.values)
    peak = vals.max()
    if peak > 0 and max(vals[0], vals[-1]) > rel * peak:
        warnings.warn(
            "input does not decay at the grid ends; transform includes truncation error",
            TruncationWarning,
            stacklevel=3,
        )


def lct_apply_direct(A: SL2Matrix, f: SampledFunction, u_grid=None, chunk: int = 1 << 22) -> SampledFunction:
    """Trapezoidal quadrature of ``int W(A; u, x) f(x) dx`` at each output point.

    ``u_grid`` defaults to the input grid.
    """
    A.require_b()
    _check_support(f)
    u = f.x if u_grid is None else np.asarray(u_grid, dtype=float)
    x = f.x
    g = f.weights() * f.values * np.exp(0.5j * A.a * x * x / A.b)
    out = np.empty(u.size, dtype=complex)
    step = max(1, chunk // x.size)
    for start in range(0, u.size, step):
        uu = u[start : start + step]
        out[start : start + step] = np.exp(-1j * np.outer(uu, x) / A.b) @ g
    out *= kernel_constant(A) * np.exp(0.5j * A.beta * u * u / A.b)
    return SampledFunction.from_grid(u, out)


def fast_output_grid(A: SL2Matrix, f: SampledFunction) -> np.ndarray:
    """Default fast-path output grid: ``N`` points, ``du = 2 pi |b| / (N dx)``, centred on 0."""
    n = len(f)
    du = 2 * math.pi * abs(A.b) / (n * f.dx)
    return du * (np.arange(n) - n // 2)


def lct_apply_fast(A: SL2Matrix, f: SampledFunction, u_grid=None) -> SampledFunction:
    """Chirp multiply, chirp-z evaluated scaled Fourier integral, chirp multiply.

    Computes the same trapezoidal sum as :func:`lct_apply_direct` on a uniform
    output grid (default :func:`fast_output_grid`) in ``O(N log N)``.
    """
    A.require_b()
    _check_support(f)
    u = fast_output_grid(A, f) if u_grid is None else np.asarray(u_grid, dtype=float)
    out_grid = SampledFunction.from_grid(u, np.zeros(u.size))
    u0, du = out_grid.x_min, out_grid.dx
    x0, dx = f.x_min, f.dx
    x = f.x
    g = f.weights() * f.values * np.exp(0.5j * A.a * x * x / A.b)
    j = np.arange(len(f))
    k = np.arange(u.size)
    g = g * np.exp(-1j * u0 * dx * j / A.b)
    s = chirp_z(g, u.size, cmath.exp(-1j * du * dx / A.b))
    s *= np.exp(-1j * (u0 * x0 + du * x0 * k) / A.b)
    uk = u0 + du * k
    s *= kernel_constant(A) * np.exp(0.5j * A.beta * uk * uk / A.b)
    return SampledFunction(u0, du, s)


def compose(A2: SL2Matrix, A1: SL2Matrix) -> SL2Matrix:
    """Matrix product ``A2 A1``.

    Raises:
        ValidationError: if the product's determinant drifts from 1 by more than 1e-10.
    """
    m = A2.to_array() @ A1.to_array()
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1) > 1e-10:
        raise ValidationError(f"product determinant drifted to {det!r}")
    # Renormalise rounding drift so the result passes the SL2 check.
    return SL2Matrix.from_array(m / math.sqrt(det) if det > 0 else m)


def metaplectic_sign(A2: SL2Matrix, A1: SL2Matrix) -> int:
    """The sign ``s`` in ``W_{A2} W_{A1} = s W_{A2 A1}`` for principal-branch constants.

    The composed kernel carries ``c(A1) c(A2) sqrt(2 pi i b1 b2 / b3)``, whose
    ratio to ``c(A2 A1)`` is ``exp(i pi/4 (s3 + s1 s2 s3 - s1 - s2))`` with
    ``s_k = sign(b_k)``: this is -1 exactly when ``s1 == s2 != s3``.
    """
    A3 = compose(A2, A1)
    for M in (A1, A2, A3):
        M.require_b()
    s1, s2, s3 = (int(math.copysign(1, M.b)) for M in (A1, A2, A3))
    return -1 if (s1 == s2 and s3 != s1) else 1


def _is_identity(M: SL2Matrix, tol: float = 1e-12) -> bool:
    return np.allclose(M.to_array(), np.eye(2), rtol=0, atol=tol)


def _reflected(f: SampledFunction) -> np.ndarray:
    x = f.x
    if not np.allclose(x, -x[::-1], rtol=0, atol=1e-9 * f.dx):
        raise DomainError("a product equal to -I needs a grid symmetric about 0")
    return f.values[::-1]


def group_law_check(
    A2: SL2Matrix,
    A1: SL2Matrix,
    f: SampledFunction,
    track_sign: bool = True,
    method: str = "direct",
    mid_grid=None,
) -> float:
    """Discrete L2 distance ``|| W_{A2}(W_{A1} f) - s W_{A2 A1} f ||`` on ``f``'s grid.

    ``s`` is :func:`metaplectic_sign` when ``track_sign`` is true, else 1. If
    ``A2 A1`` is the identity, ``W_I`` is taken to be the identity operator
    (the ``b -> 0`` limit of the kernel); if it is ``-I`` the reference is
    ``-i sign(b1) f(-x)``, which needs a grid symmetric about 0.

    Raises:
        DomainError: if ``A1``, ``A2`` or a non-identity product has ``b = 0``.
    """
    A1.require_b()
    A2.require_b()
    A3 = compose(A2, A1)
    if method not in ("direct", "fast"):
        raise ValueError(f"unknown method {method!r}")
    mid = f.x if mid_grid is None else np.asarray(mid_grid, dtype=float)
    if method == "direct":
        g1 = lct_apply_direct(A1, f, mid)
        g2 = lct_apply_direct(A2, g1, f.x)
    else:
        g1 = lct_apply_fast(A1, f, mid)
        g2 = lct_apply_fast(A2, g1, f.x)
    if _is_identity(A3):
        ref = f.values
    elif _is_identity(SL2Matrix(-A3.a, -A3.b, -A3.alpha, -A3.beta)):
        # W_{-A^-1} W_A is parity times the ratio c(-A^-1) / c(A^-1) = -i sign(b1).
        ref = -1j * math.copysign(1.0, A1.b) * _reflected(f)
    else:
        A3.require_b()
        sign = metaplectic_sign(A2, A1) if track_sign else 1
        ref = sign * (lct_apply_direct(A3, f).values if method == "direct" else lct_apply_fast(A3, f, f.x).values)
    return f.with_values(g2.values - ref).norm()


def unitarity_check(
    A: SL2Matrix,
    f: SampledFunction,
    g: SampledFunction,
    method: str = "direct",
    u_grid=None,
) -> float:
    """``|<W_A f, W_A g> - <f, g>|`` with discrete inner products.

    Raises:
        GridMismatch: if ``f`` and ``g`` are sampled on different grids.
    """
    f.require_same_grid(g)
    if method == "direct":
        wf = lct_apply_direct(A, f, u_grid)
        wg = lct_apply_direct(A, g, u_grid)
    elif method == "fast":
        wf = lct_apply_fast(A, f, u_grid)
        wg = lct_apply_fast(A, g, u_grid)
    else:
        raise ValueError(f"unknown method {method!r}")
    return abs(wf.inner(wg) - f.inner(g))


def quadratic_coeffs(A: SL2Matrix) -> QuadraticForm:
    """``u p_u + p_u u = E x^2 + F (x p + p x) + G p^2`` with ``(E, F, G) = (2 a alpha, a beta + b alpha, 2 b beta)``."""
    return QuadraticForm(2 * A.a * A.alpha, A.a * A.beta + A.b * A.alpha, 2 * A.b * A.beta)


def matrix_from_quadratic(Q: QuadraticForm, a_param: float) -> SL2Matrix:
    """One-parameter family of ``A`` with ``quadratic_coeffs(A) == Q`` (requires ``E != 0``, ``det Q = -1``)."""
    if Q.E == 0:
        raise DomainError("construction requires E != 0")
    if a_param == 0:
        raise DomainError("a_param must be nonzero")
    if abs(Q.det + 1) > 1e-10:
        raise DomainError(f"need E G - F^2 = -1, got {Q.det!r}")
    a = float(a_param)
    return SL2Matrix(a, a * (Q.F - 1) / Q.E, Q.E / (2 * a), (Q.F + 1) / (2 * a))


def iho_matrix(omega: float, a_param: float = 1.0) -> SL2Matrix:
    """``[[a, a/omega], [-omega/(2a), 1/(2a)]]``: ``omega (u p_u + p_u u) = p^2 - omega^2 x^2``."""
    if not omega > 0:
        raise DomainError("omega must be positive")
    return matrix_from_quadratic(QuadraticForm(-omega, 0.0, 1.0 / omega), a_param)


def kernel_eigen_defects(A: SL2Matrix, u: float, x, h: float = 1e-5) -> tuple[float, float]:
    """Finite-difference defects of ``u^T W = u W`` and ``p_u^T W = -i dW/du``.

    ``u^T = a x + i b d/dx`` and ``p_u^T = alpha x + i beta d/dx`` act on the
    kernel as a function of ``x``.
    """
    x = np.asarray(x, dtype=float)
    w = kernel(A, u, x)
    dwdx = (kernel(A, u, x + h) - kernel(A, u, x - h)) / (2 * h)
    dwdu = (kernel(A, u + h, x) - kernel(A, u - h, x)) / (2 * h)
    pos = A.a * x * w + 1j * A.b * dwdx - u * w
    mom = A.alpha * x * w + 1j * A.beta * dwdx - (-1j) * dwdu
    return float(np.max(np.abs(pos))), float(np.max(np.abs(mom)))


def random_sl2(rng: np.random.Generator, bound: float = 2.0, min_b: float = 0.2) -> SL2Matrix:
    """Random SL(2,R) matrix with entries in ``[-bound, bound]`` and ``|b| >= min_b``."""
    while True:
        a, beta = rng.uniform(-bound, bound, size=2)
        b = rng.choice([-1.0, 1.0]) * rng.uniform(min_b, bound)
        alpha = (a * beta - 1.0) / b
        if abs(alpha) <= bound:
            return SL2Matrix(a, b, alpha, beta)
