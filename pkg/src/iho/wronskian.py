"""Wronskians of the large-``x`` eigenfunction family and their delta limit.

For a spectral label ``a`` put ``g_a(x) = alpha x^2/2 + a ln(x)/(2 alpha)`` and
``F_a(x) = x^{-1/2} (A e^{i g_a} + conj(A) e^{-i g_a})``. The basis functions
are ``e_{s,a}(x) = x^{-1/2} exp(i s g_a(x))`` with ``s = +-1``.

Orientation used throughout: ``W_{s1 s2} = Wr(e_{s1,b}, e_{s2,a})`` with
``Wr(f, g) = f g' - f' g``, so that :func:`bilinear_expand` is exactly
``Wr(conj(F_b), F_a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, QuadratureError, ValidationError

__all__ = [
    "BasisSigns",
    "wronskian_numeric",
    "phase_g",
    "basis_function",
    "basis_wronskian_closed",
    "product_identity_check",
    "bilinear_expand",
    "asymptotic_family",
    "symmetric_midpoint_grid",
    "delta_smeared_integral",
    "delta_normalization_probe",
]


@dataclass(frozen=True)
class BasisSigns:
    s1: int
    s2: int

    def __post_init__(self):
        if self.s1 not in (1, -1) or self.s2 not in (1, -1):
            raise ValidationError(f"signs must be +-1, got ({self.s1}, {self.s2})")

    @classmethod
    def all(cls) -> list["BasisSigns"]:
        return [cls(s1, s2) for s1 in (1, -1) for s2 in (1, -1)]

    def flipped(self) -> "BasisSigns":
        return BasisSigns(-self.s1, -self.s2)


def wronskian_numeric(f: Callable, g: Callable, x: float, h: float = 1e-4) -> complex:
    """``f g' - f' g`` at ``x`` with central differences of step ``h``."""
    fx, gx = complex(f(x)), complex(g(x))
    df = (complex(f(x + h)) - complex(f(x - h))) / (2 * h)
    dg = (complex(g(x + h)) - complex(g(x - h))) / (2 * h)
    return fx * dg - df * gx


def phase_g(a: complex, alpha: float, x):
    return alpha * x * x / 2 + a * np.log(x) / (2 * alpha)


def basis_function(s: int, a: complex, alpha: float) -> Callable:
    """``x -> x^{-1/2} exp(i s g_a(x))``."""

    def e(x):
        return np.exp(1j * s * phase_g(a, alpha, x)) / np.sqrt(x)

    return e


def _require_positive(x: float) -> None:
    if not x > 0:
        raise DomainError(f"need x > 0, got {x}")


def basis_wronskian_closed(signs: BasisSigns, a: complex, b: complex, alpha: float, x: float) -> complex:
    """``Wr(e_{s1,b}, e_{s2,a})(x) = (i/x) (s2 g_a' - s1 g_b') exp(i (s1 g_b + s2 g_a))``.

    In particular ``W_{-+} = i (2 alpha + (a+b)/(2 alpha x^2)) exp(i (a-b) ln(x) / (2 alpha))``
    and ``W_{++} = i (a-b)/(2 alpha x^2) exp(i alpha x^2 + i (a+b) ln(x) / (2 alpha))``.
    """
    _require_positive(x)
    s1, s2 = signs.s1, signs.s2
    dga = alpha * x + a / (2 * alpha * x)
    dgb = alpha * x + b / (2 * alpha * x)
    phase = s1 * phase_g(b, alpha, x) + s2 * phase_g(a, alpha, x)
    return complex(1j / x * (s2 * dga - s1 * dgb) * np.exp(1j * phase))


def product_identity_check(f: Callable, g: Callable, h: Callable, x: float, step: float = 1e-4) -> float:
    """``|Wr(fg, fh) - f^2 Wr(g, h)|`` at ``x`` by finite differences."""
    lhs = wronskian_numeric(lambda t: f(t) * g(t), lambda t: f(t) * h(t), x, step)
    rhs = complex(f(x)) ** 2 * wronskian_numeric(g, h, x, step)
    return abs(lhs - rhs)


def bilinear_expand(A_a: complex, A_b: complex, a: complex, b: complex, alpha: float, x: float) -> complex:
    """``Wr(conj(F_b), F_a)(x)`` assembled from the four basis Wronskians."""
    _require_positive(x)
    W = lambda s1, s2: basis_wronskian_closed(BasisSigns(s1, s2), a, b, alpha, x)
    cA, cB = np.conj(A_a), np.conj(A_b)
    return complex(cB * A_a * W(-1, 1) + cB * cA * W(-1, -1) + A_b * A_a * W(1, 1) + A_b * cA * W(1, -1))


def asymptotic_family(A: complex, a: complex, alpha: float) -> Callable:
    """``F_a(x) = x^{-1/2} (A e^{i g_a} + conj(A) e^{-i g_a})``."""

    def F(x):
        g = phase_g(a, alpha, x)
        return (A * np.exp(1j * g) + np.conj(A) * np.exp(-1j * g)) / np.sqrt(x)

    return F


def symmetric_midpoint_grid(center: float, half_width: float, n_half: int) -> np.ndarray:
    """``center + (k + 1/2) d`` for ``k = -n_half .. n_half - 1``, ``d = half_width / n_half``."""
    if n_half < 1 or not half_width > 0:
        raise ValidationError("need n_half >= 1 and half_width > 0")
    d = half_width / n_half
    return center + (np.arange(-n_half, n_half) + 0.5) * d


def _check_symmetric(a: float, b_grid: np.ndarray) -> float:
    if b_grid.ndim != 1 or b_grid.size < 2:
        raise QuadratureError("b-grid needs at least two points")
    off = np.sort(b_grid - a)
    d = np.diff(off)
    scale = max(1.0, float(np.max(np.abs(off))))
    if not np.allclose(d, d[0], rtol=1e-9, atol=1e-12 * scale):
        raise QuadratureError("b-grid must be uniform")
    if not np.allclose(off, -off[::-1], rtol=0, atol=1e-9 * d[0]):
        raise QuadratureError("b-grid must be symmetric about a")
    if np.any(np.abs(off) < 1e-3 * d[0]):
        raise QuadratureError("b-grid must exclude b = a")
    return float(d[0])


def delta_smeared_integral(
    a: float,
    alpha: float,
    A_of: Callable[[float], complex],
    rho: Callable,
    x_probe: float,
    b_grid,
) -> complex:
    """``int Wr(conj(F_b), F_a)(x_probe) / (b - a) rho(b) db`` by the midpoint rule.

    The grid must be uniform and symmetric about ``a`` and exclude it, which
    makes the sum a principal value at ``b = a``.

    Raises:
        QuadratureError: if ``b_grid`` is not uniform, not symmetric about
            ``a``, or contains ``a``.
    """
    _require_positive(x_probe)
    b_grid = np.asarray(b_grid, dtype=float)
    db = _check_symmetric(a, b_grid)
    A_a = complex(A_of(a))
    total = 0j
    for b in b_grid:
        w = bilinear_expand(A_a, complex(A_of(b)), a, b, alpha, x_probe)
        total += w / (b - a) * float(rho(b))
    return complex(total * db)


def delta_normalization_probe(
    a: float,
    alpha: float,
    A_of: Callable[[float], complex],
    rho: Callable,
    x_probe: float,
    b_grid,
) -> complex:
    """:func:`delta_smeared_integral` over ``4 pi |alpha| |A(a)|^2 rho(a)``.

    As ``x_probe`` grows the Wronskian quotient tends to
    ``4 pi |alpha| |A(a)|^2 delta(b - a)`` and the returned ratio to 1.

    The nascent delta has width about ``2 |alpha| / ln(x_probe)``, so ``rho``
    must be several times wider than that for the ratio to approach 1. The
    ratio is returned as a complex number; its imaginary part is a measure of
    the quadrature and smoothing error.

    Raises:
        QuadratureError: on a bad ``b_grid`` or if the reference vanishes.
    """
    ref = 4 * math.pi * abs(alpha) * abs(complex(A_of(a))) ** 2 * float(rho(a))
    if ref == 0:
        raise QuadratureError("reference 4 pi |alpha| |A(a)|^2 rho(a) vanishes")
    return delta_smeared_integral(a, alpha, A_of, rho, x_probe, b_grid) / ref
