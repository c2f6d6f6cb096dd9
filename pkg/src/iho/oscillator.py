"""Eigenfunctions of the inverted oscillator ``-d^2/dx^2 - omega^2 x^2``.

For every complex eigenvalue ``lam`` and chirp sign ``alpha = +-omega`` the
even and odd solutions are a Fresnel chirp ``exp(i alpha x^2 / 2)`` times a
Kummer function of ``-i alpha x^2`` (with an extra factor ``x`` for the odd
one), where ``nu = lam / (4 i alpha)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ValidationError
from .specfun import DEFAULT_CONTROL, SeriesControl, complex_gamma, kummer_eval, rgamma

__all__ = [
    "Parity",
    "EigenParams",
    "AsymptoticForm",
    "fresnel_factor",
    "psi_even",
    "psi_odd",
    "eigenfunction",
    "amplitude",
    "amplitude_pair",
    "asymptotic_form",
    "asymptotic_eval",
    "second_difference",
    "ode_residual",
    "kummer_parity_identity_check",
    "independence_determinant",
]


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def parse(cls, value) -> "Parity":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class EigenParams:
    """Eigenvalue ``lam``, chirp parameter ``alpha = +-omega`` and parity.

    ``nu`` is always derived from ``lam`` and ``alpha``.
    """

    lam: complex
    alpha: float
    omega: float
    parity: Parity = Parity.EVEN

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "parity", Parity.parse(self.parity))
        if not self.omega > 0:
            raise ValidationError(f"omega must be positive, got {self.omega}")
        if abs(self.alpha) != self.omega:
            raise ValidationError(f"alpha must be +-omega, got alpha={self.alpha}, omega={self.omega}")

    @classmethod
    def make(cls, lam: complex, omega: float, parity="even", sign: int = 1) -> "EigenParams":
        if sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        return cls(lam, sign * float(omega), omega, parity)

    @property
    def nu(self) -> complex:
        return self.lam / (4j * self.alpha)

    def with_parity(self, parity) -> "EigenParams":
        return EigenParams(self.lam, self.alpha, self.omega, parity)


def fresnel_factor(alpha: float, x):
    """``exp(i alpha x^2 / 2)``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(0.5j * alpha * (x * x))
    return complex(out) if out.ndim == 0 else out


def _check_parity(p: EigenParams, parity: Parity) -> None:
    if p.parity is not parity:
        raise ValidationError(f"expected {parity.value} parameters, got {p.parity.value}")


def psi_even(p: EigenParams, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Even eigenfunction ``f_alpha(x) 1F1(nu + 1/4; 1/2; -i alpha x^2)``; equals 1 at 0."""
    _check_parity(p, Parity.EVEN)
    x = np.asarray(x, dtype=float)
    x2 = x * x
    out = np.exp(0.5j * p.alpha * x2) * kummer_eval((p.nu + 0.25, 0.5), -1j * p.alpha * x2, ctl)
    return complex(out) if np.ndim(out) == 0 else out


def psi_odd(p: EigenParams, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Odd eigenfunction ``f_alpha(x) x 1F1(nu + 3/4; 3/2; -i alpha x^2)``; slope 1 at 0."""
    _check_parity(p, Parity.ODD)
    x = np.asarray(x, dtype=float)
    x2 = x * x
    even_part = np.exp(0.5j * p.alpha * x2) * kummer_eval((p.nu + 0.75, 1.5), -1j * p.alpha * x2, ctl)
    out = x * even_part
    return complex(out) if np.ndim(out) == 0 else out


def eigenfunction(p: EigenParams, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """Dispatch to :func:`psi_even` or :func:`psi_odd` by ``p.parity``."""
    if p.parity is Parity.EVEN:
        return psi_even(p, x, ctl)
    return psi_odd(p, x, ctl)


def _kummer_b(parity: Parity) -> float:
    return 0.5 if parity is Parity.EVEN else 1.5


def amplitude(p: EigenParams) -> complex:
    """Coefficient ``A`` of ``x^(-1/2) exp(i alpha x^2/2 + i lam ln(x)/(2 alpha))`` as ``x -> inf``.

    Even: ``G(1/2) / G(1/4 + i lam/(4 alpha)) (i alpha)^(-1/4 + i lam/(4 alpha))``;
    odd: the same with 3/2, 3/4, -3/4.
    """
    return amplitude_pair(p)[0]


def amplitude_pair(p: EigenParams) -> tuple[complex, complex]:
    """Coefficients ``(A, B)`` of the outgoing and incoming waves for any complex ``lam``.

    ``psi ~ x^(-1/2) [A exp(i g(x)) + B exp(-i g(x))]`` with
    ``g(x) = alpha x^2/2 + lam ln(x)/(2 alpha)``; ``B = conj(A)`` when ``lam`` is real.
    """
    b = _kummer_b(p.parity)
    shift = 0.25 if p.parity is Parity.EVEN else 0.75
    w = 1j * p.lam / (4 * p.alpha)
    a_param = p.nu + shift
    big_a = complex_gamma(b) * rgamma(shift + w) * (1j * p.alpha) ** (-shift + w)
    big_b = complex_gamma(b) * rgamma(a_param) * (-1j * p.alpha) ** (a_param - b)
    return big_a, big_b


@dataclass(frozen=True)
class AsymptoticForm:
    """``x^(-1/2) (A e^{i g(x)} + conj(A) e^{-i g(x)})``, ``g(x) = alpha x^2/2 + a ln(x)/(2 alpha)``.

    ``a_param`` plays the role of the eigenvalue ``lam``.
    """

    amplitude: complex
    alpha: float
    a_param: complex

    def __post_init__(self):
        if self.alpha == 0:
            raise ValidationError("alpha must be nonzero")

    def phase(self, x):
        x = np.asarray(x, dtype=float)
        return self.alpha * x * x / 2 + self.a_param / (2 * self.alpha) * np.log(x)


def asymptotic_form(p: EigenParams) -> AsymptoticForm:
    return AsymptoticForm(amplitude(p), p.alpha, p.lam)


def asymptotic_eval(form: AsymptoticForm, x):
    """Evaluate the two-term oscillatory form at ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("asymptotic form is defined for x > 0 only")
    g = form.phase(x)
    amp = form.amplitude
    out = (amp * np.exp(1j * g) + np.conj(amp) * np.exp(-1j * g)) / np.sqrt(x)
    return complex(out) if out.ndim == 0 else out


def second_difference(func: Callable, x, h: float, richardson: bool = False):
    """Central second difference of ``func`` at ``x``; optionally Richardson-extrapolated.

    Returns ``(d2, values)`` with ``values = func(x)``.

    With ``richardson=True`` the ``h`` and ``2h`` stencils are combined as
    ``(4 D_h - D_2h) / 3``, which cancels the ``h^2`` error term.
    """
    x = np.asarray(x, dtype=float)
    if not h > 0:
        raise DomainError("step h must be positive")
    offsets = np.array([-2, -1, 0, 1, 2]) if richardson else np.array([-1, 0, 1])
    vals = _eval_stencil(func, x, h, offsets)
    centre = len(offsets) // 2
    d1 = (vals[centre + 1] - 2 * vals[centre] + vals[centre - 1]) / (h * h)
    if not richardson:
        return d1, vals[centre]
    d2 = (vals[centre + 2] - 2 * vals[centre] + vals[centre - 2]) / (4 * h * h)
    return (4 * d1 - d2) / 3, vals[centre]


def _eval_stencil(func: Callable, x: np.ndarray, h: float, offsets: np.ndarray) -> np.ndarray:
    # On a uniform grid of spacing h the stencil points are grid points, so one
    # call on a slightly extended grid covers every offset.
    if x.ndim == 1 and x.size > 1 and np.allclose(np.diff(x), h, rtol=1e-10, atol=0):
        k = offsets.max()
        ext = x[0] + h * np.arange(-k, x.size + k)
        ev = np.asarray(func(ext), dtype=complex)
        return np.stack([ev[k + o : k + o + x.size] for o in offsets])
    pts = x[None, ...] + h * offsets.reshape((-1,) + (1,) * x.ndim)
    return np.asarray(func(pts.ravel()), dtype=complex).reshape(pts.shape)


def ode_residual(
    psi: Callable,
    lam: complex,
    omega: float,
    grid,
    h: float = 1e-3,
    richardson: bool = False,
) -> float:
    """``sup |-D2 psi - omega^2 x^2 psi - lam psi|`` over ``grid``.

    ``D2`` is the central second difference with step ``h``; the residual of a
    true solution is ``O(h^2 sup|psi''''|)``, or ``O(h^4)`` with Richardson.

    Raises:
        DomainError: on an empty grid or a nonpositive step.
    """
    x = np.asarray(grid, dtype=float).ravel()
    if x.size == 0:
        raise DomainError("empty grid")
    d2, centre = second_difference(psi, x, h, richardson)
    res = -d2 - (omega * omega) * x * x * centre - complex(lam) * centre
    return float(np.max(np.abs(res)))


def kummer_parity_identity_check(lam: complex, omega: float, x, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Defect of ``f_{-w} F_{.,-w,lam} = f_{w} F_{.,w,lam}`` summed over both parities.

    Both sides are the even (resp. odd) solution for the same eigenvalue, so
    Kummer's first formula makes them coincide.
    """
    total = 0.0
    for parity in Parity:
        plus = eigenfunction(EigenParams.make(lam, omega, parity, +1), x, ctl)
        minus = eigenfunction(EigenParams.make(lam, omega, parity, -1), x, ctl)
        total = total + np.abs(minus - plus)
    return float(np.max(total))


def independence_determinant(lam: complex, alpha: float, omega: float, x0: float = 0.0, h: float = 1e-3) -> complex:
    """Wronskian determinant of the even and odd solutions at ``x0`` (central differences)."""
    pe = EigenParams(lam, alpha, omega, Parity.EVEN)
    po = pe.with_parity(Parity.ODD)
    xs = np.array([x0 - h, x0, x0 + h])
    e = psi_even(pe, xs)
    o = psi_odd(po, xs)
    de = (e[2] - e[0]) / (2 * h)
    do = (o[2] - o[0]) / (2 * h)
    return complex(e[1] * do - o[1] * de)
