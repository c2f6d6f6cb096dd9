"""Logarithmic coordinates on the two half-lines.

``U_exp`` sends ``f`` on the real line to the pair of functions
``t -> f(+-e^t) e^{t/2}`` on two copies of the ``t``-line. It is unitary and
turns the dilation generator ``x p + p x`` into ``2 p_t``, so after the
transform ``W_A`` of :mod:`iho.lct` the inverted oscillator becomes a pure
momentum operator and its spectrum can be read off as frequencies in ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DomainError, GridMismatch, InterpolationError, ValidationError
from .grids import SampledFunction
from .lct import SL2Matrix, iho_matrix, kernel_constant, lct_apply_fast
from .specfun import DEFAULT_CONTROL, SeriesControl, gaussian_power_integral

__all__ = [
    "HalfLineSpec",
    "TwoLineFunction",
    "PeakEstimate",
    "heaviside",
    "heaviside_split",
    "u_exp_forward",
    "u_exp_inverse",
    "phi_abgamma",
    "wlemma_eigenfunction",
    "plateau_window",
    "spectrum_map_pipeline",
    "peak_frequency",
]


@dataclass(frozen=True)
class HalfLineSpec:
    """Uniform ``t``-grid ``linspace(t_min, t_max, n)`` for ``x = +-e^t``."""

    t_min: float
    t_max: float
    n: int

    def __post_init__(self):
        if not self.t_min < self.t_max:
            raise ValidationError(f"need t_min < t_max, got {self.t_min}, {self.t_max}")
        if self.n < 2:
            raise ValidationError(f"need n >= 2, got {self.n}")

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n)

    @property
    def dt(self) -> float:
        return (self.t_max - self.t_min) / (self.n - 1)


@dataclass(frozen=True)
class TwoLineFunction:
    """Channels ``plus`` (from ``x > 0``) and ``minus`` (from ``x < 0``) on one ``t``-grid."""

    plus: SampledFunction
    minus: SampledFunction

    def __post_init__(self):
        if not self.plus.same_grid(self.minus):
            raise GridMismatch("both channels must share the t-grid")

    @property
    def t(self) -> np.ndarray:
        return self.plus.x

    def norm(self) -> float:
        return float(np.hypot(self.plus.norm(), self.minus.norm()))

    def channels(self) -> dict[int, SampledFunction]:
        return {+1: self.plus, -1: self.minus}


@dataclass(frozen=True)
class PeakEstimate:
    frequency: float
    bin_width: float
    magnitude: float


def heaviside(x):
    """Step function with ``heaviside(0) = 1/2``."""
    x = np.asarray(x, dtype=float)
    return np.where(x > 0, 1.0, np.where(x < 0, 0.0, 0.5))


def heaviside_split(f: SampledFunction) -> tuple[SampledFunction, SampledFunction]:
    """``(eta(x) f, eta(-x) f)``; the two parts add up to ``f`` exactly."""
    x = f.x
    return f.with_values(heaviside(x) * f.values), f.with_values(heaviside(-x) * f.values)


Evaluable = Union[SampledFunction, Callable]


def _interp(f: SampledFunction, x: np.ndarray) -> np.ndarray:
    return np.interp(x, f.x, f.values.real) + 1j * np.interp(x, f.x, f.values.imag)


def u_exp_forward(f: Evaluable, spec: HalfLineSpec) -> TwoLineFunction:
    """Channels ``f(+-e^t) e^{t/2}`` on ``spec.t``.

    A :class:`SampledFunction` is interpolated linearly; a callable is
    evaluated directly at ``+-e^t``.

    Raises:
        InterpolationError: if ``+-e^{t_max}`` falls outside the sampled grid.
    """
    t = spec.t
    r = np.exp(t)
    if isinstance(f, SampledFunction):
        if r[-1] > f.x_max * (1 + 1e-12) or -r[-1] < f.x_min * (1 + 1e-12):
            raise InterpolationError(
                f"e^t_max = {r[-1]:.6g} exceeds the x-grid [{f.x_min:.6g}, {f.x_max:.6g}]"
            )
        plus, minus = _interp(f, r), _interp(f, -r)
    else:
        plus = np.asarray(f(r), dtype=complex)
        minus = np.asarray(f(-r), dtype=complex)
    jac = np.exp(t / 2)
    return TwoLineFunction(
        SampledFunction(spec.t_min, spec.dt, plus * jac),
        SampledFunction(spec.t_min, spec.dt, minus * jac),
    )


def _limit_at_origin(ch: SampledFunction, rel_tol: float) -> complex:
    # One-sided limit of f at 0 is lim g(t) e^{-t/2} as t -> -inf; accept it only
    # if it is stable over one e-fold of t from the left end of the grid.
    t = ch.x
    k = min(len(ch) - 1, int(np.searchsorted(t, t[0] + 1.0)))
    v0 = ch.values[0] * np.exp(-t[0] / 2)
    v1 = ch.values[k] * np.exp(-t[k] / 2)
    if abs(v0 - v1) > rel_tol * max(abs(v0), abs(v1)) and abs(v0) > 0:
        raise DomainError("x = 0 on the grid but the channel has no finite limit at t -> -inf")
    return complex(v0)


def u_exp_inverse(g: TwoLineFunction, x_grid, rel_tol: float = 1e-2) -> SampledFunction:
    """``f(x) = g_+-(ln|x|) |x|^{-1/2}``, zero where ``ln|x|`` leaves the ``t``-grid.

    At ``x = 0`` the value follows the ``eta(0) = 1/2`` convention: the mean of
    the one-sided limits ``g_+-(t_min) e^{-t_min/2}``.

    Raises:
        DomainError: if the grid contains ``x = 0`` and a channel's limit
            ``g(t) e^{-t/2}`` changes by more than ``rel_tol`` over the first
            e-fold of ``t`` (the function is singular at 0).
    """
    x = np.asarray(x_grid, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    t = g.t
    for sign, ch in g.channels().items():
        sel = (sign * x) > 0
        if not np.any(sel):
            continue
        ax = np.abs(x[sel])
        lt = np.log(ax)
        inside = (lt >= t[0]) & (lt <= t[-1])
        vals = np.zeros(ax.shape, dtype=complex)
        vals[inside] = _interp(ch, lt[inside]) / np.sqrt(ax[inside])
        out[sel] = vals
    zero = x == 0
    if np.any(zero):
        out[zero] = 0.5 * (_limit_at_origin(g.plus, rel_tol) + _limit_at_origin(g.minus, rel_tol))
    return SampledFunction.from_grid(x, out)


def phi_abgamma(a: complex, b: complex, gamma: float, x):
    """``a eta(x) |x|^{-1/2+i gamma} + b eta(-x) |x|^{-1/2+i gamma}``.

    Raises:
        DomainError: if any ``x`` is 0.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise DomainError("phi_abgamma is singular at x = 0")
    power = np.abs(x) ** (-0.5 + 1j * gamma)
    out = np.where(x > 0, a, b) * power
    return complex(out) if out.ndim == 0 else out


def wlemma_eigenfunction(A: SL2Matrix, gamma: float, x, ctl: SeriesControl = DEFAULT_CONTROL):
    """``W_{A^-1}`` applied to ``eta(u) u^{-1/2 + i gamma}``, in closed form.

    With ``p = i beta / (2b)`` the ``u``-integral is a Gaussian-power integral,
    giving::

        C(A^-1) exp(-i a x^2 / 2b) (1/p)^(1/4 + i gamma/2) Psi_{-1/2 + i gamma}((i x / b) sqrt(1/p))

    where ``1/p = -2ib/beta``. For ``A = iho_matrix(omega, .)`` this solves the
    oscillator equation with eigenvalue ``2 omega gamma``.

    Raises:
        DomainError: if ``A.b`` or ``A.beta`` is 0.
    """
    A.require_b()
    if A.beta == 0:
        raise DomainError("beta must be nonzero")
    x = np.asarray(x, dtype=float)
    p = 1j * A.beta / (2 * A.b)
    mu = -0.5 + 1j * gamma
    # Psi argument is (i x / b) / sqrt(p); sqrt(1/p) == 1/sqrt(p) since p is imaginary.
    integral = gaussian_power_integral(p, 1j * x / A.b, mu, ctl)
    out = kernel_constant(A.inverse()) * np.exp(-0.5j * A.a * x * x / A.b) * integral
    return complex(out) if np.ndim(out) == 0 else out


def plateau_window(x, x0: float = 8.0, x1: float = 14.0):
    """C-infinity window: 1 on ``|x| <= x0``, 0 for ``|x| >= x1``."""
    if not 0 < x0 < x1:
        raise ValidationError(f"need 0 < x0 < x1, got {x0}, {x1}")
    s = np.clip((np.abs(np.asarray(x, dtype=float)) - x0) / (x1 - x0), 0.0, 1.0)
    out = np.where(s <= 0, 1.0, 0.0)
    mid = (s > 0) & (s < 1)
    sm = s[mid]
    with np.errstate(over="ignore"):
        out[mid] = 1.0 / (1.0 + np.exp(1.0 / (1.0 - sm) - 1.0 / sm))
    return out


def spectrum_map_pipeline(
    omega: float,
    a_param: float,
    psi: SampledFunction,
    spec: HalfLineSpec,
    u_grid=None,
) -> TwoLineFunction:
    """``U_exp(W_A psi)`` with ``A = iho_matrix(omega, a_param)``.

    An eigenfunction with real eigenvalue ``lam`` comes out as ``e^{i gamma t}``
    in each channel, ``gamma = lam / (2 omega)``.

    ``u_grid`` defaults to ``2 len(psi) + 1`` points on ``[-U, U]`` with
    ``U = 1.25 e^{t_max}``.
    """
    A = iho_matrix(omega, a_param)
    if u_grid is None:
        U = 1.25 * np.exp(spec.t_max)
        u_grid = np.linspace(-U, U, 2 * len(psi) + 1)
    g = lct_apply_fast(A, psi, u_grid)
    return u_exp_forward(g, spec)


def peak_frequency(channel: SampledFunction, pad: int = 16) -> PeakEstimate:
    """Location of the largest Hann-tapered, zero-padded FFT magnitude, in rad per unit ``t``.

    ``bin_width`` is the unpadded resolution ``2 pi / (n dt)``.
    """
    n = len(channel)
    spectrum = np.fft.fft(channel.values * np.hanning(n), n * pad)
    freqs = 2 * np.pi * np.fft.fftfreq(n * pad, channel.dx)
    k = int(np.argmax(np.abs(spectrum)))
    return PeakEstimate(float(freqs[k]), 2 * np.pi / (n * channel.dx), float(np.abs(spectrum[k])))
