"""Weighted L2 spaces and pairing probes for generalized eigenfunctions.

The weights ``mu_n(x) = 1 + |x|^{-1/n}`` (outside ``|x| <= 1``) define the
scalar products of a decreasing family of Hilbert spaces. A generalized
eigenfunction ``F`` with eigenvalue ``lam`` pairs with a test function ``phi``
through ``lim_X int_{-X}^{X} F conj(phi) dx``; for real ``lam`` the limit
exists, for complex ``lam`` one of the two asymptotic branches of ``F`` grows
like ``x^{-1/2 + |Im lam|/(2 omega)}`` and a chirp-matched ``phi`` makes the
partial integrals grow without bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import QuadratureError, ValidationError
from .grids import SampledFunction
from .oscillator import EigenParams, Parity, eigenfunction

__all__ = [
    "RiggedWeight",
    "Verdict",
    "ConvergenceVerdict",
    "VerdictRule",
    "mu_weight",
    "weighted_scalar_product",
    "phi_test_family",
    "adapted_chirp",
    "adapted_test_function",
    "pairing_partials",
]


@dataclass(frozen=True)
class RiggedWeight:
    """``mu_n`` (exponent ``1/n``) or ``mu_eps`` (exponent ``eps``)."""

    n: Optional[int] = None
    eps: Optional[float] = None

    def __post_init__(self):
        if (self.n is None) == (self.eps is None):
            raise ValidationError("give exactly one of n and eps")
        if self.n is not None and (int(self.n) != self.n or self.n < 1):
            raise ValidationError(f"n must be a positive integer, got {self.n}")
        if self.eps is not None and not self.eps > 0:
            raise ValidationError(f"eps must be positive, got {self.eps}")

    @property
    def exponent(self) -> float:
        return 1.0 / self.n if self.n is not None else float(self.eps)


def mu_weight(w: RiggedWeight, x):
    """1 on ``|x| <= 1``, ``1 + |x|^{-exponent}`` outside."""
    ax = np.abs(np.asarray(x, dtype=float))
    with np.errstate(divide="ignore"):
        out = np.where(ax <= 1, 1.0, 1.0 + ax ** (-w.exponent))
    return float(out) if out.ndim == 0 else out


def weighted_scalar_product(f: SampledFunction, g: SampledFunction, n: int) -> complex:
    """``sum_{k=0}^{n} <f, g>_k``; ``k = 0`` is the plain product, ``k >= 1`` uses ``mu_k``.

    Raises:
        GridMismatch: if ``f`` and ``g`` live on different grids.
    """
    f.require_same_grid(g)
    if n < 0:
        raise ValidationError("n must be nonnegative")
    prod = np.conj(f.values) * g.values
    total = f.dx * np.sum(prod)
    x = f.x
    for k in range(1, n + 1):
        total += f.dx * np.sum(prod * mu_weight(RiggedWeight(n=k), x))
    return complex(total)


def phi_test_family(epsilon: float, x, chirp: float = 0.0):
    """``(1 + x^2)^{-1/4 - epsilon/2} exp(i chirp x^2 / 2)``.

    The modulus decays like ``|x|^{-1/2 - epsilon}``, which puts the function in
    every weighted space; the chirp leaves the modulus alone.
    """
    if not epsilon > 0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    x = np.asarray(x, dtype=float)
    out = (1.0 + x * x) ** (-0.25 - 0.5 * epsilon)
    if chirp != 0.0:
        out = out * np.exp(0.5j * chirp * x * x)
    return float(out) if out.ndim == 0 and chirp == 0.0 else out


def adapted_chirp(lam: complex, alpha: float) -> float:
    """Chirp that cancels the Fresnel phase of the growing branch of ``F_{alpha, lam}``.

    The branch ``x^{-1/2 + i lam/(2 alpha)} e^{i alpha x^2/2}`` grows when
    ``Im(lam)/alpha < 0``, the other one (phase ``-alpha x^2/2``) otherwise.
    Returns 0 for real ``lam``.
    """
    lam = complex(lam)
    if lam.imag == 0:
        return 0.0
    return alpha if lam.imag / alpha < 0 else -alpha


def adapted_test_function(lam: complex, alpha: float, epsilon: float, parity=Parity.EVEN) -> Callable:
    """Member of :func:`phi_test_family` matched to ``lam`` (odd partner for odd parity)."""
    chirp = adapted_chirp(lam, alpha)
    odd = Parity.parse(parity) is Parity.ODD

    def phi(x):
        x = np.asarray(x, dtype=float)
        out = phi_test_family(epsilon, x, chirp)
        return out * x / np.sqrt(1.0 + x * x) if odd else out

    return phi


class Verdict(enum.Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class VerdictRule:
    """Thresholds for turning partial integrals into a verdict.

    Increments are ``|I(X_{k+1}) - I(X_k)|``; their growth exponent is the
    least-squares slope of ``log`` increment against ``log X``.

    Converged: the exponent is below ``-min_growth`` and every increment in the
    second half of the sequence is at most ``tol_rel * max|I|``. Diverged:
    increments never decrease and the exponent exceeds ``min_growth``.
    """

    tol_rel: float = 1e-3
    min_growth: float = 0.02


@dataclass(frozen=True)
class ConvergenceVerdict:
    verdict: Verdict
    partials: tuple[tuple[float, complex], ...]
    exponent: float = field(default=float("nan"))

    def __post_init__(self):
        xs = [p[0] for p in self.partials]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValidationError("partials must be strictly increasing in X")

    @property
    def increments(self) -> np.ndarray:
        vals = np.array([p[1] for p in self.partials])
        return np.abs(np.diff(vals))


def _simpson(y: np.ndarray, h: float) -> complex:
    return h / 3 * (y[0] + y[-1] + 4 * np.sum(y[1:-1:2]) + 2 * np.sum(y[2:-1:2]))


def _local_frequency(x: float, omega: float, lam: complex, chirp: float) -> float:
    # Phase rate of the fastest term of F conj(phi): omega x from F, |chirp| x from phi,
    # plus the log-phase of the amplitude factor.
    return (omega + abs(chirp)) * x + abs(complex(lam)) / (2 * omega * max(x, 1e-3)) + 1.0


def pairing_partials(
    lam: complex,
    omega: float,
    parity,
    phi: Callable,
    X_sequence: Sequence[float],
    alpha_sign: int = 1,
    chirp_hint: Optional[float] = None,
    samples_per_period: int = 16,
    rule: VerdictRule = VerdictRule(),
    max_points: int = 50_000_000,
) -> ConvergenceVerdict:
    """Partial pairings ``I(X) = int_{-X}^{X} F(x) conj(phi(x)) dx`` and a verdict.

    ``F`` is the even or odd eigenfunction for ``(lam, alpha = alpha_sign *
    omega)``. The integral runs over ``[0, X]`` using the parity of ``F``, with
    composite Simpson panels between consecutive ``X`` whose step gives at
    least ``samples_per_period`` samples per local oscillation. ``chirp_hint``
    is the chirp rate of ``phi`` (defaults to ``omega``, the safe bound).

    Raises:
        ValidationError: if ``X_sequence`` is not increasing or has fewer than 3 entries.
        QuadratureError: if the mesh would need more than ``max_points`` points.
    """
    X = np.asarray(X_sequence, dtype=float)
    if X.size < 3 or np.any(np.diff(X) <= 0) or X[0] <= 0:
        raise ValidationError("X_sequence must be positive, increasing, with at least 3 entries")
    parity = Parity.parse(parity)
    p = EigenParams.make(lam, omega, parity, alpha_sign)
    reflect = 1.0 if parity is Parity.EVEN else -1.0
    chirp = omega if chirp_hint is None else chirp_hint

    def integrand(x):
        F = np.asarray(eigenfunction(p, x), dtype=complex)
        return F * (np.conj(phi(x)) + reflect * np.conj(phi(-x)))

    edges = np.concatenate([[0.0], X])
    est = sum(
        (b - a) * _local_frequency(b, omega, lam, chirp) * samples_per_period / (2 * math.pi)
        for a, b in zip(edges, edges[1:])
    )
    if est > max_points:
        raise QuadratureError(f"mesh would need about {est:.3g} points (limit {max_points})")

    total = 0j
    partials = []
    for a, b in zip(edges, edges[1:]):
        step = 2 * math.pi / (samples_per_period * _local_frequency(b, omega, lam, chirp))
        m = max(2, int(math.ceil((b - a) / step)))
        m += m % 2
        h = (b - a) / m
        if h <= 1e-12 * b:
            raise QuadratureError("quadrature step underflow")
        # Simpson panels in chunks keep memory bounded on long segments.
        chunk = 1 << 20
        for s in range(0, m, chunk):
            e = min(m, s + chunk)
            xs = a + h * np.arange(s, e + 1)
            total += _simpson(integrand(xs), h)
        partials.append((float(b), complex(total)))
    return _judge(partials, rule)


def _judge(partials: list, rule: VerdictRule) -> ConvergenceVerdict:
    xs = np.array([q[0] for q in partials])
    vals = np.array([q[1] for q in partials])
    inc = np.abs(np.diff(vals))
    with np.errstate(divide="ignore"):
        exponent = float(np.polyfit(np.log(xs[1:]), np.log(np.maximum(inc, 1e-300)), 1)[0])
    peak = float(np.max(np.abs(vals)))
    # Increments of convergent pairings carry endpoint oscillations, so decay
    # is judged by trend rather than strict monotonicity.
    late = inc[inc.size // 2 :]
    nondecreasing = bool(np.all(np.diff(inc) >= 0))
    if exponent < -rule.min_growth and np.all(late <= rule.tol_rel * peak):
        verdict = Verdict.CONVERGED
    elif nondecreasing and exponent > rule.min_growth:
        verdict = Verdict.DIVERGED
    else:
        verdict = Verdict.INCONCLUSIVE
    return ConvergenceVerdict(verdict, tuple(partials), exponent)
