"""Uniformly sampled functions on the real line."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GridMismatch, ValidationError


def parse_grid(text: str) -> np.ndarray:
    """Parse ``"min:max:count"`` into a uniform grid (endpoints included)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must look like min:max:count, got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2 or not hi > lo:
        raise ValueError(f"grid needs max > min and count >= 2, got {text!r}")
    return np.linspace(lo, hi, n)


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples on the uniform grid ``x_min + k * dx``.

    The values array is copied and made read-only on construction.
    """

    x_min: float
    dx: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size < 2:
            raise ValidationError("a sampled function needs at least two samples")
        if not self.dx > 0:
            raise ValidationError(f"grid spacing must be positive, got {self.dx}")
        if not np.all(np.isfinite(vals)):
            raise ValidationError("samples must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "dx", float(self.dx))

    @classmethod
    def from_grid(cls, x: np.ndarray, values) -> "SampledFunction":
        x = np.asarray(x, dtype=float)
        if x.size < 2:
            raise ValidationError("a sampled function needs at least two samples")
        dx = (x[-1] - x[0]) / (x.size - 1)
        if not np.allclose(np.diff(x), dx, rtol=1e-9, atol=1e-12 * max(1.0, abs(dx))):
            raise ValidationError("grid is not uniform")
        return cls(x[0], dx, values)

    @classmethod
    def sample(cls, func: Callable, x: np.ndarray) -> "SampledFunction":
        x = np.asarray(x, dtype=float)
        return cls.from_grid(x, np.broadcast_to(func(x), x.shape))

    def __len__(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.values.size)

    @property
    def x_max(self) -> float:
        return self.x_min + self.dx * (self.values.size - 1)

    def same_grid(self, other: "SampledFunction") -> bool:
        return (
            len(self) == len(other)
            and np.isclose(self.x_min, other.x_min, rtol=0, atol=1e-12 * max(1.0, abs(self.x_min)))
            and np.isclose(self.dx, other.dx, rtol=1e-12, atol=0)
        )

    def require_same_grid(self, other: "SampledFunction") -> None:
        if not self.same_grid(other):
            raise GridMismatch(
                f"grids differ: ({self.x_min}, {self.dx}, {len(self)}) vs "
                f"({other.x_min}, {other.dx}, {len(other)})"
            )

    def weights(self) -> np.ndarray:
        """Trapezoidal quadrature weights for this grid."""
        w = np.full(len(self), self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        return w

    def inner(self, other: "SampledFunction") -> complex:
        """Discrete ``<self, other>``, conjugate-linear in ``self``."""
        self.require_same_grid(other)
        return complex(self.dx * np.sum(np.conj(self.values) * other.values))

    def norm(self) -> float:
        return float(np.sqrt(self.dx * np.sum(np.abs(self.values) ** 2)))

    def with_values(self, values) -> "SampledFunction":
        return SampledFunction(self.x_min, self.dx, values)

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        self.require_same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        self.require_same_grid(other)
        return self.with_values(self.values - other.values)
