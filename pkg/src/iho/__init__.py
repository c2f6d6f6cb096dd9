"""Spectral toolkit for the inverted harmonic oscillator ``-d^2/dx^2 - omega^2 x^2``.

Modules:
    specfun: Kummer's 1F1, complex gamma and the Gaussian-power integral.
    oscillator: even/odd eigenfunctions, asymptotic amplitudes, ODE residuals.
    lct: SL(2,R)-parameterized unitary transforms (direct and chirp-z paths).
    logmap: logarithmic coordinates and the spectrum-mapping pipeline.
    wronskian: Wronskians of the asymptotic family and the delta normalization probe.
    rigged: weighted scalar products and pairing convergence probes.
    cli: command-line entry point.
"""

from .errors import (
    DomainError,
    GridMismatch,
    IHOError,
    InterpolationError,
    NonConvergence,
    PoleError,
    QuadratureError,
    TruncationWarning,
    ValidationError,
)
from .grids import SampledFunction, parse_grid
from .lct import QuadraticForm, SL2Matrix
from .oscillator import EigenParams, Parity

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "GridMismatch",
    "IHOError",
    "InterpolationError",
    "NonConvergence",
    "PoleError",
    "QuadratureError",
    "TruncationWarning",
    "ValidationError",
    "SampledFunction",
    "parse_grid",
    "QuadraticForm",
    "SL2Matrix",
    "EigenParams",
    "Parity",
]
