"""Map a windowed eigenfunction to the t-line and read off its frequency."""

import numpy as np

from iho.grids import SampledFunction
from iho.logmap import HalfLineSpec, peak_frequency, plateau_window, spectrum_map_pipeline
from iho.oscillator import EigenParams, psi_even


def main() -> None:
    x = np.linspace(-16, 16, 4097)
    spec = HalfLineSpec(-1.5, 2.5, 400)
    for omega in (1.0, 2.0):
        for lam in (-2.0, 0.0, 2.0):
            p = EigenParams.make(lam, omega)
            psi = SampledFunction.sample(lambda s: plateau_window(s) * psi_even(p, s), x)
            out = spectrum_map_pipeline(omega, 1.0, psi, spec)
            pk = peak_frequency(out.plus)
            print(f"omega={omega} lambda={lam:+}: peak {pk.frequency:+.4f}, expected {lam / (2 * omega):+.4f}, bin {pk.bin_width:.3f}")


if __name__ == "__main__":
    main()
