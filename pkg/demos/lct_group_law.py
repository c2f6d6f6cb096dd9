"""Apply linear canonical transforms and check the composition law and unitarity."""

import numpy as np

from iho.errors import DomainError
from iho.grids import SampledFunction
from iho.lct import SL2Matrix, group_law_check, lct_apply_fast, random_sl2, unitarity_check


def main() -> None:
    x = np.linspace(-24, 24, 4096)
    f = SampledFunction.from_grid(x, np.exp(-x * x / 2) * (1 + 0.3 * x))
    fourier = SL2Matrix(0.0, 1.0, -1.0, 0.0)
    g = lct_apply_fast(fourier, f)
    print(f"Fourier image norm / input norm = {g.norm() / f.norm():.12f}")

    rng = np.random.default_rng(0)
    for _ in range(5):
        A1, A2 = random_sl2(rng, min_b=0.2), random_sl2(rng, min_b=0.2)
        try:
            defect = group_law_check(A2, A1, f, method="fast")
        except DomainError as exc:  # product with b = 0
            print(f"skipped pair: {exc}")
            continue
        print(f"composition defect {defect:.2e}, unitarity defect {unitarity_check(A1, f, f, 'fast', x):.2e}")


if __name__ == "__main__":
    main()
