"""Real eigenvalues pair finitely with weighted test functions; complex ones do not."""

from iho.rigged import adapted_chirp, adapted_test_function, pairing_partials

XS = [25, 50, 100, 200, 400, 800]


def main() -> None:
    for lam in (0.0, 1.0, 3.0, 0.5j, 1 + 0.5j):
        phi = adapted_test_function(lam, 1.0, 0.15)
        v = pairing_partials(lam, 1.0, "even", phi, XS, chirp_hint=adapted_chirp(lam, 1.0))
        print(f"lambda={lam}: {v.verdict.value}, growth exponent {v.exponent:+.3f}")


if __name__ == "__main__":
    main()
