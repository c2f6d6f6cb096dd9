"""Evaluate eigenfunctions, check the ODE residual and compare with the large-x form."""

import numpy as np

from iho.oscillator import EigenParams, asymptotic_eval, asymptotic_form, ode_residual, psi_even, psi_odd


def main() -> None:
    lam, omega = 1.0 + 0.3j, 1.0
    grid = np.linspace(-4, 4, 8001)
    for parity, fn in (("even", psi_even), ("odd", psi_odd)):
        p = EigenParams.make(lam, omega, parity)
        res = ode_residual(lambda x: fn(p, x), lam, omega, grid, richardson=True)
        print(f"{parity:>4}: psi(1) = {complex(fn(p, 1.0)):.6f}, residual on |x|<=4 = {res:.2e}")

    p = EigenParams.make(2.0, 1.0)
    form = asymptotic_form(p)
    for x in (10.0, 20.0, 30.0):
        exact, approx = complex(psi_even(p, x)), complex(asymptotic_eval(form, x))
        print(f"x={x:>4}: psi={exact:.5f} asymptotic={approx:.5f}")


if __name__ == "__main__":
    main()
