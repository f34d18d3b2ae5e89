#!/usr/bin/env python3
"""Generate the representative zinc oxide loss table zinc_oxide_eps2.tab.

Two-Lorentzian electronic loss model (no lattice contribution, matching an
electronic-structure-derived response):

    eps''(w) = sum_j C_j w_j^2 g_j w / ((w_j^2 - w^2)^2 + g_j^2 w^2)

with (C, w_j, g_j) = (2.00, 8.0e15, 4.0e14) and (0.72, 2.6e16, 1.3e15).
Its exact Kramers-Kronig image on the imaginary axis is
1 + sum_j C_j / (1 + (xi/w_j)^2 + g_j xi / w_j^2), static value 3.72.
"""
import numpy as np

TERMS = [(2.00, 8.0e15, 4.0e14), (0.72, 2.6e16, 1.3e15)]


def eps2(w):
    out = np.zeros_like(w)
    for (C, w0, g) in TERMS:
        out += C * w0**2 * g * w / ((w0**2 - w**2) ** 2 + g**2 * w**2)
    return out


def main():
    w = np.logspace(14.0, 18.0, 4 * 240 + 1)
    with open("zinc_oxide_eps2.tab", "w") as f:
        f.write("# zinc oxide, representative electronic loss spectrum\n")
        f.write("# omega_rad_s    eps_imag\n")
        for wi, li in zip(w, eps2(w)):
            f.write(f"{wi:.12e} {li:.12e}\n")


if __name__ == "__main__":
    main()
