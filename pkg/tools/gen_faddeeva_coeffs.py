"""Regenerate the rational-approximation coefficients in special.py.

The scaled complement w(z) = e^{-z^2} erfc(-iz) is approximated on the
upper half plane by the classical tangent-substitution construction: with
L = sqrt(N/sqrt 2), the function f(theta) = e^{-t^2} (L^2 + t^2) under
t = L tan(theta/2) is periodic and analytic, so its Fourier cosine
coefficients a_n decay geometrically, and

    w(z) ~ 2/(L-iz)^2 * sum_{n=1..N} a_n Z^{n-1} + (1/sqrt(pi))/(L-iz),
    Z = (L+iz)/(L-iz).

The DFT runs at 50 digits; N = 48 puts the coefficient tail near 1e-18,
which together with 80-bit evaluation arithmetic leaves the final rounding
to double as the dominant error (measured ~1e-16 on an upper-half grid).

Requires mpmath.  Prints L and the 48 coefficients at 30 digits in the
order special.py embeds them, then maps the achieved w accuracy.
"""

import mpmath as mp

N = 48
DPS = 50


def weideman_coeffs(n_terms, dps):
    mp.mp.dps = dps
    m = 2 * n_terms
    m2 = 2 * m
    ell = mp.sqrt(n_terms / mp.sqrt(2))
    samples = [mp.mpf(0)]  # f(-pi) = 0
    for j in range(1, m2):
        theta = -mp.pi + mp.pi * j / m
        t = ell * mp.tan(theta / 2)
        samples.append(mp.e ** (-(t**2)) * (ell * ell + t * t))
    shifted = samples[m:] + samples[:m]  # index 0 <-> theta = 0
    coefs = []
    for n in range(1, n_terms + 1):
        acc = mp.mpc(0)
        for j in range(m2):
            acc += shifted[j] * mp.e ** (-2 * mp.pi * 1j * n * j / m2)
        coefs.append(mp.re(acc) / m2)
    return ell, coefs


def w_reference(zeta):
    return mp.e ** (-mp.mpc(zeta) ** 2) * mp.erfc(-1j * mp.mpc(zeta))


def main():
    ell, coefs = weideman_coeffs(N, DPS)
    print(f"L = {mp.nstr(ell, 30)}")
    for c in coefs:
        print(f'        "{mp.nstr(c, 30)}",')

    # Accuracy map: evaluate the rational form in double-extended and
    # compare against mpmath on an upper-half-plane grid.
    import numpy as np

    ld = np.clongdouble(mp.nstr(ell, 25))
    a = [np.longdouble(mp.nstr(c, 25)) for c in coefs]
    inv_sqrt_pi = np.longdouble(
        "0.564189583547756286948079451560772585844050629328998856844086"
    )

    def w_rational(zeta):
        zl = np.clongdouble(zeta)
        den = ld - 1j * zl
        big_z = (ld + 1j * zl) / den
        poly = np.clongdouble(a[-1])
        for c in a[-2::-1]:
            poly = poly * big_z + c
        return 2 * poly / (den * den) + inv_sqrt_pi / den

    mp.mp.dps = 30
    worst, where = 0.0, None
    for re in np.linspace(-17, 17, 69):
        for im in np.linspace(0, 17, 35):
            zeta = complex(re, im)
            ref = complex(w_reference(zeta))
            rel = abs(complex(w_rational(zeta)) - ref) / abs(ref)
            if rel > worst:
                worst, where = rel, zeta
    print(f"\nworst relative w error on the grid: {worst:.3e} at {where}")


if __name__ == "__main__":
    main()
