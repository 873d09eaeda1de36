"""High-precision reference implementations used to pin expected test values.

Everything here is deliberately independent of the code under test: Legendre
functions come from the Rodrigues formula with exact rational polynomial
coefficients, Bessel/Hankel values from mpmath's arbitrary-precision series.
"""

from fractions import Fraction

import mpmath as mp

mp.mp.dps = 60


def _legendre_poly_coeffs(l):
    """Exact rational coefficients of P_l(x) = (1/2^l l!) d^l/dx^l (x^2-1)^l.

    Returns a dict degree -> Fraction.
    """
    # (x^2 - 1)^l expanded exactly
    coeffs = {}
    for k in range(l + 1):
        c = Fraction(mp.binomial(l, k).__int__() if False else _binom(l, k))
        coeffs[2 * k] = c * (-1) ** (l - k)
    # differentiate l times
    for _ in range(l):
        coeffs = {d - 1: c * d for d, c in coeffs.items() if d >= 1}
    scale = Fraction(1, 2**l * _factorial(l))
    return {d: c * scale for d, c in coeffs.items()}


def _binom(n, k):
    return _factorial(n) // (_factorial(k) * _factorial(n - k))


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _poly_derivative(coeffs):
    return {d - 1: c * d for d, c in coeffs.items() if d >= 1}


def _poly_eval(coeffs, x):
    return mp.fsum(mp.mpf(c.numerator) / mp.mpf(c.denominator) * x**d
                   for d, c in coeffs.items())


def assoc_legendre_plain(l, m, x):
    """P_l^m(x) with the Condon-Shortley phase, m >= 0, by Rodrigues' formula."""
    x = mp.mpf(x)
    base = _legendre_poly_coeffs(l)
    for _ in range(m):
        base = _poly_derivative(base)
    return (-1) ** m * (1 - x**2) ** (mp.mpf(m) / 2) * _poly_eval(base, x)


def norm_factor(l, m):
    """sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) for m >= 0."""
    return mp.sqrt(mp.mpf(2 * l + 1) / (4 * mp.pi)
                   * mp.mpf(_factorial(l - m)) / mp.mpf(_factorial(l + m)))


def assoc_legendre_norm(l, m, x):
    """Fully normalized associated Legendre value, m >= 0."""
    return norm_factor(l, m) * assoc_legendre_plain(l, m, x)


def assoc_legendre_norm_dtheta(l, m, theta):
    """d/dtheta of the fully normalized Legendre function at cos(theta), m >= 0.

    Uses exact differentiation of the Rodrigues product
    (1-x^2)^{m/2} Q(x): no finite differences anywhere.
    """
    theta = mp.mpf(theta)
    x = mp.cos(theta)
    s = mp.sin(theta)
    base = _legendre_poly_coeffs(l)
    for _ in range(m):
        base = _poly_derivative(base)
    q = _poly_eval(base, x)
    dq = _poly_eval(_poly_derivative(base), x)
    if m == 0:
        dp_dx = dq
    else:
        dp_dx = (1 - x**2) ** (mp.mpf(m) / 2 - 1) * (
            (1 - x**2) * dq - m * x * q)
    # d/dtheta = -sin(theta) d/dx, Condon-Shortley sign carried through
    return norm_factor(l, m) * (-1) ** m * (-s) * dp_dx


def sph_harm(l, m, theta, phi):
    """Y_lm via the Rodrigues-formula Legendre oracle; any sign of m."""
    if m < 0:
        return (-1) ** (-m) * mp.conj(sph_harm(l, -m, theta, phi))
    return assoc_legendre_norm(l, m, mp.cos(mp.mpf(theta))) * mp.exp(1j * m * mp.mpf(phi))


def sph_harm_dtheta(l, m, theta, phi):
    """d/dtheta of Y_lm; any sign of m."""
    if m < 0:
        return (-1) ** (-m) * mp.conj(sph_harm_dtheta(l, -m, theta, phi))
    return assoc_legendre_norm_dtheta(l, m, theta) * mp.exp(1j * m * mp.mpf(phi))


def vec_x(l, m, theta, phi):
    """(theta, phi) components of X_lm: (1/i)(-dY/dtheta phi^ + (1/sin) dY/dphi theta^)."""
    y = sph_harm(l, m, theta, phi)
    dy = sph_harm_dtheta(l, m, theta, phi)
    root = mp.sqrt(mp.mpf(l * (l + 1)))
    x_theta = m * y / (mp.sin(mp.mpf(theta)) * root)
    x_phi = 1j * dy / root
    return x_theta, x_phi


def vec_z(l, m, theta, phi):
    """Z_lm = r^ x X_lm: (Z_theta, Z_phi) = (-X_phi, X_theta)."""
    x_theta, x_phi = vec_x(l, m, theta, phi)
    return -x_phi, x_theta


def spherical_jn(l, x):
    x = mp.mpf(x)
    return mp.sqrt(mp.pi / (2 * x)) * mp.besselj(l + mp.mpf("0.5"), x)


def spherical_yn(l, x):
    x = mp.mpf(x)
    return mp.sqrt(mp.pi / (2 * x)) * mp.bessely(l + mp.mpf("0.5"), x)


def sph_hankel1(l, x):
    return spherical_jn(l, x) + 1j * spherical_yn(l, x)


def riccati_h1_deriv(l, x, step=mp.mpf("1e-25")):
    """d/dx [x h_l^(1)(x)] by high-order central differences at high precision."""
    x = mp.mpf(x)
    f = lambda t: t * sph_hankel1(l, t)
    return (f(x + step) - f(x - step)) / (2 * step)
