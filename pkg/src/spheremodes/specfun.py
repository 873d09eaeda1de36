"""Scalar special functions: fully normalized associated Legendre functions,
spherical harmonics, and outgoing spherical Hankel functions.

Conventions (fixed for the whole package):
  * time dependence e^{-i omega t}, so h_l^(1) is the outgoing radial factor;
  * Condon-Shortley phase (-1)^m folded *into* the Legendre functions;
  * full normalization sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) folded into the
    recurrence itself, so degrees up to l ~ 64 never touch a factorial.

All functions are pure and accept scalars or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FOUR_PI = 4.0 * np.pi


@dataclass(frozen=True)
class ModeIndex:
    """One radiating multipole mode: degree l >= 1, order -l <= m <= l.

    l = 0 is excluded on purpose: the transverse harmonic of degree zero
    vanishes identically, so a degree-zero coefficient carries no field and
    can never be recovered from surface data.
    """

    l: int
    m: int

    def __post_init__(self):
        if self.l < 1:
            raise ValueError(f"mode degree must be >= 1, got l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"mode order must satisfy |m| <= l, got (l={self.l}, m={self.m})")


def _scaled_legendre(l: int, m: int, x):
    """q_lm(x) = (normalized P_l^m(x)) / (1-x^2)^{m/2}, finite at the poles.

    Runs the fully normalized three-term recurrence upward in degree at fixed
    order; the sin^m(theta) factor is divided out symbolically so callers can
    reapply exactly the power they need (this is what keeps 1/sin(theta)
    terms of the vector harmonics pole-safe).
    """
    x = np.asarray(x, dtype=float)
    q = np.full_like(x, 1.0 / np.sqrt(FOUR_PI))
    for k in range(1, m + 1):
        q = q * (-np.sqrt((2.0 * k + 1.0) / (2.0 * k)))
    if l == m:
        return q
    q_prev = q
    q = np.sqrt(2.0 * m + 3.0) * x * q_prev
    for ll in range(m + 2, l + 1):
        a = np.sqrt((2.0 * ll + 1.0) * (2.0 * ll - 1.0) / ((ll - m) * (ll + m)))
        b = np.sqrt((2.0 * ll + 1.0) * (ll - 1.0 - m) * (ll - 1.0 + m)
                    / ((2.0 * ll - 3.0) * (ll - m) * (ll + m)))
        q, q_prev = a * x * q - b * q_prev, q
    return q


def assoc_legendre_norm(l: int, m: int, x):
    """Fully normalized associated Legendre function N_lm P_l^m(x).

    N_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!), Condon-Shortley phase included,
    so that sph_harmonic(l, m, theta, phi) = assoc_legendre_norm(l, m,
    cos(theta)) * exp(i m phi).

    Requires 0 <= m <= l and |x| <= 1.
    """
    if m < 0 or m > l:
        raise ValueError(f"order must satisfy 0 <= m <= l, got (l={l}, m={m})")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("argument must lie in [-1, 1]")
    s = np.sqrt(1.0 - x * x)
    out = s**m * _scaled_legendre(l, m, x)
    return out if out.ndim else float(out)


def sph_harmonic(l: int, m: int, theta, phi):
    """Spherical harmonic Y_lm(theta, phi) of degree l >= 0.

    Negative orders are built as Y_{l,-m} = (-1)^m conj(Y_{lm}), which this
    construction satisfies bit-exactly.
    """
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid spherical harmonic index (l={l}, m={m})")
    if m < 0:
        return (-1) ** (-m) * np.conj(sph_harmonic(l, -m, theta, phi))
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    ntheta = np.sin(theta) ** m * _scaled_legendre(l, m, np.cos(theta))
    out = ntheta * np.exp(1j * m * phi)
    return out if out.ndim else complex(out)


def legendre_theta_kernel(l: int, m: int, theta):
    """Angular building blocks of the vector harmonics for one (l, m), m of any sign.

    Returns (n, tau, pi) where, writing N_lm(theta) for the normalized
    Legendre function at cos(theta):

        n   = N_lm(theta)
        tau = d N_lm / d theta
        pi  = m N_lm / sin(theta)

    tau uses the order-raising/lowering identity and pi the divided-out
    sin^m factor, so both are exact at theta = 0 and pi (no 1/sin anywhere).
    """
    if l < 1 or abs(m) > l:
        raise ValueError(f"invalid mode (l={l}, m={m})")
    if m < 0:
        n, tau, pi_ = legendre_theta_kernel(l, -m, theta)
        sign = (-1) ** (-m)
        return sign * n, sign * tau, -sign * pi_
    theta = np.asarray(theta, dtype=float)
    x = np.cos(theta)
    s = np.sin(theta)
    q_m = _scaled_legendre(l, m, x)
    n = s**m * q_m
    pi_ = m * s ** (m - 1) * q_m if m >= 1 else np.zeros_like(x)
    # d/dtheta via neighbors in order: 2 tau = A n_{l,m+1} - B n_{l,m-1}
    a = np.sqrt((l - m) * (l + m + 1.0))
    b = np.sqrt((l + m) * (l - m + 1.0))
    n_up = s ** (m + 1) * _scaled_legendre(l, m + 1, x) if m + 1 <= l else 0.0
    if m == 0:
        n_dn = -s * _scaled_legendre(l, 1, x)
    else:
        n_dn = s ** (m - 1) * _scaled_legendre(l, m - 1, x)
    tau = 0.5 * (a * n_up - b * n_dn)
    return n, tau, pi_


def sph_hankel1(l: int, x):
    """Spherical Hankel function of the first kind, h_l^(1)(x) = j_l + i y_l.

    Upward recurrence from the closed-form l = 0, 1 seeds; stable because the
    y_l part dominates h^(1) wherever the recurrence grows. x must be > 0.
    """
    if l < 0:
        raise ValueError(f"degree must be >= 0, got l={l}")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("argument must be > 0 (lossless exterior, kr > 0)")
    out = _hankel1_upto(l, x)[l]
    return out if out.ndim else complex(out)


def _hankel1_upto(l_max: int, x):
    """h_0^(1)(x) .. h_{l_max}^(1)(x) as a stacked array over the leading axis."""
    x = np.asarray(x, dtype=float)
    ex = np.exp(1j * x)
    h = np.empty((l_max + 1,) + x.shape, dtype=complex)
    h[0] = -1j * ex / x
    if l_max >= 1:
        h[1] = -ex * (1.0 + 1j / x) / x
    for ll in range(1, l_max):
        h[ll + 1] = (2.0 * ll + 1.0) / x * h[ll] - h[ll - 1]
    return h


def riccati_h1_deriv(l: int, x):
    """d/dx [x h_l^(1)(x)] = x h_{l-1}^(1)(x) - l h_l^(1)(x), for l >= 1.

    This is the dimensionless radial derivative; a caller differentiating in
    r multiplies by the wavenumber k.
    """
    if l < 1:
        raise ValueError(f"degree must be >= 1, got l={l}")
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("argument must be > 0")
    h = _hankel1_upto(l, x)
    out = x * h[l - 1] - l * h[l]
    return out if out.ndim else complex(out)
