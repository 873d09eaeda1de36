"""Shared test utilities: seeded random coefficient sets and error metrics."""

import numpy as np

from spheremodes import CoefficientSet, mode_count, mode_slot, modes_upto
from spheremodes.specfun import _hankel1_upto


def random_coefficients(l_max, medium, rng, balance_radius=None):
    """Random complex coefficient set, magnitudes U[0.5, 1.5], uniform phases.

    With balance_radius, per-degree magnitudes are scaled by the inverse of
    that degree's divisor growth at k r0, so every mode contributes comparably
    to the surface field there. Without it, deeply evanescent degrees dominate
    the samples by |h_l(kr0)| / |h_1(kr0)| (1e12 at l = 10, kr0 = 0.5), and the
    low-degree information falls below float64 resolution -- a dynamic-range
    fact, not an algorithm property.
    """
    n = mode_count(l_max)
    a = rng.uniform(0.5, 1.5, size=(2, n)) * np.exp(2j * np.pi * rng.random((2, n)))
    if balance_radius is not None:
        x0 = medium.k * balance_radius
        h = _hankel1_upto(l_max, np.asarray(x0, float))
        ls = np.arange(1, l_max + 1)
        d = x0 * h[ls - 1] - ls * h[ls]
        div = np.maximum(np.abs(h[1:]), np.abs(d))
        scale = np.minimum(1.0, div[0] / div)
        for mode in modes_upto(l_max):
            a[:, mode_slot(mode.l, mode.m)] *= scale[mode.l - 1]
    return CoefficientSet(l_max, medium, a[0], a[1])


def per_coefficient_error(got, want):
    """Max over all modes and both families of |got - want| / |want|."""
    worst = 0.0
    for g, w in ((got.a_e, want.a_e), (got.a_m, want.a_m)):
        mags = np.abs(w)
        live = mags > 0.0
        if live.any():
            worst = max(worst, float((np.abs(g - w)[live] / mags[live]).max()))
        if (~live).any():
            scale = np.abs(w).max() if np.abs(w).max() > 0 else 1.0
            worst = max(worst, float(np.abs(g[~live]).max() / scale))
    return worst
