"""Multipole coefficient sets, outgoing-field synthesis on a sphere, far-field
patterns, the electric/magnetic duality transform, and radiated power.

The field of a coefficient set {a_E(l,m), a_M(l,m)} at radius r (exterior to
all sources) is, with x = kr, h_l = h_l^(1)(x) and D_l = d/dx [x h_l(x)]:

    E = Z0 sum_lm [ a_E sqrt(l(l+1))/x h_l Y_lm r^
                  + a_E (i/x) D_l Z_lm
                  + a_M h_l X_lm ]
    H =    sum_lm [ -a_M sqrt(l(l+1))/x h_l Y_lm r^
                  + a_E h_l X_lm
                  - a_M (i/x) D_l Z_lm ]

Fields are exposed as (E, H) with H = B / mu0; the magnetic coefficient
a_M multiplies H the way a_E multiplies E / Z0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Tuple

import numpy as np

from .harmonics import FieldSamples, GridResolutionWarning, SphereGrid, fixed_order_sum
from .specfun import ModeIndex, _hankel1_upto, legendre_theta_kernel

SPEED_OF_LIGHT = 299792458.0  # m/s
VACUUM_IMPEDANCE = 376.730313668  # ohm
VACUUM_PERMEABILITY = 1.25663706212e-6  # H/m


def mode_count(l_max: int) -> int:
    """Number of radiating modes with 1 <= l <= l_max: l_max (l_max + 2)."""
    return l_max * (l_max + 2)


def mode_slot(l: int, m: int) -> int:
    """Dense storage index of mode (l, m): l ascending, m ascending within l."""
    return l * l + l + m - 1


def modes_upto(l_max: int) -> list[ModeIndex]:
    """All modes in storage order."""
    return [ModeIndex(l, m) for l in range(1, l_max + 1) for m in range(-l, l + 1)]


@dataclass(frozen=True)
class Medium:
    """Lossless homogeneous medium: wavenumber k, wave impedance Z0,
    permeability mu0 (the H = B/mu0 conversion factor)."""

    k: float
    z0: float = VACUUM_IMPEDANCE
    mu0: float = VACUUM_PERMEABILITY

    def __post_init__(self):
        if self.k <= 0.0:
            raise ValueError(f"wavenumber must be > 0, got {self.k}")
        if self.z0 <= 0.0:
            raise ValueError(f"impedance must be > 0, got {self.z0}")

    @classmethod
    def free_space(cls, frequency_hz: float) -> "Medium":
        if frequency_hz <= 0.0:
            raise ValueError(f"frequency must be > 0, got {frequency_hz}")
        return cls(k=2.0 * np.pi * frequency_hz / SPEED_OF_LIGHT)

    @property
    def wavelength(self) -> float:
        return 2.0 * np.pi / self.k


@dataclass(eq=False)
class CoefficientSet:
    """Complex multipole coefficients a_E(l,m), a_M(l,m) for 1 <= l <= l_max,
    stored densely (l ascending, m ascending) and immutable after construction."""

    l_max: int
    medium: Medium
    a_e: np.ndarray
    a_m: np.ndarray

    def __post_init__(self):
        n = mode_count(self.l_max)
        a_e = np.array(self.a_e, dtype=complex)
        a_m = np.array(self.a_m, dtype=complex)
        if a_e.shape != (n,) or a_m.shape != (n,):
            raise ValueError(f"coefficient arrays must have shape ({n},)")
        if not (np.isfinite(a_e.view(float)).all() and np.isfinite(a_m.view(float)).all()):
            raise ValueError("coefficients must be finite")
        a_e.flags.writeable = False
        a_m.flags.writeable = False
        object.__setattr__(self, "a_e", a_e)
        object.__setattr__(self, "a_m", a_m)

    @classmethod
    def zeros(cls, l_max: int, medium: Medium) -> "CoefficientSet":
        n = mode_count(l_max)
        return cls(l_max, medium, np.zeros(n, complex), np.zeros(n, complex))

    @classmethod
    def from_modes(cls, l_max: int, medium: Medium,
                   electric: Mapping[Tuple[int, int], complex] = (),
                   magnetic: Mapping[Tuple[int, int], complex] = ()) -> "CoefficientSet":
        """Build a set from sparse {(l, m): value} mappings."""
        a_e = np.zeros(mode_count(l_max), complex)
        a_m = np.zeros(mode_count(l_max), complex)
        for target, entries in ((a_e, electric), (a_m, magnetic)):
            for (l, m), value in dict(entries).items():
                ModeIndex(l, m)
                if l > l_max:
                    raise ValueError(f"mode (l={l}, m={m}) exceeds l_max={l_max}")
                target[mode_slot(l, m)] = value
        return cls(l_max, medium, a_e, a_m)

    def electric(self, l: int, m: int) -> complex:
        return complex(self.a_e[mode_slot(l, m)])

    def magnetic(self, l: int, m: int) -> complex:
        return complex(self.a_m[mode_slot(l, m)])

    def modes(self) -> Iterable[ModeIndex]:
        return modes_upto(self.l_max)

    def __add__(self, other: "CoefficientSet") -> "CoefficientSet":
        if other.l_max != self.l_max or other.medium != self.medium:
            raise ValueError("coefficient sets must share l_max and medium")
        return CoefficientSet(self.l_max, self.medium, self.a_e + other.a_e, self.a_m + other.a_m)

    def __neg__(self) -> "CoefficientSet":
        return CoefficientSet(self.l_max, self.medium, -self.a_e, -self.a_m)

    def __mul__(self, scalar: complex) -> "CoefficientSet":
        return CoefficientSet(self.l_max, self.medium, scalar * self.a_e, scalar * self.a_m)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return float(max(np.abs(self.a_e).max(), np.abs(self.a_m).max()))


@dataclass(eq=False)
class FarFieldPattern:
    """kr -> infinity field pattern with the common e^{ikr}/(kr) factor
    stripped: complex E_theta, E_phi per direction, no radial component.

    The far-zone magnetic field is the enforced identity H = (1/Z0) r^ x E,
    exposed through h_theta / h_phi rather than stored.
    """

    directions: np.ndarray
    e_theta: np.ndarray
    e_phi: np.ndarray
    z0: float

    @property
    def h_theta(self) -> np.ndarray:
        return -self.e_phi / self.z0

    @property
    def h_phi(self) -> np.ndarray:
        return self.e_theta / self.z0


def _radial_factors(l_max: int, x: float):
    """(h_l, D_l = d/dx[x h_l]) at x = kr for l = 1..l_max, indexed by l - 1."""
    h = _hankel1_upto(l_max, np.asarray(x, float))
    ls = np.arange(1, l_max + 1)
    d = x * h[ls - 1] - ls * h[ls]
    return h[1:], d


def synthesize(coeffs: CoefficientSet, r: float, grid: SphereGrid):
    """Evaluate (E, H) of a coefficient set on a sphere grid at radius r.

    r may differ from grid.r0; the returned samples sit on a copy of the grid
    re-labeled with radius r. Valid only in the source-free exterior (caller's
    responsibility).
    """
    if r <= 0.0:
        raise ValueError(f"radius must be > 0, got {r}")
    if grid.l_max < coeffs.l_max:
        warnings.warn(
            f"synthesizing degree l_max={coeffs.l_max} on a grid declared exact "
            f"only to l_max={grid.l_max}; downstream projections may alias",
            GridResolutionWarning, stacklevel=2)
    grid_at = grid if r == grid.r0 else grid.with_radius(r)
    med = coeffs.medium
    x = med.k * r
    h, d = _radial_factors(coeffs.l_max, x)
    e = np.zeros((grid.n_nodes, 3), complex)
    hfield = np.zeros((grid.n_nodes, 3), complex)
    for mode in coeffs.modes():
        l = mode.l
        a_e = coeffs.a_e[mode_slot(l, mode.m)]
        a_m = coeffs.a_m[mode_slot(l, mode.m)]
        if a_e == 0 and a_m == 0:
            continue
        y, x_theta, x_phi, z_theta, z_phi = grid_at.mode_basis(mode)
        f_rad = np.sqrt(l * (l + 1.0)) * h[l - 1] / x
        f_z = 1j * d[l - 1] / x
        f_x = h[l - 1]
        e[:, 0] += med.z0 * a_e * f_rad * y
        e[:, 1] += med.z0 * (a_e * f_z * z_theta + a_m * f_x * x_theta)
        e[:, 2] += med.z0 * (a_e * f_z * z_phi + a_m * f_x * x_phi)
        hfield[:, 0] += -a_m * f_rad * y
        hfield[:, 1] += a_e * f_x * x_theta - a_m * f_z * z_theta
        hfield[:, 2] += a_e * f_x * x_phi - a_m * f_z * z_phi
    return (FieldSamples(grid_at, "E", e, med), FieldSamples(grid_at, "H", hfield, med))


def far_field(coeffs: CoefficientSet, directions) -> FarFieldPattern:
    """Radiation pattern in the kr -> infinity limit.

    Uses h_l^(1)(x) -> (-i)^{l+1} e^{ix}/x, which turns the expansion into

        E_pattern = Z0 sum_lm (-i)^{l+1} [ a_M X_lm - a_E Z_lm ]

    with the e^{ikr}/(kr) factor stripped; the radial component vanishes
    identically. The asymptotic constant is pinned by the large-radius
    synthesis test rather than taken on faith.
    """
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    if directions.shape[-1] != 2:
        raise ValueError("directions must be (theta, phi) pairs")
    theta = directions[:, 0]
    phi = directions[:, 1]
    med = coeffs.medium
    e_theta = np.zeros(directions.shape[0], complex)
    e_phi = np.zeros(directions.shape[0], complex)
    for mode in coeffs.modes():
        l = mode.l
        a_e = coeffs.a_e[mode_slot(l, mode.m)]
        a_m = coeffs.a_m[mode_slot(l, mode.m)]
        if a_e == 0 and a_m == 0:
            continue
        n, tau, pi_ = legendre_theta_kernel(l, mode.m, theta)
        root = np.sqrt(l * (l + 1.0))
        phase = np.exp(1j * mode.m * phi)
        x_theta = pi_ / root * phase
        x_phi = 1j * tau / root * phase
        z_theta, z_phi = -x_phi, x_theta
        c = med.z0 * (-1j) ** (l + 1)
        e_theta += c * (a_m * x_theta - a_e * z_theta)
        e_phi += c * (a_m * x_phi - a_e * z_phi)
    return FarFieldPattern(directions, e_theta, e_phi, med.z0)


def duality(coeffs: CoefficientSet) -> CoefficientSet:
    """Coefficients of the dual field (E', H') = (-Z0 H, E / Z0).

    Matching the expansion term by term gives the swap
    (a_E, a_M) -> (a_M, -a_E). The field-level map squares to -1 (it is a
    quarter turn in (E, H) space), so applying duality twice negates the
    coefficients and the fields; four applications restore them.
    """
    return CoefficientSet(coeffs.l_max, coeffs.medium, coeffs.a_m.copy(), -coeffs.a_e.copy())


def radiated_power(coeffs: CoefficientSet, r: float, grid: SphereGrid) -> float:
    """Outgoing power through the sphere of radius r: the quadrature of
    (1/2) Re(E x conj(H)) . r^ times r^2. Radius-independent in a lossless
    exterior."""
    e, h = synthesize(coeffs, r, grid)
    flux = 0.5 * np.real(e.values[:, 1] * np.conj(h.values[:, 2])
                         - e.values[:, 2] * np.conj(h.values[:, 1]))
    return float(fixed_order_sum(grid.weights * flux)) * r * r


def coefficient_deviation(c1: CoefficientSet, c2: CoefficientSet,
                          zero_floor: float = 1e-12) -> float:
    """Max over modes of |a1 - a2| / max(|a1|, |a2|), over both families.

    Mode pairs where both magnitudes sit below zero_floor times the joint
    scale count as agreeing zeros: roundoff residue on a mode absent from
    both sets is not a deviation. A mode present in one set and absent from
    the other still registers in full.
    """
    if c1.l_max != c2.l_max:
        raise ValueError("coefficient sets must share l_max")
    scale = max(c1.max_abs(), c2.max_abs())
    if scale == 0.0:
        return 0.0
    worst = 0.0
    for x1, x2 in ((c1.a_e, c2.a_e), (c1.a_m, c2.a_m)):
        diff = np.abs(x1 - x2)
        denom = np.maximum(np.abs(x1), np.abs(x2))
        live = denom > zero_floor * scale
        if live.any():
            worst = max(worst, float((diff[live] / denom[live]).max()))
    return worst
