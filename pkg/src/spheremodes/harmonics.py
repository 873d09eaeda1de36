"""Vector spherical harmonics, the quadrature sphere grid, and projection
integrals of sampled fields against conjugated harmonics.

The transverse harmonics used throughout are

    X_lm = (1/sqrt(l(l+1))) (1/i) (-dY/dtheta phi^ + (1/sin theta) dY/dphi theta^)
    Z_lm = r^ x X_lm

and Y_lm r^ is the radial one. Projections are plain quadrature sums
Sum_i w_i conj(V(theta_i, phi_i)) . F_i with a fixed-order pairwise reduction,
so results are deterministic no matter how callers parallelize over nodes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .specfun import ModeIndex, legendre_theta_kernel

PROJECTION_KINDS = ("X", "Z", "Yr")


class GridResolutionWarning(UserWarning):
    """A quadrature grid's declared exactness is below what an operation needs."""


REDUCTION_BLOCK = 64


def fixed_order_sum(values: np.ndarray):
    """Deterministic reduction of a 1-d array.

    The array is cut into fixed 64-element blocks; each block's partial is
    np.sum over that contiguous block, and the partials are combined along a
    binary tree that depends only on the array length. A parallel caller that
    computes block partials the same way gets a bit-identical result no
    matter in which order its workers finish.
    """
    values = np.asarray(values)
    n = values.shape[0]
    if n == 0:
        return values.dtype.type(0)
    n_full = (n // REDUCTION_BLOCK) * REDUCTION_BLOCK
    parts = []
    if n_full:
        parts.append(values[:n_full].reshape(-1, REDUCTION_BLOCK).sum(axis=1))
    if n_full < n:
        parts.append(np.atleast_1d(values[n_full:].sum()))
    partials = np.concatenate(parts) if len(parts) > 1 else parts[0]
    while partials.shape[0] > 1:
        even = partials[0:partials.shape[0] - partials.shape[0] % 2]
        combined = even[0::2] + even[1::2]
        if partials.shape[0] % 2:
            combined = np.concatenate([combined, partials[-1:]])
        partials = combined
    return partials[0]


@dataclass(eq=False)
class SphereGrid:
    """Product quadrature grid on a sphere: Gauss-Legendre in cos(theta),
    uniform (periodic trapezoid) in phi.

    ``l_max`` is the declared exactness degree: products of two harmonics of
    degree up to l_max each integrate exactly (to roundoff). Nodes are stored
    theta-major, phi-minor; Gauss-Legendre nodes are strictly interior to
    (0, pi), so no node ever sits on a pole. Immutable after construction.
    """

    r0: float
    l_max: int
    n_theta: int
    n_phi: int
    theta_nodes: np.ndarray
    phi_nodes: np.ndarray
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    _basis_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n_nodes(self) -> int:
        return self.n_theta * self.n_phi

    @property
    def nodes(self):
        """List of (theta_i, phi_j) pairs in storage order."""
        return list(zip(self.theta.tolist(), self.phi.tolist()))

    def with_radius(self, r0: float) -> "SphereGrid":
        """Same angular nodes and weights on a sphere of a different radius."""
        if r0 <= 0.0:
            raise ValueError(f"radius must be > 0, got {r0}")
        return SphereGrid(r0, self.l_max, self.n_theta, self.n_phi,
                          self.theta_nodes, self.phi_nodes,
                          self.theta, self.phi, self.weights)

    def same_geometry(self, other: "SphereGrid") -> bool:
        return (self.n_theta == other.n_theta and self.n_phi == other.n_phi
                and self.r0 == other.r0 and self.l_max == other.l_max)

    def mode_basis(self, mode: ModeIndex):
        """Cached per-node arrays (Y, X_theta, X_phi, Z_theta, Z_phi) for one mode."""
        key = (mode.l, mode.m)
        hit = self._basis_cache.get(key)
        if hit is None:
            n, tau, pi_ = legendre_theta_kernel(mode.l, mode.m, self.theta)
            phase = np.exp(1j * mode.m * self.phi)
            root = np.sqrt(mode.l * (mode.l + 1.0))
            y = n * phase
            x_theta = pi_ / root * phase
            x_phi = 1j * tau / root * phase
            hit = (y, x_theta, x_phi, -x_phi, x_theta)
            self._basis_cache[key] = hit
        return hit

    def projection_kernel(self, mode: ModeIndex):
        """Cached weighted conjugate basis (w conj(Y), w conj(X_t), w conj(X_p),
        w conj(Z_t), w conj(Z_p)) so a projection is two multiplies and a
        reduction."""
        key = (mode.l, mode.m, "proj")
        hit = self._basis_cache.get(key)
        if hit is None:
            y, x_theta, x_phi, z_theta, z_phi = self.mode_basis(mode)
            w = self.weights
            hit = tuple(w * np.conj(v) for v in (y, x_theta, x_phi, z_theta, z_phi))
            self._basis_cache[key] = hit
        return hit


def make_grid(l_max: int, r0: float, n_theta: Optional[int] = None,
              n_phi: Optional[int] = None) -> SphereGrid:
    """Build a sphere grid whose quadrature integrates Y_{l'm'} conj(Y_{lm})
    exactly for all l, l' <= l_max.

    Defaults: n_theta = l_max + 1 (Gauss-Legendre exactness 2 l_max + 1 in
    cos(theta)) and n_phi = 2 l_max + 2 (even, and the periodic trapezoid rule
    is exact for e^{i mu phi} with |mu| <= 2 l_max + 1).
    """
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    if r0 <= 0.0:
        raise ValueError(f"radius must be > 0, got {r0}")
    if n_theta is None:
        n_theta = l_max + 1
    if n_phi is None:
        n_phi = 2 * l_max + 2
    if n_theta < l_max + 1:
        raise ValueError(f"n_theta={n_theta} cannot resolve degree {l_max} (need >= {l_max + 1})")
    if n_phi < 2 * l_max + 1:
        raise ValueError(f"n_phi={n_phi} cannot resolve order {l_max} (need >= {2 * l_max + 1})")
    x, w = np.polynomial.legendre.leggauss(n_theta)
    # ascending theta = descending x
    theta_nodes = np.arccos(x[::-1])
    w_theta = w[::-1]
    phi_nodes = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    theta_flat = np.repeat(theta_nodes, n_phi)
    phi_flat = np.tile(phi_nodes, n_theta)
    weights = np.repeat(w_theta * (2.0 * np.pi / n_phi), n_phi)
    for arr in (theta_nodes, phi_nodes, theta_flat, phi_flat, weights):
        arr.flags.writeable = False
    return SphereGrid(float(r0), int(l_max), int(n_theta), int(n_phi),
                      theta_nodes, phi_nodes, theta_flat, phi_flat, weights)


@dataclass(frozen=True)
class TangentialVector:
    """A purely transverse vector in the spherical basis: radial part is zero
    by construction."""

    v_theta: complex
    v_phi: complex


@dataclass(eq=False)
class FieldSamples:
    """Complex field samples on a sphere grid, one (r^, theta^, phi^) 3-vector
    per node, stored as a (n_nodes, 3) array in grid node order.

    ``medium`` records the (k, Z0) the field lives in; coefficient extraction
    reads it. Samples must be finite everywhere.
    """

    grid: SphereGrid
    field_kind: str
    values: np.ndarray
    medium: Optional["Medium"] = None  # noqa: F821  (duck-typed; defined in multipole)

    def __post_init__(self):
        if self.field_kind not in ("E", "H"):
            raise ValueError(f"field_kind must be 'E' or 'H', got {self.field_kind!r}")
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.n_nodes, 3):
            raise ValueError(f"values must have shape ({self.grid.n_nodes}, 3), got {values.shape}")
        if not np.isfinite(values.view(float)).all():
            raise ValueError("field samples must be finite everywhere")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def radial(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def theta(self) -> np.ndarray:
        return self.values[:, 1]

    @property
    def phi(self) -> np.ndarray:
        return self.values[:, 2]


def vec_X(mode: ModeIndex, theta, phi) -> TangentialVector:
    """Transverse vector harmonic X_lm at (theta, phi); rejects l = 0 via ModeIndex."""
    n, tau, pi_ = legendre_theta_kernel(mode.l, mode.m, theta)
    root = np.sqrt(mode.l * (mode.l + 1.0))
    phase = np.exp(1j * np.asarray(mode.m * np.asarray(phi, dtype=float)))
    return TangentialVector(pi_ / root * phase, 1j * tau / root * phase)


def vec_Z(mode: ModeIndex, theta, phi) -> TangentialVector:
    """Z_lm = r^ x X_lm, i.e. (Z_theta, Z_phi) = (-X_phi, X_theta)."""
    x = vec_X(mode, theta, phi)
    return TangentialVector(-x.v_phi, x.v_theta)


def project(samples: FieldSamples, kind: str, mode: ModeIndex) -> complex:
    """Quadrature approximation of integral conj(V_lm) . F dOmega.

    kind selects V: 'X', 'Z', or 'Yr' (= Y_lm r^). Only the components the
    chosen harmonic has are read: 'Yr' touches the radial column alone, 'X'
    and 'Z' the tangential columns alone. Warns (GridResolutionWarning) when
    the mode degree exceeds the grid's declared exactness.
    """
    if kind not in PROJECTION_KINDS:
        raise ValueError(f"kind must be one of {PROJECTION_KINDS}, got {kind!r}")
    grid = samples.grid
    if mode.l > grid.l_max:
        warnings.warn(
            f"projection of degree l={mode.l} on a grid declared exact only to "
            f"l_max={grid.l_max}; the quadrature may alias",
            GridResolutionWarning, stacklevel=2)
    wy, wxt, wxp, wzt, wzp = grid.projection_kernel(mode)
    if kind == "Yr":
        integrand = wy * samples.values[:, 0]
    elif kind == "X":
        integrand = wxt * samples.values[:, 1] + wxp * samples.values[:, 2]
    else:
        integrand = wzt * samples.values[:, 1] + wzp * samples.values[:, 2]
    return complex(fixed_order_sum(integrand))
