"""Staggered wave-tank grid and the truncated Gaussian solid.

Scalars (surface elevation, fluid height, bottom) live on the grid nodes,
velocities live on the cell midpoints.  The bottom is always evaluated
analytically at the translated position, never interpolated from a sampled
initial shape.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import SolidTouchedBoundary

MIN_NODES = 8


@dataclass(frozen=True)
class StaggeredGrid:
    """Uniform staggered grid on ``[0, domain_length]``.

    Attributes
    ----------
    domain_length : float
        Tank width (nondimensional).
    dx : float
        Mesh size.
    n_nodes : int
        Number of grid nodes; there are ``n_nodes - 1`` midpoints.
    node_coords, mid_coords : ndarray
        Node positions ``i*dx`` and midpoint positions ``i*dx + dx/2``.
    """

    domain_length: float
    dx: float
    n_nodes: int
    node_coords: np.ndarray = field(repr=False)
    mid_coords: np.ndarray = field(repr=False)

    @property
    def n_mids(self):
        return self.n_nodes - 1


def build_grid(domain_length, dx):
    """Build the staggered grid for a tank of width `domain_length`.

    Raises
    ------
    ValueError
        For non-positive inputs, a width that is not an integer multiple of
        `dx`, or fewer than 8 nodes.
    """
    domain_length = float(domain_length)
    dx = float(dx)
    if not (domain_length > 0 and dx > 0):
        raise ValueError("domain_length and dx must be positive")
    ratio = domain_length / dx
    n_cells = int(round(ratio))
    if abs(ratio - n_cells) > 1e-8 * max(1.0, ratio):
        raise ValueError(
            f"domain_length={domain_length} is not a multiple of dx={dx}")
    n_nodes = n_cells + 1
    if n_nodes < MIN_NODES:
        raise ValueError(f"grid needs at least {MIN_NODES} nodes, got {n_nodes}")
    nodes = dx * np.arange(n_nodes, dtype=float)
    mids = nodes[:-1] + dx / 2
    nodes.flags.writeable = False
    mids.flags.writeable = False
    return StaggeredGrid(domain_length, dx, n_nodes, nodes, mids)


@dataclass(frozen=True)
class Bathymetry:
    """Truncated Gaussian bump ``amplitude * exp(-10 ((x - center)/wavelength)^2)``.

    The profile is cut to zero wherever it falls to `truncation_tol` or
    below, so it carries a jump of size `truncation_tol` at the edges of
    `support`.  `amplitude` is the nondimensional peak height (beta).
    """

    amplitude: float
    wavelength: float
    center: float
    truncation_tol: float
    support: tuple

    @property
    def half_width(self):
        return 0.5 * (self.support[1] - self.support[0])

    @property
    def support_length(self):
        return self.support[1] - self.support[0]

    def _shape(self, x, X):
        s = np.asarray(x, dtype=float) - self.center - X
        a = 10.0 / self.wavelength ** 2
        g = self.amplitude * np.exp(-a * s * s)
        inside = np.abs(s) < self.half_width
        return s, a, np.where(inside, g, 0.0)

    def value(self, x, X=0.0):
        return self._shape(x, X)[2]

    def d1(self, x, X=0.0):
        s, a, g = self._shape(x, X)
        return -2.0 * a * s * g

    def d2(self, x, X=0.0):
        s, a, g = self._shape(x, X)
        return (4.0 * a * a * s * s - 2.0 * a) * g

    def d3(self, x, X=0.0):
        s, a, g = self._shape(x, X)
        return (12.0 * a * a * s - 8.0 * a ** 3 * s ** 3) * g


def gaussian_bottom(beta, L_shape=1.0, center=0.0, truncation_tol=1e-4):
    """Truncated Gaussian solid of peak height `beta` centred at `center`.

    The support is the open interval where the untruncated Gaussian exceeds
    `truncation_tol`, i.e. ``|x - center| < L_shape*sqrt(ln(beta/tol)/10)``.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    if not L_shape > 0:
        raise ValueError("L_shape must be positive")
    if not 0 < truncation_tol < beta:
        raise ValueError("truncation_tol must lie in (0, beta)")
    half = L_shape * np.sqrt(np.log(beta / truncation_tol) / 10.0)
    return Bathymetry(float(beta), float(L_shape), float(center),
                      float(truncation_tol),
                      (float(center - half), float(center + half)))


@dataclass(frozen=True)
class BottomFields:
    """Bottom profile and derivatives sampled on a grid at displacement X.

    Values are in bottom-height units (peak ``beta``).
    """

    X: float
    b_nodes: np.ndarray
    b_mids: np.ndarray
    db_nodes: np.ndarray
    d2b_mids: np.ndarray
    d3b_mids: np.ndarray

    @classmethod
    def flat(cls, grid):
        zn = np.zeros(grid.n_nodes)
        zm = np.zeros(grid.n_mids)
        return cls(0.0, zn, zm, zn, zm, zm)


def translated_support(bathy, X):
    return bathy.support[0] + X, bathy.support[1] + X


def check_inside(bathy, X, grid):
    lo, hi = translated_support(bathy, X)
    if not np.isfinite(X) or lo <= 0.0 or hi >= grid.domain_length:
        raise SolidTouchedBoundary(
            f"solid support [{lo:.6g}, {hi:.6g}] reached the tank ends "
            f"[0, {grid.domain_length:.6g}]")


def sample_bottom(bathy, X, grid):
    """Evaluate the bottom translated by `X` on nodes and midpoints.

    Raises
    ------
    SolidTouchedBoundary
        If the translated support reaches a tank end.
    """
    check_inside(bathy, X, grid)
    xn, xm = grid.node_coords, grid.mid_coords
    return BottomFields(
        X=float(X),
        b_nodes=bathy.value(xn, X),
        b_mids=bathy.value(xm, X),
        db_nodes=bathy.d1(xn, X),
        d2b_mids=bathy.d2(xm, X),
        d3b_mids=bathy.d3(xm, X),
    )


def support_bracket(bathy, X, grid):
    """Node indices ``(j, k)`` bracketing the translated support, rounded outward."""
    lo, hi = translated_support(bathy, X)
    j = max(int(np.floor(lo / grid.dx)), 0)
    k = min(int(np.ceil(hi / grid.dx)), grid.n_nodes - 1)
    return j, k
