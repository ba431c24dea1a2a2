"""Right-hand sides of the coupled Boussinesq system and fluid diagnostics.

The momentum unknown that is time-stepped is ``ubar = vbar - (mu/3) vbar_xx``;
``vbar`` is recovered from it with a banded Cholesky solve.  Bottom fields
enter in bottom-height units (peak ``beta``), so ``beta * b`` in the model
equations is simply the sampled bottom and ``b`` is that divided by beta.
"""
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded, solve_banded

from . import stencils
from .errors import NonPhysicalState

H_MIN_DEFAULT = 1e-3


@dataclass(frozen=True)
class PhysicalParams:
    """Nondimensional model parameters.

    Attributes
    ----------
    mu, eps, beta : float
        Shallowness, nonlinearity and bottom parameters.
    c_fric : float
        Friction coefficient.
    m_tilde : float
        Reduced solid mass ``M / (rho L a_bott)``.
    delta : float
        Regularisation of the dynamic friction law.
    h0_dim, g_dim : float
        Base depth [m] and gravity [m/s^2]; used for the atmospheric
        pressure factor and the CFL number.
    c_solid : float or None
        Solid constant; filled in by :func:`boussolid.solid.compute_c_solid`.
    h_min : float
        Lower bound on the fluid height below which a run aborts.
    """

    mu: float
    eps: float
    beta: float
    c_fric: float = 0.0
    m_tilde: float = 2.0 / 3.0
    delta: float = 1e-10
    h0_dim: float = 20.0
    g_dim: float = 9.81
    c_solid: float = None
    h_min: float = H_MIN_DEFAULT

    def __post_init__(self):
        if not 0 < self.mu <= 1:
            raise ValueError(f"mu must lie in (0, 1], got {self.mu}")
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.c_fric < 0:
            raise ValueError("c_fric must be non-negative")
        if not (self.m_tilde > 0 and self.delta > 0):
            raise ValueError("m_tilde and delta must be positive")

    @property
    def atmospheric_factor(self):
        """``P_atm/(rho g H0) + 1``, taking the atmosphere as a 10 m water column."""
        return 10.0 / self.h0_dim + 1.0

    def with_c_solid(self, c_solid):
        return replace(self, c_solid=float(c_solid))


@dataclass
class FluidState:
    """Surface elevation on nodes, velocity and its Helmholtz image on midpoints."""

    zeta: np.ndarray
    vbar: np.ndarray
    ubar: np.ndarray

    def copy(self):
        return FluidState(self.zeta.copy(), self.vbar.copy(), self.ubar.copy())


def fluid_height(zeta, b, params, h_min=None):
    """Nondimensional fluid height ``1 + eps*zeta - beta*b`` on the nodes.

    `b` is the bottom normalised to unit peak.

    Raises
    ------
    NonPhysicalState
        If the minimum height is at or below `h_min` (defaults to
        ``params.h_min``).
    """
    h = 1.0 + params.eps * np.asarray(zeta) - params.beta * np.asarray(b)
    h_min = params.h_min if h_min is None else h_min
    hmin = float(h.min())
    if not hmin > h_min:
        raise NonPhysicalState(f"fluid height {hmin:.4g} <= h_min={h_min:g}")
    return h


def helmholtz_apply(v, mu, dx):
    """``v - (mu/3) v_xx`` on the midpoints with the Dirichlet wall closure."""
    v = np.asarray(v, dtype=float)
    if mu == 0:
        return v.copy()
    return v - (mu / 3.0) * stencils.d2_cross_parity(v, dx, "mid", "odd")


def _helmholtz_bands(n, mu, dx):
    c = (mu / 3.0) / (12.0 * dx * dx)
    ab = np.zeros((3, n))
    ab[2, :] = 1.0 + 30.0 * c
    ab[1, 1:] = -16.0 * c
    ab[0, 2:] = c
    # odd ghosts fold back onto the first/last two unknowns
    ab[2, 0] = ab[2, -1] = 1.0 + 46.0 * c
    ab[1, 1] = ab[1, -1] = -17.0 * c
    return ab


@lru_cache(maxsize=16)
def _helmholtz_factor(n, mu, dx):
    ab = _helmholtz_bands(n, mu, dx)
    try:
        return "chol", cholesky_banded(ab)
    except np.linalg.LinAlgError:
        full = np.zeros((5, n))
        full[0:3] = ab
        full[3, :-1] = ab[1, 1:]
        full[4, :-2] = ab[0, 2:]
        return "lu", full


def helmholtz_solve(u, mu, dx):
    """Recover ``v`` from ``u = v - (mu/3) v_xx`` by a pentadiagonal solve."""
    u = np.asarray(u, dtype=float)
    if mu == 0:
        return u.copy()
    kind, fac = _helmholtz_factor(u.size, float(mu), float(dx))
    if kind == "chol":
        v = cho_solve_banded((fac, False), u)
    else:
        v = solve_banded((2, 2), fac, u)
    assert np.all(np.isfinite(v)), "singular Helmholtz system"
    return v


def rhs_zeta(state, bottom, xdot, params, dx):
    """Mass equation right-hand side ``-(h vbar)_x - (beta/eps) b_x(x-X) Xdot`` on nodes."""
    b = bottom.b_nodes / params.beta
    h = fluid_height(state.zeta, b, params)
    flux = stencils.interp_node_to_mid(h, "even") * state.vbar
    e = -stencils.d1_cross_parity(flux, dx, "mid", "odd")
    if xdot != 0.0:
        e -= (xdot / params.eps) * bottom.db_nodes
    return e


def rhs_momentum(state, bottom, xdot, xddot, params, dx):
    """Momentum right-hand side on the midpoints.

    ``-zeta_x - (eps/2)(vbar^2)_x - (mu beta/2eps) b_xxx Xdot^2 + (mu beta/2eps) b_xx Xddot``
    """
    f = -stencils.d1_cross_parity(state.zeta, dx, "node", "even")
    f -= 0.5 * params.eps * stencils.d1_same_parity(
        state.vbar * state.vbar, dx, "mid", "even")
    k = 0.5 * params.mu / params.eps
    if xdot != 0.0:
        f -= (k * xdot * xdot) * bottom.d3b_mids
    if xddot != 0.0:
        f += (k * xddot) * bottom.d2b_mids
    return f


def _whole_tank(f_nodes, f_mids, dx):
    return stencils.simpson_support(f_nodes, f_mids, 0, len(f_nodes) - 1, dx)


def energy(state, b, xdot, params, dx):
    """Wave-structure energy.

    ``1/2 int zeta^2 + 1/2 int h vbar^2 + 1/2 int (mu/3) h vbar_x^2 + Xdot^2/(2 eps)``,
    each integral by Simpson over the whole tank.  `b` is the normalised
    bottom on the nodes.
    """
    zeta = np.asarray(state.zeta)
    h_n = 1.0 + params.eps * zeta - params.beta * np.asarray(b)
    h_m = stencils.interp_node_to_mid(h_n, "even")
    zeta_m = stencils.interp_node_to_mid(zeta, "even")
    v_m = state.vbar
    v_n = stencils.interp_mid_to_node(v_m, "odd")
    dv_m = stencils.d1_same_parity(v_m, dx, "mid", "odd")
    dv_n = stencils.d1_cross_parity(v_m, dx, "mid", "odd")
    integrand_n = zeta ** 2 + h_n * v_n ** 2 + (params.mu / 3.0) * h_n * dv_n ** 2
    integrand_m = zeta_m ** 2 + h_m * v_m ** 2 + (params.mu / 3.0) * h_m * dv_m ** 2
    return 0.5 * _whole_tank(integrand_n, integrand_m, dx) + xdot ** 2 / (2.0 * params.eps)


def mass(zeta, grid):
    """Simpson integral of the surface elevation over the tank."""
    zeta = np.asarray(zeta, dtype=float)
    return _whole_tank(zeta, stencils.interp_node_to_mid(zeta, "even"), grid.dx)
