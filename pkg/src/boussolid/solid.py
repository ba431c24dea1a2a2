"""Solid equation: integral coefficients and the three-level displacement update.

The solid obeys ``Xddot = -C Xdot/(|Xdot| + delta) + Cbar`` where ``C`` is the
friction coefficient times the normal force and ``Cbar`` the horizontal
pressure force.  In time the velocity and acceleration use central
differences and ``|Xdot|`` a one-sided second-order difference, which gives an
explicit formula for the next displacement.
"""
from dataclasses import dataclass

import numpy as np

from . import stencils
from .errors import LiftOff
from .grid import check_inside, support_bracket


@dataclass
class SolidState:
    """Displacement history and the central kinematics at the current level."""

    x_curr: float = 0.0
    x_prev: float = 0.0
    x_prev2: float = 0.0
    v_central: float = 0.0
    a_central: float = 0.0

    def advance(self, x_next, dt):
        """Shift the history by one level after computing the kinematics."""
        v, a, _ = solid_kinematics(self, x_next, dt)
        self.v_central, self.a_central = v, a
        self.x_prev2, self.x_prev, self.x_curr = self.x_prev, self.x_curr, float(x_next)
        return v, a


def bottom_integral(bathy, grid, X=0.0):
    """Simpson integral of the unit-peak bottom over its (translated) support."""
    j, k = support_bracket(bathy, X, grid)
    xn = grid.node_coords[j:k + 1]
    xm = grid.mid_coords[j:k]
    fn = bathy.value(xn, X) / bathy.amplitude
    fm = bathy.value(xm, X) / bathy.amplitude
    return stencils.simpson_support(fn, fm, 0, k - j, grid.dx)


def compute_c_solid(bathy, params, grid):
    """Solid constant ``|supp|/M (P_atm/(rho g H0) + 1) - (beta/M) int b``."""
    check_inside(bathy, 0.0, grid)
    supp = bathy.support_length
    return (supp / params.m_tilde) * params.atmospheric_factor \
        - (params.beta / params.m_tilde) * bottom_integral(bathy, grid)


def _zeta_integral(zeta, zeta_mids, bathy, X, grid, weight=None):
    j, k = support_bracket(bathy, X, grid)
    fn = np.asarray(zeta)[j:k + 1]
    fm = np.asarray(zeta_mids)[j:k]
    if weight is not None:
        fn = fn * weight(grid.node_coords[j:k + 1])
        fm = fm * weight(grid.mid_coords[j:k])
    return stencils.simpson_support(fn, fm, 0, k - j, grid.dx)


def normal_force(zeta, zeta_mids, X, bathy, params, grid):
    """Bracket ``1 + c_solid/beta + eps/(M beta) int_supp zeta``; positive while in contact."""
    integral = _zeta_integral(zeta, zeta_mids, bathy, X, grid)
    return 1.0 + params.c_solid / params.beta \
        + params.eps / (params.m_tilde * params.beta) * integral


def coeff_C(zeta, zeta_mids, X, bathy, params, grid):
    """Friction coefficient ``(c_fric/sqrt(mu)) * normal force``.

    Raises
    ------
    LiftOff
        If the normal-force bracket is not positive.
    """
    if params.c_solid is None:
        raise ValueError("params.c_solid is not set; call compute_c_solid first")
    bracket = normal_force(zeta, zeta_mids, X, bathy, params, grid)
    if not bracket > 0:
        raise LiftOff(f"normal force bracket {bracket:.4g} <= 0")
    return params.c_fric / np.sqrt(params.mu) * bracket


def coeff_Cbar(zeta, zeta_mids, X, bathy, params, grid):
    """Pressure force ``(eps/M) int zeta b_x(x - X)`` with the unit-peak bottom."""
    integral = _zeta_integral(
        zeta, zeta_mids, bathy, X, grid,
        weight=lambda x: bathy.d1(x, X) / bathy.amplitude)
    return params.eps / params.m_tilde * integral


def friction_law(C, Cbar, xdot, delta):
    """Continuous acceleration ``-C xdot/(|xdot| + delta) + Cbar``."""
    return -C * xdot / (abs(xdot) + delta) + Cbar


def solid_step(solid, C, Cbar, dt, delta):
    """Next displacement from the explicit three-level update."""
    x0, x1, x2 = solid.x_curr, solid.x_prev, solid.x_prev2
    k = dt * dt * C / (abs(3.0 * x0 - 4.0 * x1 + x2) + 2.0 * dt * delta)
    return (2.0 * x0 - (1.0 - k) * x1 + dt * dt * Cbar) / (1.0 + k)


def solid_kinematics(solid, x_next, dt):
    """Central velocity and acceleration at the current level, plus the backward velocity."""
    v_central = (x_next - solid.x_prev) / (2.0 * dt)
    a_central = (x_next - 2.0 * solid.x_curr + solid.x_prev) / (dt * dt)
    v_backward = (3.0 * solid.x_curr - 4.0 * solid.x_prev + solid.x_prev2) / (2.0 * dt)
    return v_central, a_central, v_backward
