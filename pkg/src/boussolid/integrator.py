"""Time stepping for the coupled fluid-solid system.

The first two steps are taken with classic RK4 on the continuous system
(solid included through the smooth friction law).  From then on each step is
an Adams-Bashforth-3 predictor and Adams-Moulton-4 corrector for the fluid,
with the solid moved once per step by the explicit three-level update
before the fluid predictor.
"""
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import physics, stencils
from .grid import BottomFields, sample_bottom
from .solid import (SolidState, coeff_C, coeff_Cbar, friction_law, solid_step)

AB3_WEIGHTS = np.array([23.0, -16.0, 5.0]) / 12.0
AM4_WEIGHTS = np.array([9.0, 19.0, -5.0, 1.0]) / 24.0
assert abs(AB3_WEIGHTS.sum() - 1.0) < 1e-15
assert abs(AM4_WEIGHTS.sum() - 1.0) < 1e-15

MODES = ("flat", "fixed", "moving")


def cfl_check(dt, dx, g_dim, h0_dim, limit=0.5):
    """Return ``(ratio, ok)`` for the linear stability bound ``sqrt(g H0) dt/dx <= limit``."""
    ratio = np.sqrt(g_dim * h0_dim) * dt / dx
    return float(ratio), bool(ratio <= limit)


@dataclass
class RhsRecord:
    E: np.ndarray
    F: np.ndarray


class StepHistory:
    """The three most recent right-hand sides, newest first."""

    def __init__(self):
        self._items = deque(maxlen=3)

    def push(self, record):
        self._items.appendleft(record)

    def __len__(self):
        return len(self._items)

    def __getitem__(self, k):
        return self._items[k]

    @property
    def full(self):
        return len(self._items) == 3


def ab3(y, history, dt, which):
    r = [getattr(history[k], which) for k in range(3)]
    return y + dt * (AB3_WEIGHTS[0] * r[0] + AB3_WEIGHTS[1] * r[1] + AB3_WEIGHTS[2] * r[2])


def am4(y, rhs_new, history, dt, which):
    r = [getattr(history[k], which) for k in range(3)]
    return y + dt * (AM4_WEIGHTS[0] * rhs_new + AM4_WEIGHTS[1] * r[0]
                     + AM4_WEIGHTS[2] * r[1] + AM4_WEIGHTS[3] * r[2])


class Simulation:
    """One coupled run.

    Parameters
    ----------
    grid : StaggeredGrid
    params : PhysicalParams
        Must carry ``c_solid`` in ``"moving"`` mode.
    fluid : FluidState
        Initial fluid state; ``ubar`` is recomputed from ``vbar``.
    dt : float
        Time step.
    bathy : Bathymetry, optional
        Solid shape; required unless ``mode == "flat"``.
    mode : {"flat", "fixed", "moving"}
        Flat bottom, solid held in place, or freely sliding solid.
    xdot0 : float
        Initial solid velocity.
    corrector_iterations : int
        Number of corrector passes per step.
    """

    def __init__(self, grid, params, fluid, dt, bathy=None, mode="flat",
                 xdot0=0.0, corrector_iterations=1):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if mode != "flat" and bathy is None:
            raise ValueError("a bathymetry is required unless mode is 'flat'")
        if mode == "moving" and params.c_solid is None:
            raise ValueError("params.c_solid must be set for a moving solid")
        if corrector_iterations < 1:
            raise ValueError("corrector_iterations must be >= 1")
        self.grid = grid
        self.params = params
        self.bathy = bathy
        self.mode = mode
        self.dt = float(dt)
        self.corrector_iterations = int(corrector_iterations)
        self.pressure_enabled = True
        self.n = 0
        self.solid = SolidState()
        self.xdot = float(xdot0) if mode == "moving" else 0.0
        self.history = StepHistory()
        self._bottom_cache = {}
        self._flat = BottomFields.flat(grid)
        vbar = np.array(fluid.vbar, dtype=float)
        self.state = physics.FluidState(
            np.array(fluid.zeta, dtype=float), vbar,
            physics.helmholtz_apply(vbar, params.mu, grid.dx))
        self.bottom(0.0)

    @property
    def t(self):
        return self.n * self.dt

    @property
    def X(self):
        return self.solid.x_curr

    # -- building blocks -------------------------------------------------
    def bottom(self, X):
        if self.mode == "flat":
            return self._flat
        if self.mode == "fixed":
            X = 0.0
        fields = self._bottom_cache.get(X)
        if fields is None:
            fields = sample_bottom(self.bathy, X, self.grid)
            if len(self._bottom_cache) > 8:
                self._bottom_cache.clear()
            self._bottom_cache[X] = fields
        return fields

    def rhs(self, zeta, vbar, X, xdot, xddot):
        state = physics.FluidState(zeta, vbar, None)
        bottom = self.bottom(X)
        dx = self.grid.dx
        return RhsRecord(physics.rhs_zeta(state, bottom, xdot, self.params, dx),
                         physics.rhs_momentum(state, bottom, xdot, xddot, self.params, dx))

    def solid_forces(self, zeta, X):
        zeta_m = stencils.interp_node_to_mid(zeta, "even")
        C = coeff_C(zeta, zeta_m, X, self.bathy, self.params, self.grid)
        if not self.pressure_enabled:
            return C, 0.0
        return C, coeff_Cbar(zeta, zeta_m, X, self.bathy, self.params, self.grid)

    def recover_v(self, ubar):
        return physics.helmholtz_solve(ubar, self.params.mu, self.grid.dx)

    # -- RK4 start-up ----------------------------------------------------
    def _derivative(self, zeta, ubar, X, xdot):
        vbar = self.recover_v(ubar)
        if self.mode == "moving":
            C, Cbar = self.solid_forces(zeta, X)
            if xdot == 0.0 and abs(Cbar) <= C:
                # static friction holds: stick limit of the regularised law,
                # whose stiffness (C/delta) RK4 cannot resolve
                xddot = 0.0
            else:
                xddot = friction_law(C, Cbar, xdot, self.params.delta)
        else:
            xddot = 0.0
        return self.rhs(zeta, vbar, X, xdot, xddot), xdot, xddot

    def rk4_step(self):
        """One RK4 step of the continuous system; records the first stage."""
        dt = self.dt
        z0, u0, X0, v0 = self.state.zeta, self.state.ubar, self.solid.x_curr, self.xdot
        k1, dX1, dV1 = self._derivative(z0, u0, X0, v0)
        self.history.push(k1)
        k2, dX2, dV2 = self._derivative(z0 + 0.5 * dt * k1.E, u0 + 0.5 * dt * k1.F,
                                        X0 + 0.5 * dt * dX1, v0 + 0.5 * dt * dV1)
        k3, dX3, dV3 = self._derivative(z0 + 0.5 * dt * k2.E, u0 + 0.5 * dt * k2.F,
                                        X0 + 0.5 * dt * dX2, v0 + 0.5 * dt * dV2)
        k4, dX4, dV4 = self._derivative(z0 + dt * k3.E, u0 + dt * k3.F,
                                        X0 + dt * dX3, v0 + dt * dV3)
        zeta = z0 + dt / 6.0 * (k1.E + 2.0 * k2.E + 2.0 * k3.E + k4.E)
        ubar = u0 + dt / 6.0 * (k1.F + 2.0 * k2.F + 2.0 * k3.F + k4.F)
        if self.mode == "moving":
            x_next = X0 + dt / 6.0 * (dX1 + 2.0 * dX2 + 2.0 * dX3 + dX4)
            self.bottom(x_next)
            self.xdot = v0 + dt / 6.0 * (dV1 + 2.0 * dV2 + 2.0 * dV3 + dV4)
            s = self.solid
            s.x_prev2, s.x_prev, s.x_curr = s.x_prev, s.x_curr, float(x_next)
        self.state = physics.FluidState(zeta, self.recover_v(ubar), ubar)
        self.n += 1
        return self.state

    # -- predictor / corrector -------------------------------------------
    def predict(self):
        """Move the solid and apply AB3 to the fluid.

        Returns the predicted ``(zeta, ubar, vbar)`` and the new displacement.
        """
        dt = self.dt
        zeta_n, vbar_n = self.state.zeta, self.state.vbar
        if self.mode == "moving":
            C, Cbar = self.solid_forces(zeta_n, self.solid.x_curr)
            x_next = solid_step(self.solid, C, Cbar, dt, self.params.delta)
            self.bottom(x_next)
            v_c, a_c = self.solid.advance(x_next, dt)
            X_n = self.solid.x_prev
        else:
            x_next, v_c, a_c, X_n = 0.0, 0.0, 0.0, 0.0
        self.history.push(self.rhs(zeta_n, vbar_n, X_n, v_c, a_c))
        zeta_p = ab3(zeta_n, self.history, dt, "E")
        ubar_p = ab3(self.state.ubar, self.history, dt, "F")
        return (zeta_p, ubar_p, self.recover_v(ubar_p)), x_next

    def correct(self, predicted, x_next):
        """AM4 corrector; the solid sources use one-sided differences at the new level."""
        dt = self.dt
        zeta_p, ubar_p, vbar_p = predicted
        if self.mode == "moving":
            s = self.solid
            xdot = (3.0 * s.x_curr - 4.0 * s.x_prev + s.x_prev2) / (2.0 * dt)
            xddot = (2.0 * s.x_curr - 5.0 * s.x_prev + 4.0 * s.x_prev2
                     - self._x_prev3) / (dt * dt)
        else:
            xdot = xddot = 0.0
        for _ in range(self.corrector_iterations):
            r = self.rhs(zeta_p, vbar_p, x_next, xdot, xddot)
            zeta_p = am4(self.state.zeta, r.E, self.history, dt, "E")
            ubar_p = am4(self.state.ubar, r.F, self.history, dt, "F")
            vbar_p = self.recover_v(ubar_p)
        self.xdot = xdot
        return physics.FluidState(zeta_p, vbar_p, ubar_p)

    def step(self):
        """Advance one step; the first two are RK4."""
        if self.n < 2:
            return self.rk4_step()
        self._x_prev3 = self.solid.x_prev2
        predicted, x_next = self.predict()
        self.state = self.correct(predicted, x_next)
        self.n += 1
        return self.state

    # -- diagnostics -----------------------------------------------------
    def energy(self):
        b = self.bottom(self.solid.x_curr).b_nodes / self.params.beta
        return physics.energy(self.state, b, self.xdot, self.params, self.grid.dx)

    def mass(self):
        return physics.mass(self.state.zeta, self.grid)

    def fluid_height(self):
        b = self.bottom(self.solid.x_curr).b_nodes / self.params.beta
        return physics.fluid_height(self.state.zeta, b, self.params)
