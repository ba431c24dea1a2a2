"""Single-scenario driver: build the initial state, step, and collect diagnostics."""
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import SimulationHalt, WaveBreaking
from ..grid import build_grid, gaussian_bottom
from ..integrator import Simulation, cfl_check
from ..physics import FluidState, PhysicalParams, helmholtz_apply
from ..soliton import place_soliton, soliton_for_amplitude, tail_reach

TRAIN_OVERLAP = 1e-10
EXIT_DISTANCE = 2.0


class CFLViolation(ValueError):
    """Raised when a config exceeds the stability bound without an override."""


@dataclass
class BreakingEvent:
    index: int
    position: float
    slope: float


def detect_breaking(zeta, dx, threshold=1.0, orientation=1):
    """Check ``max_i (zeta[i+1] - zeta[i]) / dx > threshold``.

    Parameters
    ----------
    orientation : {1, -1, 0}
        ``1`` tests rising slopes as written, ``-1`` falling slopes and
        ``0`` either sign.

    Returns
    -------
    BreakingEvent or None
        Left node index and midpoint position of the steepest offending
        interval.
    """
    slopes = np.diff(np.asarray(zeta, dtype=float)) / dx
    if orientation == 0:
        slopes = np.abs(slopes)
    else:
        slopes = orientation * slopes
    i = int(np.argmax(slopes))
    if slopes[i] > threshold:
        return BreakingEvent(i, (i + 0.5) * dx, float(slopes[i]))
    return None


def refined_peak(x, f):
    """Peak position and value from a parabola through the maximum and its neighbours."""
    i = int(np.argmax(f))
    if 0 < i < len(f) - 1:
        fl, fc, fr = f[i - 1], f[i], f[i + 1]
        denom = fl - 2.0 * fc + fr
        if denom < 0:
            s = 0.5 * (fl - fr) / denom
            return x[i] + s * (x[1] - x[0]), fc - 0.25 * (fl - fr) * s
    return x[i], f[i]


@dataclass
class ScenarioResult:
    """Everything a run produces.

    Snapshots are ``(step, time, zeta, vbar)`` tuples.  The solid trajectory
    holds one row per step; the energy series one row per `energy_stride`.
    """

    config: object
    params: PhysicalParams
    grid: object
    snapshots: list = field(default_factory=list)
    trajectory: dict = field(default_factory=dict)
    energy: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)
    halt_reason: str = None
    profile: object = None

    @property
    def completed(self):
        return self.halt_reason is None


def _build_profile(cfg, dx):
    mesh = cfg.profile_mesh or min(dx / 10.0, 0.005)
    return soliton_for_amplitude(cfg.wave_amplitude, cfg.mu, cfg.eps, mesh=mesh)


def initial_state(cfg, grid, profile, solid_center):
    """Rest state, a single soliton, or a train of solitons heading for the solid."""
    if cfg.wave == "rest":
        z = np.zeros(grid.n_nodes)
        v = np.zeros(grid.n_mids)
        return FluidState(z, v, v.copy()), []
    lead = solid_center - cfg.wave_offset
    if cfg.wave == "soliton":
        return place_soliton(profile, lead, grid), [lead]
    spacing = cfg.wave_spacing or 2.0 * tail_reach(profile, TRAIN_OVERLAP)
    centers = [lead - k * spacing for k in range(cfg.wave_count)]
    reach = profile.half_width
    if centers[-1] - reach <= 0.0:
        raise ValueError(f"wave train of {cfg.wave_count} waves does not fit the tank")
    zeta = np.zeros(grid.n_nodes)
    vbar = np.zeros(grid.n_mids)
    for c in centers:
        zeta += profile.elevation(grid.node_coords - c)
        vbar += profile.velocity(grid.mid_coords - c)
    return FluidState(zeta, vbar, helmholtz_apply(vbar, cfg.mu, grid.dx)), centers


def build_simulation(cfg):
    """Grid, parameters, solid and initial state for `cfg`."""
    from ..solid import compute_c_solid

    nd = cfg.nd
    ratio, ok = cfl_check(nd["dt"], nd["dx"], 1.0, 1.0)
    if not ok and not cfg.override_cfl:
        raise CFLViolation(f"CFL ratio {ratio:.4g} exceeds 0.5; set override_cfl to run anyway")
    grid = build_grid(nd["tank_length"], nd["dx"])
    params = PhysicalParams(cfg.mu, cfg.eps, cfg.beta, c_fric=cfg.c_fric,
                            m_tilde=cfg.m_tilde, delta=cfg.delta, h0_dim=cfg.h0,
                            g_dim=cfg.g, h_min=cfg.h_min)
    bathy = gaussian_bottom(cfg.beta, cfg.bottom_shape_length, nd["solid_center"],
                            cfg.bottom_truncation)
    if cfg.bottom_mode == "moving":
        params = params.with_c_solid(compute_c_solid(bathy, params, grid))
    profile = None if cfg.wave == "rest" else _build_profile(cfg, nd["dx"])
    state, centers = initial_state(cfg, grid, profile, nd["solid_center"])
    sim = Simulation(grid, params, state, nd["dt"],
                     bathy=None if cfg.bottom_mode == "flat" else bathy,
                     mode=cfg.bottom_mode,
                     corrector_iterations=cfg.corrector_iterations)
    return sim, bathy, profile, centers


class _AmplitudeProbe:
    """Watches for the transmitted crest two wavelengths past the solid."""

    def __init__(self, grid, bathy, profile, x0):
        self.edge = bathy.support[1]
        self.station = self.edge + EXIT_DISTANCE
        self.t_arrival = (self.station - x0) / profile.speed
        self.start = int(np.searchsorted(grid.node_coords, self.edge))
        self.x = grid.node_coords[self.start:]
        self.value = None
        self.position = None
        self.time = None

    def update(self, t, zeta):
        if self.value is not None or t < self.t_arrival or self.station > self.x[-1]:
            return False
        x_pk, z_pk = refined_peak(self.x, zeta[self.start:])
        if x_pk >= self.station:
            self.value, self.position, self.time = float(z_pk), float(x_pk), float(t)
            return True
        return False


def run_scenario(cfg, progress=None):
    """Run `cfg` to ``t_end`` or the first halt.

    Halts (non-physical height, solid at a wall, lift-off, breaking) end the
    run; their reason and time are stored in the diagnostics.
    """
    sim, bathy, profile, centers = build_simulation(cfg)
    grid, nd = sim.grid, cfg.nd
    result = ScenarioResult(cfg, sim.params, grid, profile=profile)
    n_steps = int(math.ceil(nd["t_end"] / nd["dt"] - 1e-9))
    stride = cfg.snapshot_stride
    face = {"front": -1, "back": 1, "both": 0}[cfg.breaking_face]

    ts, xs, vs = [0.0], [0.0], [sim.xdot]
    te, es, ms = [0.0], [sim.energy()], [sim.mass()]
    result.snapshots.append((0, 0.0, sim.state.zeta.copy(), sim.state.vbar.copy()))
    diag = result.diagnostics
    diag["c_solid"] = sim.params.c_solid
    diag["wave_speed"] = None if profile is None else profile.speed
    diag["wave_centers"] = centers
    diag["solid_support"] = list(bathy.support)
    probe = None
    if profile is not None:
        diag["amplitude_in"] = float(refined_peak(grid.node_coords, sim.state.zeta)[1])
        probe = _AmplitudeProbe(grid, bathy, profile, centers[0])
    try:
        for _ in range(n_steps):
            if cfg.pressure_off_time is not None and sim.t >= cfg.pressure_off_time - 1e-12:
                sim.pressure_enabled = False
            sim.step()
            ts.append(sim.t)
            xs.append(sim.X)
            vs.append(sim.xdot)
            if sim.n % cfg.energy_stride == 0:
                te.append(sim.t)
                es.append(sim.energy())
                ms.append(sim.mass())
            if stride and sim.n % stride == 0:
                result.snapshots.append((sim.n, sim.t, sim.state.zeta.copy(),
                                         sim.state.vbar.copy()))
            if cfg.breaking_detector:
                event = detect_breaking(sim.state.zeta, grid.dx, orientation=face)
                if event is not None:
                    diag["breaking_time"] = sim.t
                    diag["breaking_position"] = event.position
                    diag["breaking_slope"] = event.slope
                    diag["breaking_crest"] = float(
                        refined_peak(grid.node_coords, sim.state.zeta)[0])
                    diag["solid_X_at_breaking"] = sim.X
                    raise WaveBreaking(f"surface slope {event.slope:.4g} > 1",
                                       event.index, event.position)
            if probe is not None and probe.update(sim.t, sim.state.zeta):
                if cfg.stop_after_amplitude:
                    break
            if progress is not None:
                progress(sim)
    except SimulationHalt as exc:
        result.halt_reason = exc.reason
        diag["halt_time"] = sim.t
        diag["halt_step"] = sim.n
        diag["halt_message"] = str(exc)

    if result.snapshots[-1][0] != sim.n:
        result.snapshots.append((sim.n, sim.t, sim.state.zeta.copy(), sim.state.vbar.copy()))
    if te[-1] != sim.t and result.halt_reason is None:
        te.append(sim.t)
        es.append(sim.energy())
        ms.append(sim.mass())
    result.trajectory = {"time": np.array(ts), "X": np.array(xs), "Xdot": np.array(vs)}
    result.energy = {"time": np.array(te), "energy": np.array(es), "mass": np.array(ms)}
    diag["steps"] = sim.n
    diag["final_time"] = sim.t
    diag["max_abs_X"] = float(np.abs(result.trajectory["X"]).max())
    diag["final_X"] = float(sim.X)
    if probe is not None and probe.value is not None and "breaking_time" not in diag:
        diag["amplitude_out"] = probe.value
        diag["amplitude_out_time"] = probe.time
        diag["amplitude_out_position"] = probe.position
        diag["amplitude_ratio"] = probe.value / diag["amplitude_in"]
    return result
