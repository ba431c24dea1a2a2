"""Experiment families built from single scenario runs."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..soliton import tail_reach
from .runner import TRAIN_OVERLAP, run_scenario


def fit_slope(h, err):
    """Least-squares slope of ``log(err)`` against ``log(h)``."""
    return float(np.polyfit(np.log(h), np.log(err), 1)[0])


def _map(fn, items, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _final_zeta(cfg):
    res = run_scenario(cfg)
    if res.halt_reason is not None:
        raise RuntimeError(f"convergence run halted: {res.diagnostics.get('halt_message')}")
    return res.snapshots[-1][2], res


def _norms(diff, dx):
    return float(np.sqrt(dx * np.sum(diff * diff))), float(np.abs(diff).max())


@dataclass
class ConvergenceResult:
    """Refinement table and fitted orders.

    ``errors`` has columns (L2, Linf) for each ladder step ``steps``; the
    fit uses these.  ``exact_errors`` holds the errors against the exact
    translated soliton when the study has one.
    """

    axis: str
    mode: str
    steps: np.ndarray
    errors: np.ndarray
    slope_l2: float
    slope_linf: float
    monotone: bool
    exact_errors: np.ndarray = None
    reference: dict = field(default_factory=dict)

    @property
    def valid(self):
        return self.monotone

    def table(self):
        rows = [f"{'h':>12} {'L2':>12} {'Linf':>12}"]
        for h, (a, b) in zip(self.steps, self.errors):
            rows.append(f"{h:12.6g} {a:12.4e} {b:12.4e}")
        return "\n".join(rows)


def _ladder(base, axis, levels):
    nd = base.nd
    key = "dx" if axis == "space" else "dt"
    return [nd[key] / 2 ** k for k in range(levels)]


def convergence_study(base_cfg, axis="space", mode="exact", levels=6,
                      reference_levels=2, workers=None):
    """Refine one of ``dx`` / ``dt`` by halving and fit the order.

    Parameters
    ----------
    base_cfg : ScenarioConfig
        Coarsest configuration; must use nondimensional units.
    axis : {"space", "time"}
        The refined parameter; the other stays fixed.
    mode : {"exact", "relative"}
        ``"exact"`` compares the flat-bottom soliton with its exact
        translate.  On the time axis the exact error saturates at the
        spatial error of the fixed grid, so the fitted errors are taken
        against a same-grid run with a finer step; exact errors are kept in
        ``exact_errors``.  ``"relative"`` compares against a run refined
        `reference_levels` more times along the same axis; with
        ``reference_levels=0`` the finest ladder entry is the reference and
        is left out of the fit.
    levels : int
        Number of ladder entries.
    """
    if axis not in ("space", "time"):
        raise ValueError("axis must be 'space' or 'time' (one axis per study)")
    if mode not in ("exact", "relative"):
        raise ValueError("mode must be 'exact' or 'relative'")
    if base_cfg.units != "nondimensional":
        raise ValueError("convergence studies expect nondimensional configs")
    if mode == "exact" and (base_cfg.bottom_mode != "flat" or base_cfg.wave != "soliton"):
        raise ValueError("exact mode needs a flat bottom and a single soliton")
    key = "dx" if axis == "space" else "dt"
    steps = _ladder(base_cfg, axis, levels)
    cfgs = [base_cfg.with_updates(**{key: h}, snapshot_stride=0, energy_stride=10 ** 9)
            for h in steps]
    if reference_levels < 0:
        raise ValueError("reference_levels must be >= 0")
    ref_step = steps[-1] / 2 ** reference_levels
    need_ref = mode == "relative" or axis == "time"
    if need_ref and reference_levels > 0:
        cfgs.append(cfgs[0].with_updates(**{key: ref_step}))
    outs = _map(_final_zeta, cfgs, workers)
    first = outs[0][1]
    t_final = first.diagnostics["final_time"]
    for _, res in outs:
        if abs(res.diagnostics["final_time"] - t_final) > 1e-9:
            raise ValueError("ladder runs do not end at a common time; pick t_end on every grid")

    exact = None
    if mode == "exact":
        exact = []
        for (z, res) in outs[:levels]:
            prof = res.profile
            x0 = res.diagnostics["wave_centers"][0]
            ref = prof.elevation(res.grid.node_coords - x0 - prof.speed * t_final)
            exact.append(_norms(z - ref, res.grid.dx))
        exact = np.array(exact)

    fitted = levels - 1 if need_ref and reference_levels == 0 else levels
    if need_ref:
        ref_z, ref_res = outs[-1]
        errs = []
        for (z, res) in outs[:fitted]:
            if axis == "space":
                stride = int(round(res.grid.dx / ref_res.grid.dx))
                diff = z - ref_z[::stride]
            else:
                diff = z - ref_z
            errs.append(_norms(diff, res.grid.dx))
        errs = np.array(errs)
    else:
        errs = exact

    h = np.array(steps[:fitted])
    if exact is not None:
        exact = exact[:fitted]
    monotone = bool(np.all(np.diff(errs[:, 0]) < 0) and np.all(np.diff(errs[:, 1]) < 0))
    return ConvergenceResult(axis, mode, h, errs, fit_slope(h, errs[:, 0]),
                             fit_slope(h, errs[:, 1]), monotone, exact,
                             {"step": ref_step} if need_ref else {})


# -- amplitude transmission --------------------------------------------------
def _mode_cfg(base, mode):
    """``mode`` is ``"flat"``, ``"fixed"`` or a friction coefficient for a moving solid."""
    if mode in ("flat", "fixed"):
        return base.with_updates(bottom_mode=mode)
    return base.with_updates(bottom_mode="moving", c_fric=float(mode))


def _amplitude_row(args):
    cfg, amplitude, mode = args
    res = run_scenario(cfg)
    d = res.diagnostics
    return {
        "amplitude": amplitude,
        "mode": mode,
        "ratio": d.get("amplitude_ratio"),
        "amplitude_in": d.get("amplitude_in"),
        "amplitude_out": d.get("amplitude_out"),
        "breaking": "breaking_time" in d,
        "halt_reason": res.halt_reason,
        "max_abs_X": d["max_abs_X"],
    }


def amplitude_study(base_cfg, amplitudes, frictions=(0.001, 0.01, 0.5),
                    modes=("flat", "fixed", "moving"), workers=None):
    """Transmitted over incoming amplitude for each amplitude and bottom mode.

    `amplitudes` are dimensional wave amplitudes (they set ``eps``).  Moving
    runs are repeated for each friction coefficient.  Runs stop once the
    transmitted crest has been measured; breaking runs are marked instead.
    """
    jobs = []
    for a in amplitudes:
        cfg = base_cfg.with_updates(a_surf=float(a), stop_after_amplitude=True)
        for mode in modes:
            if mode == "moving":
                jobs += [(_mode_cfg(cfg, f), a, f) for f in frictions]
            else:
                jobs.append((_mode_cfg(cfg, mode), a, mode))
    return _map(_amplitude_row, jobs, workers)


# -- breaking ------------------------------------------------------------------
def _breaking_row(args):
    cfg, amplitude, mode = args
    res = run_scenario(cfg)
    d = res.diagnostics
    if "breaking_time" not in d:
        return None
    return {"amplitude": amplitude, "mode": mode, "time": d["breaking_time"],
            "crest": d["breaking_crest"], "position": d["breaking_position"],
            "solid_X": d["solid_X_at_breaking"]}


def breaking_study(base_cfg, amplitudes, modes=(0.001, 0.5, "fixed"), workers=None):
    """Crest position when the slope criterion fires, per amplitude and mode.

    Returns ``{amplitude: {mode: row}}``; amplitudes where nothing fires are
    left out, as are modes that stay below the threshold.
    """
    jobs = []
    for a in amplitudes:
        cfg = base_cfg.with_updates(a_surf=float(a), breaking_detector=True)
        jobs += [(_mode_cfg(cfg, m), a, m) for m in modes]
    out = {}
    for row in _map(_breaking_row, jobs, workers):
        if row is not None:
            out.setdefault(row["amplitude"], {})[row["mode"]] = row
    return out


# -- solid displacement --------------------------------------------------------
@dataclass
class Trajectory:
    label: str
    time: np.ndarray
    X: np.ndarray
    Xdot: np.ndarray
    halt_reason: str = None
    info: dict = field(default_factory=dict)


def _trajectory(label, res, **info):
    tr = res.trajectory
    return Trajectory(label, tr["time"], tr["X"], tr["Xdot"], res.halt_reason, info)


def _run_labelled(args):
    label, cfg = args
    return _trajectory(label, run_scenario(cfg))


def post_wave_displacements(res):
    """Solid position after each wave of a train has moved on.

    Wave ``k`` counts as passed when its crest, moving at the soliton speed,
    is half a spacing beyond the solid centre.
    """
    d = res.diagnostics
    centers = d["wave_centers"]
    if len(centers) > 1:
        spacing = centers[0] - centers[1]
    else:
        spacing = 2.0 * tail_reach(res.profile, TRAIN_OVERLAP)
    x_solid = res.config.nd["solid_center"]
    t = res.trajectory["time"]
    out = []
    for c in centers:
        t_k = (x_solid + 0.5 * spacing - c) / d["wave_speed"]
        if t_k > t[-1]:
            break
        out.append(float(np.interp(t_k, t, res.trajectory["X"])))
    return out



def ablation_fit(time, xdot):
    """Straight-line fit to a decelerating velocity record.

    Uses samples from the start until the speed first drops below 1% of
    its initial value.  Returns ``(slope, relative_rms_residual)``.
    """
    v0 = abs(xdot[0])
    stop = np.nonzero(np.abs(xdot) < 0.01 * v0)[0]
    end = stop[0] if stop.size else len(xdot)
    t, v = time[:end], xdot[:end]
    coef = np.polyfit(t, v, 1)
    resid = v - np.polyval(coef, t)
    return float(coef[0]), float(np.sqrt(np.mean(resid ** 2)) / v0)


def displacement_study(base_cfg, mode="single", frictions=None, workers=None):
    """Solid trajectories for the friction experiments.

    Modes
    -----
    ``sweep``
        One run per friction coefficient (default five values in
        ``[0.001, 0.003]``).
    ``single``
        One wave; ``info`` carries ``max_abs_X`` and ``final_X``.
    ``train``
        A train of solitons; ``info["post_wave_X"]`` lists the solid
        position after each passed wave.
    ``ablation``
        The full model, then a rerun with the pressure force dropped from
        the instant the solid speed peaks; both trajectories are returned
        with a linear fit of the ablated velocity.
    """
    base = base_cfg.with_updates(bottom_mode="moving")
    if mode == "sweep":
        frictions = frictions if frictions is not None else np.linspace(0.001, 0.003, 5)
        jobs = [(f"c_fric={f:g}", base.with_updates(c_fric=float(f))) for f in frictions]
        return _map(_run_labelled, jobs, workers)
    if mode == "single":
        res = run_scenario(base.with_updates(wave="soliton"))
        d = res.diagnostics
        return [_trajectory("single", res, max_abs_X=d["max_abs_X"], final_X=d["final_X"])]
    if mode == "train":
        res = run_scenario(base.with_updates(wave="train"))
        return [_trajectory("train", res, post_wave_X=post_wave_displacements(res),
                            wave_centers=res.diagnostics["wave_centers"])]
    if mode == "ablation":
        full = run_scenario(base)
        tr = full.trajectory
        k = int(np.argmax(np.abs(tr["Xdot"])))
        t_peak = float(tr["time"][k])
        cut = run_scenario(base.with_updates(pressure_off_time=t_peak))
        tc = cut.trajectory
        sel = tc["time"] >= t_peak - 1e-12
        slope, resid = ablation_fit(tc["time"][sel], tc["Xdot"][sel])
        after = tr["Xdot"][k:]
        reverses = bool(np.any(np.sign(after) == -np.sign(tr["Xdot"][k])))
        return [_trajectory("full", full, t_peak=t_peak, reverses=reverses),
                _trajectory("ablated", cut, t_peak=t_peak, linear_slope=slope,
                            linear_residual=resid)]
    raise ValueError("mode must be one of 'sweep', 'single', 'train', 'ablation'")
