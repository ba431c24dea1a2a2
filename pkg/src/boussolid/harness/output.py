"""CSV and JSON output for scenario results."""
import csv
import json
from pathlib import Path

import numpy as np


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value


def _fmt(x):
    return repr(float(x))


def summary(result):
    cfg = result.config
    return _jsonable({
        "config": cfg.to_dict(),
        "derived": cfg.derived(),
        "halt_reason": result.halt_reason,
        "diagnostics": result.diagnostics,
    })


def write_outputs(result, directory):
    """Write ``snapshots.csv``, ``solid.csv``, ``energy.csv`` and ``summary.json``.

    Filesystem errors propagate unchanged.
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    x = result.grid.node_coords

    with open(out / "snapshots.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "time", "x", "zeta"])
        for step, t, zeta, _ in result.snapshots:
            ts = _fmt(t)
            for xi, zi in zip(x, zeta):
                w.writerow([step, ts, _fmt(xi), _fmt(zi)])

    traj = result.trajectory
    with open(out / "solid.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["time", "X", "Xdot"])
        for row in zip(traj["time"], traj["X"], traj["Xdot"]):
            w.writerow([_fmt(v) for v in row])

    en = result.energy
    with open(out / "energy.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["time", "energy", "mass"])
        for row in zip(en["time"], en["energy"], en["mass"]):
            w.writerow([_fmt(v) for v in row])

    (out / "summary.json").write_text(json.dumps(summary(result), indent=2) + "\n")
    return out
