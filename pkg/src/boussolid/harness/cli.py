"""Command-line entry point.

    boussolid run CONFIG [--out DIR]
    boussolid converge CONFIG --axis {space,time} --mode {exact,relative}
    boussolid amplitude CONFIG
    boussolid breaking CONFIG
    boussolid displacement CONFIG --mode {sweep,single,train,ablation}
    boussolid preset NAME
"""
import argparse
import csv
import json
import sys
from pathlib import Path

from . import presets
from .config import ScenarioConfig
from .output import _jsonable, write_outputs
from .runner import CFLViolation, run_scenario
from .studies import (amplitude_study, breaking_study, convergence_study,
                      displacement_study)


def _load(args):
    cfg = ScenarioConfig.from_json(args.config)
    changes = {}
    if args.override_cfl:
        changes["override_cfl"] = True
    if args.snapshot_stride is not None:
        changes["snapshot_stride"] = args.snapshot_stride
    return cfg.with_updates(**changes) if changes else cfg


def _out_dir(args, default):
    out = Path(args.out or default)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_json(path, data):
    path.write_text(json.dumps(_jsonable(data), indent=2) + "\n")


def cmd_run(args):
    cfg = _load(args)
    res = run_scenario(cfg)
    out = write_outputs(res, _out_dir(args, f"out/{cfg.name}"))
    d = res.diagnostics
    print(f"{cfg.name}: {d['steps']} steps to t={d['final_time']:.6g}, "
          f"halt={res.halt_reason}, max|X|={d['max_abs_X']:.4g} -> {out}")
    if "amplitude_ratio" in d:
        print(f"amplitude ratio {d['amplitude_ratio']:.5f}")
    return 0


def cmd_converge(args):
    cfg = _load(args)
    mode = "exact" if args.mode == "exact" else "relative"
    res = convergence_study(cfg, axis=args.axis, mode=mode, levels=args.levels,
                            reference_levels=args.reference_levels, workers=args.workers)
    print(res.table())
    print(f"slope L2 {res.slope_l2:.3f}  Linf {res.slope_linf:.3f}  "
          f"monotone={res.monotone}")
    out = _out_dir(args, f"out/{cfg.name}-converge-{args.axis}")
    with open(out / "convergence.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["h", "L2", "Linf"])
        for h, (a, b) in zip(res.steps, res.errors):
            w.writerow([repr(float(h)), repr(float(a)), repr(float(b))])
    _write_json(out / "summary.json", {
        "config": cfg.to_dict(), "axis": res.axis, "mode": res.mode,
        "slope_l2": res.slope_l2, "slope_linf": res.slope_linf,
        "monotone": res.monotone, "reference": res.reference,
        "exact_errors": res.exact_errors})
    return 0 if res.monotone else 1


def _floats(text):
    return [float(v) for v in text.split(",")] if text else None


def cmd_amplitude(args):
    cfg = _load(args)
    amps = _floats(args.amplitudes) or [cfg.a_surf]
    fr = _floats(args.frictions) or [0.001, 0.01, 0.5]
    rows = amplitude_study(cfg, amps, frictions=fr, workers=args.workers)
    out = _out_dir(args, f"out/{cfg.name}-amplitude")
    with open(out / "amplitude.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["amplitude", "mode", "ratio", "breaking", "halt_reason"])
        for r in rows:
            w.writerow([r["amplitude"], r["mode"], r["ratio"], r["breaking"], r["halt_reason"]])
            ratio = "breaking" if r["breaking"] else f"{r['ratio']:.5f}" if r["ratio"] else "-"
            print(f"a={r['amplitude']:g} mode={r['mode']}: {ratio}")
    return 0


def cmd_breaking(args):
    cfg = _load(args)
    amps = _floats(args.amplitudes) or [cfg.a_surf]
    table = breaking_study(cfg, amps, workers=args.workers)
    out = _out_dir(args, f"out/{cfg.name}-breaking")
    _write_json(out / "breaking.json", {str(a): {str(m): r for m, r in v.items()}
                                        for a, v in table.items()})
    for a, rows in table.items():
        for m, r in rows.items():
            print(f"a={a:g} mode={m}: t={r['time']:.4f} crest={r['crest']:.4f}")
    return 0


def cmd_displacement(args):
    cfg = _load(args)
    trajs = displacement_study(cfg, mode=args.mode, workers=args.workers)
    out = _out_dir(args, f"out/{cfg.name}-displacement-{args.mode}")
    for tr in trajs:
        with open(out / f"{tr.label.replace('=', '_')}.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["time", "X", "Xdot"])
            for row in zip(tr.time, tr.X, tr.Xdot):
                w.writerow([repr(float(v)) for v in row])
        print(f"{tr.label}: max|X|={abs(tr.X).max():.4g} final X={tr.X[-1]:.4g} {tr.info}")
    _write_json(out / "summary.json", {tr.label: tr.info for tr in trajs})
    return 0


def cmd_preset(args):
    cfg = presets.get(args.name)
    print(json.dumps(cfg.to_dict(), indent=2))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="boussolid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("config", help="scenario JSON file")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--override-cfl", action="store_true",
                        help="run even if the CFL ratio exceeds 0.5")
        sp.add_argument("--snapshot-stride", type=int, help="steps between snapshots")
        sp.add_argument("--workers", type=int, default=None,
                        help="parallel processes for studies")

    sp = sub.add_parser("run", help="run one scenario")
    common(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("converge", help="refinement study")
    common(sp)
    sp.add_argument("--axis", choices=("space", "time"), required=True)
    sp.add_argument("--mode", choices=("exact", "relative"), default="exact")
    sp.add_argument("--levels", type=int, default=6)
    sp.add_argument("--reference-levels", type=int, default=2)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("amplitude", help="transmitted amplitude study")
    common(sp)
    sp.add_argument("--amplitudes", help="comma-separated wave amplitudes [m]")
    sp.add_argument("--frictions", help="comma-separated friction coefficients")
    sp.set_defaults(func=cmd_amplitude)

    sp = sub.add_parser("breaking", help="breaking position study")
    common(sp)
    sp.add_argument("--amplitudes", help="comma-separated wave amplitudes [m]")
    sp.set_defaults(func=cmd_breaking)

    sp = sub.add_parser("displacement", help="solid displacement study")
    common(sp)
    sp.add_argument("--mode", choices=("sweep", "single", "train", "ablation"),
                    default="single")
    sp.set_defaults(func=cmd_displacement)

    sp = sub.add_parser("preset", help="print a named config as JSON")
    sp.add_argument("name", choices=presets.names())
    sp.set_defaults(func=cmd_preset)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CFLViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
