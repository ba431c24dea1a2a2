import json

import numpy as np
import pytest

from boussolid.harness import presets
from boussolid.harness.cli import main
from boussolid.harness.config import ScenarioConfig, nondimensional
from boussolid.harness.output import write_outputs
from boussolid.harness.runner import (CFLViolation, detect_breaking, refined_peak,
                                      run_scenario)
from boussolid.harness.studies import (ablation_fit, convergence_study, fit_slope,
                                       post_wave_displacements)


def _small(**kw):
    base = dict(mu=0.1, eps=0.1, beta=0.3, c_fric=0.01, tank_length=40.0,
                solid_center=20.0, dx=0.1, dt=0.02, t_end=0.4)
    base.update(kw)
    return nondimensional(**base)


def test_config_derived_parameters():
    cfg = ScenarioConfig(name="x")
    assert cfg.mu == pytest.approx(0.25)
    assert cfg.eps == pytest.approx(0.2)
    assert cfg.beta == pytest.approx(0.3)
    assert cfg.nd["tank_length"] == pytest.approx(50.0)
    assert cfg.cfl_ratio == pytest.approx(np.sqrt(9.81 * 20) * 0.02 / 1.0)


def test_config_validation_and_round_trip(tmp_path):
    with pytest.raises(ValueError):
        ScenarioConfig(name="x", a_surf=30.0)
    with pytest.raises(ValueError):
        ScenarioConfig.from_dict({"name": "x", "bogus": 1})
    cfg = _small()
    path = tmp_path / "c.json"
    cfg.to_json(path)
    assert ScenarioConfig.from_json(path) == cfg
    assert cfg.mu == pytest.approx(0.1)


def test_cfl_guard():
    with pytest.raises(CFLViolation):
        run_scenario(_small(dt=0.1))
    res = run_scenario(_small(dt=0.1, t_end=0.2, override_cfl=True))
    assert res.diagnostics["steps"] == 2


def test_detect_breaking():
    assert detect_breaking(np.zeros(10), 0.1) is None
    z = np.zeros(10)
    z[5:] = 0.15
    ev = detect_breaking(z, 0.1)
    assert ev.index == 4 and ev.slope == pytest.approx(1.5)
    assert detect_breaking(z, 0.1, orientation=-1) is None
    assert detect_breaking(z[::-1], 0.1, orientation=-1).index == 4
    assert detect_breaking(z[::-1], 0.1, orientation=0).index == 4


def test_refined_peak():
    x = np.linspace(0, 1, 11)
    px, pv = refined_peak(x, -(x - 0.43) ** 2 + 2.0)
    assert px == pytest.approx(0.43) and pv == pytest.approx(2.0)


def test_rest_scenario(tmp_path):
    res = run_scenario(_small(wave="rest"))
    assert res.completed
    assert not res.trajectory["X"].any()
    out = write_outputs(res, tmp_path)
    energy = np.loadtxt(out / "energy.csv", delimiter=",", skiprows=1)
    assert not energy[:, 1:].any()


def test_outputs_deterministic(tmp_path):
    cfg = _small(snapshot_stride=5)
    a = write_outputs(run_scenario(cfg), tmp_path / "a")
    b = write_outputs(run_scenario(cfg), tmp_path / "b")
    for name in ("snapshots.csv", "solid.csv", "energy.csv", "summary.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    head = (a / "snapshots.csv").read_text().splitlines()[0]
    assert head == "step,time,x,zeta"
    summary = json.loads((a / "summary.json").read_text())
    assert summary["derived"]["mu"] == pytest.approx(0.1)
    # the echoed config re-runs to an identical solid trajectory
    echo = ScenarioConfig.from_dict(summary["config"])
    c = write_outputs(run_scenario(echo), tmp_path / "c")
    assert (c / "solid.csv").read_bytes() == (a / "solid.csv").read_bytes()


def test_fixed_mode_keeps_solid():
    res = run_scenario(_small(bottom_mode="fixed"))
    assert not res.trajectory["X"].any()


def test_fit_slope():
    h = np.array([1.0, 0.5, 0.25])
    assert fit_slope(h, 3 * h ** 4) == pytest.approx(4.0)


def test_convergence_study_checks():
    with pytest.raises(ValueError):
        convergence_study(_small(), axis="both")
    with pytest.raises(ValueError):
        convergence_study(_small(), mode="exact")  # moving bottom
    with pytest.raises(ValueError):
        convergence_study(ScenarioConfig(name="dim", bottom_mode="flat"))


def test_small_exact_study():
    cfg = _small(bottom_mode="flat", tank_length=60.0, solid_center=30.0,
                 dx=0.4, dt=0.005, t_end=0.2)
    res = convergence_study(cfg, axis="space", mode="exact", levels=3)
    assert res.monotone
    assert res.slope_l2 > 3.0
    assert "L2" in res.table()


def test_ablation_fit_linear():
    t = np.linspace(0, 1, 50)
    slope, resid = ablation_fit(t, 1.0 - 0.9 * t)
    assert slope == pytest.approx(-0.9)
    assert resid < 1e-12


def test_post_wave_displacements_length():
    cfg = _small(wave="train", wave_count=2, wave_spacing=15.0, tank_length=60.0,
                 solid_center=45.0, t_end=1.0)
    res = run_scenario(cfg)
    assert len(post_wave_displacements(res)) <= 2


def test_presets_valid():
    for name in presets.names():
        cfg = presets.get(name)
        assert cfg.name == name
        assert cfg.cfl_ratio <= 0.5 or cfg.override_cfl
    with pytest.raises(KeyError):
        presets.get("nope")


def test_cli_run_and_preset(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    _small().to_json(cfg_path)
    assert main(["run", str(cfg_path), "--out", str(tmp_path / "out")]) == 0
    assert (tmp_path / "out" / "solid.csv").exists()
    assert main(["preset", "desk-single"]) == 0
    assert '"desk-single"' in capsys.readouterr().out
    _small(dt=0.1).to_json(cfg_path)
    assert main(["run", str(cfg_path), "--out", str(tmp_path / "o2")]) == 2
    assert main(["run", str(cfg_path), "--override-cfl", "--out", str(tmp_path / "o3")]) == 0
