import numpy as np
import pytest

from boussolid.grid import build_grid, gaussian_bottom
from boussolid.integrator import (AB3_WEIGHTS, AM4_WEIGHTS, RhsRecord, Simulation,
                                  StepHistory, ab3, am4, cfl_check)
from boussolid.physics import FluidState, PhysicalParams
from boussolid.solid import compute_c_solid
from boussolid.soliton import place_soliton, soliton_for_amplitude


def test_weights():
    assert AB3_WEIGHTS.sum() == pytest.approx(1.0, abs=1e-15)
    assert AM4_WEIGHTS.sum() == pytest.approx(1.0, abs=1e-15)


def test_cfl_examples():
    r, ok = cfl_check(0.001, 0.05, 9.81, 20.0)
    assert r == pytest.approx(0.2801, abs=1e-4) and ok
    assert cfl_check(0.5, 1.0, 1.0, 1.0) == (0.5, True)
    r, ok = cfl_check(0.005, 0.05, 9.81, 20.0)
    assert r == pytest.approx(1.4, abs=0.01) and not ok


def test_constant_history_updates():
    h = StepHistory()
    for _ in range(3):
        h.push(RhsRecord(np.full(4, 2.0), np.zeros(3)))
    assert h.full
    np.testing.assert_allclose(ab3(np.ones(4), h, 0.1, "E"), 1.2)
    np.testing.assert_allclose(am4(np.ones(4), np.full(4, 2.0), h, 0.1, "E"), 1.2)
    h.push(RhsRecord(np.zeros(4), np.zeros(3)))
    assert len(h) == 3
    np.testing.assert_array_equal(ab3(np.zeros(4), _zero_history(), 0.1, "E"), 0.0)


def _zero_history():
    h = StepHistory()
    for _ in range(3):
        h.push(RhsRecord(np.zeros(4), np.zeros(3)))
    return h


def _rest(g):
    return FluidState(np.zeros(g.n_nodes), np.zeros(g.n_mids), np.zeros(g.n_mids))


@pytest.mark.parametrize("mode", ["flat", "fixed", "moving"])
def test_rest_stays_at_rest(mode):
    g = build_grid(10.0, 0.1)
    bathy = gaussian_bottom(0.3, 1.0, 5.0)
    p = PhysicalParams(0.1, 0.2, 0.3, c_fric=0.01)
    p = p.with_c_solid(compute_c_solid(bathy, p, g))
    sim = Simulation(g, p, _rest(g), 0.01, bathy=bathy, mode=mode)
    for _ in range(10_000):
        sim.step()
    assert not sim.state.zeta.any()
    assert not sim.state.vbar.any()
    assert sim.X == 0.0
    # potential energy of the undisturbed layer is the same at every step
    assert sim.energy() == 0.0 if mode == "flat" else np.isfinite(sim.energy())


def test_free_solid_moves_linearly():
    g = build_grid(10.0, 0.1)
    bathy = gaussian_bottom(0.01, 1.0, 5.0, 1e-6)
    p = PhysicalParams(0.1, 0.2, 0.01, c_fric=0.0).with_c_solid(1.0)
    sim = Simulation(g, p, _rest(g), 0.01, bathy=bathy, mode="moving", xdot0=0.5)
    sim.pressure_enabled = False
    for _ in range(2):
        sim.step()
    assert sim.X == pytest.approx(0.01, rel=1e-12)
    assert sim.xdot == pytest.approx(0.5, rel=1e-12)


def test_constructor_checks():
    g = build_grid(10.0, 0.1)
    p = PhysicalParams(0.1, 0.2, 0.3)
    with pytest.raises(ValueError):
        Simulation(g, p, _rest(g), 0.01, mode="sliding")
    with pytest.raises(ValueError):
        Simulation(g, p, _rest(g), 0.01, mode="fixed")
    with pytest.raises(ValueError):
        Simulation(g, p, _rest(g), 0.01, bathy=gaussian_bottom(0.3, 1.0, 5.0), mode="moving")


@pytest.fixture(scope="module")
def soliton():
    return soliton_for_amplitude(1.0, 0.1, 0.1, mesh=0.005)


def _run(prof, dt, n, corrector_iterations=1):
    g = build_grid(60.0, 0.1)
    sim = Simulation(g, PhysicalParams(0.1, 0.1, 0.1), place_soliton(prof, 30.0, g), dt,
                     corrector_iterations=corrector_iterations)
    for _ in range(n):
        sim.step()
    return sim


def test_bootstrap_order(soliton):
    # two RK4 steps: error against a fine RK4 reference drops by >= 2^4 per halving
    T = 0.08
    ref = _run(soliton, T / 128, 2 * 64).state.zeta
    errs = []
    for k in range(3):
        g = build_grid(60.0, 0.1)
        dt = T / 2 / 2 ** k
        sim = Simulation(g, PhysicalParams(0.1, 0.1, 0.1), place_soliton(soliton, 30.0, g), dt)
        for _ in range(2 * 2 ** k):
            sim.rk4_step()
        errs.append(np.abs(sim.state.zeta - ref).max())
    assert np.log2(errs[0] / errs[1]) >= 3.5


def test_predictor_corrector_order(soliton):
    T = 0.4
    ref = _run(soliton, T / 256, 256).state.zeta
    errs = [np.abs(_run(soliton, T / n, n).state.zeta - ref).max() for n in (16, 32, 64)]
    slopes = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert slopes.min() >= 3.4


def test_corrector_iterations(soliton):
    a = _run(soliton, 0.01, 20).state.zeta
    b = _run(soliton, 0.01, 20, corrector_iterations=2).state.zeta
    assert 0 < np.abs(a - b).max() < 1e-6


def test_mirror_symmetry(soliton):
    g = build_grid(80.0, 0.1)
    left = place_soliton(soliton, 25.0, g)
    right = place_soliton(soliton, 55.0, g, direction=-1)
    state = FluidState(left.zeta + right.zeta, left.vbar + right.vbar, None)
    sim = Simulation(g, PhysicalParams(0.1, 0.1, 0.1), state, 0.01)
    for _ in range(300):
        sim.step()
        z, v = sim.state.zeta, sim.state.vbar
        assert np.abs(z - z[::-1]).max() <= 1e-10
        assert np.abs(v + v[::-1]).max() <= 1e-10


def test_flat_mode_ignores_solid_parameters(soliton):
    g = build_grid(60.0, 0.1)
    init = place_soliton(soliton, 30.0, g)
    a = Simulation(g, PhysicalParams(0.1, 0.1, 0.1), init, 0.01)
    b = Simulation(g, PhysicalParams(0.1, 0.1, 0.4, c_fric=0.7).with_c_solid(3.0), init,
                   0.01, bathy=gaussian_bottom(0.4, 1.0, 30.0), mode="flat")
    for _ in range(30):
        a.step()
        b.step()
    np.testing.assert_array_equal(a.state.zeta, b.state.zeta)


def test_conservation_on_flat_soliton(soliton):
    sim = _run(soliton, 0.005, 0)
    m0, e0 = sim.mass(), sim.energy()
    for _ in range(200):
        sim.step()
    assert abs(sim.mass() - m0) / max(1.0, abs(m0)) <= 1e-8
    assert abs(sim.energy() - e0) / e0 <= 1e-2
