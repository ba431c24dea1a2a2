"""Named scenario configs.

``desk-*`` presets are nondimensional and sized to finish in seconds to a
minute on one core.  ``full-*`` presets use the dimensional tank of the
original experiments (20 m depth, 2000 m tank for single waves) and are slow.
"""
from .config import ScenarioConfig, nondimensional


def _desk():
    return {
        # flat-bottom soliton, refined in space
        "desk-flat-space": nondimensional(
            name="desk-flat-space", mu=0.1, eps=0.1, beta=0.1, bottom_mode="flat",
            tank_length=200.0, solid_center=102.0, dx=1.0, dt=0.001, t_end=1.0),
        # flat-bottom soliton, refined in time
        "desk-flat-time": nondimensional(
            name="desk-flat-time", mu=0.1, eps=0.1, beta=0.1, bottom_mode="flat",
            tank_length=200.0, solid_center=102.0, dx=0.05, dt=0.01, t_end=1.0),
        # coupled run, coarsest level of both ladders
        "desk-coupled": nondimensional(
            name="desk-coupled", mu=0.2, eps=0.2, beta=0.4, c_fric=0.001,
            tank_length=51.2, solid_center=25.0, dx=0.4, dt=0.002, t_end=5.0),
        "desk-cfl-stable": nondimensional(
            name="desk-cfl-stable", mu=1e-4, eps=0.1, beta=0.1, bottom_mode="flat",
            wave_offset=0.0, tank_length=2.0, solid_center=1.0, dx=0.004, dt=0.00112,
            t_end=1.0, energy_stride=1),
        "desk-cfl-unstable": nondimensional(
            name="desk-cfl-unstable", mu=1e-4, eps=0.1, beta=0.1, bottom_mode="flat",
            wave_offset=0.0, tank_length=2.0, solid_center=1.0, dx=0.004, dt=0.02,
            t_end=0.2, energy_stride=1, override_cfl=True),
        "desk-amplitude": nondimensional(
            name="desk-amplitude", mu=0.1, eps=0.2, beta=0.4, c_fric=0.001,
            tank_length=60.0, solid_center=25.0, dx=0.025, dt=0.007, t_end=12.0,
            stop_after_amplitude=True, energy_stride=50),
        "desk-friction": nondimensional(
            name="desk-friction", mu=0.1, eps=0.2, beta=0.3, c_fric=0.5,
            tank_length=60.0, solid_center=25.0, dx=0.025, dt=0.007, t_end=12.0,
            stop_after_amplitude=True, energy_stride=50),
        "desk-breaking": nondimensional(
            name="desk-breaking", mu=0.25, eps=0.35, beta=0.5, c_fric=0.5,
            tank_length=70.0, solid_center=35.0, dx=0.025, dt=0.007, t_end=10.0,
            breaking_detector=True, energy_stride=50),
        "desk-no-breaking": nondimensional(
            name="desk-no-breaking", mu=0.25, eps=0.1, beta=0.1, c_fric=0.5,
            tank_length=80.0, solid_center=35.0, dx=0.025, dt=0.007, t_end=10.0,
            breaking_detector=True, energy_stride=50),
        "desk-single": nondimensional(
            name="desk-single", mu=0.25, eps=0.2, beta=0.3, c_fric=0.001,
            tank_length=100.0, solid_center=35.0, dx=0.05, dt=0.0125, t_end=40.0,
            energy_stride=100),
        "desk-train": nondimensional(
            name="desk-train", mu=0.25, eps=0.2, beta=0.3, c_fric=0.001,
            wave="train", wave_count=10, tank_length=376.0, solid_center=336.0,
            dx=0.05, dt=0.0125, t_end=213.0, energy_stride=200),
        "desk-sweep": nondimensional(
            name="desk-sweep", mu=0.25, eps=0.25, beta=0.3, c_fric=0.001,
            tank_length=100.0, solid_center=35.0, dx=0.05, dt=0.0125, t_end=40.0,
            energy_stride=100),
    }


def _full():
    base = ScenarioConfig(name="full-passing-wave", h0=20.0, wavelength=40.0, a_surf=4.0,
                          a_bott=6.0, tank_length=2000.0, solid_center=1000.0,
                          dx=0.2, dt=0.005, t_end=60.0, c_fric=0.001, energy_stride=100)
    return {
        "full-passing-wave": base,
        "full-breaking": base.with_updates(name="full-breaking", a_surf=7.0, a_bott=10.0,
                                           c_fric=0.5, breaking_detector=True),
        "full-train": base.with_updates(name="full-train", a_bott=6.0, wave="train",
                                        wave_count=10, tank_length=15040.0,
                                        solid_center=13440.0, t_end=610.0),
    }


def presets():
    out = _desk()
    out.update(_full())
    return out


def names():
    return sorted(presets())


def get(name):
    """Config registered under `name`."""
    table = presets()
    if name not in table:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(sorted(table))}")
    return table[name]
