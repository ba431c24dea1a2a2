"""Scenario configuration.

Physical inputs are dimensional (metres, seconds).  The solver works in
units where lengths are scaled by the base wavelength ``L`` and times by
``L / sqrt(g H0)``, so ``mu = H0^2/L^2``, ``eps = a_surf/H0`` and
``beta = a_bott/H0``.  Grid and time inputs are dimensional by default; set
``units = "nondimensional"`` to give them directly in solver units.
"""
import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

WAVE_KINDS = ("soliton", "train", "rest")
BOTTOM_MODES = ("moving", "fixed", "flat")
UNITS = ("dimensional", "nondimensional")


@dataclass(frozen=True)
class ScenarioConfig:
    """One wave-tank run.

    Attributes
    ----------
    h0, wavelength, a_surf, a_bott, g : float
        Base depth, base wavelength, wave amplitude, solid height [m] and
        gravity [m/s^2].
    tank_length, dx, dt, t_end, solid_center : float
        Tank and discretisation, in the units selected by `units`.
    wave : {"soliton", "train", "rest"}
        Initial data.
    wave_count : int
        Number of solitons in a train.
    wave_offset : float
        Distance from the solid centre to the (leading) crest, in base
        wavelengths; the wave starts upstream and travels towards the solid.
    wave_spacing : float or None
        Crest spacing of a train in base wavelengths; ``None`` picks the
        spacing at which neighbouring tails overlap below ``1e-10``.
    bottom_mode : {"moving", "fixed", "flat"}
    snapshot_stride : int
        Steps between stored snapshots (0 keeps only the first and last).
    energy_stride : int
        Steps between energy samples.
    breaking_detector : bool
        Halt when the surface slope criterion fires.
    breaking_face : {"front", "back", "both"}
        Which face of a travelling wave the slope test inspects.
    stop_after_amplitude : bool
        End the run once the transmitted amplitude has been measured.
    pressure_off_time : float or None
        Solver time from which the horizontal pressure force on the solid is
        dropped (nondimensional).
    """

    name: str = "scenario"
    h0: float = 20.0
    wavelength: float = 40.0
    a_surf: float = 4.0
    a_bott: float = 6.0
    g: float = 9.81
    units: str = "dimensional"
    tank_length: float = 2000.0
    dx: float = 1.0
    dt: float = 0.02
    t_end: float = 10.0
    solid_center: float = 1000.0
    c_fric: float = 0.001
    m_tilde: float = 2.0 / 3.0
    delta: float = 1e-10
    bottom_shape_length: float = 1.0
    bottom_truncation: float = 1e-4
    wave: str = "soliton"
    wave_amplitude: float = 1.0
    wave_count: int = 1
    wave_offset: float = 2.0
    wave_spacing: float = None
    bottom_mode: str = "moving"
    snapshot_stride: int = 0
    energy_stride: int = 1
    corrector_iterations: int = 1
    breaking_detector: bool = False
    breaking_face: str = "front"
    h_min: float = 1e-3
    override_cfl: bool = False
    stop_after_amplitude: bool = False
    pressure_off_time: float = None
    profile_mesh: float = None

    def __post_init__(self):
        if self.units not in UNITS:
            raise ValueError(f"units must be one of {UNITS}")
        if self.wave not in WAVE_KINDS:
            raise ValueError(f"wave must be one of {WAVE_KINDS}")
        if self.bottom_mode not in BOTTOM_MODES:
            raise ValueError(f"bottom_mode must be one of {BOTTOM_MODES}")
        if self.breaking_face not in ("front", "back", "both"):
            raise ValueError("breaking_face must be 'front', 'back' or 'both'")
        for name in ("mu", "eps", "beta"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ValueError(f"derived {name}={value:.4g} must lie in (0, 1]")
        if self.wave_count < 1:
            raise ValueError("wave_count must be >= 1")

    # -- derived parameters ----------------------------------------------
    @property
    def mu(self):
        return (self.h0 / self.wavelength) ** 2

    @property
    def eps(self):
        return self.a_surf / self.h0

    @property
    def beta(self):
        return self.a_bott / self.h0

    @property
    def wave_speed(self):
        return math.sqrt(self.g * self.h0)

    def _length(self, value):
        return value if self.units == "nondimensional" else value / self.wavelength

    def _time(self, value):
        if self.units == "nondimensional":
            return value
        return value * self.wave_speed / self.wavelength

    @property
    def nd(self):
        """Solver-unit tank length, grid spacing, time step, end time and solid centre."""
        return {
            "tank_length": self._length(self.tank_length),
            "dx": self._length(self.dx),
            "dt": self._time(self.dt),
            "t_end": self._time(self.t_end),
            "solid_center": self._length(self.solid_center),
        }

    @property
    def cfl_ratio(self):
        nd = self.nd
        return nd["dt"] / nd["dx"]

    def with_updates(self, **changes):
        return replace(self, **changes)

    # -- serialisation ----------------------------------------------------
    def to_dict(self):
        return asdict(self)

    def derived(self):
        out = {"mu": self.mu, "eps": self.eps, "beta": self.beta,
               "cfl_ratio": self.cfl_ratio}
        out.update({f"{k}_nd": v for k, v in self.nd.items()})
        return out

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_json(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")


def nondimensional(**kwargs):
    """Config with grid and time inputs in solver units.

    ``mu``, ``eps`` and ``beta`` may be given directly; they are turned
    into a wavelength and amplitudes for the default depth.
    """
    h0 = kwargs.pop("h0", 20.0)
    mu = kwargs.pop("mu", None)
    eps = kwargs.pop("eps", None)
    beta = kwargs.pop("beta", None)
    if mu is not None:
        kwargs["wavelength"] = h0 / math.sqrt(mu)
    if eps is not None:
        kwargs["a_surf"] = eps * h0
    if beta is not None:
        kwargs["a_bott"] = beta * h0
    return ScenarioConfig(h0=h0, units="nondimensional", **kwargs)
