"""Halt conditions raised by the solver.

Every condition that stops a simulation derives from :class:`SimulationHalt`
so the harness can catch them in one place and record the reason.
"""


class SimulationHalt(Exception):
    """Base class for conditions that end a run early."""

    reason = "halt"


class NonPhysicalState(SimulationHalt):
    """Fluid height dropped to or below the configured lower bound."""

    reason = "non_physical_state"


class SolidTouchedBoundary(SimulationHalt):
    """The translated solid support reached a tank wall."""

    reason = "solid_touched_boundary"


class LiftOff(SimulationHalt):
    """Normal force on the solid became non-positive."""

    reason = "lift_off"


class WaveBreaking(SimulationHalt):
    """The free-surface slope criterion fired."""

    reason = "breaking"

    def __init__(self, message, index=None, position=None):
        super().__init__(message)
        self.index = index
        self.position = position


class NoSolitaryWave(ValueError):
    """The profile ODE has no homoclinic orbit for the requested speed."""
