"""Weakly nonlinear Boussinesq waves over a solid sliding on the bottom."""
from .errors import (LiftOff, NonPhysicalState, NoSolitaryWave, SimulationHalt,
                     SolidTouchedBoundary, WaveBreaking)
from .grid import Bathymetry, StaggeredGrid, build_grid, gaussian_bottom
from .integrator import Simulation, cfl_check
from .physics import FluidState, PhysicalParams
from .soliton import place_soliton, solve_profile, soliton_for_amplitude, speed_for_amplitude

__all__ = [
    "Bathymetry", "FluidState", "LiftOff", "NonPhysicalState", "NoSolitaryWave",
    "PhysicalParams", "Simulation", "SimulationHalt", "SolidTouchedBoundary",
    "StaggeredGrid", "WaveBreaking", "build_grid", "cfl_check", "gaussian_bottom",
    "place_soliton", "solve_profile", "soliton_for_amplitude", "speed_for_amplitude",
]
