"""Energy and mobility analysis for a hybrid flying/rolling multirotor
platform: rotor power modeling, steady-state equilibria, closed-loop planar
simulation, range optimization, terrain trade-off mapping, multi-agent
scaling bounds and thermal insulation sizing."""

from . import (aeropower, cli, control, dynamics, params, rangeopt,
               steadystate, thermal)

__all__ = ["aeropower", "cli", "control", "dynamics", "params", "rangeopt",
           "steadystate", "thermal"]

__version__ = "0.1.0"
