"""Aerodynamic drag, projected area, induced velocity and rotor power.

All operations are pure functions.

Angle-of-attack sign convention: ``alpha`` is the pitch of the rotor plane's
leading edge relative to the freestream. A rotor tilted *into* the flight
direction (propulsive tilt, the equilibrium case for this vehicle) carries
``alpha < 0``, which makes the ``-v_inf*sin(alpha)`` term of the power model
positive. The induced-velocity solver is called by the equilibrium code with
the axial inflow component taken as *adding* to the induced flow (climb-like
branch of momentum theory), i.e. with ``alpha = |tilt|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import EnvironmentParams, VehicleParams

#: bisection tolerance on induced velocity, m/s
INDUCED_TOL = 1e-10
#: iteration cap for the induced-velocity bisection
INDUCED_MAX_ITER = 200


class SolverError(RuntimeError):
    """The induced-velocity bisection failed to converge."""


@dataclass(frozen=True)
class RotorOperatingPoint:
    thrust_f: float            # N, >= 0
    freestream_v_inf: float    # m/s, >= 0
    angle_of_attack_alpha: float  # rad
    induced_velocity_nu: float    # m/s, >= 0


def projected_area(vehicle: VehicleParams, alpha: float, mode: str) -> float:
    """Body area projected on the plane orthogonal to the velocity vector.

    A = (h|cos a| + 2 l |sin a|) w, with h selected by ``mode`` ("rolling"
    or "flying"). Pi-periodic and strictly positive.
    """
    if mode == "rolling":
        h = vehicle.body_height_h_rolling
    elif mode == "flying":
        h = vehicle.body_height_h_flying
    else:
        raise ValueError(f"mode must be 'rolling' or 'flying', got {mode!r}")
    return (h * abs(math.cos(alpha))
            + 2.0 * vehicle.shell_radius_l * abs(math.sin(alpha))
            ) * vehicle.shell_width_w


def drag_force(env: EnvironmentParams, area: float, speed: float,
               cd: float = 2.1) -> float:
    """Drag magnitude 0.5 * cd * rho * A * v^2, opposing motion."""
    return 0.5 * cd * env.air_density * area * speed * speed


def induced_velocity(thrust: float, env: EnvironmentParams, disk_area: float,
                     v_inf: float = 0.0, alpha: float = 0.0) -> float:
    """Momentum-theory induced velocity through a rotor disk.

    Returns the non-negative root nu of

        nu * sqrt((v_inf cos a)^2 + (v_inf sin a + nu)^2) = f / (2 rho A)

    by bracketed bisection. At v_inf = 0 this is the hover closed form
    sqrt(f / (2 rho A)).
    """
    if thrust < 0:
        raise ValueError(f"thrust must be >= 0, got {thrust!r}")
    if disk_area <= 0:
        raise ValueError(f"disk_area must be > 0, got {disk_area!r}")
    if thrust == 0.0:
        return 0.0
    rhs = thrust / (2.0 * env.air_density * disk_area)
    if v_inf == 0.0:
        return math.sqrt(rhs)

    vx = v_inf * math.cos(alpha)
    vz = v_inf * math.sin(alpha)

    def residual(nu: float) -> float:
        return nu * math.hypot(vx, vz + nu) - rhs

    lo = 0.0
    hi = math.sqrt(rhs)  # hover value brackets from above when inflow adds
    it = 0
    while residual(hi) < 0.0:
        hi *= 2.0
        it += 1
        if it > INDUCED_MAX_ITER:
            raise SolverError("failed to bracket induced velocity")
    for _ in range(INDUCED_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo < INDUCED_TOL:
            return 0.5 * (lo + hi)
    raise SolverError(
        f"induced velocity bisection did not converge to {INDUCED_TOL} "
        f"in {INDUCED_MAX_ITER} iterations")


def rotor_power(op_point: RotorOperatingPoint, eta_p: float, eta_m: float,
                eta_c: float) -> float:
    """Electrical power P = f (nu - v_inf sin a) / (eta_p eta_m eta_c).

    Clamped at zero: descending-flight windmilling recovery is not modeled.
    """
    for name, eta in (("eta_p", eta_p), ("eta_m", eta_m), ("eta_c", eta_c)):
        if not (0.0 < eta <= 1.0):
            raise ValueError(f"{name} must be in (0, 1], got {eta!r}")
    op = op_point
    aero = op.thrust_f * (op.induced_velocity_nu
                          - op.freestream_v_inf
                          * math.sin(op.angle_of_attack_alpha))
    return max(0.0, aero) / (eta_p * eta_m * eta_c)


def cobot_hover_power(env: EnvironmentParams, vehicle: VehicleParams) -> float:
    """Total electrical hover power of one agent (4 rotors, v_inf = 0)."""
    f = vehicle.cobot_mass * env.gravity / 4.0
    nu = induced_velocity(f, env, vehicle.rotor_disk_area)
    op = RotorOperatingPoint(thrust_f=f, freestream_v_inf=0.0,
                             angle_of_attack_alpha=0.0,
                             induced_velocity_nu=nu)
    return 4.0 * rotor_power(op, vehicle.eta_propeller, vehicle.eta_motor,
                             vehicle.eta_controller)
