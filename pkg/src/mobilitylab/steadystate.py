"""Steady-state planar equilibria: rolling on a slope, flying above one.

Rolling model (no slip, pure rotor torque): at constant speed the commanded
torque must overcome, through the contact point, the aerodynamic drag, the
along-slope weight component and the rolling resistance:

    tau = (drag + m g sin(theta) + C_rr N) * l,      N = m g cos(theta)

which is the fixed point of the rolling dynamics equation in the dynamics
module. The reported traction force F_t is the total resistive force
drag + m g sin(theta) + C_rr N.

Rolling rotor freestream: each rotor sees the translational speed v edgewise
(alpha = 0). The rotor tangential speed about the roll axis is comparable to
v at the rolling optimum but its induced-power correction is second order,
so it is neglected; the choice is isolated in ``_rolling_rotor_power``.

Rolling drag area: the cylinder's attitude rotates continuously, so the
steady-state drag area is the time average over one revolution,
(2/pi) (h + 2 l) w.

Flying trim uses the full vector balance in slope-aligned axes (thrust
magnitude and tilt as unknowns); no small-angle approximation, since drag is
comparable to weight at the speeds of interest in a dense atmosphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import aeropower, control
from .params import ScenarioConfig

#: fixed-point iteration cap / tolerance for the flying tilt angle
TRIM_MAX_ITER = 100
TRIM_TOL = 1e-9


class InfeasibleError(RuntimeError):
    """The equilibrium demands more thrust than a rotor can produce."""


@dataclass(frozen=True)
class RollingSolution:
    speed_v: float
    required_torque: float          # N m about the roll axis
    per_rotor_thrust: np.ndarray    # N, one entry per rotor (8 for 2 agents)
    normal_force: float             # N
    drag: float                     # N
    rolling_resistance_force: float  # N (C_rr * N)
    total_electrical_power: float   # W


@dataclass(frozen=True)
class FlyingSolution:
    speed_v: float
    tilt_alpha: float               # rad, positive tilted into flight
    total_thrust: float             # N, summed over all agents
    drag: float                     # N, summed over all agents
    total_electrical_power: float   # W, summed over all agents


def average_rolling_area(config: ScenarioConfig) -> float:
    """Revolution-averaged projected area of the rolling cylinder."""
    veh = config.vehicle
    return (2.0 / math.pi) * (veh.body_height_h_rolling
                              + 2.0 * veh.shell_radius_l) * veh.shell_width_w


def _rolling_rotor_power(config: ScenarioConfig, thrust: float,
                         v: float) -> float:
    """Electrical power of one rolling rotor; edgewise freestream at v."""
    veh = config.vehicle
    nu = aeropower.induced_velocity(thrust, config.environment,
                                    veh.rotor_disk_area, v_inf=v, alpha=0.0)
    op = aeropower.RotorOperatingPoint(thrust_f=thrust, freestream_v_inf=v,
                                       angle_of_attack_alpha=0.0,
                                       induced_velocity_nu=nu)
    return aeropower.rotor_power(op, veh.eta_propeller, veh.eta_motor,
                                 veh.eta_controller)


def rolling_resistive_force(config: ScenarioConfig, v: float) -> float:
    """Total resistive force the rolling torque must overcome at speed v."""
    env, ter = config.environment, config.terrain
    m = config.total_mass
    normal = m * env.gravity * math.cos(ter.slope_theta)
    drag = aeropower.drag_force(env, average_rolling_area(config), v,
                                cd=config.vehicle.drag_coefficient_cd)
    return (drag + m * env.gravity * math.sin(ter.slope_theta)
            + ter.rolling_resistance_crr * normal)


def rolling_equilibrium(config: ScenarioConfig, v: float) -> RollingSolution:
    """Steady rolling at speed v on the configured slope."""
    if v < 0:
        raise ValueError(f"v must be >= 0, got {v!r}")
    env, veh, ter = config.environment, config.vehicle, config.terrain
    m = config.total_mass
    normal = m * env.gravity * math.cos(ter.slope_theta)
    drag = aeropower.drag_force(env, average_rolling_area(config), v,
                                cd=veh.drag_coefficient_cd)
    resist = rolling_resistive_force(config, v)
    torque = resist * veh.shell_radius_l

    mixer = control.mixer_matrix(veh.rotor_arm_length_a,
                                 veh.torque_constant_k_tau)
    cmd = control.ControlCommand(torque_cmd=np.array([0.0, torque, 0.0]))
    pair_forces = control.allocate(cmd, mixer)
    if np.max(np.abs(pair_forces)) > veh.max_rotor_thrust:
        raise InfeasibleError(
            f"rolling at v={v} m/s needs pair force "
            f"{np.max(np.abs(pair_forces)):.3f} N > max rotor thrust "
            f"{veh.max_rotor_thrust} N")

    # pair k maps to rotors (k, k+4); the spinning one carries |f_pair|
    rotor_thrust = np.zeros(8)
    power = 0.0
    for k, f_pair in enumerate(pair_forces):
        n_i, n_j = control.pair_to_rotor_speeds(f_pair, veh.thrust_constant_k_t)
        f_mag = abs(f_pair)
        rotor_thrust[k if n_i > 0 or f_pair == 0 else k + 4] = f_mag
        if f_mag > 0:
            power += _rolling_rotor_power(config, f_mag, v)

    return RollingSolution(speed_v=v, required_torque=torque,
                           per_rotor_thrust=rotor_thrust,
                           normal_force=normal, drag=drag,
                           rolling_resistance_force=(
                               ter.rolling_resistance_crr * normal),
                           total_electrical_power=power)


def flying_equilibrium(config: ScenarioConfig, v: float) -> FlyingSolution:
    """Constant-height-above-slope trim of the flying agents at speed v.

    Each of the ``num_agents`` agents flies independently; reported thrust,
    drag and power are totals over all agents. In slope-aligned axes the
    trim is T sin(a) = drag + m g sin(theta) along the slope and
    T cos(a) = m g cos(theta) normal to it, with the projected area itself a
    function of the solved tilt a.
    """
    if v < 0:
        raise ValueError(f"v must be >= 0, got {v!r}")
    env, veh, ter = config.environment, config.vehicle, config.terrain
    m = veh.cobot_mass
    along_weight = m * env.gravity * math.sin(ter.slope_theta)
    normal_weight = m * env.gravity * math.cos(ter.slope_theta)

    alpha = 0.0
    drag = 0.0
    for _ in range(TRIM_MAX_ITER):
        area = aeropower.projected_area(veh, alpha, "flying")
        drag = aeropower.drag_force(env, area, v, cd=veh.drag_coefficient_cd)
        new_alpha = math.atan2(drag + along_weight, normal_weight)
        if abs(new_alpha - alpha) < TRIM_TOL:
            alpha = new_alpha
            break
        alpha = new_alpha
    else:
        raise aeropower.SolverError(
            f"flying trim fixed point did not converge at v={v}")

    # re-evaluate at the converged tilt so the trim residuals are exact
    area = aeropower.projected_area(veh, alpha, "flying")
    drag = aeropower.drag_force(env, area, v, cd=veh.drag_coefficient_cd)
    thrust = math.hypot(drag + along_weight, normal_weight)
    alpha = math.atan2(drag + along_weight, normal_weight)

    f = thrust / 4.0
    if f > veh.max_rotor_thrust:
        raise InfeasibleError(
            f"flying at v={v} m/s needs per-rotor thrust {f:.3f} N "
            f"> max rotor thrust {veh.max_rotor_thrust} N")

    # axial inflow component of the freestream adds for propulsive tilt
    nu = aeropower.induced_velocity(f, env, veh.rotor_disk_area,
                                    v_inf=v, alpha=alpha)
    op = aeropower.RotorOperatingPoint(thrust_f=f, freestream_v_inf=v,
                                       angle_of_attack_alpha=-alpha,
                                       induced_velocity_nu=nu)
    per_agent = 4.0 * aeropower.rotor_power(op, veh.eta_propeller,
                                            veh.eta_motor,
                                            veh.eta_controller)
    n = config.num_agents
    return FlyingSolution(speed_v=v, tilt_alpha=alpha,
                          total_thrust=n * thrust, drag=n * drag,
                          total_electrical_power=n * per_agent)
