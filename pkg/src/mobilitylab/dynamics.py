"""Planar time-domain simulation of the rolling vehicle and a flying agent.

The full 6-DOF contact simulation is out of scope; the steady-state analysis
only needs planar motion. The rolling vehicle is reduced to a single no-slip
degree of freedom about the roll axis:

    (J_yy + m l^2) domega/dt = tau_y - C_rr N l - m g sin(theta) l - drag l

with N = m g cos(theta) and v = omega l tied by the no-slip constraint.
The traction-force moment of the contact reaction is exactly the m l^2 term
absorbed into the effective inertia. The flying agent is a point mass moving
along the slope-parallel track at trimmed constant height.

Integration is fixed-step RK4 (deterministic); rolling-resistance torque is
gated off below |omega| = 1e-6 rad/s so static resistance cannot drive
motion from rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from . import aeropower, control, steadystate
from .params import ScenarioConfig

#: maximum allowed integration step, s
DT_MAX = 0.01
#: rolling resistance is inactive below this roll rate, rad/s
OMEGA_STATIC = 1e-6
#: tolerance on the flying trim constraint T cos(tilt) = m g cos(theta), N
FLY_TRIM_TOL = 1e-6


class TrimError(ValueError):
    """step_flying was handed a thrust/tilt pair violating height trim."""


@dataclass(frozen=True)
class SimState:
    position_s: float = 0.0      # m along slope
    speed_v: float = 0.0         # m/s
    roll_angle: float = 0.0      # rad
    roll_rate_omega: float = 0.0  # rad/s
    energy_consumed: float = 0.0  # J
    time: float = 0.0            # s


@dataclass(frozen=True)
class Trajectory:
    states: list[SimState]
    power: list[float]           # W, one per recorded state
    saturated: list[bool]

    def to_csv_rows(self) -> list[list[float]]:
        rows = []
        for st, p, sat in zip(self.states, self.power, self.saturated):
            rows.append([st.time, st.position_s, st.speed_v,
                         st.roll_rate_omega, p, st.energy_consumed,
                         int(sat)])
        return rows


CSV_HEADER = ["time_s", "position_m", "speed_mps", "omega_radps",
              "power_w", "energy_j", "saturated"]


def rolling_inertia(config: ScenarioConfig) -> float:
    """Roll-axis inertia; solid-cylinder default J_yy = m l^2 / 2."""
    return 0.5 * config.total_mass * config.vehicle.shell_radius_l ** 2


def _check_dt(dt: float) -> None:
    if not (0.0 < dt <= DT_MAX):
        raise ValueError(f"dt must be in (0, {DT_MAX}], got {dt!r}")


def _rolling_accel(config: ScenarioConfig, roll_angle: float, omega: float,
                   torque_y: float) -> float:
    env, veh, ter = config.environment, config.vehicle, config.terrain
    m = config.total_mass
    radius = veh.shell_radius_l
    normal = m * env.gravity * math.cos(ter.slope_theta)
    v = omega * radius
    area = aeropower.projected_area(veh, roll_angle, "rolling")
    drag = 0.5 * veh.drag_coefficient_cd * env.air_density * area * v * abs(v)
    resist_torque = (m * env.gravity * math.sin(ter.slope_theta) * radius
                     + drag * radius)
    if abs(omega) > OMEGA_STATIC:
        resist_torque += math.copysign(
            ter.rolling_resistance_crr * normal * radius, omega)
    inertia = rolling_inertia(config) + m * radius ** 2
    return (torque_y - resist_torque) / inertia


def rolling_electrical_power(config: ScenarioConfig, torque_y: float,
                             v: float) -> float:
    """Electrical power drawn to hold torque_y while translating at v."""
    veh = config.vehicle
    mixer = control.mixer_matrix(veh.rotor_arm_length_a,
                                 veh.torque_constant_k_tau)
    cmd = control.ControlCommand(torque_cmd=np.array([0.0, torque_y, 0.0]))
    forces = control.allocate(cmd, mixer)
    power = 0.0
    cache: dict[float, float] = {}
    for f_pair in forces:
        mag = abs(f_pair)
        if mag == 0.0:
            continue
        if mag not in cache:
            cache[mag] = steadystate._rolling_rotor_power(config, mag,
                                                          abs(v))
        power += cache[mag]
    return power


def step_rolling(state: SimState, torque_y: float, config: ScenarioConfig,
                 dt: float) -> SimState:
    """One RK4 step of the no-slip rolling reduction under torque_y."""
    _check_dt(dt)
    radius = config.vehicle.shell_radius_l

    def deriv(phi: float, omega: float) -> tuple[float, float]:
        return omega, _rolling_accel(config, phi, omega, torque_y)

    phi, om = state.roll_angle, state.roll_rate_omega
    k1 = deriv(phi, om)
    k2 = deriv(phi + 0.5 * dt * k1[0], om + 0.5 * dt * k1[1])
    k3 = deriv(phi + 0.5 * dt * k2[0], om + 0.5 * dt * k2[1])
    k4 = deriv(phi + dt * k3[0], om + dt * k3[1])
    phi_new = phi + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    om_new = om + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])

    power = rolling_electrical_power(config, torque_y, om * radius)
    return SimState(position_s=state.position_s
                    + (phi_new - phi) * radius,
                    speed_v=om_new * radius,
                    roll_angle=phi_new,
                    roll_rate_omega=om_new,
                    energy_consumed=state.energy_consumed + power * dt,
                    time=state.time + dt)


def flying_electrical_power(config: ScenarioConfig, thrust: float,
                            tilt: float, v: float) -> float:
    """Electrical power of one agent at (thrust, tilt) translating at v."""
    veh = config.vehicle
    f = thrust / 4.0
    nu = aeropower.induced_velocity(f, config.environment,
                                    veh.rotor_disk_area, v_inf=abs(v),
                                    alpha=tilt)
    op = aeropower.RotorOperatingPoint(thrust_f=f, freestream_v_inf=abs(v),
                                       angle_of_attack_alpha=-tilt,
                                       induced_velocity_nu=nu)
    return 4.0 * aeropower.rotor_power(op, veh.eta_propeller, veh.eta_motor,
                                       veh.eta_controller)


def step_flying(state: SimState, thrust: float, tilt: float,
                config: ScenarioConfig, dt: float) -> SimState:
    """One RK4 step of a single agent along the slope at constant height."""
    _check_dt(dt)
    env, veh, ter = config.environment, config.vehicle, config.terrain
    m = veh.cobot_mass
    height_residual = (thrust * math.cos(tilt)
                       - m * env.gravity * math.cos(ter.slope_theta))
    if abs(height_residual) > FLY_TRIM_TOL:
        raise TrimError(
            f"thrust/tilt violate the constant-height trim by "
            f"{height_residual:.3e} N")

    def accel(v: float) -> float:
        area = aeropower.projected_area(veh, tilt, "flying")
        drag = (0.5 * veh.drag_coefficient_cd * env.air_density
                * area * v * abs(v))
        along = (thrust * math.sin(tilt) - drag
                 - m * env.gravity * math.sin(ter.slope_theta))
        return along / m

    s, v = state.position_s, state.speed_v
    k1 = (v, accel(v))
    k2 = (v + 0.5 * dt * k1[1], accel(v + 0.5 * dt * k1[1]))
    k3 = (v + 0.5 * dt * k2[1], accel(v + 0.5 * dt * k2[1]))
    k4 = (v + dt * k3[1], accel(v + dt * k3[1]))
    s_new = s + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
    v_new = v + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])

    power = flying_electrical_power(config, thrust, tilt, v)
    return replace(state, position_s=s_new, speed_v=v_new,
                   energy_consumed=state.energy_consumed + power * dt,
                   time=state.time + dt)


def simulate_closed_loop(config: ScenarioConfig,
                         omega_des: Callable[[float], Sequence[float]] | float,
                         duration: float, dt: float,
                         gains: control.ControlGains | None = None,
                         record_every: int = 1) -> Trajectory:
    """PI rate control -> allocation -> rotor power -> rolling step, per tick.

    ``omega_des`` is either a constant desired roll rate (rad/s) or a
    callable t -> desired body-rate 3-vector.
    """
    if duration <= 0:
        raise ValueError(f"duration must be > 0, got {duration!r}")
    _check_dt(dt)
    if gains is None:
        gains = control.default_gains()
    veh = config.vehicle
    mixer = control.mixer_matrix(veh.rotor_arm_length_a,
                                 veh.torque_constant_k_tau)
    radius = veh.shell_radius_l

    if callable(omega_des):
        desired = omega_des
    else:
        const = np.array([0.0, float(omega_des), 0.0])
        desired = lambda t: const  # noqa: E731

    state = SimState()
    integ = np.zeros(3)
    states = [state]
    powers = [0.0]
    saturated = [False]
    steps = int(round(duration / dt))
    for i in range(steps):
        meas = np.array([0.0, state.roll_rate_omega, 0.0])
        cmd, integ = control.pi_rate_control(desired(state.time), meas,
                                             gains, integ, dt)
        forces = control.allocate(cmd, mixer)
        forces, sat = control.saturate_pair_forces(forces,
                                                   veh.max_rotor_thrust)
        # torque actually realized after saturation
        wrench = mixer.matrix_m @ forces
        torque_y = wrench[2]
        v = state.roll_rate_omega * radius
        power = rolling_electrical_power(config, torque_y, v)
        new_state = step_rolling(state, torque_y, config, dt)
        # step_rolling already charged the energy for this tick
        state = new_state
        if (i + 1) % record_every == 0:
            states.append(state)
            powers.append(power)
            saturated.append(sat)
    return Trajectory(states=states, power=powers, saturated=saturated)
