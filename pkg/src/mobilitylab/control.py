"""PI body-rate control, torque allocation and thrust-to-speed mapping.

The 8-rotor two-agent vehicle is actuated through four propeller pairs
(A..D); each pair force is the difference of two opposed rotors, of which
only one spins at a time. The allocation map is

    [f_cmd, tau_x, tau_y, tau_z]^T = M [f_A, f_B, f_C, f_D]^T

with M as printed below; rolling uses pure torque (f_cmd = 0).

Rotor-index convention: pair A = rotors (1, 5), B = (2, 6), C = (3, 7),
D = (4, 8); the first index of each pair spins for a positive pair force.
Any column permutation consistent with M would be equally valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MixerGeometry:
    arm_length_a: float
    c: float           # = a / sqrt(2)
    k_tau: float
    matrix_m: np.ndarray

    @property
    def inverse(self) -> np.ndarray:
        # M has orthogonal rows: M^-1 = M^T diag(4, 4c^2, 4c^2, 4 k_tau^2)^-1
        d = np.array([4.0, 4.0 * self.c ** 2, 4.0 * self.c ** 2,
                      4.0 * self.k_tau ** 2])
        return self.matrix_m.T / d


@dataclass(frozen=True)
class ControlGains:
    kp: np.ndarray                    # N m s/rad, per axis
    ki: np.ndarray                    # N m/rad, per axis
    integrator_limit: float = 0.5     # N m


def default_gains() -> ControlGains:
    """Gains tuned so the closed rolling loop tracks a 1 rad/s step to < 2%."""
    return ControlGains(kp=np.full(3, 0.4), ki=np.full(3, 0.2),
                        integrator_limit=0.5)


@dataclass(frozen=True)
class ControlCommand:
    torque_cmd: np.ndarray   # N m, body frame
    thrust_cmd: float = 0.0  # N; 0 in pure-torque mode


def pi_rate_control(omega_des: np.ndarray, omega_meas: np.ndarray,
                    gains: ControlGains, integrator_state: np.ndarray,
                    dt: float) -> tuple[ControlCommand, np.ndarray]:
    """One PI step: tau = Kp e + Ki I, I clamped at +-integrator_limit."""
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    e = np.asarray(omega_des, float) - np.asarray(omega_meas, float)
    limit = gains.integrator_limit
    integ = np.clip(np.asarray(integrator_state, float) + e * dt,
                    -limit, limit)
    torque = gains.kp * e + gains.ki * integ
    return ControlCommand(torque_cmd=torque, thrust_cmd=0.0), integ


def mixer_matrix(arm_length_a: float, k_tau: float) -> MixerGeometry:
    """Build the pair-force allocation matrix for arm length a and k_tau."""
    if arm_length_a <= 0 or k_tau <= 0:
        raise ValueError("arm_length_a and k_tau must be > 0")
    c = arm_length_a / math.sqrt(2.0)
    m = np.array([
        [1.0, 1.0, 1.0, 1.0],
        [-c, c, c, -c],
        [-c, -c, c, c],
        [-k_tau, k_tau, -k_tau, k_tau],
    ])
    return MixerGeometry(arm_length_a=arm_length_a, c=c, k_tau=k_tau,
                         matrix_m=m)


def allocate(cmd: ControlCommand, mixer: MixerGeometry) -> np.ndarray:
    """Pair forces (f_A..f_D) with M @ f = (thrust_cmd, torque_cmd)."""
    wrench = np.concatenate(([cmd.thrust_cmd], np.asarray(cmd.torque_cmd,
                                                          float)))
    return mixer.inverse @ wrench


def saturate_pair_forces(forces: np.ndarray,
                         max_rotor_thrust: float) -> tuple[np.ndarray, bool]:
    """Scale pair forces uniformly into the rotor thrust limit.

    Uniform scaling preserves the commanded torque direction. Returns the
    (possibly scaled) forces and a saturation flag.
    """
    peak = float(np.max(np.abs(forces)))
    if peak <= max_rotor_thrust:
        return forces, False
    return forces * (max_rotor_thrust / peak), True


def pair_to_rotor_speeds(f_pair: float, k_t: float) -> tuple[float, float]:
    """Rotor speeds (n_i, n_j) of a pair; exactly one spins, f = k_t n^2."""
    if k_t <= 0:
        raise ValueError(f"k_t must be > 0, got {k_t!r}")
    if f_pair >= 0:
        return math.sqrt(f_pair / k_t), 0.0
    return 0.0, math.sqrt(-f_pair / k_t)
