#!/usr/bin/env python3
"""Closed-loop rolling demo: PI rate control tracking a roll-rate step.

Simulates 60 s at a 0.6 rad/s setpoint (0.12 m/s ground speed), writes the
trajectory CSV to artifacts/ and prints the steady-tail power against the
steady-state solver prediction.
"""

import pathlib

import numpy as np

from mobilitylab import cli, dynamics, steadystate
from mobilitylab.params import ScenarioConfig

OUT = pathlib.Path(__file__).resolve().parent.parent / "artifacts"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    path = OUT / "closed_loop_rolling.csv"
    status = cli.main(["simulate", "--omega-des", "0.6", "--duration", "60",
                       "--dt", "0.01", "--record-every", "10",
                       "--out", str(path)])
    assert status == 0
    print(f"wrote {path}")

    cfg = ScenarioConfig()
    traj = dynamics.simulate_closed_loop(cfg, 0.6, duration=60.0, dt=0.01)
    tail = np.mean(traj.power[len(traj.power) // 2:])
    v = 0.6 * cfg.vehicle.shell_radius_l
    ss = steadystate.rolling_equilibrium(cfg, v).total_electrical_power
    print(f"mean steady-tail power: {tail:.4f} W")
    print(f"steady-state solver at v={v} m/s: {ss:.4f} W")
    print(f"relative difference: {abs(tail - ss) / ss * 100:.2f}%")


if __name__ == "__main__":
    main()
