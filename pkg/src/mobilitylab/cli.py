"""Command-line front end emitting plot-ready CSV / JSON artifacts.

    mobilitylab <subcommand> [--config FILE] [--set key=value]...
                             [--out PATH] [--format csv|json]

Subcommands: range-sweep, power-curve, tradeoff-map, scaling, simulate,
thermal. Exit status 2 flags argument/configuration errors, 1 an infeasible
analysis; outputs are deterministic (byte-identical across runs).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import dynamics, rangeopt, thermal
from .params import (ConfigError, ScenarioConfig, ValidationError,
                     config_from_mapping, earth_defaults)

#: default thickness sweep for the thermal table, m
THERMAL_THICKNESS_GRID = np.linspace(0.005, 0.05, 46)


@dataclass(frozen=True)
class Table:
    header: list[str]
    rows: list[list[float]]


def emit_csv(table: Table, path: str | None) -> int:
    """Write a table as UTF-8 CSV with LF endings and %.9g cells.

    Returns the number of bytes written; ``path=None`` writes to stdout.
    """
    lines = [",".join(table.header)]
    for row in table.rows:
        lines.append(",".join(f"{cell:.9g}" for cell in row))
    data = ("\n".join(lines) + "\n").encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)
    return len(data)


def _emit_json(summary: dict, path: str | None) -> int:
    data = (json.dumps(summary, indent=2, sort_keys=True) + "\n"
            ).encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)
    return len(data)


def _build_config(args: argparse.Namespace) -> ScenarioConfig:
    values: dict = {}
    if args.env == "earth":
        values.update(asdict(earth_defaults()))
    path = args.config or os.environ.get("MOBILITYLAB_CONFIG")
    if path:
        from .params import load_config, serialize  # parse then re-flatten
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        cfg = load_config(text)
        for line in serialize(cfg).splitlines():
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    for item in args.set or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise ValidationError(f"--set expects key=value, got {item!r}")
        values[key.strip()] = val.strip()
    return config_from_mapping(values)


def _cmd_range_sweep(args, config) -> tuple[Table, dict]:
    curve = rangeopt.range_sweep(config, args.mode, hotel_w=args.hotel_w,
                                 refine=args.refine)
    rows = [[v, p, r] for v, p, r in zip(curve.velocity, curve.power,
                                         curve.range_km)
            if math.isfinite(p)]
    summary = {"mode": curve.mode, "optimum_v_mps": curve.optimum_v,
               "optimum_range_km": curve.optimum_range_km}
    return Table(["v_mps", "power_w", "range_km"], rows), summary


def _cmd_power_curve(args, config) -> tuple[Table, dict]:
    curve = rangeopt.range_sweep(config, args.mode, hotel_w=args.hotel_w)
    rows = [[v, p] for v, p in zip(curve.velocity, curve.power)
            if math.isfinite(p)]
    i = int(np.nanargmin(curve.power))
    summary = {"mode": curve.mode,
               "min_power_w": float(curve.power[i]),
               "min_power_v_mps": float(curve.velocity[i])}
    return Table(["v_mps", "power_w"], rows), summary


def _cmd_tradeoff_map(args, config) -> tuple[Table, dict]:
    grid = rangeopt.tradeoff_grid(
        config, crr_range=(args.crr_min, args.crr_max),
        theta_range_deg=(args.theta_min_deg, args.theta_max_deg),
        resolution=args.resolution)
    rows = []
    for i, crr in enumerate(grid.crr):
        for j, th in enumerate(grid.theta_deg):
            rows.append([crr, th, grid.delta_range_km[i, j],
                         grid.flying_range_km[i, j]])
    # crossover boundary: per C_rr, first slope where flying overtakes
    boundary = []
    for i, crr in enumerate(grid.crr):
        for j, th in enumerate(grid.theta_deg):
            d = grid.delta_range_km[i, j]
            if math.isfinite(d) and d < 0:
                boundary.append([float(crr), float(th)])
                break
    summary = {"crossover_boundary_crr_thetadeg": boundary,
               "flying_range_km_min": float(np.nanmin(grid.flying_range_km)),
               "flying_range_km_max": float(np.nanmax(grid.flying_range_km))}
    return Table(["crr", "theta_deg", "delta_km", "fly_km"], rows), summary


def _cmd_scaling(args, config) -> tuple[Table, dict]:
    curve = rangeopt.scaling_bounds(config,
                                    range(args.n_min, args.n_max + 1))
    rows = [[float(n), lo, up] for n, lo, up in
            zip(curve.n, curve.ratio_lower, curve.ratio_upper)]
    summary = {"n": [int(n) for n in curve.n],
               "ratio_lower": list(map(float, curve.ratio_lower)),
               "ratio_upper": list(map(float, curve.ratio_upper))}
    return Table(["n", "ratio_lower", "ratio_upper"], rows), summary


def _cmd_simulate(args, config) -> tuple[Table, dict]:
    traj = dynamics.simulate_closed_loop(config, args.omega_des,
                                         args.duration, args.dt,
                                         record_every=args.record_every)
    final = traj.states[-1]
    summary = {"final_time_s": final.time,
               "final_speed_mps": final.speed_v,
               "final_omega_radps": final.roll_rate_omega,
               "energy_consumed_j": final.energy_consumed,
               "saturated_any": bool(any(traj.saturated))}
    return Table(dynamics.CSV_HEADER, traj.to_csv_rows()), summary


def _cmd_thermal(args, config) -> tuple[Table, dict]:
    spec = thermal.ThermalSpec(
        outer_radius_r2=thermal.ThermalSpec().inner_radius_r1 + 0.02,
        outer_temp_t2=config.environment.ambient_temperature)
    summary: dict = {"ambient_temp_c": spec.outer_temp_t2}
    if args.budget_w is not None:
        t = thermal.thickness_for_budget(args.budget_w, spec)
        thicknesses = [t]
        summary["budget_w"] = args.budget_w
        summary["thickness_m"] = t
    elif args.thickness_m is not None:
        thicknesses = [args.thickness_m]
    else:
        thicknesses = THERMAL_THICKNESS_GRID
    rows = thermal.sizing_table(spec, thicknesses)
    summary["rows"] = len(rows)
    return Table(["thickness_m", "loss_w", "heater_w", "mass_kg"],
                 rows), summary


_COMMANDS = {
    "range-sweep": _cmd_range_sweep,
    "power-curve": _cmd_power_curve,
    "tradeoff-map": _cmd_tradeoff_map,
    "scaling": _cmd_scaling,
    "simulate": _cmd_simulate,
    "thermal": _cmd_thermal,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mobilitylab",
        description="Energy and mobility analysis for a hybrid "
                    "flying/rolling multirotor platform.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--config", help="scenario config file "
                       "(key=value lines or JSON); falls back to "
                       "$MOBILITYLAB_CONFIG")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a single config field")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--env", choices=("titan", "earth"), default="titan",
                       help="environment preset")

    for name in ("range-sweep", "power-curve"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--mode", choices=("rolling", "flying"),
                       required=True)
        p.add_argument("--hotel-w", type=float, default=0.0,
                       help="constant non-propulsive load added to total "
                            "power, W")
        if name == "range-sweep":
            p.add_argument("--refine", action="store_true",
                           help="golden-section refinement of the optimum")

    p = sub.add_parser("tradeoff-map")
    common(p)
    p.add_argument("--crr-min", type=float, default=0.01)
    p.add_argument("--crr-max", type=float, default=0.2)
    p.add_argument("--theta-min-deg", type=float, default=-0.5)
    p.add_argument("--theta-max-deg", type=float, default=2.0)
    p.add_argument("--resolution", type=int, default=20)

    p = sub.add_parser("scaling")
    common(p)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=12)

    p = sub.add_parser("simulate")
    common(p)
    p.add_argument("--omega-des", type=float, default=1.0,
                   help="desired roll rate, rad/s")
    p.add_argument("--duration", type=float, default=10.0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--record-every", type=int, default=1)

    p = sub.add_parser("thermal")
    common(p)
    p.add_argument("--budget-w", type=float,
                   help="heater budget; solve for the thickness")
    p.add_argument("--thickness-m", type=float,
                   help="evaluate a single insulation thickness")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "simulate":
        if not (0.0 < args.dt <= dynamics.DT_MAX):
            print(f"error: --dt must be in (0, {dynamics.DT_MAX}]",
                  file=sys.stderr)
            return 2
        if args.duration <= 0 or args.record_every < 1:
            print("error: --duration must be > 0 and --record-every >= 1",
                  file=sys.stderr)
            return 2
    try:
        config = _build_config(args)
    except (ConfigError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        table, summary = _COMMANDS[args.subcommand](args, config)
    except (rangeopt.AllInfeasibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv":
        emit_csv(table, args.out)
    else:
        _emit_json(summary, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
