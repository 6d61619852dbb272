#!/usr/bin/env python3
"""Regenerate the range-vs-velocity and power-vs-velocity artifacts.

Writes CSV curves for rolling and flying on Titan plus the Earth flying
power curve, and a JSON summary of the optima, into artifacts/.
"""

import pathlib

from mobilitylab import cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "artifacts"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    jobs = [
        (["range-sweep", "--mode", "rolling"], "range_rolling_titan.csv"),
        (["range-sweep", "--mode", "flying"], "range_flying_titan.csv"),
        (["range-sweep", "--mode", "rolling", "--format", "json"],
         "range_rolling_titan.json"),
        (["range-sweep", "--mode", "flying", "--format", "json"],
         "range_flying_titan.json"),
        (["power-curve", "--mode", "flying"], "power_flying_titan.csv"),
        (["power-curve", "--mode", "flying", "--env", "earth"],
         "power_flying_earth.csv"),
    ]
    for argv, name in jobs:
        path = OUT / name
        status = cli.main(argv + ["--out", str(path)])
        assert status == 0, f"{name}: exit {status}"
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
