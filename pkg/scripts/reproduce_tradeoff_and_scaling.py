#!/usr/bin/env python3
"""Regenerate the terrain trade-off map and the agent-count scaling bounds.

Writes the 20x20 (C_rr, slope) delta-range grid with its crossover-boundary
summary and the n = 1..12 rolling/flying range-ratio bounds into artifacts/.
"""

import pathlib

from mobilitylab import cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "artifacts"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    jobs = [
        (["tradeoff-map", "--resolution", "20"], "tradeoff_map.csv"),
        (["tradeoff-map", "--resolution", "20", "--format", "json"],
         "tradeoff_summary.json"),
        (["scaling", "--n-min", "1", "--n-max", "12"],
         "scaling_bounds.csv"),
    ]
    for argv, name in jobs:
        path = OUT / name
        status = cli.main(argv + ["--out", str(path)])
        assert status == 0, f"{name}: exit {status}"
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
