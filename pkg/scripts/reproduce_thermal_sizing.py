#!/usr/bin/env python3
"""Regenerate the aerogel insulation sizing table.

Writes the thickness -> (conduction loss, heater power, shell mass) sweep
to artifacts/ and prints the thickness for a few heater budgets.
"""

import pathlib

from mobilitylab import cli, thermal

OUT = pathlib.Path(__file__).resolve().parent.parent / "artifacts"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    path = OUT / "thermal_sizing.csv"
    status = cli.main(["thermal", "--out", str(path)])
    assert status == 0
    print(f"wrote {path}")

    spec = thermal.ThermalSpec()
    for budget in (2.0, 5.68, 10.42):
        t = thermal.thickness_for_budget(budget, spec)
        print(f"heater budget {budget:5.2f} W -> thickness {t * 1e3:.1f} mm")


if __name__ == "__main__":
    main()
