#!/usr/bin/env python3
"""Entanglement-swap fidelity sweeps and the application-metric report."""

import pathlib
import sys

from homsim import cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"

JOBS = [
    ("swap_angle_grid.csv", ["swap"]),
    ("swap_bandwidth_sweep.csv", ["swap", "--set", "mode=bandwidth_sweep"]),
    ("swap_pump_sweep.csv", ["swap", "--set", "mode=pump_sweep"]),
    ("protocols_ideal.json", ["protocols"]),
    ("protocols_mismatched.json",
     ["protocols", "--set", 'mdi={"phi":0.2,"theta":0.4}',
      "--set", 'noon={"n":4,"theta":0.4,"phase":1.5707963267948966}',
      "--set", 'classifier={"theta":0.4,"theta_perp":0.3}',
      "--set", 'fusion={"theta":0.4}',
      "--set", 'error_budget={"e_background":0.01,"e_polarization":0.02}']),
]


def main() -> int:
    OUT.mkdir(exist_ok=True)
    for name, args in JOBS:
        rc = cli.main(args + ["--out", str(OUT / name)])
        if rc != 0:
            return rc
        print(f"wrote out/{name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
