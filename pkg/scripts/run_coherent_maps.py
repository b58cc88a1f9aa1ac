#!/usr/bin/env python3
"""Coherent-source visibility maps and curves.

Produces the (mu ratio, T/R ratio) maps with ideal and with
polarization-dependent lossy detectors, the V(mu) curves for several
polarization mismatches, and a spectral contour at mu_A = mu_B = 1.
"""

import math
import pathlib
import sys

from homsim import cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"

FIG9_DETECTORS = [
    "--set", 'detector_a={"eta_h":0.8,"eta_v":0.83}',
    "--set", 'detector_b={"eta_h":0.78,"eta_v":0.85}',
]

JOBS = [
    ("coherent_ratio_map_ideal.csv", ["coherent", "--grid", "41"]),
    ("coherent_ratio_map_lossy.csv",
     ["coherent", "--grid", "41"] + FIG9_DETECTORS),
    ("coherent_ratio_map_lossy_fixed_arm.csv",
     ["coherent", "--grid", "41", "--set", "fixed_mu_b=1.0"] + FIG9_DETECTORS),
    ("coherent_contour_mu1.csv",
     ["coherent", "--set", "mode=contour", "--grid", "41"]),
    ("coherent_curve_phi0.csv", ["coherent", "--set", "mode=curve"]),
    ("coherent_curve_phi45.csv",
     ["coherent", "--set", "mode=curve", "--set", f"phi={math.pi / 4}"]),
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
