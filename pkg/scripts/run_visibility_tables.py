#!/usr/bin/env python3
"""Max-visibility tables plus the per-pairing visibility contour grids.

Reproduces the shape-pairing study: photon A fixed at 193.55 THz with a
1 nm bandwidth, photon B's center and width swept.  The tables go to
out/visibility_tables.txt; each pairing's contour grid to
out/contour_<B>_vs_<A>.csv.  Pass a grid side as the first argument
(default 31; the published contours used 61).
"""

import pathlib
import sys

from homsim import cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "out"
SHAPES = ["gaussian", "sinc", "lorentzian", "sech"]


def main() -> int:
    grid = sys.argv[1] if len(sys.argv) > 1 else "31"
    OUT.mkdir(exist_ok=True)
    rc = cli.main(["tables", "--out", str(OUT / "visibility_tables.txt")])
    if rc != 0:
        return rc
    print("wrote out/visibility_tables.txt")
    for shape_a in SHAPES:
        for shape_b in SHAPES:
            name = f"contour_{shape_b}_vs_{shape_a}.csv"
            rc = cli.main([
                "contour", "--grid", grid,
                "--set", f"shape_a={shape_a}",
                "--set", f"shape_b={shape_b}",
                "--out", str(OUT / name),
            ])
            if rc != 0:
                return rc
            print(f"wrote out/{name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
