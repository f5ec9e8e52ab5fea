"""
Depth over the unit square
==========================

A depth function scores how central a point is among the ballots. This
script evaluates four depths on the example and writes each lattice as a
CSV file (x1, x2, depth) ready for any plotting tool.
"""

import sys
from pathlib import Path

from deepvote import DepthSpec, depth_grid, simplicial_depth, tukey_depth, wlinf_depth, wlp_depth
from deepvote.datasets import example_election

m = example_election()
centre = [0.6, 0.55]
print("depths at", centre)
print("  wL1  ", round(wlp_depth(centre, m, 1), 4))
print("  wL2  ", round(wlp_depth(centre, m, 2), 4))
print("  wLinf", round(wlinf_depth(centre, m), 4))
print("  Tukey", round(tukey_depth(centre, m), 4))
print("  Liu  ", round(simplicial_depth(centre, m), 4))

# Halfspace and simplicial depths vanish outside the hull of the ballots.
print("\nLiu depth at the origin:", simplicial_depth([0.0, 0.0], m))

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "depth_grids")
outdir.mkdir(exist_ok=True)
for rule in ("wl2", "wl3", "tukey", "liu"):
    grid = depth_grid(m, DepthSpec.parse(rule), 0.01)
    (outdir / f"{rule}.csv").write_text(grid.to_csv())
    print(f"{rule:>6}: lattice argmax {grid.argmax()}, max depth {grid.values.max():.4f}")
print("grids written to", outdir.resolve())
