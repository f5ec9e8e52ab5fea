"""
Deepest points and winners on the example
=========================================

Each depth has its own deepest point; its coordinates are the aggregated
grades and the largest one names the winner. The L^1 point is the vector of
majority grades, the L^2 point the mean grades and the L^inf point the
midranges.
"""

from deepvote import DepthSpec, elect
from deepvote.datasets import example_election

m = example_election()
print(f"{'rule':>6}  {'c1':>7}  {'c2':>7}  winner  method")
for rule in ("wl1", "wl2", "wl3", "wl4", "wlinf", "tukey", "liu"):
    out = elect(m, DepthSpec.parse(rule, grid_resolution=0.005))
    x1, x2 = out.aggregated_grades
    print(f"{rule:>6}  {x1:7.4f}  {x2:7.4f}  {out.winner_label:>6}  {out.deepest.method}")

# Grid rules return a region of tied lattice nodes; the centroid is reported.
tukey = elect(m, DepthSpec.tukey(grid_resolution=0.005)).deepest
print("\nTukey deepest region:", tukey.diagnostics["region_size"], "nodes,",
      "spanning", tukey.to_dict()["deepest_set"]["lower"], "to", tukey.to_dict()["deepest_set"]["upper"])

# Increasing p pulls the point from the median towards the midrange.
for p in (1, 1.5, 2, 4, 16, 64, float("inf")):
    x = elect(m, DepthSpec.wlp(p)).aggregated_grades
    print(f"p = {p:>4}: ({x[0]:.4f}, {x[1]:.4f})")
