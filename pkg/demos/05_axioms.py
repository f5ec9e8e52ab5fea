"""
Randomized checks of the grading conditions
===========================================

Neutrality, anonymity, unanimity, monotonicity and independence of
irrelevant alternatives, each checked bit for bit on random elections.
Strict monotonicity is only reported: the median ignores most grade raises.
"""

from deepvote import DepthSpec, check_axioms, deepest_wlp, in_convex_hull
from deepvote.datasets import hull_escape_election

for spec in (DepthSpec.wlp(1), DepthSpec.wlp(1.5), DepthSpec.wlp(2), DepthSpec.wlp(3), DepthSpec.wlinf()):
    report = check_axioms(spec, trials=300, seed=0)
    strict = report.strict_monotonicity
    print(f"{report.rule_name:>22}: {report.passes}  strict raises {strict['strictly_increased']}/{strict['raised']}")

# Per-candidate aggregation can leave the hull of the ballots.
m = hull_escape_election()
x = deepest_wlp(m, 1).canonical_point
print("\nthree single-minded voters, wL1 deepest point", x, "inside hull:", in_convex_hull(x, m.profiles))
