"""
Condorcet, no-show and reinforcement paradoxes
==============================================

Every L^p deepest vote can pass over a Condorcet winner and elect a
Condorcet loser. The no-show and reinforcement paradoxes appear for every
p except 2, where the rule is the mean and stays consistent.
"""

from deepvote import DepthSpec, audit_election, check_condorcet, check_noshow, check_reinforcement
from deepvote.audit import (
    condorcet_configuration,
    dispersion_configuration,
    extremes_configuration,
    scan_paradoxes,
    search_reinforcement_witness,
)

for p in (1, 1.5, 2, 3):
    cc = check_condorcet(condorcet_configuration(p), DepthSpec.wlp(p))
    print(f"p={p}: Condorcet winner c{cc.condorcet_winner + 1}, loser c{cc.condorcet_loser + 1},",
          f"elected c{cc.outcome.winner + 1}, grades {cc.outcome.aggregated_grades.round(4)}")

# Three voters; the third voter is better off staying home.
m = dispersion_configuration(0.1)
print("\np=1.5 no-show witnesses:", check_noshow(m, DepthSpec.wlp(1.5)))
print("p=2   no-show witnesses:", check_noshow(m, DepthSpec.wlp(2)))
print("p=3   no-show witnesses:", check_noshow(extremes_configuration(0.05), DepthSpec.wlp(3)))

# c2 wins among {v1, v2} and among {v3}, yet loses when they vote together.
w = check_reinforcement(m.select_voters([0, 1]), m.select_voters([2]), DepthSpec.wlp(1.5))
print("\nreinforcement witness:", w.to_dict(m.candidate_labels))

# For p = 1 a small random search over five-level ballots finds one too.
m1, m2, w = search_reinforcement_witness(DepthSpec.wlp(1), seed=0)
print("p=1 witness with", m1.n_voters, "+", m2.n_voters, "voters:", w.to_dict(m1.candidate_labels))

scan = scan_paradoxes(DepthSpec.wlp(2), instances=200, seed=1)
print("\np=2 scan over 200 random elections:", scan.noshow_hits, "no-show,", scan.reinforcement_hits, "reinforcement")

print("\nfull audit of the p=1 Condorcet configuration:")
print(audit_election(condorcet_configuration(1), DepthSpec.wlp(1)).to_dict())
