"""
Ballots, grade scales and quantization
======================================

A grading matrix holds one row per candidate and one column per voter.
Here we load the fifteen-voter example, look at it, and coarsen it to a
five-level scale and to approval ballots.
"""

from deepvote import GradeScale, GradingMatrix, parse_ballots, quantize, serialize_ballots, validate
from deepvote.datasets import example_election

m = example_election()
print("candidates:", m.candidate_labels, " voters:", m.n_voters)
print("first three ballots (one row per voter):")
print(m.profiles[:3])

# The CSV layout has one voter per row, with an optional voter column.
text = serialize_ballots(m)
print(text.splitlines()[0], "...")
assert parse_ballots(text) == m

# Floor every grade to the grid k/5.
five = quantize(m, GradeScale.discrete(5))
print("\nDiscrete(5) ballots:")
print(five.profiles[:5])

# Approval: each voter approves their best-graded candidate(s).
approve = quantize(m, GradeScale.binary())
print("\napprovals per candidate:", approve.grades.sum(axis=1))

# validate() lists problems instead of raising.
print("\nissues in the continuous matrix:", validate(m))
claimed = GradingMatrix(m.grades, scale=GradeScale.discrete(5))
print("continuous grades declared as Discrete(5):", len(validate(claimed)), "issues, first:", validate(claimed)[0])
