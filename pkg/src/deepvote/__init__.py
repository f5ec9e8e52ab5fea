"""Grading-based elections decided by the deepest point of the ballots.

Each voter grades every candidate in [0, 1]; the ballots form a cloud of
points in [0, 1]^d. A depth function ranks points of the cube from central
to outlying, and the winner is the candidate with the largest coordinate at
the deepest point. Majority judgment, range voting and approval voting are
the weighted L^1 and L^2 members of this family.
"""

from .audit import (
    AuditReport,
    audit_election,
    check_axioms,
    check_condorcet,
    check_noshow,
    check_reinforcement,
    condorcet_loser,
    condorcet_winner,
    pairwise_tally,
)
from .deepest import (
    DeepestResult,
    deepest_grid,
    deepest_point,
    deepest_wlp,
    in_convex_hull,
    majority_grade,
    midrange_grade,
    range_grade,
    scalar_pnorm_argmin,
)
from .depth import (
    DepthGrid,
    DepthSpec,
    depth_grid,
    simplicial_depth,
    tukey_depth,
    wlinf_depth,
    wlp_depth,
)
from .grades import GradeScale, GradingMatrix, parse_ballots, quantize, serialize_ballots, validate
from .voting import ElectionOutcome, TieBreak, elect, resolve_rule

__version__ = "0.1.0"
