"""Elections decided by the coordinates of a deepest point."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .deepest import (
    CLOSED_FORM,
    DeepestResult,
    deepest_point,
    majority_grade,
    range_grade,
)
from .depth import DepthSpec
from .grades import GradingMatrix

__all__ = [
    "ElectionOutcome",
    "RULES",
    "TieBreak",
    "approval_count",
    "elect",
    "majority_grade",
    "range_grade",
    "resolve_rule",
]

# coordinate ties for iteratively solved or grid-averaged deepest points
SOLVER_TIE_TOL = 1e-12


class TieBreak(enum.Enum):
    REPORT = "report"
    LOWEST = "lowest"
    LABEL = "label"

    @classmethod
    def parse(cls, name: str) -> "TieBreak":
        return cls(name.strip().lower())


# selector -> (rule name, depth selector)
RULES = {
    "mj": ("MajorityJudgment", "wl1"),
    "rv": ("RangeVoting", "wl2"),
    "approval": ("ApprovalVoting", "wl2"),
    "midrange": ("MidrangeVoting", "wlinf"),
}


def resolve_rule(selector: str, **spec_kw) -> tuple[str, DepthSpec]:
    """Map a rule selector such as ``mj`` or ``wlp:1.5`` to (rule name, depth spec)."""
    key = selector.strip().lower()
    if key in RULES:
        name, depth = RULES[key]
        return name, DepthSpec.parse(depth, **spec_kw)
    spec = DepthSpec.parse(key, **spec_kw)
    return default_rule_name(spec), spec


def default_rule_name(spec: DepthSpec) -> str:
    if spec.kind == "wlp":
        return f"DeepestVoting[wL{spec.p:g}]"
    if spec.kind == "wlinf":
        return "DeepestVoting[wLinf]"
    return f"DeepestVoting[{spec.kind}]"


@dataclass(frozen=True, eq=False)
class ElectionOutcome:
    """Result of one deepest-voting election.

    ``winner`` is None when the coordinate maximum is shared and the
    tie-break policy is ``REPORT``.
    """

    winner_set: tuple[int, ...]
    winner: int | None
    deepest: DeepestResult
    aggregated_grades: np.ndarray
    rule_name: str
    candidate_labels: tuple[str, ...]

    @property
    def winner_label(self) -> str | None:
        return None if self.winner is None else self.candidate_labels[self.winner]

    def to_dict(self) -> dict:
        return {
            "rule_name": self.rule_name,
            "winner": self.winner_label,
            "winner_set": [self.candidate_labels[i] for i in self.winner_set],
            "aggregated_grades": {
                label: float(g) for label, g in zip(self.candidate_labels, self.aggregated_grades)
            },
            "deepest": self.deepest.to_dict(),
        }


def _coordinate_argmax(point: np.ndarray, exact: bool) -> tuple[int, ...]:
    top = point.max()
    if exact:
        hits = np.flatnonzero(point == top)
    else:
        hits = np.flatnonzero(point >= top - SOLVER_TIE_TOL)
    return tuple(int(i) for i in hits)


def _break_tie(winners: tuple[int, ...], labels, tb: TieBreak) -> int | None:
    if len(winners) == 1:
        return winners[0]
    if tb is TieBreak.REPORT:
        return None
    if tb is TieBreak.LOWEST:
        return min(winners)
    return min(winners, key=lambda i: (labels[i], i))


def elect(
    m: GradingMatrix,
    spec: DepthSpec,
    tb: TieBreak = TieBreak.REPORT,
    rule_name: str | None = None,
) -> ElectionOutcome:
    """Elect the candidate with the largest coordinate of the deepest point."""
    if rule_name == "ApprovalVoting" and not np.isin(m.grades, (0.0, 1.0)).all():
        raise ValueError("approval voting needs binary grades")
    deepest = deepest_point(m, spec)
    point = deepest.canonical_point
    winners = _coordinate_argmax(point, exact=deepest.method == CLOSED_FORM)
    return ElectionOutcome(
        winner_set=winners,
        winner=_break_tie(winners, m.candidate_labels, tb),
        deepest=deepest,
        aggregated_grades=point.copy(),
        rule_name=rule_name or default_rule_name(spec),
        candidate_labels=m.candidate_labels,
    )


def approval_count(grades) -> int:
    """Number of approvals (grade 1) in a binary row."""
    return int(np.count_nonzero(np.asarray(grades) == 1.0))


def elect_rule(m: GradingMatrix, selector: str, tb: TieBreak = TieBreak.REPORT, **spec_kw) -> ElectionOutcome:
    name, spec = resolve_rule(selector, **spec_kw)
    return elect(m, spec, tb, rule_name=name)


def ranking_argmax(scores) -> tuple[int, ...]:
    """Candidates attaining the top score, compared exactly."""
    scores = np.asarray(scores, dtype=float)
    return tuple(int(i) for i in np.flatnonzero(scores == scores.max()))


