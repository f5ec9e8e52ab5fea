"""Paradox detection and axiom checks for deepest-voting rules.

Voter preferences are read off the grades with strict inequality: a voter
who gives two candidates the same grade prefers neither. Every random
procedure takes an explicit seed and draws from numpy's PCG64 generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .depth import DepthSpec
from .exceptions import CandidateMismatch
from .grades import GradeScale, GradingMatrix, serialize_ballots
from .voting import ElectionOutcome, TieBreak, default_rule_name, elect


def pairwise_tally(m: GradingMatrix) -> np.ndarray:
    """``wins[i, k]`` = number of voters grading candidate i strictly above k."""
    g = m.grades
    return (g[:, None, :] > g[None, :, :]).sum(axis=2)


def condorcet_winner(m: GradingMatrix, tally: np.ndarray | None = None) -> int | None:
    wins = pairwise_tally(m) if tally is None else tally
    d, n = m.shape
    for i in range(d):
        if all(2 * wins[i, k] > n for k in range(d) if k != i):
            return i if d > 1 else None
    return None


def condorcet_loser(m: GradingMatrix, tally: np.ndarray | None = None) -> int | None:
    wins = pairwise_tally(m) if tally is None else tally
    d, n = m.shape
    for i in range(d):
        if all(2 * wins[k, i] > n for k in range(d) if k != i):
            return i if d > 1 else None
    return None


@dataclass(frozen=True)
class CondorcetCheck:
    condorcet_winner: int | None
    condorcet_loser: int | None
    winner_paradox: bool
    loser_paradox: bool
    outcome: ElectionOutcome


def check_condorcet(m: GradingMatrix, spec: DepthSpec, tb: TieBreak = TieBreak.REPORT) -> CondorcetCheck:
    """Flag a Condorcet winner left out of the winner set, or a Condorcet loser elected alone."""
    outcome = elect(m, spec, tb)
    tally = pairwise_tally(m)
    cw = condorcet_winner(m, tally)
    cl = condorcet_loser(m, tally)
    return CondorcetCheck(
        condorcet_winner=cw,
        condorcet_loser=cl,
        winner_paradox=cw is not None and cw not in outcome.winner_set,
        loser_paradox=cl is not None and outcome.winner_set == (cl,),
        outcome=outcome,
    )


def check_noshow(m: GradingMatrix, spec: DepthSpec, tb: TieBreak = TieBreak.REPORT) -> list[int]:
    """Voters who would get a winner they strictly prefer by abstaining.

    An unresolved tie on either side counts as no improvement.
    """
    if m.n_voters < 2:
        raise ValueError("no-show check needs at least two voters")
    full = elect(m, spec, tb).winner
    if full is None:
        return []
    witnesses = []
    for j in range(m.n_voters):
        without = elect(m.drop_voter(j), spec, tb).winner
        if without is None or without == full:
            continue
        if m.grades[without, j] > m.grades[full, j]:
            witnesses.append(j)
    return witnesses


@dataclass(frozen=True)
class ReinforcementWitness:
    winner_in_parts: int
    combined_winner_set: tuple[int, ...]
    combined_winner: int | None
    n_first: int
    n_second: int

    def to_dict(self, labels=None) -> dict:
        name = (lambda i: labels[i]) if labels else (lambda i: i)
        return {
            "winner_in_parts": name(self.winner_in_parts),
            "combined_winner_set": [name(i) for i in self.combined_winner_set],
            "combined_winner": None if self.combined_winner is None else name(self.combined_winner),
            "n_first": self.n_first,
            "n_second": self.n_second,
        }


def check_reinforcement(
    m1: GradingMatrix,
    m2: GradingMatrix,
    spec: DepthSpec,
    tb: TieBreak = TieBreak.REPORT,
) -> ReinforcementWitness | None:
    """Witness when one candidate wins both electorates alone but not their union."""
    if m1.candidate_labels != m2.candidate_labels:
        raise CandidateMismatch("both electorates must grade the same candidates")
    if m1.n_voters == 0 or m2.n_voters == 0:
        return None
    first = elect(m1, spec, tb)
    second = elect(m2, spec, tb)
    if len(first.winner_set) != 1 or first.winner_set != second.winner_set:
        return None
    c = first.winner_set[0]
    combined = elect(m1.concat(m2), spec, tb)
    if combined.winner == c or (combined.winner is None and combined.winner_set == (c,)):
        return None
    return ReinforcementWitness(c, combined.winner_set, combined.winner, m1.n_voters, m2.n_voters)


@dataclass
class AuditReport:
    rule_name: str
    winner: int | None
    winner_set: tuple[int, ...]
    condorcet_winner: int | None
    condorcet_loser: int | None
    condorcet_winner_paradox: bool
    condorcet_loser_paradox: bool
    noshow_witnesses: list[int]
    reinforcement_witness: ReinforcementWitness | None = None
    candidate_labels: tuple[str, ...] = ()
    voter_labels: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        c = self.candidate_labels
        label = lambda i: None if i is None else c[i]  # noqa: E731
        return {
            "rule_name": self.rule_name,
            "winner": label(self.winner),
            "winner_set": [c[i] for i in self.winner_set],
            "condorcet_winner": label(self.condorcet_winner),
            "condorcet_loser": label(self.condorcet_loser),
            "condorcet_winner_paradox": self.condorcet_winner_paradox,
            "condorcet_loser_paradox": self.condorcet_loser_paradox,
            "noshow_witnesses": [self.voter_labels[j] for j in self.noshow_witnesses],
            "reinforcement_witness": (
                None if self.reinforcement_witness is None else self.reinforcement_witness.to_dict(c)
            ),
        }


def audit_election(
    m: GradingMatrix,
    spec: DepthSpec,
    tb: TieBreak = TieBreak.REPORT,
    split: GradingMatrix | None = None,
    rule_name: str | None = None,
) -> AuditReport:
    """Condorcet and no-show audit of ``m``; reinforcement too when a second electorate is given."""
    cc = check_condorcet(m, spec, tb)
    noshow = check_noshow(m, spec, tb) if m.n_voters >= 2 else []
    witness = check_reinforcement(m, split, spec, tb) if split is not None else None
    return AuditReport(
        rule_name=rule_name or default_rule_name(spec),
        winner=cc.outcome.winner,
        winner_set=cc.outcome.winner_set,
        condorcet_winner=cc.condorcet_winner,
        condorcet_loser=cc.condorcet_loser,
        condorcet_winner_paradox=cc.winner_paradox,
        condorcet_loser_paradox=cc.loser_paradox,
        noshow_witnesses=noshow,
        reinforcement_witness=witness,
        candidate_labels=m.candidate_labels,
        voter_labels=m.voter_labels,
    )


# stored configurations

def condorcet_epsilon(p: float, n: int) -> float:
    """Half the largest admissible gap for the n-voter Condorcet configuration."""
    bound = 1.0 if p == math.inf else (n - 1) ** (-1.0 / (p - 1))
    return 0.5 * min(0.5, bound)


def condorcet_configuration(p: float, n: int = 10) -> GradingMatrix:
    """Election whose L^p deepest vote passes over the Condorcet winner c1 and elects the loser c2.

    For p = 1 this is the fixed 9-voter profile; for p > 1, n - 1 voters
    slightly prefer c1 and c3 to c2 while one voter strongly favours c2.
    """
    if p == 1:
        ballots = [[0.5, 0.1, 0.4]] * 4 + [[0.5, 0.6, 0.4]] + [[1.0, 0.6, 0.7]] * 4
        return GradingMatrix.from_ballots(ballots)
    if p < 1:
        raise ValueError("p must be >= 1")
    if n < 3:
        raise ValueError("need at least three voters")
    eps = condorcet_epsilon(p, n)
    ballots = [[0.5 + eps, 0.5, 0.5 + eps / 2]] * (n - 1) + [[0.0, 1.0, 0.0]]
    return GradingMatrix.from_ballots(ballots)


def condorcet_closed_forms(p: float, n: int = 10) -> np.ndarray:
    """Deepest point of :func:`condorcet_configuration` for finite p > 1."""
    eps = condorcet_epsilon(p, n)
    w = (n - 1) ** (1.0 / (p - 1))
    return np.array([
        (0.5 + eps) * w / (w + 1),
        (1 + 0.5 * w) / (1 + w),
        (0.5 + eps / 2) * w / (w + 1),
    ])


def dispersion_configuration(eps: float = 0.1) -> GradingMatrix:
    """Three voters where the last one's participation sinks c2 when p < 2."""
    return GradingMatrix.from_ballots([[0.5, 1.0], [0.5, eps], [0.0, eps]])


def extremes_configuration(eps: float = 0.05) -> GradingMatrix:
    """Three voters where the last one's participation sinks c2 when p > 2."""
    return GradingMatrix.from_ballots([[0.0, 0.5 + eps], [1.0, 0.5 + eps], [0.0, eps]])


def noshow_configuration(p: float) -> GradingMatrix:
    if p < 2:
        return dispersion_configuration()
    if p > 2:
        return extremes_configuration()
    raise ValueError("the p = 2 rule has no no-show configuration")


def noshow_closed_forms(p: float, eps: float) -> np.ndarray:
    """Deepest point of the three-voter configuration matching ``p`` (finite, != 2)."""
    w = 2.0 ** (1.0 / (p - 1))
    if p < 2:
        return np.array([0.5 * w / (1 + w), (1 + w * eps) / (1 + w)])
    return np.array([1 / (1 + w), 0.5 * w / (1 + w) + eps])


def noshow_threshold(p: float) -> float:
    """Largest eps for which the configuration matching ``p`` exhibits the paradox."""
    w = 2.0 ** (1.0 / (p - 1))
    if p < 2:
        return 0.5 - 1 / w
    return (2 - w) / (2 * (1 + w))


# randomized searches and scans

def random_matrix(rng: np.random.Generator, d: int, n: int, levels: int | None = None) -> GradingMatrix:
    if levels is None:
        return GradingMatrix(rng.random((d, n)))
    return GradingMatrix(rng.integers(0, levels + 1, size=(d, n)) / levels, scale=GradeScale.discrete(levels))


def search_reinforcement_witness(
    spec: DepthSpec,
    seed: int = 0,
    attempts: int = 20000,
    max_voters: int = 6,
    levels: int = 5,
    d: int = 2,
):
    """Random search over small discrete-grade elections for a reinforcement witness.

    Returns ``(m1, m2, witness)`` for the first hit, or None.
    """
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        n = int(rng.integers(2, max_voters + 1))
        m = random_matrix(rng, d, n, levels)
        cut = int(rng.integers(1, n))
        m1, m2 = m.select_voters(range(cut)), m.select_voters(range(cut, n))
        witness = check_reinforcement(m1, m2, spec)
        if witness is not None:
            return m1, m2, witness
    return None


def search_noshow_witness(
    spec: DepthSpec,
    seed: int = 0,
    attempts: int = 20000,
    max_voters: int = 6,
    levels: int = 5,
    d: int = 2,
):
    """Random search for an election with a no-show witness; returns ``(m, voters)`` or None."""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        n = int(rng.integers(2, max_voters + 1))
        m = random_matrix(rng, d, n, levels)
        voters = check_noshow(m, spec)
        if voters:
            return m, voters
    return None


@dataclass
class ParadoxScan:
    instances: int
    noshow_hits: int
    reinforcement_hits: int
    examples: list = field(default_factory=list)


def scan_paradoxes(spec: DepthSpec, instances: int = 1000, seed: int = 0, max_d: int = 5, max_n: int = 30) -> ParadoxScan:
    """Leave-one-out and one random split per random continuous election."""
    rng = np.random.default_rng(seed)
    scan = ParadoxScan(instances, 0, 0)
    for trial in range(instances):
        d = int(rng.integers(2, max_d + 1))
        n = int(rng.integers(2, max_n + 1))
        m = random_matrix(rng, d, n)
        if check_noshow(m, spec):
            scan.noshow_hits += 1
            scan.examples.append(("noshow", trial, serialize_ballots(m)))
        cut = int(rng.integers(1, n))
        if check_reinforcement(m.select_voters(range(cut)), m.select_voters(range(cut, n)), spec):
            scan.reinforcement_hits += 1
            scan.examples.append(("reinforcement", trial, serialize_ballots(m)))
    return scan


# axioms

CONDITIONS = ("neutrality", "anonymity", "unanimity", "monotonicity", "iia")


@dataclass
class AxiomReport:
    rule_name: str
    trials: int
    seed: int
    passes: dict
    counterexamples: list
    # strict monotonicity is reported, not judged
    strict_monotonicity: dict

    @property
    def all_passed(self) -> bool:
        return all(v == self.trials for v in self.passes.values())

    def to_dict(self) -> dict:
        return {
            "rule_name": self.rule_name,
            "trials": self.trials,
            "seed": self.seed,
            "passes": dict(self.passes),
            "strict_monotonicity": dict(self.strict_monotonicity),
            "counterexamples": list(self.counterexamples),
        }


def _aggregate(m: GradingMatrix, spec: DepthSpec) -> np.ndarray:
    return elect(m, spec).aggregated_grades


def check_axioms(spec: DepthSpec, trials: int = 500, seed: int = 0) -> AxiomReport:
    """Randomized check of neutrality, anonymity, unanimity, monotonicity and IIA.

    Each trial draws d in [1, 5] candidates and n in [1, 30] voters with
    uniform continuous grades. Equalities are checked bit for bit.
    """
    if spec.is_grid_based:
        raise ValueError("axiom trials run on the weighted L^p family only")
    rng = np.random.default_rng(seed)
    passes = dict.fromkeys(CONDITIONS, 0)
    strict = {"raised": 0, "strictly_increased": 0}
    counterexamples = []

    def record(cond, trial, m, detail):
        counterexamples.append({
            "trial": trial,
            "condition": cond,
            "detail": detail,
            "matrix_csv": serialize_ballots(m),
        })

    for trial in range(trials):
        d = int(rng.integers(1, 6))
        n = int(rng.integers(1, 31))
        m = random_matrix(rng, d, n)
        base = _aggregate(m, spec)
        base_winners = elect(m, spec).winner_set

        perm = rng.permutation(d)
        out = elect(m.permute_candidates(perm), spec)
        if np.array_equal(out.aggregated_grades, base[perm]) and sorted(perm[list(out.winner_set)]) == sorted(base_winners):
            passes["neutrality"] += 1
        else:
            record("neutrality", trial, m, {"permutation": perm.tolist()})

        vperm = rng.permutation(n)
        if np.array_equal(_aggregate(m.permute_voters(vperm), spec), base):
            passes["anonymity"] += 1
        else:
            record("anonymity", trial, m, {"permutation": vperm.tolist()})

        i = int(rng.integers(d))
        alpha = float(rng.random())
        g = m.grades.copy()
        g[i] = alpha
        got = _aggregate(m.with_grades(g), spec)[i]
        if got == alpha:
            passes["unanimity"] += 1
        else:
            record("unanimity", trial, m, {"candidate": i, "alpha": alpha, "got": float(got)})

        j = int(rng.integers(n))
        g = m.grades.copy()
        g[i, j] = float(rng.uniform(g[i, j], 1.0))
        raised = _aggregate(m.with_grades(g), spec)[i]
        if raised >= base[i]:
            passes["monotonicity"] += 1
        else:
            record("monotonicity", trial, m, {"candidate": i, "voter": j, "before": float(base[i]), "after": float(raised)})
        if g[i, j] > m.grades[i, j]:
            strict["raised"] += 1
            strict["strictly_increased"] += int(raised > base[i])

        g = rng.random((d, n))
        g[i] = m.grades[i]
        if _aggregate(m.with_grades(g), spec)[i] == base[i]:
            passes["iia"] += 1
        else:
            record("iia", trial, m, {"candidate": i})

    return AxiomReport(default_rule_name(spec), trials, seed, passes, counterexamples, strict)
