"""Ballot data model: grade scales, the grading matrix, CSV ingestion and quantization.

A grading matrix stores one row per candidate and one column per voter, so
``m.grades[i, j]`` is the grade voter ``j`` gives to candidate ``i``. Ballot
files arrive the other way round (one voter per line) and are transposed on
the way in.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import (
    CandidateMismatch,
    EmptyInput,
    GradeOutOfRange,
    InvalidTarget,
    NonNumericCell,
    RaggedRows,
)

BINARY = "binary"
DISCRETE = "discrete"
CONTINUOUS = "continuous"

# grid membership slack when snapping x*N to an integer
_GRID_SNAP = 1e-9


@dataclass(frozen=True)
class GradeScale:
    """The ordered set of admissible grades.

    ``levels`` is the N of a discrete scale {0, 1/N, ..., 1} and is None for
    the binary and continuous scales.
    """

    kind: str = CONTINUOUS
    levels: int | None = None

    def __post_init__(self):
        if self.kind not in (BINARY, DISCRETE, CONTINUOUS):
            raise ValueError(f"unknown grade scale kind {self.kind!r}")
        if self.kind == DISCRETE:
            if self.levels is None or int(self.levels) != self.levels or self.levels <= 1:
                raise ValueError("a discrete scale needs an integer N > 1")
        elif self.levels is not None:
            raise ValueError(f"{self.kind} scale takes no level count")

    @classmethod
    def binary(cls) -> "GradeScale":
        return cls(BINARY)

    @classmethod
    def discrete(cls, levels: int) -> "GradeScale":
        return cls(DISCRETE, int(levels))

    @classmethod
    def continuous(cls) -> "GradeScale":
        return cls(CONTINUOUS)

    def admits(self, x: float) -> bool:
        """True iff ``x`` is an admissible grade on this scale."""
        if not (0.0 <= x <= 1.0):
            return False
        if self.kind == CONTINUOUS:
            return True
        if self.kind == BINARY:
            return x == 0.0 or x == 1.0
        k = round(x * self.levels)
        return x == k / self.levels

    def __str__(self):
        return f"discrete({self.levels})" if self.kind == DISCRETE else self.kind


def _default_labels(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{k + 1}" for k in range(count))


@dataclass(frozen=True, eq=False)
class GradingMatrix:
    """Candidates-by-voters grade array with labels and a declared scale.

    The array is copied and frozen on construction. Cell-level checks (range,
    scale membership) are left to :func:`validate` so that malformed matrices
    can still be inspected; :func:`parse_ballots` rejects them outright.
    """

    grades: np.ndarray
    candidate_labels: tuple[str, ...] = None
    voter_labels: tuple[str, ...] = None
    scale: GradeScale = field(default_factory=GradeScale.continuous)

    def __post_init__(self):
        arr = np.array(self.grades, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2:
            raise ValueError("grades must be a 2-D candidates x voters array")
        arr.setflags(write=False)
        object.__setattr__(self, "grades", arr)
        d, n = arr.shape
        cand = self.candidate_labels
        cand = _default_labels("c", d) if cand is None else tuple(str(c) for c in cand)
        voters = self.voter_labels
        voters = _default_labels("v", n) if voters is None else tuple(str(v) for v in voters)
        if len(cand) != d:
            raise ValueError(f"{len(cand)} candidate labels for {d} rows")
        if len(voters) != n:
            raise ValueError(f"{len(voters)} voter labels for {n} columns")
        object.__setattr__(self, "candidate_labels", cand)
        object.__setattr__(self, "voter_labels", voters)

    @classmethod
    def from_ballots(cls, ballots, candidate_labels=None, voter_labels=None, scale=None):
        """Build from voter-major rows (one ballot per row)."""
        arr = np.asarray(ballots, dtype=float)
        if arr.ndim != 2:
            raise ValueError("ballots must be a 2-D voters x candidates array")
        return cls(arr.T, candidate_labels, voter_labels, scale or GradeScale.continuous())

    @property
    def n_candidates(self) -> int:
        return self.grades.shape[0]

    @property
    def n_voters(self) -> int:
        return self.grades.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.grades.shape

    def row(self, i: int) -> np.ndarray:
        return self.grades[i]

    def profile(self, j: int) -> np.ndarray:
        """Voter ``j``'s ballot as a point of [0,1]^d."""
        return self.grades[:, j]

    @property
    def profiles(self) -> np.ndarray:
        """All voter profiles as an (n, d) array."""
        return self.grades.T

    def _replace(self, grades, candidate_labels=None, voter_labels=None):
        return GradingMatrix(
            grades,
            self.candidate_labels if candidate_labels is None else candidate_labels,
            self.voter_labels if voter_labels is None else voter_labels,
            self.scale,
        )

    def select_voters(self, columns: Sequence[int]) -> "GradingMatrix":
        columns = list(columns)
        return self._replace(
            self.grades[:, columns].reshape(self.n_candidates, len(columns)),
            voter_labels=[self.voter_labels[j] for j in columns],
        )

    def drop_voter(self, j: int) -> "GradingMatrix":
        return self.select_voters([k for k in range(self.n_voters) if k != j])

    def permute_candidates(self, order: Sequence[int]) -> "GradingMatrix":
        order = list(order)
        return self._replace(self.grades[order], candidate_labels=[self.candidate_labels[i] for i in order])

    def permute_voters(self, order: Sequence[int]) -> "GradingMatrix":
        return self.select_voters(order)

    def with_grades(self, grades) -> "GradingMatrix":
        """Same labels and scale, new grade values."""
        return self._replace(grades)

    def concat(self, other: "GradingMatrix") -> "GradingMatrix":
        """Column-wise union of two electorates over the same candidates."""
        if self.candidate_labels != other.candidate_labels:
            raise CandidateMismatch(
                f"candidate labels differ: {self.candidate_labels} vs {other.candidate_labels}"
            )
        return self._replace(
            np.hstack([self.grades, other.grades]),
            voter_labels=self.voter_labels + other.voter_labels,
        )

    def __eq__(self, other):
        if not isinstance(other, GradingMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.grades, other.grades)
            and self.candidate_labels == other.candidate_labels
            and self.voter_labels == other.voter_labels
            and self.scale == other.scale
        )

    def __repr__(self):
        d, n = self.shape
        return f"GradingMatrix(d={d}, n={n}, scale={self.scale})"


class Violation(NamedTuple):
    kind: str
    candidate: int | None
    voter: int | None
    value: float | None


def validate(m: GradingMatrix) -> list[Violation]:
    """Return one record per broken invariant; an empty list means the matrix is valid."""
    out = []
    d, n = m.shape
    if d < 1 or n < 1:
        out.append(Violation("EmptyMatrix", None, None, None))
    for i in range(d):
        for j in range(n):
            x = float(m.grades[i, j])
            if not (0.0 <= x <= 1.0):
                out.append(Violation("GradeOutOfRange", i, j, x))
            elif not m.scale.admits(x):
                out.append(Violation("ScaleMismatch", i, j, x))
    return out


def parse_ballots(text: str, scale: GradeScale | None = None) -> GradingMatrix:
    """Read a ballot CSV document into a grading matrix.

    The header row holds the candidate labels, optionally preceded by a
    ``voter`` column. Each following row is one voter's grades.

    >>> m = parse_ballots("c1,c2\\n0.59,0.67\\n")
    >>> m.shape, float(m.grades[1, 0])
    ((2, 1), 0.67)
    """
    scale = scale or GradeScale.continuous()
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if len(rows) < 2:
        raise EmptyInput("ballot file needs a header row and at least one voter row")
    header = [c.strip() for c in rows[0]]
    has_voter_col = header[0].lower() == "voter"
    candidates = header[1:] if has_voter_col else header
    if not candidates:
        raise EmptyInput("no candidate columns in header")

    voters, ballots = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise RaggedRows(f"line {lineno}: {len(row)} cells, header has {len(header)}")
        cells = row
        if has_voter_col:
            voters.append(row[0].strip())
            cells = row[1:]
        values = []
        for cell in cells:
            try:
                x = float(cell)
            except ValueError:
                raise NonNumericCell(f"line {lineno}: {cell.strip()!r} is not a number") from None
            if not math.isfinite(x):
                raise NonNumericCell(f"line {lineno}: {cell.strip()!r} is not finite")
            if not (0.0 <= x <= 1.0):
                raise GradeOutOfRange(f"line {lineno}: grade {x} outside [0, 1]")
            if not scale.admits(x):
                raise GradeOutOfRange(f"line {lineno}: grade {x} not on the {scale} scale")
            values.append(x)
        ballots.append(values)

    return GradingMatrix.from_ballots(
        ballots, candidates, voters if has_voter_col else None, scale
    )


def serialize_ballots(m: GradingMatrix) -> str:
    """Write the voter-major CSV format read by :func:`parse_ballots`."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["voter", *m.candidate_labels])
    for j in range(m.n_voters):
        w.writerow([m.voter_labels[j], *(format(float(x), ".17g") for x in m.grades[:, j])])
    return buf.getvalue()


def _floor_to_grid(x: float, levels: int) -> float:
    scaled = x * levels
    k = round(scaled)
    if abs(scaled - k) > _GRID_SNAP:
        k = math.floor(scaled)
    return k / levels


def quantize(m: GradingMatrix, target: GradeScale) -> GradingMatrix:
    """Map continuous grades onto a discrete or binary scale.

    Discrete(N) rounds each grade down to the grid. Binary gives 1 to every
    candidate that attains the voter's maximal grade and 0 to the rest.
    Matrices already on the target scale are returned unchanged in value.
    """
    if target.kind == CONTINUOUS:
        raise InvalidTarget("quantization target must be discrete or binary")
    g = m.grades
    if target.kind == DISCRETE:
        q = np.vectorize(lambda x: _floor_to_grid(float(x), target.levels), otypes=[float])(g)
    else:
        q = (g == g.max(axis=0, keepdims=True)).astype(float) if g.size else g.copy()
    return GradingMatrix(q, m.candidate_labels, m.voter_labels, target)
