"""Command-line front end.

    deepvote elect BALLOTS.csv --rule wl1
    deepvote depth-grid BALLOTS.csv --rule liu --resolution 0.02
    deepvote audit BALLOTS.csv --rule wl1.5 --split OTHER.csv
    deepvote axioms --rule wl3 --trials 500 --seed 0
    deepvote reproduce [--outdir DIR]

Exit status is 1 for unreadable or invalid input and 2 when ``reproduce``
finds a value outside its tolerance.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import audit, datasets
from .deepest import deepest_wlp
from .depth import DepthSpec, depth_grid
from .exceptions import DeepVoteError
from .grades import GradeScale, parse_ballots, quantize
from .voting import TieBreak, elect, resolve_rule

CLOSED_FORM_TOL = 0.005
GRID_TOL = 0.05
# printed values are rounded half-up, so an exact value can sit at the tolerance edge
_ROUNDING_SLACK = 1e-12


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _read_ballots(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DeepVoteError(f"cannot read {path}: {exc.strerror}") from None
    return parse_ballots(text)


def _spec_kw(args) -> dict:
    kw = {"seed": args.seed}
    if getattr(args, "resolution", None) is not None:
        kw["grid_resolution"] = args.resolution
    return kw


def cmd_elect(args, out) -> int:
    m = _read_ballots(args.ballots)
    name, spec = resolve_rule(args.rule, **_spec_kw(args))
    outcome = elect(m, spec, TieBreak.parse(args.tiebreak), rule_name=name)
    if args.output == "csv":
        out.write("candidate,aggregated_grade,winner\n")
        for i, label in enumerate(m.candidate_labels):
            out.write(f"{label},{outcome.aggregated_grades[i]:.17g},{int(i == outcome.winner)}\n")
    else:
        out.write(_dump(outcome.to_dict()) + "\n")
    return 0


def cmd_depth_grid(args, out) -> int:
    m = _read_ballots(args.ballots)
    _, spec = resolve_rule(args.rule, seed=args.seed)
    grid = depth_grid(m, spec, args.resolution or 0.01)
    if args.output == "json":
        out.write(_dump({
            "rule": spec.name,
            "x1": grid.x1.tolist(),
            "x2": grid.x2.tolist(),
            "depth": grid.values.tolist(),
        }) + "\n")
    else:
        out.write(grid.to_csv())
    return 0


def cmd_audit(args, out) -> int:
    m = _read_ballots(args.ballots)
    split = _read_ballots(args.split) if args.split else None
    name, spec = resolve_rule(args.rule, **_spec_kw(args))
    report = audit.audit_election(m, spec, TieBreak.parse(args.tiebreak), split, rule_name=name)
    out.write(_dump(report.to_dict()) + "\n")
    return 0


def cmd_axioms(args, out) -> int:
    name, spec = resolve_rule(args.rule, seed=args.seed)
    report = audit.check_axioms(spec, args.trials, args.seed)
    doc = report.to_dict()
    doc["rule_name"] = name
    out.write(_dump(doc) + "\n")
    return 0


# reproduce

def _close(got, expected, tol) -> bool:
    return abs(float(got) - float(expected)) <= tol + _ROUNDING_SLACK


def reproduction_rows(resolution: float = 0.005, grid_dir: Path | None = None) -> list[dict]:
    """Recompute every published number for the worked example and the paradox configurations."""
    rows = []

    def add(item, expected, got, tol, ok=None):
        if ok is None:
            ok = all(_close(g, e, tol) for g, e in zip(np.atleast_1d(got), np.atleast_1d(expected)))
        rows.append({
            "item": item,
            "expected": expected,
            "got": got,
            "tolerance": tol,
            "ok": bool(ok),
        })

    m = datasets.example_election()
    for key, expected in datasets.EXAMPLE_DEEPEST_POINTS.items():
        grid_rule = key in ("tukey", "liu")
        spec = DepthSpec.parse(key, grid_resolution=resolution)
        outcome = elect(m, spec)
        got = [round(float(v), 6) for v in outcome.aggregated_grades]
        add(f"deepest {key}", list(expected), got, GRID_TOL if grid_rule else CLOSED_FORM_TOL)
        winner = datasets.EXAMPLE_WINNERS[key]
        add(f"winner {key}", winner, outcome.winner_label, 0, ok=outcome.winner_label == winner)

    for scale, levels, reference in (
        ("discrete", GradeScale.discrete(5), datasets.EXAMPLE_DISCRETE),
        ("binary", GradeScale.binary(), datasets.EXAMPLE_BINARY),
    ):
        q = quantize(m, levels).grades.T
        wrong = int((q != reference).sum())
        add(f"quantized {scale} cells", "0 mismatches", f"{wrong} mismatches", 0, ok=wrong == 0)

    for key in ("wl1", "wl2", "wl3", "wlinf", "tukey", "liu"):
        grid = depth_grid(m, DepthSpec.parse(key), 0.01)
        if grid_dir is not None:
            (grid_dir / f"depth_{key}.csv").write_text(grid.to_csv())
        if key in ("wl2", "wl3"):
            target = deepest_wlp(m, DepthSpec.parse(key).p).canonical_point
            got = [round(v, 6) for v in grid.argmax()]
            add(f"grid argmax {key}", [round(float(v), 6) for v in target], got, 0.01)
    if grid_dir is not None:
        buf = io.StringIO()
        buf.write("label,x1,x2\n")
        for j in range(m.n_voters):
            buf.write(f"{m.voter_labels[j]},{m.grades[0, j]:.17g},{m.grades[1, j]:.17g}\n")
        for key in datasets.EXAMPLE_DEEPEST_POINTS:
            pt = elect(m, DepthSpec.parse(key, grid_resolution=resolution)).aggregated_grades
            buf.write(f"{key},{pt[0]:.17g},{pt[1]:.17g}\n")
        (grid_dir / "deepest_points.csv").write_text(buf.getvalue())

    for p in (1, 1.5, 2, 3):
        cc = audit.check_condorcet(audit.condorcet_configuration(p), DepthSpec.wlp(p))
        add(f"condorcet paradoxes p={p:g}", [True, True], [cc.winner_paradox, cc.loser_paradox], 0,
            ok=cc.winner_paradox and cc.loser_paradox)
        if p > 1:
            add(f"condorcet closed form p={p:g}", audit.condorcet_closed_forms(p).round(10).tolist(),
                cc.outcome.aggregated_grades.round(10).tolist(), 1e-8)

    for p in (1, 1.5, 3, 8):
        cfg = audit.noshow_configuration(p)
        spec = DepthSpec.wlp(p)
        voters = audit.check_noshow(cfg, spec)
        add(f"no-show witness p={p:g}", [2], voters, 0, ok=voters == [2])
        w = audit.check_reinforcement(cfg.select_voters([0, 1]), cfg.select_voters([2]), spec)
        add(f"reinforcement witness p={p:g}", True, w is not None, 0, ok=w is not None)
    cfg = audit.dispersion_configuration()
    voters = audit.check_noshow(cfg, DepthSpec.wlp(2))
    add("no-show witness p=2", [], voters, 0, ok=voters == [])
    return rows


def cmd_reproduce(args, out) -> int:
    grid_dir = None
    if args.outdir:
        grid_dir = Path(args.outdir)
        grid_dir.mkdir(parents=True, exist_ok=True)
    rows = reproduction_rows(args.resolution or 0.005, grid_dir)
    if args.output == "json":
        out.write(_dump(rows) + "\n")
    else:
        width = max(len(r["item"]) for r in rows)
        for r in rows:
            flag = "ok  " if r["ok"] else "FAIL"
            out.write(f"{flag} {r['item']:<{width}}  expected={r['expected']}  got={r['got']}  tol={r['tolerance']}\n")
    return 0 if all(r["ok"] for r in rows) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deepvote", description="Deepest-point grading elections.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ballots=True, rule="wl1"):
        if ballots:
            p.add_argument("ballots", help="ballot CSV (header of candidate labels, one voter per row)")
        p.add_argument("--rule", default=rule,
                       help="wl1, wl2, wl3, wlinf, wlp:<p>, tukey, liu, mj, rv, approval, midrange")
        p.add_argument("--tiebreak", default="report", choices=["report", "lowest", "label"])
        p.add_argument("--resolution", type=float, default=None, help="lattice pitch for grid rules")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("elect", help="run one election")
    common(p)
    p.add_argument("--output", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_elect)

    p = sub.add_parser("depth-grid", help="depth on the unit-square lattice (two candidates)")
    common(p)
    p.add_argument("--output", choices=["json", "csv"], default="csv")
    p.set_defaults(func=cmd_depth_grid)

    p = sub.add_parser("audit", help="Condorcet, no-show and reinforcement audit")
    common(p)
    p.add_argument("--split", help="second electorate for the reinforcement check")
    p.add_argument("--output", choices=["json"], default="json")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("axioms", help="randomized neutrality/anonymity/unanimity/monotonicity/IIA trials")
    common(p, ballots=False)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--output", choices=["json"], default="json")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("reproduce", help="recompute the worked example and paradox configurations")
    p.add_argument("--resolution", type=float, default=None)
    p.add_argument("--outdir", help="also write the depth-grid CSV files here")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DeepVoteError, ValueError) as exc:
        print(f"deepvote: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
