"""Command-line driver.

    python -m gordian invariant torus:7
    python -m gordian verify torus-jones --max-n 15
    python -m gordian graph --move h2 --invariant det --max 21 --dot out.dot
    python -m gordian pd kqr:3,3 --out k33.pd

Exit codes: 0 ok, 2 discrepancy flags raised, 1 errors (for ``verify``,
1 means at least one case failed; flags alone exit 0).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from gordian import diagram
from gordian import families as fam
from gordian import invariants as inv
from gordian import knotgraph as kg
from gordian import suites

__all__ = ["Config", "parse_int_list", "build_parser", "main"]

EXIT_OK, EXIT_ERROR, EXIT_FLAGS = 0, 1, 2

_MOVE_NAMES = {"crossing": kg.CROSSING, "h2": kg.H2, "h2-links": kg.H2_LINKS}


@dataclass(frozen=True)
class Config:
    oracle_crossing_bound: int = diagram.DEFAULT_CROSSING_BOUND
    thin_triangle_vertex_bound: int = 12
    format: str = "text"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Config:
        return cls(
            oracle_crossing_bound=args.oracle_bound,
            thin_triangle_vertex_bound=getattr(args, "thin_triangle_bound", 12),
            format=args.format,
        )


def parse_int_list(text: str) -> tuple[int, ...]:
    """``"3,5,7"`` or an arithmetic progression ``"1,3,...,15"``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if "..." in parts:
        i = parts.index("...")
        if i < 2 or i != len(parts) - 2:
            raise argparse.ArgumentTypeError(f"malformed progression {text!r}")
        a, b, end = int(parts[i - 2]), int(parts[i - 1]), int(parts[-1])
        step = b - a
        if step == 0 or (end - a) * step < 0:
            raise argparse.ArgumentTypeError(f"progression {text!r} does not reach {end}")
        head = [int(p) for p in parts[: i - 2]]
        return tuple(head + list(range(a, end + (1 if step > 0 else -1), step)))
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# invariant


def cmd_invariant(args: argparse.Namespace, cfg: Config) -> int:
    f = fam.parse_family(args.spec)
    if args.orient:
        if not isinstance(f, fam.RawPD):
            raise ValueError("--orient applies to pd: specs only")
        # flag overrides come first, so they beat any O lines in the file
        pd = f.pd
        f = fam.RawPD(
            diagram.PDCode(pd.crossings, pd.free_loops, tuple(args.orient) + pd.orientations),
            f.name,
        )
    # a raw PD goes through the state sum, which honours the crossing bound
    fam.bracket(f, cfg.oracle_crossing_bound)
    rep = inv.report(f)
    if cfg.format == "json":
        _emit(rep.to_json())
    elif cfg.format == "csv":
        d = rep.to_dict()
        d["jones_q"] = str(rep.jones_q)
        d.pop("jones_t", None)
        d["flags"] = "; ".join(rep.flags)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(d), lineterminator="\n")
        w.writeheader()
        w.writerow(d)
        _emit(buf.getvalue())
    else:
        _emit(rep.to_text())
    return EXIT_FLAGS if rep.flags else EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace, cfg: Config) -> int:
    params = suites.SuiteParams(
        max_n=args.max_n,
        q_values=args.q,
        max_crossings=args.max_crossings,
        oracle_bound=cfg.oracle_crossing_bound,
        workers=args.workers,
    )
    names = suites.suite_names() if args.suite == "all" else [args.suite]
    results = [suites.run_suite(n, params) for n in names]
    if cfg.format == "json":
        _emit(json.dumps([r.to_dict() for r in results], indent=2))
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "case", "status", "detail"])
        for r in results:
            for row in r.rows:
                w.writerow([r.suite.name, row.case, row.status, row.detail])
        _emit(buf.getvalue())
    else:
        lines = []
        for r in results:
            for row in r.rows:
                status = row.status.upper()
                lines.append(f"{status:4}  {r.suite.name:<20} {row.case:<28} {row.detail}")
            lines.append(r.summary())
        _emit("\n".join(lines))
    return EXIT_OK if all(r.ok for r in results) else EXIT_ERROR


# ---------------------------------------------------------------------------
# graph


def window_values(invariant: str, category: str, top: int) -> tuple[int, ...]:
    if invariant == "beta":
        return tuple(range(1, top + 1))
    if invariant == "det":
        return tuple(range(1, top + 1, 2))
    skip = (1, 2) if category == "knots" else ()
    return tuple(v for v in range(0, top + 1) if v not in skip)


def _plain(x):
    # json has no infinity; disconnected windows report "inf"
    return "inf" if x == math.inf else x


def graph_summary(w: kg.Window, cfg: Config) -> dict:
    g = w.graph
    d = kg.diameter(g)
    out = {
        "spec": w.spec.to_dict(),
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "certificates": len(w.certificates),
        "flags": len(w.failed),
        "diameter": _plain(d),
        "structure": {k: _plain(v) for k, v in kg.structure_predicates(g).items()},
    }
    try:
        out["four_point_delta"] = str(kg.hyperbolicity_four_point(g))
    except (kg.HyperbolicityBoundError, ValueError) as exc:
        out["four_point_delta"] = f"skipped: {exc}"
    try:
        lo, hi = kg.thin_triangle_bounds(g, cfg.thin_triangle_vertex_bound)
        out["thin_triangle_delta"] = str(lo)
        out["thin_triangle_upper"] = str(hi)
    except (kg.HyperbolicityBoundError, ValueError) as exc:
        out["thin_triangle_delta"] = f"skipped: {exc}"
    out["failed"] = [
        f"{c.construction} {c.key()}: {'; '.join(v.reasons)}" for c, v in w.failed
    ]
    return out


def cmd_graph(args: argparse.Namespace, cfg: Config) -> int:
    move = _MOVE_NAMES[args.move]
    category = args.category or ("links" if move == kg.H2_LINKS else "knots")
    values = args.values or window_values(args.invariant, category, args.max)
    spec = kg.QuotientSpec(move, args.invariant, category, values)
    w = kg.build_window(spec, workers=args.workers)
    for path, text in ((args.dot, w.to_dot), (args.json, w.to_json), (args.csv, w.to_csv)):
        if path:
            Path(path).write_text(text())
    summary = graph_summary(w, cfg)
    if cfg.format == "json":
        _emit(json.dumps(summary, indent=2))
    elif cfg.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["u", "v", "construction", "left", "right"])
        for c in sorted(w.certificates, key=lambda c: c.key()):
            wr.writerow([*c.key(), c.construction, str(c.left), str(c.right)])
        _emit(buf.getvalue())
    else:
        lines = []
        for k, v in summary.items():
            if k == "failed":
                lines += [f"{'flag':>20}: {x}" for x in v]
            elif isinstance(v, dict):
                lines.append(f"{k:>20}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
            else:
                lines.append(f"{k:>20}: {v}")
        _emit("\n".join(lines))
    return EXIT_FLAGS if w.failed else EXIT_OK


# ---------------------------------------------------------------------------
# pd export


def cmd_pd(args: argparse.Namespace, cfg: Config) -> int:
    f = fam.parse_family(args.spec)
    pd = fam.synthesize(f)
    text = diagram.format_pd(pd, comment=str(f))
    if args.out:
        Path(args.out).write_text(text)
    else:
        _emit(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument(
        "--oracle-bound",
        type=int,
        default=diagram.DEFAULT_CROSSING_BOUND,
        help="largest crossing count the state sum will enumerate",
    )
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="gordian", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariant", parents=[common], help="invariant report for one link")
    s.add_argument("spec", help="family spec, e.g. torus:7, kqr:3,3, pd:path/to/file.pd")
    s.add_argument(
        "--orient",
        type=parse_int_list,
        action="append",
        metavar="ARCS",
        help="orientation override for a pd: spec, e.g. 1,2 (repeatable)",
    )
    s.set_defaults(run=cmd_invariant)

    s = sub.add_parser("verify", parents=[common], help="run a lemma regression suite")
    s.add_argument("suite", choices=[*suites.suite_names(), "all"])
    s.add_argument("--max-n", type=int)
    s.add_argument("--max-crossings", type=int)
    s.add_argument("--q", type=parse_int_list, help="e.g. 3,5,7 or 1,3,...,15")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("graph", parents=[common], help="build a quotient-graph window")
    s.add_argument("--move", choices=tuple(_MOVE_NAMES), required=True)
    s.add_argument("--invariant", choices=kg.INVARIANTS, required=True)
    s.add_argument("--category", choices=kg.CATEGORIES)
    s.add_argument("--max", type=int, default=12)
    s.add_argument("--values", type=parse_int_list, help="explicit window, overrides --max")
    s.add_argument("--thin-triangle-bound", type=int, default=12)
    s.add_argument("--dot")
    s.add_argument("--json")
    s.add_argument("--csv")
    s.set_defaults(run=cmd_graph)

    s = sub.add_parser("pd", parents=[common], help="write the standard PD code of a family")
    s.add_argument("spec")
    s.add_argument("--out")
    s.set_defaults(run=cmd_pd)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = Config.from_args(args)
    try:
        return args.run(args, cfg)
    except fam.FamilySyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except diagram.CrossingBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (ValueError, KeyError, OSError, ArithmeticError, diagram.PDError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
