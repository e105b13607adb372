"""Command-line front end.

Solve a graph file::

    scatter --graph paw.gr --classes clique,biclique --k 1

or a generated instance with a planted solution::

    scatter --gen 50,4 --seed 3 --classes clique,biclique

``--bench N`` runs N consecutive seeds in generator mode and prints a
table.  Exit codes: 0 yes, 1 no, 2 usage or parse error, 3 failed
verification.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .classes import ClassFamily
from .generate import generate_planted
from .graph import Graph
from .instances import InvariantViolation, ScatteredInstance, verify_witness
from .io import ParseError, parse_class_spec, parse_instance, render_graph
from .oracle import OracleLimitError
from .solver import FALLBACKS, MODES, SolverConfig, solve

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("scatter")


@dataclass
class RunReport:
    answer: bool
    witness: tuple[int, ...] | None
    n: int
    m: int
    k: int
    stats: dict[str, float]
    config: dict[str, object]
    planted: tuple[int, ...] | None = None
    extra: dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> dict[str, object]:
        out: dict[str, object] = {
            "answer": "yes" if self.answer else "no",
            "witness": list(self.witness) if self.witness is not None else None,
            "n": self.n, "m": self.m, "k": self.k,
        }
        if self.planted is not None:
            out["planted"] = list(self.planted)
        out.update(self.config)
        out.update(self.stats)
        out.update(self.extra)
        return out

    def line(self) -> str:
        parts = []
        for key, val in self.as_dict().items():
            if isinstance(val, list):
                val = ",".join(map(str, val)) or "-"
            elif val is None:
                val = "-"
            elif isinstance(val, float):
                val = f"{val:.6f}"
            parts.append(f"{key}={val}")
        return " ".join(parts)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=False)


def _table(rows: list[dict[str, object]], columns: Sequence[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    fmt = "  ".join(f"{{:>{w}}}" for w in widths)
    lines = [fmt.format(*columns), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*row) for row in cells]
    return "\n".join(lines)


def _gen_arg(text: str) -> tuple[int, int]:
    try:
        n, k = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected n,k") from None
    if n < 0 or k < 0 or k > n:
        raise argparse.ArgumentTypeError("need 0 <= k <= n")
    return n, k


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scatter", description="Scattered-class vertex deletion solver.")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="PATH", help="graph or instance file")
    src.add_argument("--gen", metavar="N,K", type=_gen_arg, help="generate a planted instance")
    ap.add_argument("--classes", metavar="SPEC", help="builtin names (comma separated) or @pattern-file")
    ap.add_argument("--k", type=int, help="deletion budget")
    ap.add_argument("--engine", choices=MODES, default="fpt")
    ap.add_argument("--gadget-cap", type=int, default=SolverConfig.gadget_cap)
    ap.add_argument("--fallback", choices=FALLBACKS, default=SolverConfig.fallback)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bench", type=int, metavar="SEEDS", help="generator mode: run this many seeds")
    ap.add_argument("--write-graph", metavar="PATH", help="generator mode: save the generated graph")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of key=value")
    ap.add_argument("--table", action="store_true", help="also print a readable table")
    ap.add_argument("--timing", action="store_true", help="include wall time (reports stop being byte-stable)")
    return ap


def _setup_logging() -> None:
    level = os.environ.get("SCATTER_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _run_one(inst: ScatteredInstance, args: argparse.Namespace, config: SolverConfig,
             class_spec: str, planted: frozenset[int] | None) -> RunReport:
    started = time.perf_counter()
    res = solve(inst, args.engine, config, args.threads)
    elapsed = time.perf_counter() - started
    if res.answer:
        verify_witness(inst.g, res.witness, inst.k, inst.classes)
    elif planted is not None:
        raise InvariantViolation("planted instance answered no")
    stats = res.stats.as_dict(timing=False)
    extra: dict[str, object] = {"wall_time": elapsed} if args.timing else {}
    return RunReport(
        answer=res.answer,
        witness=tuple(sorted(res.witness)) if res.witness is not None else None,
        n=len(inst.g), m=inst.g.num_edges(), k=inst.k, stats=stats,
        config={"engine": args.engine, "classes": class_spec, "gadget_cap": config.gadget_cap,
                "fallback": config.fallback, "threads": args.threads},
        planted=tuple(sorted(planted)) if planted is not None else None,
        extra=extra,
    )


def _emit(report: RunReport, args: argparse.Namespace) -> None:
    print(report.to_json() if args.json else report.line())
    if args.table:
        d = report.as_dict()
        print(_table([{"field": k, "value": v} for k, v in d.items()], ["field", "value"]))


def _load(args: argparse.Namespace) -> tuple[Graph, int, ClassFamily, str]:
    inst = parse_instance(Path(args.graph).read_text(), args.graph)
    k = args.k if args.k is not None else inst.k
    spec = args.classes or inst.classes
    if k is None:
        raise ParseError("no budget: pass --k or add a 'k' line", None, args.graph)
    if spec is None:
        raise ParseError("no classes: pass --classes or add a 'classes' line", None, args.graph)
    return inst.graph, k, parse_class_spec(spec), spec


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _setup_logging()
    if args.k is not None and args.k < 0:
        ap.error("--k must be non-negative")
    if args.threads < 1:
        ap.error("--threads must be at least 1")
    if args.bench is not None and (args.gen is None or args.bench < 1):
        ap.error("--bench needs --gen and a positive seed count")
    try:
        config = SolverConfig(gadget_cap=args.gadget_cap, fallback=args.fallback)
    except ValueError as exc:
        ap.error(str(exc))
    try:
        if args.gen is None:
            g, k, classes, spec = _load(args)
            report = _run_one(ScatteredInstance(g, k, classes), args, config, spec, None)
            _emit(report, args)
            return EXIT_YES if report.answer else EXIT_NO
        if args.classes is None:
            ap.error("--gen needs --classes")
        classes = parse_class_spec(args.classes)
        n, k = args.gen
        reports = []
        for seed in range(args.seed, args.seed + (args.bench or 1)):
            inst, planted = generate_planted(n, k, classes, seed)
            if args.k is not None:
                inst = ScatteredInstance(inst.g, args.k, classes)
                # a smaller budget may legitimately answer no
                if args.k < k:
                    planted = None
            if args.write_graph and args.bench is None:
                Path(args.write_graph).write_text(render_graph(inst.g))
            report = _run_one(inst, args, config, args.classes, planted)
            report.extra = {"seed": seed, **report.extra}
            reports.append(report)
            if args.bench is None:
                _emit(report, args)
        if args.bench is not None:
            _bench_summary(reports, args)
        return EXIT_YES if all(r.answer for r in reports) else EXIT_NO
    except (ParseError, OracleLimitError, OSError) as exc:
        print(f"scatter: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"scatter: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


def _bench_summary(reports: list[RunReport], args: argparse.Namespace) -> None:
    rows = [r.as_dict() for r in reports]
    if args.json:
        for row in rows:
            print(json.dumps(row))
    else:
        for r in reports:
            print(r.line())
    columns = ["seed", "n", "m", "k", "answer", "branch_nodes", "separator_enumerations",
               "oracle_fallbacks", "gadgets_glued"]
    if args.timing:
        columns.append("wall_time")
        for row in rows:
            row["wall_time"] = f"{row['wall_time']:.3f}"
    print(_table(rows, columns))
    if args.timing:
        med = statistics.median(float(r["wall_time"]) for r in rows)
        print(f"median wall_time {med:.3f}s over {len(rows)} seeds")


def main() -> None:
    sys.exit(run())
