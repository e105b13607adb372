"""Iterative compression solver for scattered vertex deletion.

Layers, from the outside in:

* ``solve`` grows a solution vertex by vertex and, whenever it overflows,
  compresses it with ``solve_disjoint``.
* ``solve_disjoint`` first looks for solutions that keep the old modulator W
  in one component, then guesses the part W1 of W that ends up in one
  component and runs the separating search for that guess.
* The separating search computes a branching set from tight separator
  sequences and branches on it.  Whenever the gadget enumeration it needs
  is larger than the configured cap, the current sub-instance goes to the
  exact solver instead.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from .classes import ClassFamily, find_forbidden_set, in_some_class, is_scattered_modulator
from .gadget import enumerate_gadgets
from .graph import BoundariedGraph, Graph, connected_components, glue, reach
from .instances import (BranchTuple, CompressionInstance, ScatteredInstance,
                        SeparationContext, SolveResult, Stats, verify_witness)
from .oracle import exact_solve, oracle_solve
from .separators import (SeparatorQuery, SeparatorSequence, enumerate_important_separators,
                         min_vertex_cut, tight_separator_sequence)

log = logging.getLogger(__name__)

VSet = frozenset[int]
MODES = ("fpt", "oracle", "auto")
FALLBACKS = ("exact", "widen")


@dataclass(frozen=True)
class SolverConfig:
    gadget_cap: int = 6
    # "exact": hand a capped sub-instance to the exact solver;
    # "widen": keep branching, on a branching set widened to stay complete
    fallback: str = "exact"
    oracle_limit: int = 20
    auto_subset_limit: int = 50_000

    def __post_init__(self) -> None:
        if self.gadget_cap < 0:
            raise ValueError("gadget cap must be non-negative")
        if self.fallback not in FALLBACKS:
            raise ValueError(f"fallback must be one of {FALLBACKS}")


class _CapExceeded(Exception):
    pass


class Engine:
    """One solver run: configuration, statistics and memo tables."""

    def __init__(self, classes: ClassFamily, config: SolverConfig | None = None,
                 stats: Stats | None = None):
        self.classes = classes
        self.config = config or SolverConfig()
        self.stats = stats or Stats()
        self._disjoint_memo: dict[tuple, VSet | None] = {}
        self._nonsep_memo: dict[tuple, VSet | None] = {}
        self._good_memo: dict[tuple, bool] = {}

    # helpers

    def rr1(self, g: Graph) -> Graph:
        good = [c for c in connected_components(g) if in_some_class(g.induced(c), self.classes)]
        return g.remove(frozenset().union(*good)) if good else g

    def _verify(self, g: Graph, k: int, keep: VSet, z: VSet | None) -> VSet | None:
        if z is not None:
            verify_witness(g, z, k, self.classes, keep)
        return z

    def important(self, g: Graph, x: VSet, y: VSet, k: int, u: VSet) -> list[VSet]:
        if not y or k < 0:
            return []
        self.stats.separator_enumerations += 1
        return enumerate_important_separators(SeparatorQuery(g, x, y, k, u & g.vertex_set))

    # disjoint compression

    def disjoint(self, g: Graph, k: int, w: VSet, u: VSet) -> VSet | None:
        if k < 0:
            return None
        g = self.rr1(g)
        w, u = w & g.vertex_set, u & g.vertex_set
        key = (g, k, w, u)
        if key in self._disjoint_memo:
            return self._disjoint_memo[key]
        self.stats.branch_nodes += 1
        if not g:
            res: VSet | None = frozenset()
        elif k == 0:
            res = None
        else:
            res = self.nonsep(g, k, w, u)
            if res is None:
                for w1 in _proper_parts(w):
                    res = self.separating(g, k, w1, w - w1, u)
                    if res is not None:
                        break
        self._disjoint_memo[key] = self._verify(g, k, w | u, res)
        return res

    def nonsep(self, g: Graph, k: int, w: VSet, u: VSet) -> VSet | None:
        """Complete for instances that have a solution keeping W in one component."""
        if k < 0:
            return None
        g = self.rr1(g)
        w, u = w & g.vertex_set, u & g.vertex_set
        key = (g, k, w, u)
        if key in self._nonsep_memo:
            return self._nonsep_memo[key]
        self.stats.branch_nodes += 1
        res = self._nonsep(g, k, w, u)
        self._nonsep_memo[key] = self._verify(g, k, w | u, res)
        return res

    def _nonsep(self, g: Graph, k: int, w: VSet, u: VSet) -> VSet | None:
        if not g:
            return frozenset()
        if k == 0:
            return None
        fs = find_forbidden_set(g, self.classes)
        assert fs is not None
        c = fs.vertices
        for v in sorted(c - w - u):
            z = self.disjoint(g.remove({v}), k - 1, w, u)
            if z is not None:
                return z | {v}
        for v in sorted(c - w):
            for sep in self.important(g, frozenset({v}), w, k, u):
                if not sep:
                    continue
                z = self.disjoint(g.remove(sep), k - len(sep), w, u)
                if z is not None:
                    return z | sep
        return None

    # separating case

    def separating(self, g: Graph, k: int, w1: VSet, w2: VSet, u: VSet) -> VSet | None:
        """Solutions in which W1 is the part of W inside one component."""
        self.stats.branch_nodes += 1
        if k < 0:
            return None
        g = self.rr1(g)
        w1, w2, u = w1 & g.vertex_set, w2 & g.vertex_set, u & g.vertex_set
        if not g:
            return frozenset()
        if k == 0:
            return None
        if not w1 or not w2:
            return self.disjoint(g, k, w1 | w2, u)
        z = self.nonsep(g, k, w1 | w2, u)
        if z is not None:
            return z
        comp = reach(g, w1)
        if not w1 <= reach(g, frozenset({min(w1)})):
            return None
        if not comp & w2:
            return self._split(g, k, w1, w2, u, comp)
        try:
            branch = self._branch_vertices(g, k, w1, w2, u)
        except _CapExceeded:
            self.stats.oracle_fallbacks += 1
            log.debug("gadget cap exceeded; exact solve on %d vertices", len(g))
            return exact_solve(g, k, self.classes, w1 | w2, u, self.stats)
        for v in sorted(branch - w1 - w2 - u):
            z = self.disjoint(g.remove({v}), k - 1, w1 | w2, u)
            if z is not None:
                return z | {v}
        return None

    def _split(self, g: Graph, k: int, w1: VSet, w2: VSet, u: VSet, comp: VSet) -> VSet | None:
        left = g.induced(comp)
        for i in range(k + 1):
            z1 = self.nonsep(left, i, w1, u & comp)
            if z1 is not None:
                break
        else:
            return None
        z2 = self.disjoint(g.remove(z1), k - len(z1), w2, u)
        return None if z2 is None else z1 | z2

    def _branch_vertices(self, g: Graph, k: int, w1: VSet, w2: VSet, u: VSet) -> VSet:
        out: set[int] = set()
        for lam in range(1, k + 1):
            for ell in range(0, k - lam + 1):
                res = self.branching(g, k, w1, w2, u, lam, ell)
                if res is not None:
                    out |= res
        return frozenset(out)

    # goodness and branching sets

    def good(self, g: Graph, w1: VSet, u: VSet, p: VSet, ell: int) -> bool:
        side = reach(g, w1, p)
        key = (g.induced(side), w1, u & side, ell)
        if key not in self._good_memo:
            self._good_memo[key] = self.disjoint(key[0], ell, w1, u & side) is not None
        return self._good_memo[key]

    def partition(self, g: Graph, w1: VSet, u: VSet, seq: SeparatorSequence,
                  ell: int) -> tuple[int | None, int | None]:
        """Index of the last good and the first bad separator (binary search)."""
        lo, hi = 0, len(seq)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.good(g, w1, u, seq[mid], ell):
                lo = mid + 1
            else:
                hi = mid
        return (lo - 1 if lo > 0 else None, lo if lo < len(seq) else None)

    def branching(self, g: Graph, k: int, w1: VSet, w2: VSet, u: VSet,
                  lam: int, ell: int) -> VSet | None:
        """Vertices hitting every solution that contains an important W1-W2
        separator of size lam at level ell; None if no such separator exists."""
        assert 1 <= lam <= k, "separator size out of range"
        q = SeparatorQuery(g, w1, w2, lam, u)
        # no cut at all, or W1 and W2 already apart (the split rule's case)
        if not min_vertex_cut(q):
            return None
        self.stats.separator_enumerations += 1
        seq = tight_separator_sequence(q)
        if not len(seq):
            return None
        last_good, first_bad = self.partition(g, w1, u, seq, ell)
        found: list[VSet] = []
        if last_good is not None:
            found.append(seq[last_good])
        if first_bad is not None:
            found.append(seq[first_bad])
        out: set[int] = set().union(*found)
        if lam >= 2:
            for p in found:
                if len(p) >= 2:
                    out |= self._through_gadgets(g, k, w1, u, p, lam, ell)
        return frozenset(out)

    def _through_gadgets(self, g: Graph, k: int, w1: VSet, u: VSet, p: VSet,
                         lam: int, ell: int) -> set[int]:
        """Cover solutions whose separator straddles p: replace everything
        behind the part of p it leaves reachable by every small gadget."""
        side = reach(g, w1, p)
        behind = g.vertex_set - side - p
        base = g.induced(side | p)
        out: set[int] = set()
        for r in range(1, len(p)):
            for pr in combinations(sorted(p), r):
                pr = frozenset(pr)
                pnr = p - pr
                if len(pr) + len(behind) > self.config.gadget_cap:
                    if self.config.fallback == "exact":
                        raise _CapExceeded
                    out |= side - w1 - u
                    return out
                for gadget in enumerate_gadgets(pr, g.induced(pr), len(behind)):
                    glued, remap = glue(BoundariedGraph(base, tuple(sorted(pr))), gadget)
                    fresh = frozenset(remap[v] for v in gadget.graph.vertex_set - pr)
                    if not is_scattered_modulator(glued, w1 | pnr, self.classes):
                        continue
                    self.stats.gadgets_glued += 1
                    u2 = (u & base.vertex_set) | fresh
                    for lam2 in range(1, lam):
                        for ell2 in range(0, min(ell, k - 1 - lam2) + 1):
                            res = self.branching(glued, k - 1, w1, pnr, u2, lam2, ell2)
                            if res is not None:
                                out |= res - fresh
        return out


def _proper_parts(w: VSet) -> list[VSet]:
    items = sorted(w)
    out = []
    for r in range(1, len(items)):
        out.extend(frozenset(c) for c in combinations(items, r))
    return out


# public interface

def _result(z: VSet | None, stats: Stats, started: float) -> SolveResult:
    stats.wall_time += time.perf_counter() - started
    return SolveResult(z is not None, z, stats)


def reduction_rule_1(ci: CompressionInstance) -> CompressionInstance:
    g = Engine(ci.classes).rr1(ci.g)
    return CompressionInstance(g, ci.k, ci.w & g.vertex_set, ci.u & g.vertex_set, ci.classes)


def solve_non_separating(ci: CompressionInstance, config: SolverConfig | None = None) -> SolveResult:
    started = time.perf_counter()
    eng = Engine(ci.classes, config)
    return _result(eng.nonsep(ci.g, ci.k, ci.w, ci.u), eng.stats, started)


def reduction_rule_2(ci: CompressionInstance, ctx: SeparationContext,
                     config: SolverConfig | None = None) -> tuple[CompressionInstance | None, VSet]:
    """Solve the W1 side on its own with the least budget and delete that
    solution.  Returns the reduced instance (None if the W1 side needs more
    than k deletions) and the deleted set."""
    if not ctx.w1 or not ctx.w2 or ctx.w1 | ctx.w2 != ci.w:
        raise ValueError("context must split w into two nonempty parts")
    comp = reach(ci.g, ctx.w1)
    if comp & ctx.w2:
        raise ValueError("w1 and w2 are connected")
    if not ctx.w1 <= reach(ci.g, frozenset({min(ctx.w1)})):
        raise ValueError("w1 does not lie in one component")
    eng = Engine(ci.classes, config)
    left = ci.g.induced(comp)
    for i in range(ci.k + 1):
        z1 = eng.nonsep(left, i, ctx.w1, ci.u & comp)
        if z1 is not None:
            rest = ci.g.remove(z1)
            return CompressionInstance(rest, ci.k - len(z1), ctx.w2, ci.u & rest.vertex_set,
                                       ci.classes), z1
    return None, frozenset()


def is_good_separator(ci: CompressionInstance, ctx: SeparationContext, p: Iterable[int],
                      ell: int, config: SolverConfig | None = None) -> bool:
    p = frozenset(p)
    if p & ci.u or p & (ctx.w1 | ctx.w2) or reach(ci.g, ctx.w1, p) & ctx.w2:
        raise ValueError("p is not a W1-W2 separator avoiding U")
    return Engine(ci.classes, config).good(ci.g, ctx.w1, ci.u, p, ell)


def partition_tight_sequence(ci: CompressionInstance, ctx: SeparationContext,
                             seq: SeparatorSequence, ell: int,
                             config: SolverConfig | None = None) -> tuple[int | None, int | None]:
    """(last good index, first bad index); None marks an empty side."""
    if not len(seq):
        raise ValueError("empty separator sequence")
    return Engine(ci.classes, config).partition(ci.g, ctx.w1, ci.u, seq, ell)


def branching_set(ci: CompressionInstance, ctx: SeparationContext, bt: BranchTuple,
                  config: SolverConfig | None = None, stats: Stats | None = None) -> VSet | None:
    """None signals that no W1-W2 separator of size bt.lam avoids U."""
    bt.check(ci.k)
    config = config or SolverConfig()
    eng = Engine(ci.classes, SolverConfig(config.gadget_cap, "widen", config.oracle_limit), stats)
    return eng.branching(ci.g, ci.k, ctx.w1, ctx.w2, ci.u, bt.lam, bt.ell)


def solve_disjoint(ci: CompressionInstance, config: SolverConfig | None = None) -> SolveResult:
    started = time.perf_counter()
    eng = Engine(ci.classes, config)
    return _result(eng.disjoint(ci.g, ci.k, ci.w, ci.u), eng.stats, started)


def main_algorithm(ci: CompressionInstance, config: SolverConfig | None = None) -> SolveResult:
    """Reduction rules, the non-separating search, then every split of W."""
    started = time.perf_counter()
    eng = Engine(ci.classes, config)
    g = eng.rr1(ci.g)
    w, u = ci.w & g.vertex_set, ci.u & g.vertex_set
    z = eng.nonsep(g, ci.k, w, u) if ci.k >= 0 else None
    if z is None:
        for w1 in _proper_parts(w):
            z = eng.separating(g, ci.k, w1, w - w1, u)
            if z is not None:
                break
    return _result(z, eng.stats, started)


def _compress(g: Graph, k: int, w: VSet, classes: ClassFamily, config: SolverConfig,
              threads: int) -> tuple[VSet | None, Stats]:
    """One compression step: try every part Y of W to delete outright."""
    parts = [frozenset(c) for r in range(min(k, len(w)), -1, -1)
             for c in combinations(sorted(w), r)]

    def attempt(y: VSet, eng: Engine) -> VSet | None:
        z = eng.disjoint(g.remove(y), k - len(y), w - y, frozenset())
        return None if z is None else z | y

    stats = Stats()
    if threads > 1:
        engines = [Engine(classes, config) for _ in parts]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(attempt, parts, engines))
        for eng in engines:
            stats.merge(eng.stats)
        return next((z for z in results if z is not None), None), stats
    eng = Engine(classes, config, stats)
    for y in parts:
        z = attempt(y, eng)
        if z is not None:
            return z, stats
    return None, stats


def _auto_uses_oracle(inst: ScatteredInstance, config: SolverConfig) -> bool:
    n = len(inst.g)
    if n > config.oracle_limit:
        return False
    return sum(comb(n, i) for i in range(min(inst.k, n) + 1)) <= config.auto_subset_limit


def solve(inst: ScatteredInstance, mode: str = "fpt", config: SolverConfig | None = None,
          threads: int = 1) -> SolveResult:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    config = config or SolverConfig()
    started = time.perf_counter()
    if mode == "auto":
        mode = "oracle" if _auto_uses_oracle(inst, config) else "fpt"
    if mode == "oracle":
        res = oracle_solve(inst, config.oracle_limit)
        res.stats.wall_time = time.perf_counter() - started
        return res
    stats = Stats()
    z: VSet = frozenset()
    prefix: list[int] = []
    g = inst.g
    for v in g.vertices:
        prefix.append(v)
        sub = g.induced(prefix)
        if is_scattered_modulator(sub, z, inst.classes):
            continue
        w = z | {v}
        if len(w) <= inst.k:
            z = w
            continue
        new, st = _compress(sub, inst.k, w, inst.classes, config, threads)
        stats.merge(st)
        if new is None:
            return _result(None, stats, started)
        z = new
    verify_witness(g, z, inst.k, inst.classes)
    return _result(z, stats, started)
