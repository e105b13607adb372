"""Exhaustive reference implementations and the exact fallback solver.

The subset oracles follow the definitions literally and share no code with
the flow-based separator machinery.  ``exact_solve`` is the exact engine the
fixed-parameter solver falls back to when its gadget enumeration is capped.
"""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Iterator

from .classes import ClassFamily, bad_components, find_forbidden_set, is_scattered_modulator
from .graph import Graph, connected_components, reach
from .instances import CompressionInstance, ScatteredInstance, SolveResult, Stats

DEFAULT_LIMIT = 20


class OracleLimitError(ValueError):
    """The instance is too large for exhaustive enumeration."""


def _guard(g: Graph, limit: int) -> None:
    if len(g) > limit:
        raise OracleLimitError(f"{len(g)} vertices exceeds the oracle limit of {limit}")


def _subsets(pool: Iterable[int], k: int) -> Iterator[frozenset[int]]:
    """Subsets of size <= k by size, lexicographic within a size."""
    pool = sorted(pool)
    for size in range(min(k, len(pool)) + 1):
        for combo in combinations(pool, size):
            yield frozenset(combo)


def oracle_solve(inst: ScatteredInstance, limit: int = DEFAULT_LIMIT,
                 w: Iterable[int] = (), u: Iterable[int] = ()) -> SolveResult:
    """Least minimum-size modulator avoiding w and u, by exhaustive search."""
    _guard(inst.g, limit)
    stats = Stats()
    avoid = frozenset(w) | frozenset(u)
    for z in _subsets(inst.g.vertex_set - avoid, inst.k):
        stats.branch_nodes += 1
        if is_scattered_modulator(inst.g, z, inst.classes):
            return SolveResult(True, z, stats)
    return SolveResult(False, None, stats)


def oracle_solution_catalog(ci: CompressionInstance, limit: int = DEFAULT_LIMIT) -> list[frozenset[int]]:
    _guard(ci.g, limit)
    return [z for z in _subsets(ci.g.vertex_set - ci.w - ci.u, ci.k)
            if is_scattered_modulator(ci.g, z, ci.classes)]


def _separates(g: Graph, s: frozenset[int], x: frozenset[int], y: frozenset[int]) -> bool:
    return not (reach(g, x, s) & y)


def oracle_separators(g: Graph, x: Iterable[int], y: Iterable[int], k: int,
                      u: Iterable[int] = (), limit: int = DEFAULT_LIMIT) -> list[frozenset[int]]:
    """Every X-Y separator of size <= k avoiding u (minimal or not)."""
    _guard(g, limit)
    x, y, u = frozenset(x), frozenset(y), frozenset(u)
    pool = g.vertex_set - x - y - u
    return [s for s in _subsets(pool, k) if _separates(g, s, x, y)]


def oracle_minimal_separators(g: Graph, x: Iterable[int], y: Iterable[int], k: int,
                              u: Iterable[int] = (), limit: int = DEFAULT_LIMIT) -> list[frozenset[int]]:
    x, y = frozenset(x), frozenset(y)
    seps = oracle_separators(g, x, y, k, u, limit)
    return [s for s in seps if all(not _separates(g, s - {v}, x, y) for v in s)]


def oracle_important_separators(g: Graph, x: Iterable[int], y: Iterable[int], k: int,
                                u: Iterable[int] = (), limit: int = DEFAULT_LIMIT) -> list[frozenset[int]]:
    x, y = frozenset(x), frozenset(y)
    every = oracle_separators(g, x, y, k, u, limit)
    reaches = {s: reach(g, x, s) for s in every}
    out = []
    for s in every:
        if not all(not _separates(g, s - {v}, x, y) for v in s):
            continue
        if any(len(t) <= len(s) and reaches[s] < reaches[t] for t in every):
            continue
        out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def oracle_min_cut(g: Graph, x: Iterable[int], y: Iterable[int], u: Iterable[int] = (),
                   limit: int = DEFAULT_LIMIT) -> int | None:
    """Size of a smallest X-Y separator avoiding u, or None if none exists."""
    x, y, u = frozenset(x), frozenset(y), frozenset(u)
    pool = g.vertex_set - x - y - u
    for s in _subsets(pool, len(pool)):
        if _separates(g, s, x, y):
            return len(s)
    return None


# exact branching engine

def _obstruction(g: Graph, classes: ClassFamily, keep: frozenset[int]) -> frozenset[int]:
    """A connected vertex set containing a pattern of every family.

    Every solution must delete one of its vertices, otherwise it survives
    inside a single component that fails every class.  Pieces of a forbidden
    set are joined by paths that prefer vertices in ``keep`` (they cost
    nothing to include since they are never branched on).
    """
    fs = find_forbidden_set(g, classes)
    assert fs is not None
    c = fs.vertices
    comp = next(cc for cc in connected_components(g) if c <= cc)
    adj = g._adj
    tree = {min(c)}
    tree |= reach(g.induced(c), tree)
    while not c <= tree:
        dist = {v: 0 for v in tree}
        parent: dict[int, int | None] = {v: None for v in tree}
        dq = deque(sorted(tree))
        hit = None
        while dq:
            v = dq.popleft()
            if v in c and v not in tree:
                hit = v
                break
            for nb in sorted(adj[v]):
                if nb not in comp:
                    continue
                cost = 0 if nb in keep else 1
                nd = dist[v] + cost
                if nb not in dist or nd < dist[nb]:
                    dist[nb] = nd
                    parent[nb] = v
                    if cost:
                        dq.append(nb)
                    else:
                        dq.appendleft(nb)
        assert hit is not None
        node: int | None = hit
        while node is not None and node not in tree:
            tree.add(node)
            node = parent[node]
        tree |= reach(g.induced(c | tree), tree) & c
    return frozenset(tree)


def exact_solve(g: Graph, k: int, classes: ClassFamily, w: Iterable[int] = (),
                u: Iterable[int] = (), stats: Stats | None = None) -> frozenset[int] | None:
    """Smallest modulator of size <= k avoiding w and u, or None.

    Branches on the deletable vertices of a connected obstruction, with
    iterative deepening on the budget so the first hit is minimum.
    """
    keep = frozenset(w) | frozenset(u)
    memo: dict[tuple[frozenset[int], int], frozenset[int] | None] = {}

    def rec(h: Graph, budget: int) -> frozenset[int] | None:
        key = (h.vertex_set, budget)
        if key in memo:
            return memo[key]
        if stats is not None:
            stats.branch_nodes += 1
        bad = bad_components(h, classes)
        if not bad:
            memo[key] = frozenset()
            return memo[key]
        if len(bad) > budget:
            memo[key] = None
            return None
        core = h.induced(frozenset().union(*bad))
        obs = _obstruction(core, classes, keep)
        res = None
        for v in sorted(obs - keep):
            sub = rec(core.remove({v}), budget - 1)
            if sub is not None:
                res = sub | {v}
                break
        memo[key] = res
        return res

    for budget in range(k + 1):
        z = rec(g, budget)
        if z is not None:
            return z
    return None
