"""Vertex separators with undeletable vertices.

Undeletable vertices (and the two terminal sets) get unbounded capacity in
the vertex-split flow network, so no cut ever uses them.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import Graph, reach

MAX_BUDGET = 16
_INF = float("inf")


class SeparatorError(ValueError):
    """Raised for malformed separator queries."""


@dataclass(frozen=True)
class SeparatorQuery:
    graph: Graph
    x: frozenset[int]
    y: frozenset[int]
    k: int
    u: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        for name in ("x", "y", "u"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not self.x or not self.y:
            raise SeparatorError("both terminal sets must be nonempty")
        if self.x & self.y:
            raise SeparatorError("terminal sets intersect")
        unknown = (self.x | self.y) - self.graph.vertex_set
        if unknown:
            raise SeparatorError(f"unknown terminal vertices {sorted(unknown)}")
        if self.k < 0:
            raise SeparatorError("budget must be non-negative")
        if self.k > MAX_BUDGET:
            raise SeparatorError(f"budget {self.k} exceeds the supported maximum {MAX_BUDGET}")

    @property
    def blocked(self) -> frozenset[int]:
        return self.x | self.y | self.u


@dataclass(frozen=True)
class SeparatorSequence:
    separators: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.separators)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.separators)

    def __getitem__(self, i: int) -> frozenset[int]:
        return self.separators[i]


class _Flow:
    """Unit-capacity augmenting paths on the vertex-split digraph.

    Node (v, 0) is v's entry and (v, 1) its exit; the arc between them has
    capacity 1 for deletable vertices and is unbounded otherwise.
    """

    def __init__(self, g: Graph, x: frozenset[int], y: frozenset[int], blocked: frozenset[int]):
        self.g = g
        self.x = x
        self.y = y
        self.blocked = blocked
        self.vflow: dict[int, int] = {}
        self.eflow: dict[tuple[int, int], int] = {}
        self.value = 0

    def _cap(self, v: int) -> float:
        return _INF if v in self.blocked else 1

    def _augment(self) -> bool:
        adj = self.g._adj
        vflow, eflow = self.vflow, self.eflow
        parent: dict[tuple[int, int], tuple[int, int] | None] = {}
        queue: deque[tuple[int, int]] = deque()
        for s in sorted(self.x):
            parent[(s, 1)] = None
            queue.append((s, 1))
        target = None
        while queue:
            node = queue.popleft()
            v, side = node
            if side == 0:
                if v in self.y:
                    target = node
                    break
                nxt = []
                if self._cap(v) - vflow.get(v, 0) > 0:
                    nxt.append((v, 1))
                for a in adj[v]:
                    if eflow.get((a, v), 0) > 0:
                        nxt.append((a, 1))
            else:
                nxt = [(b, 0) for b in adj[v]]
                if vflow.get(v, 0) > 0:
                    nxt.append((v, 0))
            for m in nxt:
                if m not in parent:
                    parent[m] = node
                    queue.append(m)
        if target is None:
            return False
        node = target
        while parent[node] is not None:
            prev = parent[node]
            (a, sa), (b, _) = prev, node
            if a == b:
                if sa == 0:
                    vflow[a] = vflow.get(a, 0) + 1
                else:
                    vflow[a] -= 1
            elif sa == 1:
                eflow[(a, b)] = eflow.get((a, b), 0) + 1
            else:
                eflow[(b, a)] -= 1
            node = prev
        self.value += 1
        return True

    def run(self, limit: int) -> int:
        """Augment until no path remains or the value exceeds limit."""
        while self.value <= limit and self._augment():
            pass
        return self.value

    def sink_side(self) -> set[tuple[int, int]]:
        """Nodes that can still reach Y in the residual network."""
        adj = self.g._adj
        vflow, eflow = self.vflow, self.eflow
        seen = {(t, 0) for t in self.y}
        queue = deque(sorted(seen))
        while queue:
            v, side = queue.popleft()
            prev = []
            if side == 1:
                if self._cap(v) - vflow.get(v, 0) > 0:
                    prev.append((v, 0))
                for b in adj[v]:
                    if eflow.get((v, b), 0) > 0:
                        prev.append((b, 0))
            else:
                prev = [(a, 1) for a in adj[v]]
                if vflow.get(v, 0) > 0:
                    prev.append((v, 1))
            for m in prev:
                if m not in seen:
                    seen.add(m)
                    queue.append(m)
        return seen


def _direct_edge(g: Graph, x: frozenset[int], y: frozenset[int]) -> bool:
    return any(g._adj[v] & y for v in x)


def _cut_closest_to_y(g: Graph, x: frozenset[int], y: frozenset[int],
                      blocked: frozenset[int], limit: int) -> frozenset[int] | None:
    if _direct_edge(g, x, y):
        return None
    flow = _Flow(g, x, y, blocked)
    if flow.run(limit) > limit:
        return None
    side = flow.sink_side()
    return frozenset(v for v in g.vertex_set if (v, 0) not in side and (v, 1) in side)


def min_vertex_cut(q: SeparatorQuery) -> frozenset[int] | None:
    """Minimum X-Y separator avoiding U, the one closest to Y; None when
    none of size <= k exists (including when X and Y are adjacent)."""
    return _cut_closest_to_y(q.graph, q.x, q.y, q.blocked, q.k)


def min_cut_size(g: Graph, x: Iterable[int], y: Iterable[int],
                 u: Iterable[int] = (), limit: int = MAX_BUDGET) -> int | None:
    """Size of a minimum X-Y vertex cut avoiding U, or None above limit."""
    x, y = frozenset(x), frozenset(y)
    if _direct_edge(g, x, y):
        return None
    flow = _Flow(g, x, y, x | y | frozenset(u))
    val = flow.run(limit)
    return None if val > limit else val


def _candidates(g: Graph, x: frozenset[int], y: frozenset[int], u: frozenset[int],
                k: int, out: set[frozenset[int]]) -> None:
    # textbook branching: push X to the furthest minimum cut, then decide one cut vertex
    if _direct_edge(g, x, y):
        return
    cut = _cut_closest_to_y(g, x, y, x | y | u, k)
    if cut is None:
        return
    if not cut:
        out.add(frozenset())
        return
    far = reach(g, x, cut)
    v = min(cut)
    sub: set[frozenset[int]] = set()
    _candidates(g.remove({v}), far, y, u, k - 1, sub)
    out.update(s | {v} for s in sub)
    _candidates(g, far | {v}, y, u, k, out)


def _is_minimal(g: Graph, s: frozenset[int], x: frozenset[int], y: frozenset[int]) -> bool:
    return all(reach(g, x, s - {v}) & y for v in s)


def enumerate_important_separators(q: SeparatorQuery) -> list[frozenset[int]]:
    """All important X-Y separators of size <= k that avoid U."""
    g, x, y = q.graph, q.x, q.y
    cands: set[frozenset[int]] = set()
    _candidates(g, x, y, q.u, q.k, cands)
    cands = {s for s in cands if _is_minimal(g, s, x, y)}
    reaches = {s: reach(g, x, s) for s in cands}
    out = []
    for s in cands:
        rs = reaches[s]
        if any(len(t) <= len(s) and rs < reaches[t] for t in cands if t != s):
            continue
        out.append(s)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _check_separator(g: Graph, x: frozenset[int], s: frozenset[int], y: frozenset[int] | None) -> None:
    if s & x:
        raise SeparatorError("separator intersects X")
    if y is not None and (s & y or reach(g, x, s) & y):
        raise SeparatorError("not an X-Y separator")


def covers(g: Graph, x: Iterable[int], s1: Iterable[int], s2: Iterable[int],
           y: Iterable[int] | None = None) -> bool:
    """True if s1 has strictly larger reach from X than s2."""
    x, s1, s2 = frozenset(x), frozenset(s1), frozenset(s2)
    y = None if y is None else frozenset(y)
    _check_separator(g, x, s1, y)
    _check_separator(g, x, s2, y)
    return reach(g, x, s2) < reach(g, x, s1)


def dominates(g: Graph, x: Iterable[int], s1: Iterable[int], s2: Iterable[int],
              y: Iterable[int] | None = None) -> bool:
    s1, s2 = frozenset(s1), frozenset(s2)
    return len(s1) <= len(s2) and covers(g, x, s1, s2, y)


def component_maximal_separator(q: SeparatorQuery) -> frozenset[int] | None:
    """A separator of size <= k avoiding U that no such separator covers.

    Picks the important separator with the largest reach; ties go to the
    lexicographically smallest vertex list.
    """
    imps = enumerate_important_separators(q)
    if not imps:
        return None
    return min(imps, key=lambda s: (-len(reach(q.graph, q.x, s)), sorted(s)))


def tight_separator_sequence(q: SeparatorQuery) -> SeparatorSequence:
    """Pairwise disjoint separators totally ordered by coverage, from the X side
    to the Y side, maximal under insertion.

    X and Y must be connected: otherwise the empty set separates them and
    every vertex set is a separator, so no useful maximal sequence exists.
    """
    if not reach(q.graph, q.x) & q.y:
        raise SeparatorError("X and Y are already disconnected")
    found: list[frozenset[int]] = []
    y = q.y
    while True:
        try:
            sub = SeparatorQuery(q.graph, q.x, y, q.k, q.u)
        except SeparatorError:
            break
        s = component_maximal_separator(sub)
        if not s:
            break
        found.append(s)
        y = s
    return SeparatorSequence(tuple(reversed(found)))
