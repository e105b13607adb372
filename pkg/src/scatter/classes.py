"""Graph classes given by finite forbidden induced-subgraph families."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable

from .graph import Graph, GraphError, connected_components, is_connected


class ClassError(ValueError):
    """Raised for invalid patterns, families or class names."""


@dataclass(frozen=True)
class PatternGraph:
    name: str
    graph: Graph
    order: tuple[int, ...] = field(init=False, repr=False, compare=False)
    degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.graph:
            raise ClassError(f"pattern {self.name!r} is empty")
        object.__setattr__(self, "order", _search_order(self.graph))
        object.__setattr__(self, "degrees", tuple(sorted(
            (self.graph.degree(v) for v in self.graph.vertex_set), reverse=True)))

    @property
    def size(self) -> int:
        return len(self.graph)


def _search_order(h: Graph) -> tuple[int, ...]:
    # connected pieces first, highest degree first, so later vertices hang off earlier ones
    order: list[int] = []
    placed: set[int] = set()
    for comp in sorted(connected_components(h), key=lambda c: (-len(c), min(c))):
        start = max(sorted(comp), key=h.degree)
        order.append(start)
        placed.add(start)
        while len(placed & comp) < len(comp):
            best = max(
                sorted(comp - placed),
                key=lambda v: (len(h.neighbors(v) & placed), h.degree(v)),
            )
            order.append(best)
            placed.add(best)
    return tuple(order)


def isomorphic(a: Graph, b: Graph) -> bool:
    if len(a) != len(b) or a.num_edges() != b.num_edges():
        return False
    if sorted(a.degree(v) for v in a.vertex_set) != sorted(b.degree(v) for v in b.vertex_set):
        return False
    va, vb = a.vertices, b.vertices
    ea = set(a.edges())
    for perm in permutations(vb):
        m = dict(zip(va, perm))
        if all(b.has_edge(m[x], m[y]) for x, y in ea):
            return True
    return False


@dataclass(frozen=True)
class ForbiddenFamily:
    name: str
    patterns: tuple[PatternGraph, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "patterns", tuple(self.patterns))
        if not self.patterns:
            raise ClassError(f"family {self.name!r} has no patterns")
        for a, b in combinations(self.patterns, 2):
            if isomorphic(a.graph, b.graph):
                raise ClassError(
                    f"family {self.name!r}: patterns {a.name!r} and {b.name!r} are isomorphic")


@dataclass(frozen=True)
class ClassFamily:
    families: tuple[ForbiddenFamily, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "families", tuple(self.families))
        if not self.families:
            raise ClassError("at least one class is required")

    @property
    def d(self) -> int:
        return len(self.families)

    @property
    def p(self) -> int:
        return max(h.size for fam in self.families for h in fam.patterns)

    @property
    def f_max(self) -> int:
        return max(len(fam.patterns) for fam in self.families)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(fam.name for fam in self.families)


@dataclass(frozen=True)
class ForbiddenSet:
    vertices: frozenset[int]
    witnesses: tuple[frozenset[int], ...]


# builtin catalog

def _path(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def _cycle(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def _complete(n: int) -> Graph:
    return Graph(range(1, n + 1), combinations(range(1, n + 1), 2))


_BUILTIN_PATTERNS = {
    "clique": [("P3", _path(3))],
    "cluster-within-component": [("P3", _path(3))],
    "biclique": [("K3", _complete(3)), ("P4", _path(4))],
    "cograph": [("P4", _path(4))],
    "split": [("2K2", Graph(range(1, 5), [(1, 2), (3, 4)])), ("C4", _cycle(4)), ("C5", _cycle(5))],
    "edgeless": [("K2", _complete(2))],
}

BUILTIN_NAMES = tuple(_BUILTIN_PATTERNS)


@lru_cache(maxsize=None)
def builtin(name: str) -> ForbiddenFamily:
    try:
        pats = _BUILTIN_PATTERNS[name]
    except KeyError:
        raise ClassError(f"unknown class {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None
    return ForbiddenFamily(name, tuple(PatternGraph(n, g) for n, g in pats))


def class_family(names: Iterable[str]) -> ClassFamily:
    return ClassFamily(tuple(builtin(n) for n in names))


# induced pattern search

def _embed(g: Graph, h: PatternGraph, forced: frozenset[int] = frozenset(),
           pool: frozenset[int] | None = None) -> dict[int, int] | None:
    """Find an induced embedding of h into g whose image lies in pool | forced
    and contains every forced vertex."""
    hg = h.graph
    order = h.order
    if len(forced) > len(order):
        return None
    allowed = g.vertex_set if pool is None else (pool | forced)
    if len(allowed) < len(order):
        return None
    adj = g._adj
    hadj = hg._adj
    hdeg = {v: len(hadj[v]) for v in order}
    mapping: dict[int, int] = {}
    used: set[int] = set()
    missing_forced = [len(forced)]
    slots_left = [len(order)]

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        pv = order[i]
        anchor = next((q for q in order[:i] if q in hadj[pv]), None)
        cands = adj[mapping[anchor]] if anchor is not None else allowed
        # once free slots only suffice for forced vertices, only those qualify
        only_forced = missing_forced[0] >= slots_left[0]
        for hv in sorted(cands):
            if hv in used or hv not in allowed:
                continue
            is_forced = hv in forced
            if only_forced and not is_forced:
                continue
            if len(adj[hv]) < hdeg[pv]:
                continue
            ok = True
            for q in order[:i]:
                if (q in hadj[pv]) != (mapping[q] in adj[hv]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[pv] = hv
            used.add(hv)
            slots_left[0] -= 1
            if is_forced:
                missing_forced[0] -= 1
            if extend(i + 1):
                return True
            del mapping[pv]
            used.discard(hv)
            slots_left[0] += 1
            if is_forced:
                missing_forced[0] += 1
        return False

    return dict(mapping) if extend(0) else None


def has_induced(g: Graph, h: PatternGraph) -> bool:
    if len(g) < h.size:
        return False
    return _embed(g, h) is not None


def contains_induced(g: Graph, h: PatternGraph) -> frozenset[int] | None:
    """Lexicographically least vertex set of g inducing a copy of h."""
    if not has_induced(g, h):
        return None
    chosen: list[int] = []
    verts = g.vertices
    for _ in range(h.size):
        lo = chosen[-1] if chosen else None
        for v in verts:
            if lo is not None and v <= lo:
                continue
            pool = frozenset(u for u in verts if u > v)
            if _embed(g, h, frozenset(chosen) | {v}, pool) is not None:
                chosen.append(v)
                break
        else:  # pragma: no cover - existence was established above
            raise AssertionError("lost track of an induced copy")
    return frozenset(chosen)


def _family_witness(g: Graph, fam: ForbiddenFamily) -> frozenset[int] | None:
    best = None
    for h in fam.patterns:
        w = contains_induced(g, h)
        if w is not None and (best is None or sorted(w) < sorted(best)):
            best = w
    return best


@lru_cache(maxsize=200_000)
def _passes(g: Graph, fam: ForbiddenFamily) -> bool:
    return not any(has_induced(g, h) for h in fam.patterns)


def component_in_class(comp: Graph, fam: ForbiddenFamily) -> bool:
    if not is_connected(comp):
        raise GraphError("component_in_class expects a connected graph")
    return _passes(comp, fam)


def in_some_class(comp: Graph, classes: ClassFamily) -> bool:
    return any(_passes(comp, fam) for fam in classes.families)


def bad_components(g: Graph, classes: ClassFamily) -> list[frozenset[int]]:
    return [c for c in connected_components(g) if not in_some_class(g.induced(c), classes)]


def is_scattered_modulator(g: Graph, z: Iterable[int], classes: ClassFamily) -> bool:
    rest = g.remove(z)
    return all(in_some_class(rest.induced(c), classes) for c in connected_components(rest))


def _witness_tuple(g: Graph, classes: ClassFamily) -> tuple[frozenset[int], ...] | None:
    out = []
    for fam in classes.families:
        w = _family_witness(g, fam)
        if w is None:
            return None
        out.append(w)
    return tuple(out)


def is_obstruction(g: Graph, c: Iterable[int], classes: ClassFamily) -> bool:
    """True if G[c] contains a pattern of every family and c lies in one component."""
    c = frozenset(c)
    if not c:
        return False
    comps = connected_components(g)
    if not any(c <= comp for comp in comps):
        return False
    sub = g.induced(c)
    return all(not _passes(sub, fam) for fam in classes.families)


def find_forbidden_set(g: Graph, classes: ClassFamily) -> ForbiddenSet | None:
    """A minimal forbidden set inside the first component that fails every class."""
    for comp in connected_components(g):
        sub = g.induced(comp)
        if in_some_class(sub, classes):
            continue
        wit = _witness_tuple(sub, classes)
        assert wit is not None
        c = frozenset().union(*wit)
        for v in sorted(c):
            trial = c - {v}
            if trial and all(not _passes(g.induced(trial), fam) for fam in classes.families):
                c = trial
        wit = _witness_tuple(g.induced(c), classes)
        assert wit is not None
        return ForbiddenSet(c, wit)
    return None
