"""Simple undirected graphs with stable integer vertex ids.

Graphs are immutable.  Deleting vertices or taking induced subgraphs
returns a new graph that keeps the original ids, so vertex sets computed
at one recursion level stay meaningful at the next.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or references to unknown vertices."""


class Graph:
    __slots__ = ("_adj", "_vertices", "_key", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for a, b in edges:
            if a == b:
                raise GraphError(f"self-loop at vertex {a}")
            if a not in adj or b not in adj:
                raise GraphError(f"edge ({a}, {b}) uses an unknown vertex")
            adj[a].add(b)
            adj[b].add(a)
        self._set(adj)

    def _set(self, adj: Mapping[int, Iterable[int]]) -> None:
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._vertices = frozenset(self._adj)
        self._key = None
        self._hash = None

    @classmethod
    def _from_adj(cls, adj: Mapping[int, frozenset[int]]) -> "Graph":
        g = cls.__new__(cls)
        g._adj = dict(adj)
        g._vertices = frozenset(g._adj)
        g._key = None
        g._hash = None
        return g

    # basic queries

    @property
    def vertex_set(self) -> frozenset[int]:
        return self._vertices

    @property
    def vertices(self) -> list[int]:
        return sorted(self._vertices)

    def __len__(self) -> int:
        return len(self._adj)

    def __bool__(self) -> bool:
        return bool(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adj.get(a, ())

    def edges(self) -> list[tuple[int, int]]:
        return sorted((a, b) for a, ns in self._adj.items() for b in ns if a < b)

    def num_edges(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def neighborhood(self, s: Iterable[int]) -> frozenset[int]:
        """Open neighborhood N(S)."""
        s = frozenset(s)
        out: set[int] = set()
        for v in s:
            out |= self._adj[v]
        return frozenset(out - s)

    # derived graphs

    def induced(self, s: Iterable[int]) -> "Graph":
        keep = frozenset(s)
        if keep == self._vertices:
            return self
        adj = self._adj
        return Graph._from_adj({v: adj[v] & keep for v in keep})

    def remove(self, s: Iterable[int]) -> "Graph":
        drop = self._vertices.intersection(s)
        if not drop:
            return self
        return self.induced(self._vertices - drop)

    # identity

    def key(self) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
        if self._key is None:
            self._key = (self._vertices, frozenset(
                (a, b) for a, ns in self._adj.items() for b in ns if a < b))
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, edges={self.edges()})"


def _check_subset(g: Graph, s: Iterable[int], what: str = "vertex") -> frozenset[int]:
    s = frozenset(s)
    bad = s - g.vertex_set
    if bad:
        raise GraphError(f"unknown {what} id(s) {sorted(bad)}")
    return s


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    return g.induced(_check_subset(g, s))


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components ordered by their smallest vertex id."""
    seen: set[int] = set()
    out = []
    for v in sorted(g.vertex_set):
        if v in seen:
            continue
        comp = _bfs(g, (v,), frozenset())
        seen |= comp
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    if not g:
        return True
    start = next(iter(g.vertex_set))
    return len(_bfs(g, (start,), frozenset())) == len(g)


def _bfs(g: Graph, start: Iterable[int], blocked: frozenset[int]) -> frozenset[int]:
    adj = g._adj
    seen = set(start)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def reach(g: Graph, x: Iterable[int], s: Iterable[int] = ()) -> frozenset[int]:
    """Vertices connected to X in G - S (X itself included)."""
    x = _check_subset(g, x)
    s = frozenset(s)
    if x & s:
        raise GraphError("source set intersects the deleted set")
    return _bfs(g, x, s)


def reach_closed(g: Graph, x: Iterable[int], s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    return reach(g, x, s) | (s & g.vertex_set)


def non_reach(g: Graph, x: Iterable[int], s: Iterable[int]) -> frozenset[int]:
    return g.vertex_set - reach_closed(g, x, s)


def is_separator(g: Graph, s: Iterable[int], x: Iterable[int], y: Iterable[int]) -> bool:
    s, x, y = frozenset(s), frozenset(x), frozenset(y)
    if s & (x | y):
        raise GraphError("separator must be disjoint from both sides")
    return not (reach(g, x, s) & y)


@dataclass(frozen=True)
class BoundariedGraph:
    """A graph with an ordered labelled boundary and an annotated set."""

    graph: Graph
    boundary: tuple[int, ...] = ()
    annotated: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "annotated", frozenset(self.annotated))
        if len(set(self.boundary)) != len(self.boundary):
            raise GraphError("boundary vertices must be distinct")
        _check_subset(self.graph, self.boundary, "boundary vertex")
        _check_subset(self.graph, self.annotated, "annotated vertex")
        if self.annotated & set(self.boundary):
            raise GraphError("annotated vertices must avoid the boundary")


def glue(g1: BoundariedGraph, g2: BoundariedGraph,
         mu: Mapping[int, int] | None = None) -> tuple[Graph, dict[int, int]]:
    """Identify the boundary of g2 with that of g1 through mu.

    mu maps boundary vertices of g2 to boundary vertices of g1; by default
    the i-th labels are matched.  Non-boundary vertices of g2 receive fresh
    ids above every id of g1.  Returns the glued graph and the id map for g2.
    """
    if len(g1.boundary) != len(g2.boundary):
        raise GraphError("boundary sizes differ")
    if mu is None:
        mu = dict(zip(g2.boundary, g1.boundary))
    mu = dict(mu)
    if set(mu) != set(g2.boundary) or set(mu.values()) != set(g1.boundary):
        raise GraphError("mu must be a bijection between the boundaries")
    for a in g2.boundary:
        for b in g2.boundary:
            if a < b and g2.graph.has_edge(a, b) != g1.graph.has_edge(mu[a], mu[b]):
                raise GraphError("mu is not an isomorphism of the boundary graphs")
    nxt = max(g1.graph.vertex_set, default=0) + 1
    remap = dict(mu)
    for v in sorted(g2.graph.vertex_set - set(g2.boundary)):
        remap[v] = nxt
        nxt += 1
    adj = {v: set(ns) for v, ns in g1.graph._adj.items()}
    for v in g2.graph.vertex_set:
        adj.setdefault(remap[v], set())
    for a, b in g2.graph.edges():
        adj[remap[a]].add(remap[b])
        adj[remap[b]].add(remap[a])
    return Graph._from_adj({v: frozenset(ns) for v, ns in adj.items()}), remap


def contract_degree2_path(g: Graph, path: Sequence[int], target_len: int) -> Graph:
    """Shorten a path whose internal vertices have degree two.

    Length counts internal vertices.  The first ceil(t/2) and last
    floor(t/2) internal vertices survive and are joined by a new edge.
    """
    path = list(path)
    if len(path) < 2 or len(set(path)) != len(path):
        raise GraphError("path needs two distinct endpoints and distinct vertices")
    inner = path[1:-1]
    if target_len < 0 or len(inner) <= target_len:
        raise GraphError("path is not longer than the target length")
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise GraphError(f"({a}, {b}) is not an edge")
    for v in inner:
        if g.degree(v) != 2:
            raise GraphError(f"internal vertex {v} does not have degree 2")
    head = (target_len + 1) // 2
    tail = target_len // 2
    kept = inner[:head] + (inner[len(inner) - tail:] if tail else [])
    dropped = set(inner) - set(kept)
    left = ([path[0]] + inner[:head])[-1]
    right = (inner[len(inner) - tail:] + [path[-1]])[0] if tail else path[-1]
    if g.has_edge(left, right):
        raise GraphError("contraction would create a parallel edge")
    h = g.remove(dropped)
    adj = dict(h._adj)
    adj[left] = adj[left] | {right}
    adj[right] = adj[right] | {left}
    return Graph._from_adj(adj)


def enumerate_connected_sets(g: Graph, v: int, b: int, f: int) -> list[frozenset[int]]:
    """Connected sets B containing v with |B| = b + 1 and |N(B)| = f."""
    if v not in g:
        raise GraphError(f"unknown vertex {v}")
    if b < 0 or f < 0:
        raise GraphError("b and f must be non-negative")
    adj = g._adj
    out: list[frozenset[int]] = []

    def grow(inside: frozenset[int], frontier: frozenset[int], excluded: frozenset[int]) -> None:
        # excluded vertices are already committed to N(B)
        if len(excluded) > f:
            return
        if len(inside) == b + 1:
            if len(frontier) == f:
                out.append(inside)
            return
        open_ = frontier - excluded
        if not open_:
            return
        u = min(open_)
        grow(inside | {u}, (frontier | adj[u]) - inside - {u}, excluded)
        grow(inside, frontier, excluded | {u})

    grow(frozenset((v,)), adj[v], frozenset())
    return sorted(out, key=sorted)
