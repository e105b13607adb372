"""Boundaried gadgets: capped enumeration and the witness-guided marked gadget."""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator

from .classes import ClassFamily, PatternGraph, _embed, connected_components
from .graph import BoundariedGraph, Graph, GraphError, contract_degree2_path, reach

Edge = tuple[int, int]


def _canon(t: int, m: int, edges: frozenset[Edge]) -> frozenset[Edge]:
    best = None
    for perm in permutations(range(t, t + m)):
        relabel = {i: i for i in range(t)}
        relabel.update(zip(range(t, t + m), perm))
        cand = tuple(sorted(tuple(sorted((relabel[a], relabel[b]))) for a, b in edges))
        if best is None or cand < best:
            best = cand
    return frozenset(best or ())


@lru_cache(maxsize=None)
def gadget_shapes(t: int, boundary_edges: frozenset[Edge], m_max: int) -> tuple[tuple[int, frozenset[Edge]], ...]:
    """Gadgets on boundary 0..t-1 plus up to m_max extra vertices, up to
    relabelling the extras, where every extra vertex reaches the boundary.

    Each connected-to-boundary shape has an extra vertex whose removal keeps
    that property (one furthest from the boundary), so growing one vertex
    at a time reaches every shape.
    """
    level = {frozenset(boundary_edges)}
    out = [(0, frozenset(boundary_edges))]
    for m in range(1, m_max + 1):
        new = t + m - 1
        nxt: set[frozenset[Edge]] = set()
        for edges in level:
            for r in range(1, new + 1):
                for nbrs in combinations(range(new), r):
                    cand = edges | {(a, new) for a in nbrs}
                    nxt.add(_canon(t, m, cand))
        level = nxt
        out.extend((m, e) for e in sorted(level, key=sorted))
    return tuple(out)


def enumerate_gadgets(boundary: Iterable[int], boundary_graph: Graph,
                      m_max: int) -> Iterator[BoundariedGraph]:
    """Boundaried graphs whose boundary induces boundary_graph, with at most
    m_max further vertices each connected to the boundary.  Extra vertices
    get ids above the boundary ids."""
    bnd = sorted(boundary)
    t = len(bnd)
    idx = {v: i for i, v in enumerate(bnd)}
    bedges = frozenset((idx[a], idx[b]) for a, b in boundary_graph.edges())
    base = max(bnd, default=0) + 1
    for m, edges in gadget_shapes(t, bedges, m_max):
        ids = bnd + list(range(base, base + m))
        g = Graph(ids, [(ids[a], ids[b]) for a, b in edges])
        yield BoundariedGraph(g, tuple(bnd), frozenset())


# witness-guided construction

def gadget_size_bound(classes: ClassFamily, k: int) -> int:
    """2 (eta p d + k)^2 (4 p d + 2) with eta = f^d 2^(pd) k^((p+1)d) k^(2(pd)^2)."""
    p, d, f = classes.p, classes.d, classes.f_max
    pd = p * d
    eta = f ** d * 2 ** pd * k ** ((p + 1) * d) * k ** (2 * pd * pd)
    return 2 * (eta * pd + k) ** 2 * (4 * pd + 2)


def _induced_copies(g: Graph, h: PatternGraph, pool: frozenset[int]) -> list[dict[int, int]]:
    """Every induced embedding of h with image inside pool, one per image set
    (the lexicographically first mapping found for it)."""
    sub = g.induced(pool)
    seen: dict[frozenset[int], dict[int, int]] = {}
    verts = sub.vertices
    for combo in combinations(verts, h.size):
        img = frozenset(combo)
        m = _embed(sub.induced(img), h)
        if m is not None:
            seen[img] = m
    return [seen[s] for s in sorted(seen, key=sorted)]


def _shortest_path(g: Graph, a: int, b: int) -> list[int] | None:
    if a == b:
        return [a]
    parent = {a: None}
    dq = deque([a])
    while dq:
        v = dq.popleft()
        for w in sorted(g.neighbors(v)):
            if w not in parent:
                parent[w] = v
                if w == b:
                    path = [b]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                dq.append(w)
    return None


def _steiner_forest(g: Graph, terminals: frozenset[int]) -> frozenset[int]:
    """Greedy Steiner forest: per component join terminals by shortest paths,
    then strip non-terminal leaves."""
    keep: set[int] = set()
    for comp in connected_components(g):
        terms = sorted(terminals & comp)
        if not terms:
            continue
        tree = {terms[0]}
        for t in terms[1:]:
            if t in tree:
                continue
            best = None
            for s in sorted(tree):
                p = _shortest_path(g.induced(comp), s, t)
                if p is not None and (best is None or len(p) < len(best)):
                    best = p
            tree |= set(best)
        keep |= tree
    changed = True
    while changed:
        changed = False
        h = g.induced(keep)
        for v in sorted(keep - terminals):
            if h.degree(v) <= 1:
                keep.discard(v)
                changed = True
                break
    return frozenset(keep)


def _contract_long_paths(g: Graph, frozen: frozenset[int], target: int) -> Graph:
    """Shorten every maximal run of degree-2 vertices outside frozen that is
    longer than target."""
    while True:
        inner = {v for v in g.vertex_set if v not in frozen and g.degree(v) == 2}
        done = True
        seen: set[int] = set()
        for v in sorted(inner):
            if v in seen:
                continue
            run = [v]
            seen.add(v)
            ends = []
            for start in sorted(g.neighbors(v)):
                prev, cur = v, start
                side = []
                while cur in inner and cur not in seen:
                    side.append(cur)
                    seen.add(cur)
                    prev, cur = cur, next(iter(g.neighbors(cur) - {prev}))
                ends.append((side, cur))
            (s1, e1), (s2, e2) = ends
            run = s1[::-1] + run + s2
            if len(run) > target and e1 != e2 and e1 not in run and e2 not in run:
                try:
                    g = contract_degree2_path(g, [e1] + run + [e2], target)
                except GraphError:
                    continue
                done = False
                break
        if done:
            return g


def construct_marked_gadget(g: Graph, w1: Iterable[int], p1: Iterable[int], x: Iterable[int],
                            kmod: Iterable[int], classes: ClassFamily,
                            k: int | None = None) -> BoundariedGraph:
    """The gadget that replaces everything behind P1 for a known X and K.

    Marks, for every distinct signature of a forbidden set of G - K^nr that
    reaches past P1, the part of one such set lying in V2; joins the marked
    vertices and the boundary by a small forest inside V2 - K^nr; shortens
    long degree-2 paths.  The boundary is P1^r and the annotated set K^nr.
    """
    w1, p1, x, kmod = (frozenset(s) for s in (w1, p1, x, kmod))
    if not x <= kmod:
        raise GraphError("the modulator must contain X")
    if p1 & kmod:
        raise GraphError("P1 must avoid the modulator")
    rp = reach(g, w1, p1)
    rx = reach(g, w1, x)
    p1r = p1 & rx
    p1nr = p1 - p1r
    xr = x & rp
    if not (p1r and p1nr and xr and x - xr):
        raise GraphError("X and P1 must be incomparable")
    kr = kmod & (rp | p1)
    knr = kmod - kr
    far = g.vertex_set - rp - p1
    v2 = (far & rx) | p1r | knr
    side = rp | p1
    host = g.remove(knr)
    pool = (v2 | side) - knr
    k = max(k if k is not None else len(kmod), 1)

    copies = [[(h, m) for h in fam.patterns for m in _induced_copies(host, h, pool)]
              for fam in classes.families]
    comp_of = {}
    for comp in connected_components(host):
        for v in comp:
            comp_of[v] = comp
    exits = frozenset(v for v in p1r if g.neighbors(v) & rp)
    marked: set[int] = set()
    signatures: set[tuple] = set()

    def choose(i: int, picked: list[tuple[PatternGraph, dict[int, int]]]) -> None:
        if i == len(copies):
            c = frozenset().union(*(frozenset(m.values()) for _, m in picked))
            anchor = comp_of[next(iter(c))]
            if not c <= anchor or not (c & v2):
                return
            sig = []
            for h, m in picked:
                sig.append((h.name, frozenset(pv for pv, hv in m.items() if hv in v2),
                            frozenset(pv for pv, hv in m.items() if hv in p1r)))
            pos = [(j, pv, hv) for j, (_, m) in enumerate(picked) for pv, hv in sorted(m.items())]
            ends = []
            for (ja, pa, ha), (jb, pb, hb) in combinations(pos, 2):
                path = _shortest_path(host.induced(anchor), ha, hb) or []
                on = [v for v in path if v in exits]
                ends.append((ja, pa, jb, pb, on[0] if on else None, on[-1] if on else None))
            key = (tuple(sig), tuple(ends))
            if key not in signatures:
                signatures.add(key)
                marked.update(c & v2)
            return
        for choice in copies[i]:
            picked.append(choice)
            choose(i + 1, picked)
            picked.pop()

    choose(0, [])
    forest = _steiner_forest(g.induced(v2 - knr), frozenset(marked) | p1r)
    gadget = g.induced(forest | p1r | knr)
    pd = classes.p * classes.d
    gadget = _contract_long_paths(gadget, frozenset(marked) | p1r | knr, 4 * pd + 2)
    return BoundariedGraph(gadget, tuple(sorted(p1r)), knr)
