"""Seeded instance generators and brute-force helpers shared by the tests."""
from __future__ import annotations

import random
from itertools import combinations

from scatter.classes import class_family, is_scattered_modulator
from scatter.graph import Graph, reach
from scatter.oracle import oracle_separators
from scatter.separators import SeparatorQuery, tight_separator_sequence

PAW = Graph(range(1, 5), [(1, 2), (2, 3), (1, 3), (3, 4)])
CLASS_PAIRS = (("clique", "biclique"), ("cograph", "edgeless"))


def path(*ids: int) -> Graph:
    return Graph(ids, zip(ids, ids[1:]))


def diamond() -> Graph:
    # x=1, a=2, b=3, y=4
    return Graph(range(1, 5), [(1, 2), (1, 3), (2, 4), (3, 4)])


def gnp(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(range(1, n + 1), [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


def random_instance(seed: int) -> tuple[Graph, int, tuple[str, str]]:
    """The oracle-equivalence corpus: G(n,p), n <= 12, k <= 3."""
    r = random.Random(seed)
    n = r.randint(4, 12)
    k = r.randint(0, 3)
    p = r.choice([0.2, 0.3, 0.4, 0.6])
    pair = CLASS_PAIRS[seed % 2]
    return gnp(r, n, p), k, pair


def _member(r: random.Random, cls: str, ids: list[int]) -> list[tuple[int, int]]:
    n = len(ids)
    if cls == "clique":
        return list(combinations(ids, 2))
    if cls == "biclique":
        if n == 1:
            return []
        a = r.randint(1, n - 1)
        return [(x, y) for x in ids[:a] for y in ids[a:]]
    if cls == "cograph":
        def build(vs: list[int], join: bool) -> list[tuple[int, int]]:
            if len(vs) == 1:
                return []
            s = r.randint(1, len(vs) - 1)
            out = build(vs[:s], not join) + build(vs[s:], not join)
            if join:
                out += [(x, y) for x in vs[:s] for y in vs[s:]]
            return out
        return build(ids, True)
    return []


def separating_instance(seed: int, kmin: int = 1, kmax: int = 2, nmax: int = 10):
    """Class-member blobs joined through connector vertices; the connectors
    form the modulator W, so solutions tend to split W.

    Returns (g, k, classes, w, u).
    """
    r = random.Random(seed)
    pair = r.choice(CLASS_PAIRS)
    cf = class_family(pair)
    while True:
        nb = r.randint(2, 3)
        edges: list[tuple[int, int]] = []
        nxt = 1
        blobs = []
        for _ in range(nb):
            cls = pair[0] if pair[1] == "edgeless" else r.choice(pair)
            size = r.randint(1, 3)
            vs = list(range(nxt, nxt + size))
            nxt += size
            blobs.append(vs)
            edges += _member(r, cls, vs)
        ncon = r.randint(2, 3)
        if nxt - 1 + ncon <= nmax:
            break
    cons = list(range(nxt, nxt + ncon))
    nxt += ncon
    for c in cons:
        for b in blobs:
            for v in b:
                if r.random() < 0.4:
                    edges.append((c, v))
    for a, b in combinations(cons, 2):
        if r.random() < 0.3:
            edges.append((a, b))
    allv = list(range(1, nxt))
    perm = allv[:]
    r.shuffle(perm)
    mp = dict(zip(allv, perm))
    g = Graph(allv, [(mp[a], mp[b]) for a, b in edges])
    w = frozenset(mp[c] for c in cons)
    u = frozenset(v for v in sorted(g.vertex_set - w) if r.random() < 0.15)
    return g, r.randint(kmin, kmax), cf, w, u


def route_instance(seed: int):
    """Two or three parallel paths of length 3-4 between W1={1} and
    W2={2}, plus pendants and chords: separators of size 2 can cross the
    tight sequence.  Returns (g, k, classes, w, u)."""
    r = random.Random(seed)
    pairs = CLASS_PAIRS + (("clique", "edgeless"),)
    while True:
        pair = r.choice(pairs)
        cf = class_family(pair)
        edges: list[tuple[int, int]] = []
        nxt = 3
        for _ in range(r.randint(2, 3)):
            length = r.randint(3, 4)
            p = list(range(nxt, nxt + length))
            nxt += length
            edges += [(1, p[0]), (p[-1], 2)] + list(zip(p, p[1:]))
        inner = list(range(3, nxt))
        for _ in range(r.randint(0, 3)):
            if nxt > 12:
                break
            edges.append((r.choice(inner), nxt))
            nxt += 1
        allv = list(range(1, nxt))
        for _ in range(r.randint(0, 3)):
            a, b = r.sample(allv[2:], 2)
            edges.append((a, b))
        g = Graph(allv, edges)
        w = frozenset({1, 2})
        if len(g) <= 12 and is_scattered_modulator(g, w, cf):
            u = frozenset(v for v in inner if r.random() < 0.1)
            return g, 3, cf, w, u


def random_query(seed, nmax=8, kmax=3):
    """A random separator query (g, x, y, k, u) with small terminal sets."""
    r = random.Random(seed)
    n = r.randint(3, nmax)
    g = gnp(r, n, r.choice([0.25, 0.35, 0.5]))
    vs = list(range(1, n + 1))
    r.shuffle(vs)
    nx_ = r.randint(1, 2)
    ny = r.randint(1, 2)
    x, y = frozenset(vs[:nx_]), frozenset(vs[nx_:nx_ + ny])
    rest = vs[nx_ + ny:]
    u = frozenset(v for v in rest if r.random() < 0.2)
    return g, x, y, r.randint(0, kmax), u


def check_tight_sequence(g, x, y, k, u) -> list[str]:
    """Names of the defining properties the computed sequence violates."""
    seq = list(tight_separator_sequence(SeparatorQuery(g, frozenset(x), frozenset(y), k, frozenset(u))))
    bad = []
    if any(len(s) > k or not s for s in seq):
        bad.append("size")
    if any(a & b for a, b in combinations(seq, 2)):
        bad.append("disjoint")
    if any(s & u for s in seq):
        bad.append("undeletable")
    reaches = [reach(g, x, s) for s in seq]
    if any(not reaches[i] < reaches[i + 1] for i in range(len(seq) - 1)):
        bad.append("order")
    if any(reach(g, x, s) & y for s in seq):
        bad.append("separates")
    used = frozenset().union(*seq) if seq else frozenset()
    for t in oracle_separators(g, x, y, k, u):
        if not t or t & used:
            continue
        rt = reach(g, x, t)
        if all(rt < r or r < rt for r in reaches):
            bad.append("maximal")
            break
    return bad


def separates(g: Graph, s: frozenset[int], x: frozenset[int], y: frozenset[int]) -> bool:
    return not (reach(g, x, s) & y)


def minimal_separator(g: Graph, s: frozenset[int], x: frozenset[int], y: frozenset[int]) -> bool:
    return separates(g, s, x, y) and not any(separates(g, s - {v}, x, y) for v in s)


def least_good_level(g: Graph, classes, w1: frozenset[int], u: frozenset[int],
                     x: frozenset[int]) -> int | None:
    """Smallest l such that x is (l,U)-good, by exhaustive search."""
    side = reach(g, w1, x)
    h = g.induced(side)
    pool = sorted(side - w1 - u)
    for size in range(len(pool) + 1):
        for kk in combinations(pool, size):
            if is_scattered_modulator(h, kk, classes):
                return size
    return None


def is_level_important(g: Graph, classes, w1, w2, u, x: frozenset[int], level: int) -> bool:
    """x is (level,U)-important: level is its least good level and no other
    W1-W2 separator avoiding U well-dominates it."""
    if least_good_level(g, classes, w1, u, x) != level:
        return False
    rx = reach(g, w1, x)
    pool = sorted(g.vertex_set - w1 - w2 - u)
    for size in range(1, len(x) + 1):
        for y in combinations(pool, size):
            y = frozenset(y)
            if y == x or not separates(g, y, w1, w2) or not rx < reach(g, w1, y):
                continue
            lvl = least_good_level(g, classes, w1, u, y)
            if lvl is not None and lvl <= level:
                return False
    return True


def incomparable(g: Graph, w1: frozenset[int], a: frozenset[int], b: frozenset[int]) -> bool:
    ra, rb = reach(g, w1, a), reach(g, w1, b)
    return not (a & b) and not ra <= rb and not rb <= ra


def gadget_cases(count: int, max_seed: int = 5000):
    """Witness-guided gadget inputs from route instances.

    For an oracle solution Z and a minimal W1-W2 separator X inside Z that
    is important at its least good level l, take P1 as the last separator
    of the tight sequence that is good at l.  Keep the case when X and P1
    are incomparable and P1 misses K = Z on the W1 side of X.  Yields
    (seed, g, k, classes, w1, w2, u, x, p1, kmod).
    """
    from scatter.instances import CompressionInstance
    from scatter.oracle import oracle_solution_catalog
    from scatter.solver import Engine, reduction_rule_1

    found = 0
    for seed in range(max_seed):
        if found >= count:
            return
        g, k, cf, w, u = route_instance(seed)
        ci = reduction_rule_1(CompressionInstance(g, k, w, u, cf))
        g, w, u = ci.g, ci.w, ci.u
        case = None
        for size in range(1, len(w)):
            for w1 in combinations(sorted(w), size):
                w1 = frozenset(w1)
                w2 = w - w1
                if case or not w <= reach(g, frozenset({min(w1)})):
                    continue
                for z in oracle_solution_catalog(ci):
                    for xs in range(2, len(z) + 1):
                        for x in combinations(sorted(z), xs):
                            x = frozenset(x)
                            if case or not minimal_separator(g, x, w1, w2):
                                continue
                            lvl = least_good_level(g, cf, w1, u, x)
                            if lvl is None or lvl >= k or not is_level_important(g, cf, w1, w2, u, x, lvl):
                                continue
                            seq = tight_separator_sequence(SeparatorQuery(g, w1, w2, len(x), u))
                            last_good, _ = Engine(cf).partition(g, w1, u, seq, lvl)
                            if last_good is None:
                                continue
                            p1 = seq[last_good]
                            kmod = z & (reach(g, w1, x) | x)
                            if incomparable(g, w1, x, p1) and not kmod & p1:
                                case = (seed, g, k, cf, w1, w2, u, x, p1, kmod)
        if case:
            found += 1
            yield case


def rr1_instance(seed: int):
    """A separating instance plus a few extra components that already lie
    in a class, so the first reduction rule has something to delete."""
    r = random.Random(seed)
    g, k, cf, w, u = separating_instance(seed, kmin=0, kmax=2, nmax=9)
    names = [f.name for f in cf.families]
    nxt = max(g.vertices) + 1
    vertices, edges = list(g.vertices), list(g.edges())
    for _ in range(r.randint(1, 2)):
        ids = list(range(nxt, nxt + r.randint(1, 3)))
        nxt += len(ids)
        vertices += ids
        edges += _member(r, r.choice(names), ids)
    first_new = max(g.vertices) + 1
    g = Graph(vertices, edges)
    # some modulator vertices inside the removable components too
    extra = frozenset(v for v in vertices if v >= first_new and r.random() < 0.3)
    return g, k, cf, w | extra, u


def _side(r: random.Random, cf, offset: int):
    """A connected random graph with a modulator W inside it."""
    from scatter.oracle import oracle_solve
    from scatter.instances import ScatteredInstance
    while True:
        n = r.randint(2, 5)
        g = gnp(r, n, r.choice([0.4, 0.6]))
        comp = reach(g, frozenset({1}))
        if len(comp) < 2:
            continue
        g = g.induced(comp)
        mod = oracle_solve(ScatteredInstance(g, len(g), cf)).witness
        w = mod | {r.choice(g.vertices)}
        mp = {v: v + offset for v in g.vertices}
        return ([mp[v] for v in g.vertices], [(mp[a], mp[b]) for a, b in g.edges()],
                frozenset(mp[v] for v in w))


def rr2_instance(seed: int):
    """Two vertex-disjoint connected pieces holding W1 and W2, plus an
    optional piece without modulator vertices.  Returns (g, k, classes, w1, w2, u)."""
    from scatter.classes import class_family
    r = random.Random(seed)
    cf = class_family(r.choice(CLASS_PAIRS))
    v1, e1, w1 = _side(r, cf, 0)
    v2, e2, w2 = _side(r, cf, 10)
    vertices, edges = v1 + v2, e1 + e2
    if r.random() < 0.5:
        ids = [21, 22, 23][:r.randint(1, 3)]
        vertices += ids
        edges += _member(r, cf.families[0].name, ids)
    g = Graph(vertices, edges)
    u = frozenset(v for v in vertices if v not in w1 | w2 and r.random() < 0.15)
    return g, r.randint(0, 3), cf, w1, w2, u
