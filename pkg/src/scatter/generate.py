"""Seeded random instances with a planted solution."""
from __future__ import annotations

import random
from itertools import combinations

from .classes import ClassFamily, builtin, in_some_class
from .graph import Graph, is_connected
from .instances import ScatteredInstance


def _clique(rng: random.Random, ids: list[int]) -> list[tuple[int, int]]:
    return list(combinations(ids, 2))


def _biclique(rng: random.Random, ids: list[int]) -> list[tuple[int, int]]:
    if len(ids) == 1:
        return []
    a = rng.randint(1, len(ids) - 1)
    return [(x, y) for x in ids[:a] for y in ids[a:]]


def _cograph(rng: random.Random, ids: list[int]) -> list[tuple[int, int]]:
    # the top operation is a join so the result is connected
    def build(vs: list[int], join: bool) -> list[tuple[int, int]]:
        if len(vs) == 1:
            return []
        cut = rng.randint(1, len(vs) - 1)
        left, right = vs[:cut], vs[cut:]
        out = build(left, not join) + build(right, not join)
        if join:
            out += [(x, y) for x in left for y in right]
        return out
    return build(ids, True)


def _split(rng: random.Random, ids: list[int]) -> list[tuple[int, int]]:
    cut = rng.randint(1, len(ids))
    clique, indep = ids[:cut], ids[cut:]
    out = list(combinations(clique, 2))
    for v in indep:
        nbrs = [c for c in clique if rng.random() < 0.5] or [rng.choice(clique)]
        out += [(c, v) for c in nbrs]
    return out


_MAKERS = {
    "clique": _clique,
    "cluster-within-component": _clique,
    "biclique": _biclique,
    "cograph": _cograph,
    "split": _split,
    "edgeless": lambda rng, ids: [],
}


def _member(rng: random.Random, classes: ClassFamily, ids: list[int]) -> list[tuple[int, int]]:
    """Edges of a random connected graph on ids lying in one of the classes."""
    fam = rng.choice(classes.families)
    maker = _MAKERS.get(fam.name)
    if maker is not None and (fam.name != "edgeless" or len(ids) == 1):
        edges = maker(rng, ids)
        if fam is builtin(fam.name) or in_some_class(Graph(ids, edges), classes):
            return edges
    # user families: sample random connected graphs, falling back to a path
    for _ in range(50):
        edges = [e for e in combinations(ids, 2) if rng.random() < 0.5]
        g = Graph(ids, edges)
        if is_connected(g) and in_some_class(g, classes):
            return edges
    return []


def generate_planted(n: int, k: int, classes: ClassFamily, seed: int,
                     max_part: int = 6, outlier_p: float = 0.15) -> tuple[ScatteredInstance, frozenset[int]]:
    """A graph of n vertices where deleting the k planted outliers leaves
    components from the given classes."""
    if n < k or k < 0:
        raise ValueError("need 0 <= k <= n")
    rng = random.Random(seed)
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    outliers = sorted(ids[:k])
    rest = ids[k:]
    edges: list[tuple[int, int]] = []
    parts: list[list[int]] = []
    i = 0
    while i < len(rest):
        size = rng.randint(1, max_part)
        parts.append(rest[i:i + size])
        i += size
    for part in parts:
        edges += _member(rng, classes, part)
    for o in outliers:
        for v in ids:
            if v != o and rng.random() < outlier_p:
                edges.append((o, v))
    g = Graph(range(1, n + 1), {tuple(sorted(e)) for e in edges})
    return ScatteredInstance(g, k, classes), frozenset(outliers)
