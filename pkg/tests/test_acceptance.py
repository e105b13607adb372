"""Acceptance criteria, one test each.  Every test records a PASS/FAIL
line that is printed and repeated in the terminal summary."""
import random
import statistics
import time
from itertools import combinations
from math import comb

from corpus import (PAW, check_tight_sequence, gadget_cases, gnp, is_level_important, minimal_separator,
                    random_instance, random_query, rr1_instance, rr2_instance, separating_instance)
from scatter.classes import class_family, is_scattered_modulator
from scatter.gadget import construct_marked_gadget, gadget_size_bound
from scatter.generate import generate_planted
from scatter.graph import BoundariedGraph, enumerate_connected_sets, glue, is_connected, reach
from scatter.instances import (BranchTuple, CompressionInstance, ScatteredInstance, SeparationContext,
                               verify_witness)
from scatter.oracle import oracle_important_separators, oracle_solution_catalog, oracle_solve
from scatter.separators import SeparatorQuery, enumerate_important_separators
from scatter.solver import (Engine, SolverConfig, branching_set, reduction_rule_1, reduction_rule_2,
                            solve)

CB = class_family(["clique", "biclique"])


def test_1_fpt_matches_oracle(record):
    started = time.perf_counter()
    bad = []
    for seed in range(1000):
        g, k, pair = random_instance(seed)
        inst = ScatteredInstance(g, k, class_family(pair))
        got = solve(inst, mode="fpt")
        if got.answer:
            verify_witness(g, got.witness, k, inst.classes)
        if got.answer != oracle_solve(inst).answer:
            bad.append(seed)
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 600
    record(1, ok, f"1000 instances, {len(bad)} disagreements, {elapsed:.1f}s")
    assert ok, bad[:10]


def test_2_important_separators_match_oracle(record):
    bad = []
    over = []
    for seed in range(500):
        g, x, y, k, u = random_query(seed, nmax=8, kmax=3)
        got = enumerate_important_separators(SeparatorQuery(g, x, y, k, u))
        if got != oracle_important_separators(g, x, y, k, u):
            bad.append(seed)
        if len(got) > 4 ** k:
            over.append(seed)
    ok = not bad and not over
    record(2, ok, f"500 queries, {len(bad)} mismatches, {len(over)} above 4^k")
    assert ok, (bad[:10], over[:10])


def test_3_tight_sequences(record):
    checked = 0
    seed = 0
    bad = []
    while checked < 300:
        g, x, y, k, u = random_query(seed, nmax=9, kmax=3)
        seed += 1
        # the sequence is defined only for terminals that are still connected
        if not reach(g, x) & y:
            continue
        checked += 1
        violated = check_tight_sequence(g, x, y, k, u)
        if violated:
            bad.append((seed - 1, violated))
    ok = not bad
    record(3, ok, f"300 graphs (seeds 0..{seed - 1}), {len(bad)} property violations")
    assert ok, bad[:10]


def test_4_paw(record):
    no = solve(ScatteredInstance(PAW, 0, CB))
    yes = solve(ScatteredInstance(PAW, 1, CB))
    ok = not no.answer and yes.answer and len(yes.witness) == 1
    if ok:
        verify_witness(PAW, yes.witness, 1, CB)
    record(4, ok, f"k=0 no, k=1 yes with witness {sorted(yes.witness or [])}")
    assert ok


def test_5_connected_sets(record):
    r = random.Random(5)
    bad = []
    over = []
    for case in range(300):
        n = r.randint(1, 10)
        g = gnp(r, n, r.choice([0.2, 0.3, 0.5]))
        v = r.choice(g.vertices)
        b, f = r.randint(0, 3), r.randint(0, 3)
        got = enumerate_connected_sets(g, v, b, f)
        want = []
        for rest in combinations(sorted(g.vertex_set - {v}), b):
            s = frozenset(rest) | {v}
            if is_connected(g.induced(s)) and len(g.neighborhood(s) - s) == f:
                want.append(s)
        if sorted(got, key=sorted) != sorted(want, key=sorted):
            bad.append(case)
        if len(got) > comb(b + f, b):
            over.append(case)
    ok = not bad and not over
    record(5, ok, f"300 cases, {len(bad)} mismatches, {len(over)} above C(b+f,b)")
    assert ok, (bad[:10], over[:10])


def _qualifying(g, cf, w1, w2, u, lam, ell, z):
    """Separators X inside Z of size <= lam that are (ell,U)-important."""
    out = []
    for size in range(1, lam + 1):
        for x in combinations(sorted(z), size):
            x = frozenset(x)
            if minimal_separator(g, x, w1, w2) and is_level_important(g, cf, w1, w2, u, x, ell):
                out.append(x)
    return out


def test_6_branching_set_hits_solutions(record):
    instances = checks = 0
    misses = []
    seed = 0
    while instances < 100 and seed < 2000:
        g, k, cf, w, u = separating_instance(seed)
        seed += 1
        ci = reduction_rule_1(CompressionInstance(g, k, w, u, cf))
        g, w, u = ci.g, ci.w, ci.u
        catalog = oracle_solution_catalog(ci)
        used = False
        for size in range(1, len(w)):
            for w1 in combinations(sorted(w), size):
                w1 = frozenset(w1)
                w2 = w - w1
                # the guarantee is for connected W1, W2 after the split rule
                if not w <= reach(g, frozenset({min(w1)})):
                    continue
                ctx = SeparationContext(w1, w2)
                for lam in range(1, k + 1):
                    for ell in range(k):
                        rset = branching_set(ci, ctx, BranchTuple(lam, ell))
                        for z in catalog:
                            if not _qualifying(g, cf, w1, w2, u, lam, ell, z):
                                continue
                            used = True
                            checks += 1
                            if rset is None or not rset & z:
                                misses.append((seed - 1, sorted(w1), lam, ell, sorted(z)))
        instances += used
    ok = instances == 100 and not misses
    record(6, ok, f"{instances} instances, {checks} solution checks, {len(misses)} misses")
    assert ok, misses[:10]


def test_7_witness_guided_gadget(record):
    cases = list(gadget_cases(30))
    too_big = lost = missed = 0
    sizes = []
    for seed, g, k, cf, w1, w2, u, x, p1, kmod in cases:
        gad = construct_marked_gadget(g, w1, p1, x, kmod, cf, k)
        sizes.append(len(gad.graph))
        too_big += len(gad.graph) > gadget_size_bound(cf, k)
        rp = reach(g, w1, p1)
        glued, remap = glue(BoundariedGraph(g.induced(rp | p1), tuple(sorted(gad.boundary))), gad)
        delta = frozenset(remap[v] for v in gad.annotated)
        h = glued.remove(delta)
        kr = kmod & (rp | p1)
        lost += not is_scattered_modulator(h, kr, cf)
        # the recursive branching call on the glued instance must hit K^r
        fresh = frozenset(remap[v] for v in gad.graph.vertex_set - set(gad.boundary)) - delta
        xr = x & rp
        rset = Engine(cf, SolverConfig(fallback="widen")).branching(
            h, len(kr), w1, p1 - set(gad.boundary), (u & rp) | fresh, len(xr), len(kr - xr))
        missed += rset is None or not rset & kr
    ok = len(cases) == 30 and not too_big and not lost and not missed
    record(7, ok, f"{len(cases)} instances, gadget sizes {min(sizes)}-{max(sizes)}, "
                  f"{too_big} over bound, {lost} lost K^r modulator, {missed} recursive misses")
    assert ok


def test_8_scale(record):
    times = []
    fallbacks = []
    for seed in range(5):
        inst, planted = generate_planted(50, 4, CB, seed)
        started = time.perf_counter()
        res = solve(inst, mode="fpt")
        times.append(time.perf_counter() - started)
        assert res.answer
        verify_witness(inst.g, res.witness, 4, CB)
        fallbacks.append(res.stats.oracle_fallbacks)
    med = statistics.median(times)
    ok = med < 60
    record(8, ok, f"n=50 k=4 median {med:.2f}s (max {max(times):.2f}s), fallbacks {fallbacks}")
    assert ok


def test_9_reduction_rules(record):
    rr1_bad = []
    for seed in range(200):
        g, k, cf, w, u = rr1_instance(seed)
        ci = CompressionInstance(g, k, w, u, cf)
        reduced = reduction_rule_1(ci)
        before = oracle_solution_catalog(ci)
        after = oracle_solution_catalog(reduced)
        if bool(before) != bool(after) or (before and len(before[0]) != len(after[0])):
            rr1_bad.append(seed)
    rr2_bad = []
    for seed in range(200):
        g, k, cf, w1, w2, u = rr2_instance(seed)
        ci = CompressionInstance(g, k, w1 | w2, u, cf)
        reduced, removed = reduction_rule_2(ci, SeparationContext(w1, w2))
        catalog = oracle_solution_catalog(ci)
        # solutions keeping W1 in one component: the case the rule serves
        together = [z for z in catalog if w1 <= reach(g.remove(z), frozenset({min(w1)}))]
        after = reduced is not None and bool(oracle_solution_catalog(reduced))
        if bool(together) and not after or after and not catalog:
            rr2_bad.append(seed)
        elif reduced is not None:
            side = reach(g, w1)
            if removed & (w1 | u) or not is_scattered_modulator(g.induced(side), removed, cf):
                rr2_bad.append(seed)
    ok = not rr1_bad and not rr2_bad
    record(9, ok, f"RR1 200 instances, {len(rr1_bad)} changed; RR2 200 instances, {len(rr2_bad)} changed")
    assert ok, (rr1_bad[:10], rr2_bad[:10])
