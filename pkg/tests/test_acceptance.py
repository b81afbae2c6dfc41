"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are collected by the ``criterion`` fixture and printed in a
summary section at the end of the pytest run.
"""

import math
import random
import time

import pytest

from cyclotope.arith import crt_pair
from cyclotope.ehrhart import count_lattice_points_oracle, ehrhart_two_orbit, ehrhart_values
from cyclotope.embed import affine_rank, all_vertices, barycenter_coefficient, \
    verify_barycenter_combination
from cyclotope.facets3 import (VERIFIED_FACET, AbcSpec, enumerate_checkerboard_facets,
                               facet_lower_bound, nonessential_facets)
from cyclotope.group import CycleType, subelement_indices, vertex_degree, vertex_degree_sieve
from cyclotope.hull import AffineFrame, facet_enumeration, neighborliness_probe, \
    vertex_edge_degree
from cyclotope.structure import (dimension_divisibility, dimension_inclusion_exclusion,
                                 dimension_roots_of_unity)
from cyclotope.table1 import TABLE1

import oracles

SEED = 20240


def _hull_row(criterion, number, abc, limit_s):
    spec = AbcSpec(*abc)
    start = time.perf_counter()
    hrep = facet_enumeration(spec.vertices())
    elapsed = time.perf_counter() - start
    got = (hrep.dim, spec.vertex_count, len(hrep.inequalities))
    want = tuple(TABLE1[abc][k] for k in ("dim", "vertices", "facets"))
    ok = got == want and elapsed <= limit_s
    criterion(number, ok, f"P{abc}: dim {got[0]} vertices {got[1]} facets {got[2]} "
                          f"(table {want}) in {elapsed:.1f}s, limit {limit_s}s")
    return ok


def test_criterion_01_table_row_2_3_5(criterion):
    assert _hull_row(criterion, 1, (2, 3, 5), 300)


def test_criterion_02_table_row_2_3_7(criterion):
    assert _hull_row(criterion, 2, (2, 3, 7), 3600)


def test_criterion_03_facet_bounds(criterion):
    bounds = {abc: facet_lower_bound(AbcSpec(*abc)) for abc in [(2, 5, 7), (2, 5, 9), (3, 4, 5)]}
    ok = (bounds == {(2, 5, 7): 3839, (2, 5, 9): 15373, (3, 4, 5): 1307}
          and bounds[(2, 5, 7)] == TABLE1[(2, 5, 7)]["facets"]
          and bounds[(2, 5, 9)] == TABLE1[(2, 5, 9)]["facets"]
          and bounds[(3, 4, 5)] <= TABLE1[(3, 4, 5)]["facets"])
    criterion(3, ok, f"bounds {[bounds[k] for k in sorted(bounds)]} for {sorted(bounds)}; "
                     f"3839 and 15373 equal the table, 1307 <= 29387")
    assert ok


def _random_types(rng, count, max_len, max_order=None):
    out = []
    while len(out) < count:
        ct = CycleType(tuple(rng.randint(2, max_len) for _ in range(rng.randint(1, 4))))
        if max_order is None or ct.d <= max_order:
            out.append(ct)
    return out


def test_criterion_04_dimension_formulas(criterion):
    start = time.perf_counter()
    bad, ranked = [], 0
    for ct in _random_types(random.Random(SEED), 200, 30):
        values = {dimension_divisibility(ct), dimension_roots_of_unity(ct),
                  dimension_inclusion_exclusion(ct)}
        if ct.d <= 500:
            ranked += 1
            values.add(affine_rank(all_vertices(ct)))
        if len(values) != 1:
            bad.append(ct.lengths)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 60
    criterion(4, ok, f"200 types agree on all formulas ({ranked} also by affine rank), "
                     f"{len(bad)} disagreements, {elapsed:.1f}s of 60s")
    assert ok


def test_criterion_05_degree_oracles(criterion):
    bad, lp_checked = [], 0
    for ct in _random_types(random.Random(SEED + 1), 100, 30, max_order=2000):
        deg = vertex_degree(ct)
        if vertex_degree_sieve(ct) != deg:
            bad.append(ct.lengths)
        if ct.d <= 300:
            lp_checked += 1
            if vertex_edge_degree(all_vertices(ct), 0) != deg:
                bad.append(ct.lengths)
    criterion(5, not bad, f"100 types: sieve = count, {lp_checked} also by LP edge test; "
                          f"mismatches {bad}")
    assert not bad


def _partitions(n, smallest=2):
    if n == 0:
        yield ()
        return
    for p in range(smallest, n + 1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def test_criterion_06_subelements_exhaustive(criterion):
    types = [p for n in range(2, 21) for p in _partitions(n)]
    checks, bad = 0, []
    for lengths in types:
        ct = CycleType(lengths)
        for k in range(ct.d):
            checks += 1
            if subelement_indices(ct, k) != oracles.subelements(lengths, k):
                bad.append((lengths, k))
    criterion(6, not bad, f"{len(types)} normalized types, {checks} (type, k) pairs against "
                          f"explicit permutations, {len(bad)} mismatches")
    assert not bad


def test_criterion_07_ehrhart_oracle(criterion):
    start = time.perf_counter()
    pairs = [(a, b) for a in range(2, 11) for b in range(a, 11) if a + b <= 12]
    bad = []
    for a, b in pairs:
        ct = CycleType((a, b))
        values = ehrhart_values(ehrhart_two_orbit(ct), 4)
        hrep = facet_enumeration(all_vertices(ct))
        counts = [count_lattice_points_oracle(ct, k, hrep) for k in range(1, 5)]
        if counts != values[1:] or values[1] != math.lcm(a, b):
            bad.append((a, b))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 300
    criterion(7, ok, f"{len(pairs)} two-orbit types, k = 1..4 brute force = closed form, "
                     f"L(1) = lcm; failures {bad}; {elapsed:.1f}s of 300s")
    assert ok


def test_criterion_08_barycenter(criterion):
    results = {}
    for a, b, c in [(2, 3, 5), (2, 3, 7)]:
        m = crt_pair(1, a * b, 0, c)
        total = sum(barycenter_coefficient(a, b, c, k) for k in range(a * b * c))
        results[(a, b, c)] = (m, verify_barycenter_combination(a, b, c, m), total == a * b * c)
    ok = all(v and s for _, v, s in results.values())
    criterion(8, ok, "; ".join(f"P{k} m={m} verified={v} sum=abc:{s}"
                               for k, (m, v, s) in results.items()))
    assert ok


def test_criterion_09_facet_identity(criterion):
    spec = AbcSpec(2, 3, 5)
    pts = spec.vertices()
    frame = AffineFrame(pts)
    hull_rows = set(facet_enumeration(pts).inequalities)
    ne = nonessential_facets(spec)
    cb = enumerate_checkerboard_facets(spec)
    cert_rows = {frame.reduce(c.hull_row()) for c in ne + cb}
    all_verified = all(c.status == VERIFIED_FACET for c in ne + cb)
    ok = hull_rows == cert_rows and len(hull_rows) == 211 and (len(ne), len(cb)) == (31, 180)
    ok = ok and all_verified
    criterion(9, ok, f"hull {len(hull_rows)} facets = {len(ne)} nonessential + {len(cb)} "
                     f"checkerboard certificates as canonical sets: {hull_rows == cert_rows}")
    assert ok


def _two_orbit_pairs():
    return [(a, b) for a in range(2, 13) for b in range(a, 13) if a + b <= 14]


def test_criterion_10_two_orbit_structure(criterion):
    # When one length divides the other the polytope is a simplex on lcm
    # vertices, so it has lcm facets rather than l1 + l2; see the ledger.
    bad, divisible = [], 0
    for a, b in _two_orbit_pairs():
        hrep = facet_enumeration(all_vertices(CycleType((a, b))))
        d = math.lcm(a, b)
        expected = d if b % a == 0 else a + b
        divisible += b % a == 0
        if len(hrep.inequalities) != expected or len(all_vertices(CycleType((a, b)))) != d:
            bad.append((a, b))
    pairs = len(_two_orbit_pairs())
    criterion(10, not bad, f"{pairs} pairs: vertices = lcm everywhere; facets = l1 + l2 on "
                           f"{pairs - divisible} pairs, = lcm on the {divisible} pairs with "
                           f"l1 | l2 (literal l1 + l2 is false there); failures {bad}")
    assert not bad


@pytest.mark.xfail(strict=True, reason="l1 + l2 facets is false when l1 divides l2")
def test_criterion_10_literal_sum_on_divisible_pairs():
    for a, b in _two_orbit_pairs():
        if b % a == 0:
            hrep = facet_enumeration(all_vertices(CycleType((a, b))))
            assert len(hrep.inequalities) == a + b


def test_criterion_11_neighborliness_probes(criterion):
    ct = CycleType((6, 10, 15))
    pairs = neighborliness_probe(ct, 1)
    triples = neighborliness_probe(ct, 2, sample=500, seed=SEED, require_hypothesis=False)
    ok = (pairs.exhaustive and pairs.tested == math.comb(30, 2)
          and pairs.verdict == "conjecture-consistent"
          and triples.tested == 500 and triples.counterexample is None
          and triples.verdict == "conjecture-consistent")
    criterion(11, ok, f"{pairs.summary()}; {triples.summary()}")
    assert ok
