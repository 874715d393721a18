"""Acceptance criteria 1-9.

Each test records one PASS/FAIL line; ``conftest.py`` prints them at the end
of the session, and running this file directly prints them as it goes.
"""

from __future__ import annotations

import random
import time
from contextlib import contextmanager

import pytest
from instances import (
    boolean_image_instances,
    matroids_on,
    realizable_instances,
    stable_sum_pairs,
)

from tropim.exterior import ExteriorVector, GroundSet, TropMatrix, all_subsets, dot, hodge_star, wedge
from tropim.extension import (
    all_points,
    image_by_minors,
    image_rank,
    linear_extension,
    sample_points,
    stable_sum,
    stable_sum_by_minors,
    tropical_image,
)
from tropim.lift import image_space, tropicalize_any, verify_realizable
from tropim.matroid import (
    BipartiteGraph,
    brylawski_bound_check,
    cyclic_flats,
    induced_matroid_bruteforce,
    is_transversal,
    principal_extension,
)
from tropim.plucker import (
    cocircuits,
    contains_point,
    from_matroid,
    is_subspace,
    underlying_matroid,
    validate,
)
from tropim.semifield import BOOLEAN

RESULTS: dict[int, str] = {}

# Instances of criteria 3-5, replayed by criterion 8.
CROSSCHECK: dict[str, list] = {"c3": [], "c4": [], "c5": []}


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[n] = line
    print(line)


@contextmanager
def timed():
    box = {}
    start = time.perf_counter()
    yield box
    box["s"] = time.perf_counter() - start


def sets(v: ExteriorVector) -> set[str]:
    return {"".join(v.ground.subset(m)) for m in v.coords}


# ---------------------------------------------------------------- 1


def test_criterion_1_u34_example():
    with timed() as t:
        E = GroundSet.range(4)
        w = validate(ExteriorVector.from_sets(BOOLEAN, E, ["123", "124", "134", "234"]))

        def form(*labels):
            return ExteriorVector.from_sets(BOOLEAN, E, labels)

        w1 = dot(w, hodge_star(form("1", "2")))
        w2 = dot(w, hodge_star(form("3", "4")))
        w3 = dot(w, hodge_star(form("1", "2", "3", "4")))
    ok = (sets(w1) == {"13", "23", "14", "24", "34"}
          and sets(w2) == {"12", "13", "23", "14", "24"}
          and sets(w3) == {"12", "13", "23", "14", "24", "34"}
          and all(set(v.coords.values()) == {1} for v in (w1, w2, w3))
          and t["s"] < 1.0)
    record(1, ok, f"{t['s']:.3f}s, limit 1s")
    assert ok


# ---------------------------------------------------------------- 2


def test_criterion_2_no_composition():
    with timed() as t:
        mid = GroundSet(["x", "y", "z"])
        A = TropMatrix(BOOLEAN, mid, GroundSet(["a", "b"]), [[1, 1]] * 3)
        B = TropMatrix(BOOLEAN, GroundSet.range(6), mid,
                       [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]])
        top = ExteriorVector.unit(BOOLEAN, A.cols, A.cols.full)
        z = tropical_image(tropical_image(top, A), B)
        M = underlying_matroid(z)
        g = M.ground
        rank_one = sorted(set(g.subset(F)) for F, r in cyclic_flats(M) if r == 1)
        bound = brylawski_bound_check(M)
        presentation = is_transversal(M)
    truncation = {frozenset(b) for b in (set(g.subset(x)) for x in M.bases)}
    expected = {frozenset(p) for p in ({a, b} for a in "123456" for b in "123456" if a < b)
                if p not in ({"1", "2"}, {"3", "4"}, {"5", "6"})}
    ok = (M.rank == 2 and truncation == expected
          and rank_one == [{"1", "2"}, {"3", "4"}, {"5", "6"}]
          and bound is False and presentation is None and t["s"] < 10.0)
    record(2, ok, f"{t['s']:.3f}s, limit 10s")
    assert ok


# ---------------------------------------------------------------- 3


def _boolean_matrices(E: GroundSet, F: GroundSet):
    n, m = len(E), len(F)
    for code in range(1 << (n * m)):
        yield TropMatrix(BOOLEAN, F, E, [[code >> (j * n + i) & 1 for i in range(n)]
                                         for j in range(m)])


def test_criterion_3_induced_matroid():
    failures = 0
    count = 0
    start = time.perf_counter()
    for n in range(5):
        E = GroundSet.range(n)
        vectors = [(M, from_matroid(M)) for M in matroids_on(n)]
        for m in range(4):
            F = GroundSet([f"f{j}" for j in range(m)])
            for A in _boolean_matrices(E, F):
                G = BipartiteGraph.from_matrix(A)
                for M, w in vectors:
                    z = tropical_image(w, A)
                    if underlying_matroid(z, check=False) != induced_matroid_bruteforce(M, G):
                        failures += 1
                    CROSSCHECK["c3"].append((w, A, z))
                    count += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60.0
    record(3, ok, f"{count} instances, {failures} mismatches, {elapsed:.1f}s, limit 60s")
    assert ok


# ---------------------------------------------------------------- 4


def test_criterion_4_stable_sum():
    pairs = stable_sum_pairs()
    with timed() as t:
        bad = 0
        for w, z, _ in pairs:
            s = stable_sum(w, z)
            if not s.projectively_equal(wedge(w, z)):
                bad += 1
            CROSSCHECK["c4"].append((w, z, s))
    ok = len(pairs) == 200 and bad == 0 and t["s"] < 60.0
    record(4, ok, f"{len(pairs)} pairs, {bad} mismatches, {t['s']:.1f}s, limit 60s")
    assert ok


# ---------------------------------------------------------------- 5


def test_criterion_5_image_containment_and_rank():
    rng = random.Random(5)
    bad_points = bad_rank = checked = 0
    for w, z, A in stable_sum_pairs():
        for v in (w, z):
            img = tropical_image(v, A)
            CROSSCHECK["c5"].append((v, A, img))
            bad_rank += img.rank > v.rank
            for p in sample_points(v, 40, rng):
                checked += 1
                bad_points += not contains_point(img, A.apply(p))
    for w, A in boolean_image_instances():
        img = tropical_image(w, A)
        CROSSCHECK["c5"].append((w, A, img))
        bad_rank += image_rank(w, A) > w.rank
        for p in all_points(BOOLEAN, w.ground):
            if contains_point(w, p):
                checked += 1
                bad_points += not contains_point(img, A.apply(p))
    ok = bad_points == 0 and bad_rank == 0
    record(5, ok, f"{checked} points, {bad_points} outside, {bad_rank} rank violations")
    assert ok


# ---------------------------------------------------------------- 6


def _mask(p: ExteriorVector) -> int:
    """A Boolean point as the subset where it is nonzero."""
    m = 0
    for b in p.coords:
        m |= b
    return m


def _span(gens: list[ExteriorVector]) -> set[int]:
    """All Boolean combinations of the generators, zero included."""
    out = {0}
    for g in map(_mask, gens):
        out |= {x | g for x in out}
    return out


def test_criterion_6_incidence_duality():
    bad = {"subspace": 0, "span": 0, "star": 0}
    pairs = 0
    for n in range(1, 6):
        E = GroundSet.range(n)
        ws = [from_matroid(M) for M in matroids_on(n)]
        stars = [hodge_star(w) for w in ws]
        pts = all_points(BOOLEAN, E)
        members = [{_mask(p) for p in pts if contains_point(w, p)} for w in ws]
        bad["span"] += sum(mem != _span(cocircuits(w)) for w, mem in zip(ws, members))
        for a, w in enumerate(ws):
            for b, z in enumerate(ws):
                pairs += 1
                sub = is_subspace(w, z)
                bad["subspace"] += sub != (members[a] <= members[b])
                bad["star"] += sub != is_subspace(stars[b], stars[a])
    ok = not any(bad.values())
    record(6, ok, f"{pairs} pairs, mismatches {bad}")
    assert ok


# ---------------------------------------------------------------- 7


def test_criterion_7_realizability():
    with timed() as t:
        successes = exact = 0
        for k, (w, A, L) in enumerate(realizable_instances()):
            verdict = verify_realizable(w, A, L, attempts=5, seed=k)
            if not verdict.success:
                continue
            successes += 1
            expected = tropical_image(w, A)
            found = tropicalize_any(image_space(L, verdict.delta))
            exact += expected.projectively_equal(found)
    ok = successes >= 49 and exact == successes and t["s"] < 120.0
    record(7, ok, f"{successes}/50 realized, {exact} exact matches, "
                  f"{t['s']:.3f}s, limit 120s")
    assert ok


# ---------------------------------------------------------------- 8


def test_criterion_8_closed_form():
    if not all(CROSSCHECK.values()):
        pytest.skip("criteria 3-5 did not run in this session")
    bad = count = 0
    for w, A, z in CROSSCHECK["c3"] + CROSSCHECK["c5"]:
        count += 1
        bad += not image_by_minors(w, A).projectively_equal(z)
    for w, zz, s in CROSSCHECK["c4"]:
        count += 1
        bad += not stable_sum_by_minors(w, zz).projectively_equal(s)
    ok = bad == 0
    record(8, ok, f"{count} instances, {bad} disagreements")
    assert ok


# ---------------------------------------------------------------- 9


def test_criterion_9_principal_extension():
    bad = count = 0
    for n in range(5):
        for M in matroids_on(n):
            w = from_matroid(M)
            for F in all_subsets(M.ground.full):
                phi = ExteriorVector(BOOLEAN, M.ground, 1,
                                     {1 << i: 1 for i in range(n) if F >> i & 1},
                                     check=False)
                got = underlying_matroid(linear_extension(w, phi, "p"), check=False)
                count += 1
                bad += got != principal_extension(M, F, "p")
    ok = bad == 0
    record(9, ok, f"{count} (matroid, support) pairs, {bad} mismatches")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
