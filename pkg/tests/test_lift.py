import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from tropim.exterior import ExteriorVector, GroundSet, TropMatrix
from tropim.extension import tropical_image
from tropim.lift import (
    FieldVectorSpace,
    LaurentPoly,
    PreconditionError,
    T,
    ZERO,
    bareiss,
    classical_plucker,
    coefficient_pool_size,
    det,
    evaluate_poly,
    generic_lift,
    graph_space,
    image_space,
    lift_point,
    rank,
    rescale_to_integers,
    trop_of_poly,
    tropicalize_any,
    tropicalize_space,
    valuation,
    verify_realizable,
)
from tropim.plucker import minor_project, underlying_matroid
from tropim.semifield import BOOLEAN, MAXPLUS, NEG_INF, DomainError

E2, E3 = GroundSet.range(2), GroundSet.range(3)

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(st.integers(-4, 4), coeffs, max_size=4).map(LaurentPoly)


def mono(c, e):
    return LaurentPoly.monomial(c, e)


def leibniz(m):
    n = len(m)
    total = ZERO
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i, j in combinations(range(n), 2))
        term = LaurentPoly.const(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * m[i][j]
        total = total + term
    return total


def random_poly(rng, zero_weight=0.2):
    if rng.random() < zero_weight:
        return ZERO
    return LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3) for _ in range(rng.randint(1, 2))})


# ---------------------------------------------------------------- Laurent polynomials


def test_valuation_examples():
    assert valuation(LaurentPoly({2: 3, -1: 1})) == 2
    assert valuation(ZERO) is NEG_INF
    assert valuation(T) == 1


@given(polys, polys)
def test_valuation_is_multiplicative_and_ultrametric(f, g):
    assert valuation(f * g) == MAXPLUS.mul(valuation(f), valuation(g))
    s = valuation(f + g)
    assert s is NEG_INF or s <= MAXPLUS.add(valuation(f), valuation(g))
    if valuation(f) != valuation(g):
        assert s == MAXPLUS.add(valuation(f), valuation(g))


@given(polys, polys)
def test_ring_laws(f, g):
    assert f * g == g * f
    assert (f + g) - g == f
    if not g.is_zero():
        assert (f * g).exact_div(g) == f


def test_exact_div_rejects_remainders():
    with pytest.raises(DomainError):
        (T + LaurentPoly.const(1)).exact_div(T + LaurentPoly.const(2))


def test_json_round_trip():
    f = LaurentPoly({2: Fraction(3, 2), -1: 1})
    assert f.to_json() == {"-1": "1", "2": "3/2"}
    assert LaurentPoly.from_json(f.to_json()) == f
    assert LaurentPoly.from_json("7") == LaurentPoly.const(7)


def test_substitute_power():
    f = LaurentPoly({2: 3, -1: 1})
    assert f.substitute_power(3) == LaurentPoly({6: 3, -3: 1})


# ---------------------------------------------------------------- determinants


@settings(max_examples=60)
@given(st.integers(0, 10**6))
def test_bareiss_matches_leibniz(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    m = [[random_poly(rng) for _ in range(n)] for _ in range(n)]
    assert det(m) == leibniz(m)
    assert (rank(m) == n) == (not leibniz(m).is_zero())


def test_rank_of_rectangular_matrices():
    one = LaurentPoly.const(1)
    assert rank([[one, one, ZERO], [one, one, ZERO]]) == 1
    assert rank([[one, T], [T, T * T]]) == 1
    assert bareiss([[one, T], [ZERO, one]])[0] == 2


# ---------------------------------------------------------------- Pluecker coordinates


def test_classical_plucker_examples():
    assert classical_plucker(FieldVectorSpace.from_rows(E2, [[1, 0], [0, 1]])) == {0b11: LaurentPoly.const(1)}
    line = FieldVectorSpace.from_rows(E2, [[LaurentPoly.const(1), T]])
    assert classical_plucker(line) == {0b01: LaurentPoly.const(1), 0b10: T}


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_three_term_relation(seed):
    rng = random.Random(seed)
    rows = [[random_poly(rng, 0) for _ in range(4)] for _ in range(2)]
    if rank(rows) < 2:
        return
    p = classical_plucker(FieldVectorSpace.from_rows(GroundSet.range(4), rows))

    def c(a, b):
        return p.get(1 << a | 1 << b, ZERO)

    assert c(0, 1) * c(2, 3) - c(0, 2) * c(1, 3) + c(0, 3) * c(1, 2) == ZERO


def test_rank_deficient_rows_are_rejected():
    with pytest.raises(ValueError):
        FieldVectorSpace.from_rows(E2, [[1, 2], [2, 4]])


def test_tropicalize_examples():
    line = FieldVectorSpace.from_rows(E2, [[LaurentPoly.const(1), T]])
    assert tropicalize_space(line) == ExteriorVector(MAXPLUS, E2, 1, {1: 0, 2: 1})
    u23 = tropicalize_space(FieldVectorSpace.from_rows(E3, [[1, 1, 0], [0, 1, 1]]))
    assert u23 == ExteriorVector(MAXPLUS, E3, 2, {3: 0, 5: 0, 6: 0})


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_tropicalization_pushes_forward_to_the_coefficient_matroid(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    d = rng.randint(1, n)
    C = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(d)]
    b = [rng.randint(-3, 3) for _ in range(n)]
    rows = [[mono(c, b[i]) if c else ZERO for i, c in enumerate(r)] for r in C]
    if rank(rows) < d:
        return
    w = tropicalize_space(FieldVectorSpace.from_rows(GroundSet.range(n), rows))
    consts = [[LaurentPoly.const(c) for c in r] for r in C]
    bases = {sum(1 << i for i in cols) for cols in combinations(range(n), d)
             if not det([[r[i] for i in cols] for r in consts]).is_zero()}
    assert set(underlying_matroid(w.push_forward()).bases) == bases


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_graph_coordinates_restrict_and_project(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 3), rng.randint(1, 3)
    d = rng.randint(1, n)
    E = GroundSet.range(n)
    rows = [[random_poly(rng) for _ in range(n)] for _ in range(d)]
    if rank(rows) < d:
        return
    space = FieldVectorSpace.from_rows(E, rows)
    A = TropMatrix(MAXPLUS, GroundSet([f"f{j}" for j in range(m)]), E,
                   [[rng.choice([NEG_INF, -1, 0, 2]) for _ in range(n)] for _ in range(m)])
    delta = generic_lift(A, rng, 50)
    g = graph_space(space, delta)
    p, q = classical_plucker(g), classical_plucker(space)
    assert {B: c for B, c in p.items() if B < 1 << n} == q
    trop_g = tropicalize_space(g)
    F = g.ground.full & ~E.full
    assert minor_project(trop_g, F).projectively_equal(tropicalize_any(image_space(space, delta)))


# ---------------------------------------------------------------- lifts


def test_generic_lift_examples():
    rng = random.Random(0)
    Z = TropMatrix.zeros(MAXPLUS, E2, E3)
    assert all(p.is_zero() for r in generic_lift(Z, rng, 5).entries for p in r)
    A = TropMatrix(MAXPLUS, E2, E3, [[0, NEG_INF, 3], [-2, 1, 0]])
    lift = generic_lift(A, rng, 5)
    assert lift.valuation() == A
    B = TropMatrix(BOOLEAN, E2, E3, [[1, 0, 1], [0, 1, 1]])
    entries = generic_lift(B, rng, 5).entries
    assert all((p.is_zero() and not b) or (set(p.terms) == {0} and b)
               for r, br in zip(entries, B.entries) for p, b in zip(r, br))
    assert generic_lift(A, random.Random(9), 7) == generic_lift(A, random.Random(9), 7)


def test_pool_size_exceeds_the_binomial_bound():
    assert coefficient_pool_size(3, 2, 2) == 11


def test_rescale_to_integers():
    A = TropMatrix(MAXPLUS, E2, E2, [[Fraction(1, 2), NEG_INF], [Fraction(1, 3), 2]])
    scaled, k = rescale_to_integers(A)
    assert k == 6
    assert [list(r) for r in scaled.entries] == [[3, NEG_INF], [2, 12]]
    with pytest.raises(DomainError):
        generic_lift(A, random.Random(0), 5)


def test_verify_realizable_identity():
    space = FieldVectorSpace.from_rows(E3, [[1, 1, 0], [0, T, 1]])
    w = tropicalize_space(space)
    ident = TropMatrix.identity(MAXPLUS, GroundSet(["a", "b", "c"]), E3)
    verdict = verify_realizable(w, ident, space)
    assert verdict.success and verdict.attempts == 1
    assert verdict.found.projectively_equal(w.relabel(ident.rows))


def test_verify_realizable_all_ones():
    space = FieldVectorSpace.from_rows(E2, [[1, 0], [0, 1]])
    top = ExteriorVector.unit(BOOLEAN, E2, E2.full)
    ones = TropMatrix(BOOLEAN, GroundSet(["a", "b", "c"]), E2, [[1, 1]] * 3)
    verdict = verify_realizable(top, ones, space)
    assert verdict.success
    assert verdict.found == ExteriorVector(MAXPLUS, ones.rows, 2, {3: 0, 5: 0, 6: 0})
    assert verdict.expected.push_forward() == tropical_image(top, ones)


def test_verify_realizable_precondition():
    space = FieldVectorSpace.from_rows(E2, [[LaurentPoly.const(1), T]])
    wrong = ExteriorVector(MAXPLUS, E2, 1, {1: 0, 2: 0})
    with pytest.raises(PreconditionError):
        verify_realizable(wrong, TropMatrix.identity(MAXPLUS, GroundSet(["a", "b"]), E2), space)


def test_verdict_json():
    space = FieldVectorSpace.from_rows(E2, [[1, 0], [0, 1]])
    top = ExteriorVector.unit(MAXPLUS, E2, E2.full, 0)
    doc = verify_realizable(top, TropMatrix.identity(MAXPLUS, GroundSet(["a", "b"]), E2),
                            space).to_json()
    assert doc["success"] is True and "witness" in doc and "mismatches" not in doc


# ---------------------------------------------------------------- tropical polynomials


def test_trop_of_poly_examples():
    f = [((1, 0), T), ((0, 1), LaurentPoly.const(1))]
    assert trop_of_poly(f, (0, 2)) == 2
    assert trop_of_poly([], (0, 2)) is NEG_INF


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_generic_lifts_preserve_the_valuation(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    # one coefficient per exponent vector, as in the lemma
    f = list({tuple(rng.randint(0, 2) for _ in range(n)): random_poly(rng, 0.1)
              for _ in range(rng.randint(1, 4))}.items())
    a = [rng.choice([NEG_INF, -1, 0, 1, 2]) for _ in range(n)]
    expected = trop_of_poly(f, a)
    pool = 2 * len(f) + 2
    hits = 0
    for _ in range(5):
        got = valuation(evaluate_poly(f, lift_point(a, rng, pool)))
        assert got is NEG_INF or got <= expected
        hits += got == expected
    assert hits >= 1
