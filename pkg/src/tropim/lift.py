"""Realizability oracle over the Laurent polynomial ring ``Q[t, 1/t]``.

The valuation sends a nonzero Laurent polynomial to its *largest* exponent,
so ``val(t) = 1`` and ``val`` maps multiplication to max-plus
multiplication.  Classical determinants use fraction-free (Bareiss)
elimination, which only ever divides exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Any, Iterable, Mapping, Sequence

from .exterior import ExteriorVector, GroundSet, TropMatrix, mask_of
from .extension import tropical_image
from .plucker import PluckerVector, validate
from .semifield import BOOLEAN, MAXPLUS, NEG_INF, DomainError


class LaurentPoly:
    """Exact Laurent polynomial: ``{exponent: nonzero Fraction}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Any] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max(self.terms)

    def low_degree(self) -> int:
        return min(self.terms)

    def leading_coefficient(self) -> Fraction:
        return self.terms[max(self.terms)]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            else:
                mono = "t" if e == 1 else f"t^{e}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return LaurentPoly.const(other) - self

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise DomainError("only monomials are units of Q[t, 1/t]")
            (e, c), = self.terms.items()
            return LaurentPoly({e * k: Fraction(1) / c ** (-k)})
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """``self / other``, which must be a Laurent polynomial."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        rem = dict(self.terms)
        dlow, dhigh = other.low_degree(), other.degree()
        lead = other.terms[dhigh]
        quot: dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            if top - dhigh < min(rem) - dlow:
                break
            q = rem[top] / lead
            shift = top - dhigh
            quot[shift] = q
            for e, c in other.terms.items():
                k = e + shift
                v = rem.get(k, 0) - q * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise DomainError(f"{self!r} is not divisible by {other!r}")
        return LaurentPoly._raw(quot)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """``f(t^k)``."""
        return LaurentPoly._raw({e * k: c for e, c in self.terms.items()})

    def evaluate(self, t: Fraction) -> Fraction:
        return sum((c * Fraction(t) ** e for e, c in self.terms.items()), Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any] | int | str) -> "LaurentPoly":
        if isinstance(doc, (int, str)):
            return cls.const(Fraction(doc))
        return cls({int(e): Fraction(str(c)) for e, c in doc.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1, 1)


def valuation(f: LaurentPoly):
    """Leading exponent, as a max-plus value (``NEG_INF`` for zero)."""
    return NEG_INF if f.is_zero() else f.degree()


# ---------------------------------------------------------------- matrices


Matrix = list[list[LaurentPoly]]


def bareiss(rows: Sequence[Sequence[LaurentPoly]]) -> tuple[int, Matrix, int]:
    """Fraction-free row echelon form with row pivoting.

    Returns ``(rank, echelon, sign)``; for a square input the last pivot is
    ``sign * det``.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = ONE
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if not a[k][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        for k in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[k][j] = (a[r][c] * a[k][j] - a[k][c] * a[r][j]).exact_div(prev)
            a[k][c] = ZERO
        prev = a[r][c]
        r += 1
    return r, a, sign


def det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return ONE
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 1:
        return m[0][0]
    rank, a, sign = bareiss(m)
    if rank < n:
        return ZERO
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def rank(m: Sequence[Sequence[LaurentPoly]]) -> int:
    return bareiss(m)[0] if m else 0


def matmul(a: Sequence[Sequence[LaurentPoly]], b: Sequence[Sequence[LaurentPoly]]
           ) -> Matrix:
    inner = len(b)
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), ZERO)
             for j in range(len(b[0]) if b else 0)] for i in range(len(a))]


def transpose(a: Sequence[Sequence[LaurentPoly]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


@dataclass(frozen=True)
class FieldVectorSpace:
    """The row space of a ``d x n`` matrix of Laurent polynomials."""

    ground: GroundSet
    rows: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        if any(len(r) != len(self.ground) for r in self.rows):
            raise ValueError("rows must have one entry per ground-set element")
        if rank(self.rows) != len(self.rows):
            raise ValueError("spanning rows are not linearly independent")

    @classmethod
    def from_rows(cls, ground, rows: Iterable[Iterable[Any]]) -> "FieldVectorSpace":
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        return cls(ground, tuple(tuple(_poly(x) for x in r) for r in rows))

    @classmethod
    def spanned_by(cls, ground: GroundSet, rows: Sequence[Sequence[LaurentPoly]]
                   ) -> "FieldVectorSpace":
        """Space spanned by possibly dependent rows (echelon rows are kept)."""
        r, ech, _ = bareiss(rows)
        return cls(ground, tuple(tuple(row) for row in ech[:r]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"ground_set": list(self.ground.labels),
                "rows": [[p.to_json() for p in r] for r in self.rows]}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "FieldVectorSpace":
        return cls.from_rows(doc["ground_set"],
                             [[LaurentPoly.from_json(p) for p in r] for r in doc["rows"]])


def _poly(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def classical_plucker(space: FieldVectorSpace) -> dict[int, LaurentPoly]:
    """Nonzero maximal minors, keyed by column bitmask."""
    n = len(space.ground)
    d = space.dim
    out = {}
    for cols in combinations(range(n), d):
        p = det([[row[c] for c in cols] for row in space.rows])
        if not p.is_zero():
            out[mask_of(cols)] = p
    return out


def tropicalize_coords(ground: GroundSet, grade: int,
                       coords: Mapping[int, LaurentPoly]) -> ExteriorVector:
    return ExteriorVector(MAXPLUS, ground, grade,
                          {m: valuation(p) for m, p in coords.items()}, check=False)


def tropicalize_space(space: FieldVectorSpace) -> PluckerVector:
    return validate(tropicalize_coords(space.ground, space.dim,
                                       classical_plucker(space)))


# ---------------------------------------------------------------- lifts


@dataclass(frozen=True)
class FieldMatrix:
    rows: GroundSet
    cols: GroundSet
    entries: tuple[tuple[LaurentPoly, ...], ...]

    def to_json(self) -> dict:
        return {"rows": list(self.rows.labels), "cols": list(self.cols.labels),
                "entries": [[p.to_json() for p in r] for r in self.entries]}

    def valuation(self) -> TropMatrix:
        return TropMatrix(MAXPLUS, self.rows, self.cols,
                          [[valuation(p) for p in r] for r in self.entries])


def coefficient_pool_size(n_domain: int, n_codomain: int, d: int) -> int:
    """Smallest pool exceeding ``binom(|E| + |F|, d)``."""
    return comb(n_domain + n_codomain, d) + 1


def _integer_exponent(a) -> int:
    if isinstance(a, int):
        return a
    if isinstance(a, Fraction) and a.denominator == 1:
        return a.numerator
    raise DomainError(f"entry {a} is not an integer exponent; rescale first")


def generic_lift(A: TropMatrix, rng: random.Random, pool: int) -> FieldMatrix:
    """``Delta_{ji} = c_{ji} t^{a_{ji}}`` with ``c`` uniform in ``1..pool``.

    Boolean matrices lift to constants (``1 -> c``, ``0 -> 0``).
    """
    sf = A.semifield
    out = []
    for r in A.entries:
        row = []
        for a in r:
            if sf.is_zero(a):
                row.append(ZERO)
                continue
            e = 0 if sf is BOOLEAN else _integer_exponent(a)
            row.append(LaurentPoly.monomial(rng.randint(1, pool), e))
        out.append(tuple(row))
    return FieldMatrix(A.rows, A.cols, tuple(out))


def rescale_to_integers(A: TropMatrix) -> tuple[TropMatrix, int]:
    """Multiply every finite entry by the least common denominator."""
    if A.semifield is BOOLEAN:
        return A, 1
    k = 1
    for r in A.entries:
        for a in r:
            if a is not NEG_INF:
                k = lcm(k, Fraction(a).denominator)
    if k == 1:
        return A, 1
    scaled = [[a if a is NEG_INF else _as_int(Fraction(a) * k) for a in r]
              for r in A.entries]
    return TropMatrix(MAXPLUS, A.rows, A.cols, scaled), k


def _as_int(f: Fraction) -> int:
    assert f.denominator == 1
    return f.numerator


def image_space(space: FieldVectorSpace, delta: FieldMatrix) -> FieldVectorSpace:
    """``Delta Lambda``: spanned by the rows of ``Lambda Delta^T``."""
    rows = matmul([list(r) for r in space.rows], transpose(delta.entries))
    if not rows:
        return FieldVectorSpace(delta.rows, ())
    return FieldVectorSpace.spanned_by(delta.rows, rows)


def graph_space(space: FieldVectorSpace, delta: FieldMatrix) -> FieldVectorSpace:
    """Graph of ``Delta`` on ``Lambda``: rows ``(v, Delta v)`` on ``E + F``."""
    ground = space.ground.disjoint_union(delta.rows)
    img = matmul([list(r) for r in space.rows], transpose(delta.entries))
    rows = tuple(tuple(r) + tuple(i) for r, i in zip(space.rows, img))
    return FieldVectorSpace(ground, rows)


def tropicalize_any(space: FieldVectorSpace) -> PluckerVector:
    """Tropicalization, with the zero space mapped to the rank-0 vector."""
    if space.dim == 0:
        return PluckerVector(MAXPLUS, space.ground, 0, {0: 0}, check=False)
    return tropicalize_space(space)


@dataclass
class RealizabilityVerdict:
    success: bool
    attempts: int
    expected: PluckerVector
    delta: FieldMatrix | None = None
    found: PluckerVector | None = None
    mismatches: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        doc = {"success": self.success, "attempts": self.attempts,
               "expected": self.expected.to_json()}
        if self.delta is not None:
            doc["witness"] = self.delta.to_json()
        if self.found is not None:
            doc["found"] = self.found.to_json()
        if self.mismatches:
            doc["mismatches"] = self.mismatches
        return doc


class PreconditionError(ValueError):
    """The supplied space does not tropicalize to the supplied vector."""


def _as_maxplus(w: ExteriorVector) -> ExteriorVector:
    return w.to_maxplus() if w.semifield is BOOLEAN else w


def _compare(expected: ExteriorVector, found: ExteriorVector) -> list[str]:
    if expected.grade != found.grade:
        return [f"rank {found.grade} != expected {expected.grade}"]
    e, f = expected.normalize(), found.normalize()
    g = expected.ground
    out = []
    for m in sorted(set(e.coords) | set(f.coords)):
        a, b = e[m], f[m]
        if a != b:
            out.append(f"{g.key(m)}: expected {MAXPLUS.format(a)}, got {MAXPLUS.format(b)}")
    return out


def verify_realizable(w: ExteriorVector, A: TropMatrix, space: FieldVectorSpace,
                      attempts: int = 5, seed: int = 0) -> RealizabilityVerdict:
    """Check ``trop im_A(trop Lambda) = trop(Delta Lambda)`` for generic lifts.

    Tries up to ``attempts`` seeded lifts ``Delta`` of ``A``; the first exact
    projective match is the witness.  Over ``B`` the tropical side is computed
    in max-plus via the embedding ``1 -> 0``.
    """
    A_mp = A if A.semifield is MAXPLUS else TropMatrix(
        MAXPLUS, A.rows, A.cols,
        [[0 if a else NEG_INF for a in r] for r in A.entries])
    w_mp = _as_maxplus(w)
    trop = tropicalize_space(space)
    if not trop.projectively_equal(w_mp):
        raise PreconditionError("the given space does not tropicalize to w")
    expected = tropical_image(w_mp, A_mp)
    rng = random.Random(seed)
    pool = coefficient_pool_size(len(A.cols), len(A.rows), w.grade)
    last = None
    for k in range(1, attempts + 1):
        delta = generic_lift(A_mp, rng, pool)
        found = tropicalize_any(image_space(space, delta))
        mism = _compare(expected, found)
        if not mism:
            return RealizabilityVerdict(True, k, expected, delta, found)
        last = RealizabilityVerdict(False, k, expected, delta, found, mism)
    assert last is not None or attempts <= 0
    return last or RealizabilityVerdict(False, 0, expected)


# ---------------------------------------------------------------- polynomials over Q[t, 1/t]


Polynomial = Sequence[tuple[Sequence[int], LaurentPoly]]


def trop_of_poly(f: Polynomial, a: Sequence[Any]):
    """Evaluate the tropicalization of ``f`` at the max-plus point ``a``."""
    best = NEG_INF
    for u, c in f:
        if c.is_zero():
            continue
        term = valuation(c)
        for ui, ai in zip(u, a):
            if ui:
                term = MAXPLUS.mul(term, ui * ai if ai is not NEG_INF else NEG_INF)
        best = MAXPLUS.add(best, term)
    return best


def evaluate_poly(f: Polynomial, alpha: Sequence[LaurentPoly]) -> LaurentPoly:
    """Exact evaluation of ``f`` at a point of ``Q[t, 1/t]^n``."""
    acc = ZERO
    for u, c in f:
        term = c
        for ui, x in zip(u, alpha):
            if ui:
                term = term * x ** ui
        acc = acc + term
    return acc


def lift_point(a: Sequence[Any], rng: random.Random, pool: int) -> list[LaurentPoly]:
    """A point of ``val^{-1}(a)`` with random leading coefficients."""
    return [ZERO if x is NEG_INF else LaurentPoly.monomial(rng.randint(1, pool),
                                                           _integer_exponent(x))
            for x in a]
