"""Tropical Pluecker vectors and the tropical linear spaces they cut out."""

from __future__ import annotations

from typing import Any, Iterable

from .exterior import (
    ExteriorVector,
    GroundSet,
    bits,
    hodge_star,
    subsets_of_size,
)
from .matroid import Matroid, contract, delete
from .semifield import BOOLEAN, Semifield


class PluckerViolation(ValueError):
    """A tropical Pluecker relation fails; ``triple`` is ``(J, K, j)``."""

    def __init__(self, vector: ExteriorVector, triple: tuple[int, int, int] | None):
        self.vector = vector
        self.triple = triple
        if triple is None:
            msg = "the zero vector is not a tropical Pluecker vector"
        else:
            J, K, j = triple
            g = vector.ground
            msg = (f"tropical Pluecker relation fails for J={g.subset(J)}, "
                   f"K={g.subset(K)}, j={g.labels[j]}")
        super().__init__(msg)


class PluckerVector(ExteriorVector):
    """An :class:`ExteriorVector` known to satisfy the Pluecker relations.

    Build instances with :func:`validate`; the plain constructor trusts its
    input.
    """

    __slots__ = ()

    @property
    def rank(self) -> int:
        return self.grade

    @classmethod
    def trusted(cls, v: ExteriorVector) -> "PluckerVector":
        return cls(v.semifield, v.ground, v.grade, v.coords, check=False)

    @classmethod
    def from_json(cls, doc, semifield: Semifield | None = None) -> "PluckerVector":
        return validate(ExteriorVector.from_json(doc, semifield))


def _bend_failure(sf: Semifield, terms: Iterable[tuple[int, Any]]) -> int | None:
    """Index whose removal changes the sum, if the maximum is attained once."""
    best = None
    best_at = None
    ties = 0
    for i, t in terms:
        if best is None or not sf.le(t, best):
            best, best_at, ties = t, i, 1
        elif t == best:
            ties += 1
    if best is None or ties > 1:
        return None
    return best_at


def find_violation(u: ExteriorVector) -> tuple[int, int, int] | None:
    """First ``(J, K, j)`` (in mask order) where the relation fails.

    A relation ``(J, K)`` can only fail if one of its terms is nonzero, and a
    nonzero term ``w_{J-i} w_{K+i}`` comes from a pair of support elements
    ``A = J - i``, ``B = K + i`` with ``i`` in ``B - A``; only those
    ``(J, K)`` are inspected.
    """
    sf = u.semifield
    coords = u.coords
    mul = sf.mul_nonzero
    relations = set()
    support = sorted(coords)
    for A in support:
        for B in support:
            for i in bits(B & ~A):
                relations.add((A | (1 << i), B & ~(1 << i)))
    for J, K in sorted(relations):
        terms = []
        for i in bits(J & ~K):
            a = coords.get(J & ~(1 << i))
            b = coords.get(K | (1 << i))
            if a is not None and b is not None:
                terms.append((i, mul(a, b)))
        j = _bend_failure(sf, terms)
        if j is not None:
            return J, K, j
    return None


def is_plucker(u: ExteriorVector) -> bool:
    return not u.is_zero() and find_violation(u) is None


def validate(u: ExteriorVector) -> PluckerVector:
    """Return ``u`` as a :class:`PluckerVector` or raise :class:`PluckerViolation`."""
    if isinstance(u, PluckerVector):
        return u
    if u.is_zero():
        raise PluckerViolation(u, None)
    bad = find_violation(u)
    if bad is not None:
        raise PluckerViolation(u, bad)
    return PluckerVector.trusted(u)


# ---------------------------------------------------------------- membership


def in_hyperplane(v: ExteriorVector, f: ExteriorVector) -> bool:
    """Is the point ``v`` on the tropical hyperplane of the form ``f``?

    True iff the maximum of ``f_i v_i`` is attained at least twice or every
    term is zero.
    """
    if v.ground != f.ground or v.grade != 1 or f.grade != 1:
        raise ValueError("in_hyperplane expects a point and a form on one ground set")
    sf = v.semifield
    mul = sf.mul_nonzero
    fc = f.coords
    terms = [(m, mul(fc[m], a)) for m, a in v.coords.items() if m in fc]
    return _bend_failure(sf, terms) is None


def contains_point(w: ExteriorVector, v: ExteriorVector) -> bool:
    """Does ``L_w`` contain ``v``?  Checks every hyperplane
    ``sum_{i in J} w_{J-i} x_i`` with ``|J| = d + 1``."""
    if v.ground != w.ground or v.grade != 1:
        raise ValueError("point must be a grade-1 vector on the same ground set")
    sf = w.semifield
    mul = sf.mul_nonzero
    wc = w.coords
    vc = v.coords
    for J in subsets_of_size(w.ground.full, w.grade + 1):
        terms = []
        for i in bits(J):
            a = vc.get(1 << i)
            if a is None:
                continue
            c = wc.get(J & ~(1 << i))
            if c is not None:
                terms.append((i, mul(c, a)))
        if _bend_failure(sf, terms) is not None:
            return False
    return True


def hyperplane_forms(w: ExteriorVector) -> list[ExteriorVector]:
    """The defining forms of ``L_w`` as grade-1 vectors (dual basis)."""
    out = []
    for J in subsets_of_size(w.ground.full, w.grade + 1):
        coords = {1 << i: w.coords[J & ~(1 << i)] for i in bits(J)
                  if (J & ~(1 << i)) in w.coords}
        out.append(ExteriorVector(w.semifield, w.ground, 1, coords, check=False))
    return out


def cocircuits(w: ExteriorVector) -> list[ExteriorVector]:
    """Valuated cocircuits ``sum_{i not in K} w_{K+i} e_i``, ``|K| = d - 1``.

    Ordered by ``K``; zero points are dropped.  They generate ``L_w``.
    """
    pts: dict[int, dict[int, Any]] = {}
    for B, a in w.coords.items():
        for i in bits(B):
            pts.setdefault(B & ~(1 << i), {})[1 << i] = a
    return [ExteriorVector(w.semifield, w.ground, 1, pts[K], check=False)
            for K in sorted(pts)]


def cocircuit_of(w: ExteriorVector, K: int) -> ExteriorVector:
    coords = {1 << i: w.coords[K | (1 << i)] for i in bits(w.ground.full & ~K)
              if (K | (1 << i)) in w.coords}
    return ExteriorVector(w.semifield, w.ground, 1, coords, check=False)


def is_subspace(w: ExteriorVector, z: ExteriorVector) -> bool:
    """``L_w`` inside ``L_z``, decided by the tropical incidence relations."""
    if w.ground != z.ground or w.semifield is not z.semifield:
        raise ValueError("is_subspace needs vectors on one ground set and semifield")
    sf = w.semifield
    mul = sf.mul_nonzero
    full = w.ground.full
    wc, zc = w.coords, z.coords
    As = subsets_of_size(full, z.grade + 1)
    for B in subsets_of_size(full, w.grade - 1):
        if not any((B | (1 << i)) in wc for i in bits(full & ~B)):
            continue
        for A in As:
            terms = []
            for i in bits(A & ~B):
                a = zc.get(A & ~(1 << i))
                b = wc.get(B | (1 << i))
                if a is not None and b is not None:
                    terms.append((i, mul(a, b)))
            if _bend_failure(sf, terms) is not None:
                return False
    return True


def dual(w: ExteriorVector) -> PluckerVector:
    """``star w``: Pluecker vector of the tropical orthogonal dual."""
    return validate(hodge_star(w))


# ---------------------------------------------------------------- matroids


def underlying_matroid(w: ExteriorVector, *, check: bool = True) -> Matroid:
    """Bases are the supports of the nonzero coordinates."""
    if w.is_zero():
        raise ValueError("the zero vector has no underlying matroid")
    return Matroid(w.ground, w.coords.keys(), check=check)


# ---------------------------------------------------------------- minors


def _minor(w: ExteriorVector, F: int, size: int) -> PluckerVector:
    """Shared recipe: first ``J`` in ``E - F`` of ``size`` with
    ``z_I = w_{J u I}`` nonzero."""
    ground = w.ground
    sub = ground.restrict(F)
    t = ground.transfer
    rest = ground.full & ~F
    grade = w.grade - size
    for J in subsets_of_size(rest, size):
        coords = {t(B & ~J, sub): a for B, a in w.coords.items()
                  if B & J == J and not (B & rest & ~J)}
        if coords:
            return PluckerVector(w.semifield, sub, grade, coords, check=False)
    raise AssertionError("no admissible J found; input is not a Pluecker vector")


def minor_project(w: ExteriorVector, F: int | Iterable[Any]) -> PluckerVector:
    """Pluecker vector of the coordinate projection of ``L_w`` onto ``F``."""
    F = _as_mask(w.ground, F)
    M = underlying_matroid(w, check=False)
    size = M.rank - M.rank_of(F)
    return _minor(w, F, size)


def minor_intersect(w: ExteriorVector, F: int | Iterable[Any]) -> PluckerVector:
    """Pluecker vector of ``L_w`` intersected with the coordinate subspace ``S^F``."""
    F = _as_mask(w.ground, F)
    M = underlying_matroid(w, check=False)
    size = M.rank_of(w.ground.full & ~F)
    return _minor(w, F, size)


def _as_mask(ground: GroundSet, F) -> int:
    if isinstance(F, int) and not isinstance(F, bool):
        if F & ~ground.full:
            raise ValueError("subset outside the ground set")
        return F
    return ground.mask(F)


def deletion_matroid(w: ExteriorVector, F: int) -> Matroid:
    """``M \\ (E - F)`` for the underlying matroid ``M`` (matches projection)."""
    return delete(underlying_matroid(w, check=False), w.ground.full & ~F)


def contraction_matroid(w: ExteriorVector, F: int) -> Matroid:
    """``M / (E - F)`` (matches the coordinate-subspace intersection)."""
    return contract(underlying_matroid(w, check=False), w.ground.full & ~F)


def from_matroid(M: Matroid, semifield: Semifield | None = None) -> PluckerVector:
    """The basis indicator of ``M`` as a Pluecker vector."""
    sf = semifield or BOOLEAN
    return PluckerVector(sf, M.ground, M.rank, {b: sf.one for b in M.bases},
                         check=False)
