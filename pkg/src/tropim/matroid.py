"""Matroids given by their bases, and the constructions the tropical side needs.

Bases are bitmasks over a :class:`~tropim.exterior.GroundSet`.  Everything
derived (rank, closure, flats) is recomputed on demand; ground sets here are
small enough that this is the simple and safe choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .exterior import GroundSet, TropMatrix, all_subsets, bits, subsets_of_size
from .semifield import BOOLEAN


class MatroidError(ValueError):
    """A basis family violating the matroid axioms."""


def exchange_violation(bases: Iterable[int]) -> tuple[int, int, int] | None:
    """First ``(I, J, i)`` breaking strong basis exchange, or ``None``."""
    bset = set(bases)
    ordered = sorted(bset)
    for I in ordered:
        for J in ordered:
            for i in bits(I & ~J):
                bit_i = 1 << i
                if not any(
                    ((I ^ bit_i) | (1 << j)) in bset and ((J ^ (1 << j)) | bit_i) in bset
                    for j in bits(J & ~I)
                ):
                    return I, J, i
    return None


class Matroid:
    """A matroid on ``ground`` with basis bitmasks ``bases``."""

    __slots__ = ("ground", "bases", "rank_")

    def __init__(self, ground: GroundSet | Sequence[Any], bases: Iterable[int],
                 *, check: bool = True):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        bases = frozenset(bases)
        if not bases:
            raise MatroidError("a matroid needs at least one basis")
        sizes = {b.bit_count() for b in bases}
        if len(sizes) != 1:
            raise MatroidError(f"bases of different sizes {sorted(sizes)}")
        if any(b & ~ground.full for b in bases):
            raise MatroidError("basis outside the ground set")
        if check:
            bad = exchange_violation(bases)
            if bad is not None:
                I, J, i = bad
                raise MatroidError(
                    f"strong exchange fails for bases {ground.subset(I)}, "
                    f"{ground.subset(J)} at element {ground.labels[i]}"
                )
        self.ground = ground
        self.bases = bases
        self.rank_ = sizes.pop()

    # constructors

    @classmethod
    def from_labels(cls, ground: GroundSet | Sequence[Any],
                    bases: Iterable[Iterable[Any]], *, check: bool = True):
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        masks = []
        for b in bases:
            if isinstance(b, str) and b not in ground and "," not in b:
                b = list(b)
            elif isinstance(b, str):
                b = [x for x in b.split(",") if x]
            masks.append(ground.mask(b))
        return cls(ground, masks, check=check)

    @classmethod
    def uniform(cls, r: int, ground: GroundSet | int) -> "Matroid":
        if isinstance(ground, int):
            ground = GroundSet.range(ground)
        return cls(ground, subsets_of_size(ground.full, r), check=False)

    @classmethod
    def free(cls, ground: GroundSet | int) -> "Matroid":
        if isinstance(ground, int):
            ground = GroundSet.range(ground)
        return cls(ground, [ground.full], check=False)

    @classmethod
    def from_independent(cls, ground: GroundSet, independent: Iterable[int]):
        indep = list(independent)
        r = max(m.bit_count() for m in indep)
        return cls(ground, [m for m in indep if m.bit_count() == r], check=False)

    # basic queries

    @property
    def rank(self) -> int:
        return self.rank_

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Matroid) and self.ground == other.ground
                and self.bases == other.bases)

    def __hash__(self) -> int:
        return hash((self.ground, self.bases))

    def __repr__(self) -> str:
        g = self.ground
        bs = ", ".join("{" + ",".join(g.subset(b)) + "}" for b in sorted(self.bases))
        return f"Matroid(rank={self.rank}, ground={list(g.labels)}, bases=[{bs}])"

    def rank_of(self, X: int) -> int:
        return max((b & X).bit_count() for b in self.bases)

    def is_independent(self, X: int) -> bool:
        return any(X & b == X for b in self.bases)

    def is_basis(self, X: int) -> bool:
        return X in self.bases

    def closure(self, X: int) -> int:
        r = self.rank_of(X)
        cl = X
        for e in bits(self.ground.full & ~X):
            if self.rank_of(X | (1 << e)) == r:
                cl |= 1 << e
        return cl

    def is_flat(self, X: int) -> bool:
        return self.closure(X) == X

    def independent_sets(self) -> list[int]:
        seen = set()
        for b in self.bases:
            seen.update(all_subsets(b))
        return sorted(seen)

    def loops(self) -> int:
        return self.ground.full & ~_union(self.bases)

    def coloops(self) -> int:
        return _intersection(self.bases, self.ground.full)

    def circuits(self) -> list[int]:
        out = []
        for X in all_subsets(self.ground.full):
            if X and not self.is_independent(X) and all(
                self.is_independent(X ^ (1 << e)) for e in bits(X)
            ):
                out.append(X)
        return out

    def dual(self) -> "Matroid":
        full = self.ground.full
        return Matroid(self.ground, [full ^ b for b in self.bases], check=False)

    def relabel(self, ground: GroundSet) -> "Matroid":
        if len(ground) != len(self.ground):
            raise MatroidError("relabel needs a ground set of equal size")
        return Matroid(ground, self.bases, check=False)

    # serialization

    def to_json(self) -> dict:
        g = self.ground
        return {"ground_set": list(g.labels),
                "bases": [list(g.subset(b)) for b in sorted(self.bases)]}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "Matroid":
        ground = GroundSet(doc["ground_set"])
        return cls(ground, [ground.mask(b) for b in doc["bases"]])


def _union(masks: Iterable[int]) -> int:
    u = 0
    for m in masks:
        u |= m
    return u


def _intersection(masks: Iterable[int], start: int) -> int:
    for m in masks:
        start &= m
    return start


# ---------------------------------------------------------------- minors


def delete(M: Matroid, F: int) -> Matroid:
    """``M \\ F``: restriction to ``E - F``."""
    keep = M.ground.full & ~F
    sub = M.ground.restrict(keep)
    r = M.rank_of(keep)
    t = M.ground.transfer
    bases = {t(b & keep, sub) for b in M.bases if (b & keep).bit_count() == r}
    return Matroid(sub, bases, check=False)


def contract(M: Matroid, F: int) -> Matroid:
    """``M / F`` on ``E - F``."""
    keep = M.ground.full & ~F
    sub = M.ground.restrict(keep)
    rF = M.rank_of(F)
    t = M.ground.transfer
    bases = {t(b & keep, sub) for b in M.bases if (b & F).bit_count() == rF}
    return Matroid(sub, bases, check=False)


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    ground = M1.ground.disjoint_union(M2.ground)
    shift = len(M1.ground)
    return Matroid(ground, {b1 | (b2 << shift) for b1 in M1.bases for b2 in M2.bases},
                   check=False)


# ---------------------------------------------------------------- bipartite graphs


@dataclass(frozen=True)
class BipartiteGraph:
    """Edges between a left vertex set ``E`` and a right vertex set ``F``."""

    left: GroundSet
    right: GroundSet
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        for e, f in self.edges:
            if e not in self.left or f not in self.right:
                raise ValueError(f"edge ({e}, {f}) references an unknown vertex")

    @classmethod
    def from_edges(cls, left, right, edges: Iterable[tuple[Any, Any]]):
        left = left if isinstance(left, GroundSet) else GroundSet(left)
        right = right if isinstance(right, GroundSet) else GroundSet(right)
        return cls(left, right, frozenset((str(e), str(f)) for e, f in edges))

    @classmethod
    def from_matrix(cls, A) -> "BipartiteGraph":
        """The support graph of a matrix with columns ``E`` and rows ``F``."""
        return cls(A.cols, A.rows, frozenset(A.support_edges()))

    def neighbours(self) -> list[int]:
        """For each right vertex, the bitmask of its left neighbours."""
        nb = [0] * len(self.right)
        for e, f in self.edges:
            nb[self.right.index(f)] |= 1 << self.left.index(e)
        return nb

    def incidence_matrix(self):
        nb = self.neighbours()
        return TropMatrix(BOOLEAN, self.right, self.left,
                          [[1 if nb[j] >> i & 1 else 0 for i in range(len(self.left))]
                           for j in range(len(self.right))])

    def to_json(self) -> dict:
        return {"left": list(self.left.labels), "right": list(self.right.labels),
                "edges": [list(e) for e in sorted(self.edges,
                          key=lambda ef: (self.left.index(ef[0]), self.right.index(ef[1])))]}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "BipartiteGraph":
        return cls.from_edges(doc["left"], doc["right"], doc.get("edges", []))


def has_matching(nb: Sequence[int], J: int, targets: int) -> bool:
    """Does every right vertex in ``J`` match into ``targets``?

    ``nb[j]`` is the neighbour mask of right vertex ``j``.  Kuhn's
    augmenting-path algorithm.
    """
    owner: dict[int, int] = {}

    def augment(j: int, seen: int) -> tuple[bool, int]:
        for i in bits(nb[j] & targets & ~seen):
            seen |= 1 << i
            if i not in owner:
                owner[i] = j
                return True, seen
            ok, seen = augment(owner[i], seen)
            if ok:
                owner[i] = j
                return True, seen
        return False, seen

    for j in bits(J):
        ok, _ = augment(j, 0)
        if not ok:
            return False
    return True


def induced_matroid(M: Matroid, G: BipartiteGraph) -> Matroid:
    """``G(M)``: subsets of ``F`` that match onto an independent set of ``M``."""
    if G.left != M.ground:
        raise ValueError("the graph's left side must be the ground set of M")
    nb = G.neighbours()
    right = G.right
    reach = _union(nb)
    bases = sorted(M.bases)
    best = [0]
    # Subsets sorted by decreasing size; stop once a full level is done.
    for k in range(min(len(right), M.rank), 0, -1):
        found = [J for J in subsets_of_size(right.full, k)
                 if all(nb[j] for j in bits(J))
                 and any(has_matching(nb, J, b & reach) for b in bases)]
        if found:
            best = found
            break
    return Matroid(right, best, check=False)


def transversal_matroid(G: BipartiteGraph) -> Matroid:
    """The transversal matroid on the left side presented by the right side."""
    flipped = BipartiteGraph(G.right, G.left, frozenset((f, e) for e, f in G.edges))
    return induced_matroid(Matroid.free(G.right), flipped)


def matroid_union(M1: Matroid, M2: Matroid) -> Matroid:
    """``M1 v M2`` as the matroid induced from ``M1 (+) M2`` by two copies."""
    if M1.ground != M2.ground:
        raise ValueError("matroid union needs a common ground set")
    g1, g2 = _copies(M1.ground)
    S = direct_sum(M1.relabel(g1), M2.relabel(g2))
    edges = [(a, x) for a, x in zip(g1.labels, M1.ground.labels)]
    edges += [(a, x) for a, x in zip(g2.labels, M1.ground.labels)]
    G = BipartiteGraph.from_edges(S.ground, M1.ground, edges)
    return induced_matroid(S, G)


def _copies(ground: GroundSet) -> tuple[GroundSet, GroundSet]:
    """Two relabeled copies of ``ground`` disjoint from it and each other."""
    s = "'"
    while True:
        g1, g2 = ground.with_suffix(s), ground.with_suffix(s + s)
        used = set(ground.labels)
        if not (used & set(g1.labels) or used & set(g2.labels)
                or set(g1.labels) & set(g2.labels)):
            return g1, g2
        s += "'"


def principal_extension(M: Matroid, F: int, p: Any = "p") -> Matroid:
    """Add ``p`` freely to the flat spanned by ``F``."""
    p = str(p)
    if p in M.ground:
        raise ValueError(f"new element {p!r} already in the ground set")
    ground = GroundSet(M.ground.labels + (p,))
    pbit = 1 << len(M.ground)
    clF = M.closure(F)
    indep = M.independent_sets()
    ext = list(indep)
    ext += [I | pbit for I in indep if M.closure(I) & clF != clF]
    return Matroid.from_independent(ground, ext)


# ---------------------------------------------------------------- cyclic flats


def cyclic_flats(M: Matroid) -> list[tuple[int, int]]:
    """``(flat, rank)`` for every flat that is a union of circuits."""
    out = []
    for X in all_subsets(M.ground.full):
        r = M.rank_of(X)
        if M.closure(X) != X:
            continue
        if all(M.rank_of(X ^ (1 << e)) == r for e in bits(X)):
            out.append((X, r))
    return sorted(out, key=lambda t: (t[1], t[0]))


def brylawski_bound_check(M: Matroid) -> bool:
    """At most ``binom(r, k)`` cyclic flats of rank ``k`` for every ``k``.

    Transversal matroids always pass, so ``False`` certifies that ``M`` is
    not transversal.
    """
    counts: dict[int, int] = {}
    for _, k in cyclic_flats(M):
        counts[k] = counts.get(k, 0) + 1
    return all(c <= comb(M.rank, k) for k, c in counts.items())


MAX_TRANSVERSAL_SEARCH = 8


def is_transversal(M: Matroid, max_size: int = MAX_TRANSVERSAL_SEARCH
                   ) -> BipartiteGraph | None:
    """A presentation of ``M`` by ``rank(M)`` sets, or ``None`` if none exists.

    Exhaustive depth-first search over multisets of candidate sets.  A set
    ``A`` of an ``r``-set presentation never contains a loop and its
    complement has rank below ``r`` (elements outside ``A`` must match into
    the other ``r - 1`` sets), so candidates are restricted accordingly.
    Partial systems are pruned as soon as they make a dependent set
    independent.  The presentation found is then grown to the maximal one,
    which is unique.
    """
    n = len(M.ground)
    if n > max_size:
        raise ValueError(f"transversality search limited to {max_size} elements")
    r = M.rank
    full = M.ground.full
    right = GroundSet(f"A{k + 1}" for k in range(r))
    if r == 0:
        return BipartiteGraph(M.ground, right, frozenset())
    loops = M.loops()
    cands = [A for A in all_subsets(full)
             if A and not A & loops and M.rank_of(full & ~A) < r]
    cands.sort(key=lambda A: (A.bit_count(), A))
    indep = set(M.independent_sets())
    target = set(M.bases)

    def partial_ok(system: list[int]) -> bool:
        for J in _transversals(system, full):
            if J not in indep:
                return False
        return True

    def search(start: int, system: list[int]) -> list[int] | None:
        if len(system) == r:
            tops = {J for J in _transversals(system, full) if J.bit_count() == r}
            return list(system) if tops == target else None
        for k in range(start, len(cands)):
            system.append(cands[k])
            if partial_ok(system):
                found = search(k, system)
                if found is not None:
                    return found
            system.pop()
        return None

    found = search(0, [])
    if found is None:
        return None
    # Grow to the maximal presentation, which is unique; this makes the
    # reported presentation independent of the search order.
    grown = True
    while grown:
        grown = False
        for k, A in enumerate(found):
            for x in bits(full & ~A):
                trial = found[:k] + [A | 1 << x] + found[k + 1:]
                if {J for J in _transversals(trial, full) if J.bit_count() == r} == target:
                    found, A, grown = trial, A | 1 << x, True
    edges = [(x, right.labels[k]) for k, A in enumerate(found)
             for x in M.ground.subset(A)]
    return BipartiteGraph.from_edges(M.ground, right, edges)


def _transversals(system: Sequence[int], full: int) -> set[int]:
    """All partial transversals of a set system, as element bitmasks."""
    out = {0}
    for A in system:
        out |= {T | (1 << e) for T in out for e in bits(A & ~T)}
    return out


# ---------------------------------------------------------------- catalog


def all_matroids(ground: GroundSet | int) -> Iterator[Matroid]:
    """Every matroid on ``ground`` (labeled), by filtering all equicardinal
    basis families through the exchange axiom.  Only sensible for ``n <= 4``."""
    if isinstance(ground, int):
        ground = GroundSet.range(ground)
    n = len(ground)
    for r in range(n + 1):
        level = subsets_of_size(ground.full, r)
        for code in range(1, 1 << len(level)):
            fam = [level[k] for k in bits(code)]
            if exchange_violation(fam) is None:
                yield Matroid(ground, fam, check=False)


# ---------------------------------------------------------------- brute force


def induced_matroid_bruteforce(M: Matroid, G: BipartiteGraph) -> Matroid:
    """Definition-level induced matroid: try every injection ``J -> E``."""
    nb = G.neighbours()
    indep = set(M.independent_sets())
    left = range(len(G.left))
    found = []
    for J in all_subsets(G.right.full):
        js = list(bits(J))
        for image in permutations(left, len(js)):
            m = 0
            for j, i in zip(js, image):
                if not nb[j] >> i & 1:
                    break
                m |= 1 << i
            else:
                if m in indep:
                    found.append(J)
                    break
    return Matroid.from_independent(G.right, found)


__all__ = [
    "Matroid", "MatroidError", "BipartiteGraph", "exchange_violation",
    "delete", "contract", "direct_sum", "induced_matroid", "transversal_matroid",
    "matroid_union", "principal_extension", "cyclic_flats",
    "brylawski_bound_check", "is_transversal", "all_matroids",
    "induced_matroid_bruteforce", "has_matching",
]
