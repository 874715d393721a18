"""Sign-free exterior algebra over an idempotent semifield.

Subsets of a ground set are encoded as bitmasks: bit ``k`` stands for the
``k``-th label of the :class:`GroundSet`.  An :class:`ExteriorVector` is a
grade-homogeneous element of the exterior power, stored sparsely as a dict
from bitmask to nonzero coefficient.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .semifield import BOOLEAN, MAXPLUS, Semifield, by_name


class GroundSetError(ValueError):
    """Mismatched or malformed ground sets."""


# ---------------------------------------------------------------- bitmasks


def bits(mask: int) -> Iterator[int]:
    """Positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(positions: Iterable[int]) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def subsets_of_size(universe: int, k: int) -> list[int]:
    """All ``k``-subsets of the bitmask ``universe``, in increasing mask order."""
    if k < 0:
        return []
    pos = list(bits(universe))
    if k > len(pos):
        return []
    return sorted(mask_of(c) for c in combinations(pos, k))


def all_subsets(universe: int) -> Iterator[int]:
    """All subsets of ``universe`` in increasing mask order."""
    sub = 0
    while True:
        yield sub
        if sub == universe:
            return
        sub = (sub - universe) & universe


# ---------------------------------------------------------------- ground sets


class GroundSet:
    """An ordered tuple of distinct string labels."""

    __slots__ = ("labels", "_index", "full", "_transfer")

    def __init__(self, labels: Iterable[Any]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise GroundSetError(f"duplicate labels in ground set {labels}")
        for x in labels:
            if "," in x:
                raise GroundSetError(f"label {x!r} contains a comma")
        self.labels = labels
        self._index = {x: k for k, x in enumerate(labels)}
        self.full = (1 << len(labels)) - 1
        self._transfer: dict = {}

    @classmethod
    def range(cls, n: int, start: int = 1) -> "GroundSet":
        return cls(range(start, start + n))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroundSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.labels)})"

    def __contains__(self, label: object) -> bool:
        return str(label) in self._index

    def index(self, label: Any) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise GroundSetError(f"label {label!r} not in {self!r}") from None

    def mask(self, labels: Iterable[Any]) -> int:
        return mask_of(self.index(x) for x in labels)

    def subset(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[k] for k in bits(mask))

    def key(self, mask: int) -> str:
        """JSON key for a subset: its labels, comma-joined in ground order."""
        return ",".join(self.subset(mask))

    def parse_key(self, key: str) -> int:
        key = key.strip()
        if not key:
            return 0
        parts = [p.strip() for p in key.split(",")]
        if len(set(parts)) != len(parts):
            raise GroundSetError(f"repeated label in subset {key!r}")
        return self.mask(parts)

    def restrict(self, mask: int) -> "GroundSet":
        return _restricted(self.labels, mask)

    def disjoint_union(self, other: "GroundSet") -> "GroundSet":
        """``self`` followed by ``other``; labels must not collide."""
        return _union_of(self.labels, other.labels)

    def with_suffix(self, suffix: str) -> "GroundSet":
        return GroundSet(x + suffix for x in self.labels)

    def transfer(self, mask: int, target: "GroundSet") -> int:
        """Re-encode a subset of ``self`` as a subset of ``target`` (by label)."""
        pos = self._transfer.get(target.labels)
        if pos is None:
            pos = [target._index.get(x, -1) for x in self.labels]
            if pos == list(range(len(pos))):
                pos = ()
            self._transfer[target.labels] = pos
        if not pos:
            return mask
        out = 0
        while mask:
            low = mask & -mask
            k = pos[low.bit_length() - 1]
            if k < 0:
                raise GroundSetError(
                    f"label {self.labels[low.bit_length() - 1]!r} not in {target!r}")
            out |= 1 << k
            mask ^= low
        return out


# Ground sets are immutable, so derived ones are shared; this also keeps the
# per-instance transfer caches warm in tight loops.


@lru_cache(maxsize=4096)
def _union_of(a: tuple[str, ...], b: tuple[str, ...]) -> GroundSet:
    clash = set(a) & set(b)
    if clash:
        raise GroundSetError(f"ground sets overlap in {sorted(clash)}")
    return GroundSet(a + b)


@lru_cache(maxsize=4096)
def _restricted(labels: tuple[str, ...], mask: int) -> GroundSet:
    return GroundSet(labels[k] for k in bits(mask))


# ---------------------------------------------------------------- vectors


def _label_str(ground: GroundSet, mask: int) -> str:
    labels = ground.subset(mask)
    if all(len(x) == 1 for x in labels):
        return "".join(labels)
    return "{" + ",".join(labels) + "}"


class ExteriorVector:
    """A grade-``d`` element of the exterior power on ``ground``.

    ``coords`` maps bitmasks of popcount ``d`` to nonzero semifield values;
    absent keys are zero.  Instances are treated as immutable.
    """

    __slots__ = ("semifield", "ground", "grade", "coords")

    def __init__(
        self,
        semifield: Semifield,
        ground: GroundSet,
        grade: int,
        coords: Mapping[int, Any] | None = None,
        *,
        check: bool = True,
    ):
        self.semifield = semifield
        self.ground = ground
        self.grade = grade
        if not check:
            self.coords = dict(coords or {})
            return
        n = len(ground)
        if not 0 <= grade <= n:
            raise ValueError(f"grade {grade} out of range for |E| = {n}")
        clean = {}
        for m, a in (coords or {}).items():
            if m < 0 or m > ground.full or m.bit_count() != grade:
                raise ValueError(
                    f"index {m:#b} is not a {grade}-subset of a {n}-element set"
                )
            a = semifield.coerce(a)
            if not semifield.is_zero(a):
                clean[m] = a
        self.coords = clean

    # construction helpers

    @classmethod
    def zero(cls, semifield: Semifield, ground: GroundSet, grade: int):
        return cls(semifield, ground, grade, {}, check=False)

    @classmethod
    def unit(cls, semifield: Semifield, ground: GroundSet, mask: int, value=None):
        """The basis vector ``e_I`` (times ``value``)."""
        value = semifield.one if value is None else value
        return cls(semifield, ground, mask.bit_count(), {mask: value})

    @classmethod
    def from_labels(
        cls,
        semifield: Semifield,
        ground: GroundSet | Sequence[Any],
        coords: Mapping[Any, Any],
        grade: int | None = None,
    ):
        """Build from ``{subset-of-labels: value}``.

        Subsets may be given as iterables of labels or as comma-joined
        strings.  Single-character labels may also be concatenated
        (``"13"`` for ``{1, 3}``) when that is unambiguous.
        """
        if not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        out = {}
        for key, val in coords.items():
            out[_parse_subset(ground, key)] = val
        if grade is None:
            sizes = {m.bit_count() for m in out}
            if len(sizes) > 1:
                raise ValueError("coordinates of mixed grade")
            grade = sizes.pop() if sizes else 0
        return cls(semifield, ground, grade, out)

    @classmethod
    def from_sets(cls, semifield, ground, sets: Iterable[Any], grade=None):
        """Indicator-style vector: each listed subset gets the unit."""
        return cls.from_labels(
            semifield, ground, {_freeze(s): semifield.one for s in sets}, grade
        )

    # accessors

    def __getitem__(self, mask: int):
        return self.coords.get(mask, self.semifield.zero)

    def get(self, labels: Any):
        return self[_parse_subset(self.ground, labels)]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def __len__(self) -> int:
        return len(self.coords)

    def items(self):
        """Coordinates in increasing bitmask order."""
        return sorted(self.coords.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExteriorVector):
            return NotImplemented
        return (
            self.semifield is other.semifield
            and self.ground == other.ground
            and self.grade == other.grade
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.semifield.name, self.ground, self.grade,
                     frozenset(self.coords.items())))

    def __repr__(self) -> str:
        if not self.coords:
            return f"0 (grade {self.grade} on {list(self.ground.labels)})"
        sf = self.semifield
        terms = []
        for m, a in self.items():
            e = "e" + _label_str(self.ground, m) if m else "e_{}"
            terms.append(e if a == sf.one else f"{sf.format(a)}*{e}")
        return " + ".join(terms)

    # algebra

    def __add__(self, other: "ExteriorVector") -> "ExteriorVector":
        _check_compatible(self, other)
        if self.grade != other.grade:
            raise ValueError("cannot add vectors of different grades")
        add = self.semifield.add_nonzero
        out = dict(self.coords)
        for m, b in other.coords.items():
            a = out.get(m)
            out[m] = b if a is None else add(a, b)
        return ExteriorVector(self.semifield, self.ground, self.grade, out,
                              check=False)

    def scale(self, c) -> "ExteriorVector":
        sf = self.semifield
        if sf.is_zero(c):
            return ExteriorVector.zero(sf, self.ground, self.grade)
        mul = sf.mul_nonzero
        return ExteriorVector(sf, self.ground, self.grade,
                              {m: mul(c, a) for m, a in self.coords.items()},
                              check=False)

    def leading(self) -> tuple[int, Any] | None:
        """The first nonzero coordinate in bitmask order."""
        if not self.coords:
            return None
        m = min(self.coords)
        return m, self.coords[m]

    def normalize(self) -> "ExteriorVector":
        """Scale so that the first nonzero coordinate is the unit."""
        lead = self.leading()
        if lead is None:
            return self
        return self.scale(self.semifield.inv(lead[1]))

    def projectively_equal(self, other: "ExteriorVector") -> bool:
        """Equality up to a scalar of the multiplicative group."""
        if not isinstance(other, ExteriorVector):
            return False
        if (self.semifield is not other.semifield or self.ground != other.ground
                or self.grade != other.grade):
            return False
        return self.normalize().coords == other.normalize().coords

    def relabel(self, ground: GroundSet) -> "ExteriorVector":
        """Same coordinates, read on a ground set of the same size."""
        if len(ground) != len(self.ground):
            raise GroundSetError("relabel needs a ground set of equal size")
        return ExteriorVector(self.semifield, ground, self.grade, self.coords,
                              check=False)

    def embed(self, target: GroundSet) -> "ExteriorVector":
        """View as a vector on a larger ground set containing these labels."""
        t = self.ground.transfer
        return ExteriorVector(
            self.semifield, target, self.grade,
            {t(m, target): a for m, a in self.coords.items()}, check=False,
        )

    def push_forward(self) -> "ExteriorVector":
        return ExteriorVector(BOOLEAN, self.ground, self.grade,
                              {m: 1 for m in self.coords}, check=False)

    def to_maxplus(self) -> "ExteriorVector":
        """Embed a Boolean vector into max-plus (nonzero entries become 0)."""
        if self.semifield is MAXPLUS:
            return self
        return ExteriorVector(MAXPLUS, self.ground, self.grade,
                              {m: 0 for m in self.coords}, check=False)

    # serialization

    def to_json(self) -> dict:
        sf = self.semifield
        return {
            "semifield": sf.name,
            "ground_set": list(self.ground.labels),
            "grade": self.grade,
            "coords": {self.ground.key(m): sf.format(a) for m, a in self.items()},
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any], semifield: Semifield | None = None):
        if semifield is None:
            semifield = by_name(doc.get("semifield", MAXPLUS.name))
        elif "semifield" in doc and by_name(doc["semifield"]) is not semifield:
            raise ValueError("document semifield does not match the request")
        ground = GroundSet(doc["ground_set"])
        coords = {ground.parse_key(k): semifield.parse(v)
                  for k, v in doc.get("coords", {}).items()}
        grade = doc.get("grade")
        if grade is None:
            sizes = {m.bit_count() for m in coords}
            if len(sizes) != 1:
                raise ValueError("grade missing and not inferable from coords")
            grade = sizes.pop()
        return cls(semifield, ground, int(grade), coords)


def _freeze(s: Any):
    if isinstance(s, (str, int)):
        return s
    return tuple(s)


def _parse_subset(ground: GroundSet, key: Any) -> int:
    if isinstance(key, int) and not isinstance(key, bool):
        key = str(key)
    if isinstance(key, str):
        if "," in key or key in ground or key == "":
            return ground.parse_key(key)
        if all(len(x) == 1 for x in ground.labels):
            if len(set(key)) != len(key):
                raise GroundSetError(f"repeated label in {key!r}")
            return ground.mask(key)
        return ground.parse_key(key)
    labels = list(key)
    if len(set(map(str, labels))) != len(labels):
        raise GroundSetError(f"repeated label in {key!r}")
    return ground.mask(labels)


def _check_compatible(u: ExteriorVector, v: ExteriorVector) -> None:
    if u.semifield is not v.semifield:
        raise ValueError(f"semifield mismatch: {u.semifield} vs {v.semifield}")
    if u.ground != v.ground:
        raise GroundSetError(f"ground set mismatch: {u.ground} vs {v.ground}")


# ---------------------------------------------------------------- operations


def wedge(u: ExteriorVector, v: ExteriorVector) -> ExteriorVector:
    """``(u ^ v)_K = sum over I disjoint-union J = K of u_I v_J``.  No signs."""
    _check_compatible(u, v)
    sf = u.semifield
    n = len(u.ground)
    grade = u.grade + v.grade
    if grade > n:
        return ExteriorVector.zero(sf, u.ground, n)
    if sf is BOOLEAN:
        vs = list(v.coords)
        out = dict.fromkeys((i | j for i in u.coords for j in vs if not i & j), 1)
        return ExteriorVector(sf, u.ground, grade, out, check=False)
    add, mul = sf.add_nonzero, sf.mul_nonzero
    out: dict[int, Any] = {}
    get = out.get
    vitems = list(v.coords.items())
    for i_mask, a in u.coords.items():
        for j_mask, b in vitems:
            if i_mask & j_mask:
                continue
            k = i_mask | j_mask
            c = mul(a, b)
            old = get(k)
            out[k] = c if old is None else add(old, c)
    return ExteriorVector(sf, u.ground, grade, out, check=False)


def wedge_all(vectors: Iterable[ExteriorVector],
              start: ExteriorVector | None = None) -> ExteriorVector:
    it = iter(vectors)
    acc = start if start is not None else next(it)
    for v in it:
        acc = wedge(acc, v)
    return acc


def hodge_star(u: ExteriorVector) -> ExteriorVector:
    """``e_I -> x_{E-I}``, identifying the dual basis with the basis."""
    full = u.ground.full
    return ExteriorVector(
        u.semifield, u.ground, len(u.ground) - u.grade,
        {full ^ m: a for m, a in u.coords.items()}, check=False,
    )


def dot(u: ExteriorVector, v: ExteriorVector) -> ExteriorVector:
    """``u . v = star(star u ^ star v)``, of grade ``d + d' - |E|``."""
    _check_compatible(u, v)
    n = len(u.ground)
    if u.grade + v.grade < n:
        return ExteriorVector.zero(u.semifield, u.ground, 0)
    return hodge_star(wedge(hodge_star(u), hodge_star(v)))


# ---------------------------------------------------------------- matrices


class TropMatrix:
    """A matrix ``A`` in ``S^{F x E}``: rows are the codomain ``F``, columns
    the domain ``E``.  Entries are stored densely, zeros included."""

    __slots__ = ("semifield", "rows", "cols", "entries")

    def __init__(self, semifield: Semifield, rows: GroundSet, cols: GroundSet,
                 entries: Sequence[Sequence[Any]]):
        if not isinstance(rows, GroundSet):
            rows = GroundSet(rows)
        if not isinstance(cols, GroundSet):
            cols = GroundSet(cols)
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise ValueError(
                f"entries do not form a {len(rows)}x{len(cols)} matrix"
            )
        self.semifield = semifield
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(semifield.coerce(a) for a in r) for r in entries)

    @classmethod
    def identity(cls, semifield: Semifield, rows: GroundSet, cols: GroundSet):
        if len(rows) != len(cols):
            raise ValueError("identity needs equally many rows and columns")
        z, o = semifield.zero, semifield.one
        n = len(rows)
        return cls(semifield, rows, cols,
                   [[o if i == j else z for i in range(n)] for j in range(n)])

    @classmethod
    def zeros(cls, semifield: Semifield, rows: GroundSet, cols: GroundSet):
        return cls(semifield, rows, cols,
                   [[semifield.zero] * len(cols) for _ in rows])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TropMatrix)
                and self.semifield is other.semifield
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.semifield.name, self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        fmt = self.semifield.format
        body = "; ".join(" ".join(str(fmt(a)) for a in r) for r in self.entries)
        return f"TropMatrix[{body}]"

    def row_form(self, j: int, ground: GroundSet | None = None) -> ExteriorVector:
        """The linear form ``rho_j = sum_i a_{ji} x_i`` as a grade-1 vector."""
        sf = self.semifield
        coords = {1 << i: a for i, a in enumerate(self.entries[j])
                  if not sf.is_zero(a)}
        v = ExteriorVector(sf, self.cols, 1, coords, check=False)
        return v if ground is None else v.embed(ground)

    def apply(self, v: ExteriorVector) -> ExteriorVector:
        """Matrix-vector product ``A v`` for a grade-1 vector on the columns."""
        if v.ground != self.cols or v.grade != 1:
            raise GroundSetError("vector must be a point of the column space")
        sf = self.semifield
        add, mul = sf.add, sf.mul
        out = {}
        for j, row in enumerate(self.entries):
            acc = sf.zero
            for m, b in v.coords.items():
                acc = add(acc, mul(row[m.bit_length() - 1], b))
            if not sf.is_zero(acc):
                out[1 << j] = acc
        return ExteriorVector(sf, self.rows, 1, out, check=False)

    def support_edges(self) -> list[tuple[str, str]]:
        """Edges ``(column label, row label)`` of the bipartite graph of ``A``."""
        sf = self.semifield
        return [(self.cols.labels[i], self.rows.labels[j])
                for j, r in enumerate(self.entries)
                for i, a in enumerate(r) if not sf.is_zero(a)]

    def transpose_rows(self, order: Sequence[int]) -> "TropMatrix":
        """Rows permuted (with their labels) into ``order``."""
        rows = GroundSet(self.rows.labels[k] for k in order)
        return TropMatrix(self.semifield, rows, self.cols,
                          [self.entries[k] for k in order])

    def to_json(self) -> dict:
        sf = self.semifield
        return {
            "semifield": sf.name,
            "rows": list(self.rows.labels),
            "cols": list(self.cols.labels),
            "entries": {
                f"{self.rows.labels[j]},{self.cols.labels[i]}": sf.format(a)
                for j, r in enumerate(self.entries)
                for i, a in enumerate(r) if not sf.is_zero(a)
            },
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any], semifield: Semifield | None = None):
        if semifield is None:
            semifield = by_name(doc.get("semifield", MAXPLUS.name))
        elif "semifield" in doc and by_name(doc["semifield"]) is not semifield:
            raise ValueError("document semifield does not match the request")
        rows, cols = GroundSet(doc["rows"]), GroundSet(doc["cols"])
        ent = doc.get("entries", {})
        if isinstance(ent, list):
            return cls(semifield, rows, cols,
                       [[semifield.parse(a) for a in r] for r in ent])
        dense = [[semifield.zero] * len(cols) for _ in rows]
        for key, val in ent.items():
            r, c = (s.strip() for s in key.split(","))
            dense[rows.index(r)][cols.index(c)] = semifield.parse(val)
        return cls(semifield, rows, cols, dense)


def row_wedge(A: TropMatrix, rows_mask: int) -> ExteriorVector:
    """``wedge of rho_j over j in rows``; its ``I``-coefficient is the
    tropical ``J x I`` minor of ``A``."""
    acc = ExteriorVector.unit(A.semifield, A.cols, 0)
    for j in bits(rows_mask):
        acc = wedge(acc, A.row_form(j))
    return acc


def tropdet_expansion(A: TropMatrix, rows_mask: int, cols_mask: int):
    """Permanent over the semifield by summing over all bijections."""
    rows, cols = list(bits(rows_mask)), list(bits(cols_mask))
    if len(rows) != len(cols):
        raise ValueError("tropical minor needs |rows| = |cols|")
    sf = A.semifield
    ent = A.entries
    best = sf.zero
    for perm in permutations(cols):
        term = sf.one
        for j, i in zip(rows, perm):
            term = sf.mul(term, ent[j][i])
            if sf.is_zero(term):
                break
        best = sf.add(best, term)
    return best


def tropdet(A: TropMatrix, rows_mask: int, cols_mask: int, method: str = "auto"):
    """The tropical minor of ``A`` on the given row and column subsets."""
    k = rows_mask.bit_count()
    if k != cols_mask.bit_count():
        raise ValueError("tropical minor needs |rows| = |cols|")
    if method == "auto":
        method = "expansion" if k <= 8 else "wedge"
    if method == "expansion":
        return tropdet_expansion(A, rows_mask, cols_mask)
    if method == "wedge":
        return row_wedge(A, rows_mask)[cols_mask]
    raise ValueError(f"unknown method {method!r}")
