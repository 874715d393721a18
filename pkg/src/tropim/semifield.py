"""Totally ordered idempotent semifields.

Two concrete semifields share one arithmetic contract:

* ``MAXPLUS`` -- exact rationals with a bottom element ``NEG_INF``;
  addition is ``max`` and multiplication is ordinary addition.
* ``BOOLEAN`` -- the two-element semifield ``{0, 1}`` with ``or``/``and``.

Max-plus values are plain Python ``int`` or ``fractions.Fraction`` objects
(integral results stay ``int``), so nothing here ever touches a float.
Downstream code stores only nonzero coordinates, and the ``*_nonzero`` fast
paths below skip the zero checks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Any, Iterable


class DomainError(ValueError):
    """Raised for operations undefined on the given arguments."""


class _NegInf:
    """The additive identity of max-plus: below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_NegInf, ())

    def __lt__(self, other: Any) -> bool:
        return other is not self

    def __le__(self, other: Any) -> bool:
        return True

    def __gt__(self, other: Any) -> bool:
        return False

    def __ge__(self, other: Any) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("tropim.NEG_INF")


NEG_INF = _NegInf()


def _as_rational(x: Any) -> int | Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not max-plus values")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, str):
        return _as_rational(Fraction(x.strip()))
    raise TypeError(f"not an exact rational: {x!r}")


class Semifield:
    """Arithmetic contract shared by the concrete semifields."""

    name: str
    zero: Any
    one: Any

    def is_zero(self, a) -> bool:
        return a == self.zero

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def add_nonzero(self, a, b):
        return self.add(a, b)

    def mul_nonzero(self, a, b):
        return self.mul(a, b)

    def le(self, a, b) -> bool:
        """The canonical order: ``a <= b`` iff ``a + b == b``."""
        return self.add(a, b) == b

    def sum(self, values: Iterable):
        return reduce(self.add, values, self.zero)

    def prod(self, values: Iterable):
        return reduce(self.mul, values, self.one)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, x):
        """Parse a JSON scalar into a value of this semifield."""
        return self.coerce(x)

    def format(self, a):
        """Inverse of :meth:`parse` on canonical values."""
        raise NotImplementedError

    def push_forward(self, a) -> int:
        """The canonical homomorphism onto ``BOOLEAN``."""
        return 0 if self.is_zero(a) else 1

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (by_name, (self.name,))


class MaxPlus(Semifield):
    name = "maxplus-rational"
    zero = NEG_INF
    one = 0

    def is_zero(self, a) -> bool:
        return a is NEG_INF

    def add(self, a, b):
        if a is NEG_INF:
            return b
        if b is NEG_INF:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if a is NEG_INF or b is NEG_INF:
            return NEG_INF
        return a + b

    def inv(self, a):
        if a is NEG_INF:
            raise DomainError("the zero of max-plus has no inverse")
        return -a

    def add_nonzero(self, a, b):
        return a if a >= b else b

    def mul_nonzero(self, a, b):
        return a + b

    def le(self, a, b) -> bool:
        if a is NEG_INF:
            return True
        if b is NEG_INF:
            return False
        return a <= b

    def coerce(self, x):
        if x is NEG_INF:
            return x
        if isinstance(x, str) and x.strip().lower() in ("-inf", "-infinity"):
            return NEG_INF
        return _as_rational(x)

    def format(self, a) -> str:
        return "-inf" if a is NEG_INF else str(a)


class Boolean(Semifield):
    name = "boolean"
    zero = 0
    one = 1

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        return 1 if (a or b) else 0

    def mul(self, a, b):
        return 1 if (a and b) else 0

    def inv(self, a):
        if not a:
            raise DomainError("0 has no inverse in the Boolean semifield")
        return 1

    def add_nonzero(self, a, b):
        return 1

    def mul_nonzero(self, a, b):
        return 1

    def le(self, a, b) -> bool:
        return not a or bool(b)

    def coerce(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, str):
            x = x.strip()
            if x in ("0", "1"):
                return int(x)
        if isinstance(x, int) and x in (0, 1):
            return x
        raise TypeError(f"not a Boolean semifield value: {x!r}")

    def format(self, a) -> int:
        return 1 if a else 0


MAXPLUS = MaxPlus()
BOOLEAN = Boolean()

SEMIFIELDS = {MAXPLUS.name: MAXPLUS, BOOLEAN.name: BOOLEAN}


def by_name(name: str) -> Semifield:
    try:
        return SEMIFIELDS[name]
    except KeyError:
        raise ValueError(
            f"unknown semifield {name!r}; expected one of {sorted(SEMIFIELDS)}"
        ) from None


def push_forward(a, semifield: Semifield = MAXPLUS) -> int:
    """Send zero to 0 and every other value to 1."""
    return semifield.push_forward(a)


def embed_boolean(a) -> Any:
    """Embed ``BOOLEAN`` in ``MAXPLUS`` as ``{NEG_INF, 0}``."""
    return 0 if a else NEG_INF
