"""Real dual numbers ``a = a_s + a_d*eps`` with ``eps**2 == 0``.

The ring operations are exact lifts of real arithmetic. Ordering is the
lexicographic total order (standard part first, dual part breaks ties); no
tolerance is applied inside the ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from numbers import Real

from .errors import DivisionUndefinedError, DualOverflowError

__all__ = [
    "DualNumber",
    "Ordering",
    "add",
    "mul",
    "magnitude",
    "compare",
    "divide",
    "conjugate",
    "EPS",
    "ZERO",
    "ONE",
]


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, order=True)
class DualNumber:
    """A real dual number.

    ``order=True`` makes Python's comparison operators follow the dual order,
    since dataclass ordering compares ``(s, d)`` tuples lexicographically.

    ``unique`` is False only for quotients taken on the pure-dual branch of
    :func:`divide`, where the dual part is an arbitrary constant pinned to 0.
    It does not take part in equality or ordering.
    """

    s: float
    d: float = 0.0
    unique: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        s, d = float(self.s), float(self.d)
        if not (math.isfinite(s) and math.isfinite(d)):
            raise ValueError(f"dual number parts must be finite, got ({self.s}, {self.d})")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    @property
    def appreciable(self) -> bool:
        return self.s != 0.0

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.s, -self.d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return divide(self, other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return divide(other, self)

    def __abs__(self):
        return magnitude(self)

    def __str__(self):
        sign = "-" if self.d < 0 else "+"
        return f"{self.s!r} {sign} {abs(self.d)!r}ε"


def _coerce(x):
    if isinstance(x, DualNumber):
        return x
    if isinstance(x, Real):
        return DualNumber(float(x), 0.0)
    return NotImplemented


def _checked(s: float, d: float) -> DualNumber:
    if not (math.isfinite(s) and math.isfinite(d)):
        raise DualOverflowError(f"non-finite dual result ({s}, {d})")
    return DualNumber(s, d)


def add(a: DualNumber, b: DualNumber) -> DualNumber:
    return _checked(a.s + b.s, a.d + b.d)


def mul(a: DualNumber, b: DualNumber) -> DualNumber:
    return _checked(a.s * b.s, a.s * b.d + a.d * b.s)


def magnitude(a: DualNumber) -> DualNumber:
    """Dual magnitude; always a nonnegative dual number.

    For appreciable ``a`` this is ``|a_s| + sgn(a_s) a_d eps``, otherwise
    ``|a_d|`` carried as the standard part with zero dual part.
    """
    if a.s != 0.0:
        return DualNumber(abs(a.s), math.copysign(1.0, a.s) * a.d)
    return DualNumber(abs(a.d), 0.0)


def compare(a: DualNumber, b: DualNumber) -> Ordering:
    if a.s != b.s:
        return Ordering.LESS if a.s < b.s else Ordering.GREATER
    if a.d != b.d:
        return Ordering.LESS if a.d < b.d else Ordering.GREATER
    return Ordering.EQUAL


def divide(a: DualNumber, b: DualNumber) -> DualNumber:
    """Dual quotient ``a / b``.

    Defined when ``b`` is appreciable, or when both ``a`` and ``b`` have zero
    standard part and ``b.d != 0``. In the latter case the dual part of the
    quotient is not determined; it is set to 0 and the result carries
    ``unique=False``.

    Raises
    ------
    DivisionUndefinedError
        For any other combination.
    """
    if b.s != 0.0:
        return _checked(a.s / b.s, a.d / b.s - a.s * b.d / (b.s * b.s))
    if a.s == 0.0 and b.d != 0.0:
        q = a.d / b.d
        if not math.isfinite(q):
            raise DualOverflowError(f"non-finite dual result ({q}, 0.0)")
        return DualNumber(q, 0.0, unique=False)
    raise DivisionUndefinedError(f"cannot divide {a} by non-appreciable {b}")


def conjugate(a: DualNumber) -> DualNumber:
    # real dual numbers are self-conjugate
    return a


EPS = DualNumber(0.0, 1.0)
ZERO = DualNumber(0.0, 0.0)
ONE = DualNumber(1.0, 0.0)
