"""Triangular fuzzy numbers of a fixed (t1, t2) spread family.

A number is stored as its center ``u`` plus a :class:`SpreadPair`; the
triple form is ``(u - t1, u, u + t2)``. Every operator acts on centers
only and carries the spread pair through unchanged, so operands must
share one spread pair.

Numbers are plain Python reals: ``float`` by default, or
:class:`fractions.Fraction` when exact arithmetic is wanted. Mixing the
two silently degrades to float, so callers that need exactness should
build everything through :func:`as_number` with ``exact=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Union

from .errors import DegenerateSpread, DivisionByFuzzyZero, DomainError, SpreadMismatch

Number = Union[float, int, Fraction]

__all__ = [
    "Number",
    "Interval",
    "SpreadPair",
    "TriangularFuzzyNumber",
    "CRISP",
    "as_number",
    "format_number",
    "interval_metric",
    "membership_at",
    "alpha_cut",
    "add",
    "sub",
    "mul",
    "div",
    "scalar_mul",
    "neg",
    "fuzzy_abs",
    "fuzzy_zero",
    "metric",
    "dbar_from_delta",
]


def as_number(value, exact: bool = False) -> Number:
    """Coerce ``value`` to a float, or to a Fraction when ``exact``.

    Strings such as ``"1/3"`` are accepted in exact mode. Floats are
    converted through their shortest repr so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise DomainError(f"boolean is not a number: {value!r}")
    if exact:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, float):
            if not math.isfinite(value):
                raise DomainError(f"non-finite value in exact mode: {value!r}")
            return Fraction(repr(value))
        try:
            return Fraction(value)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a number: {value!r}") from exc
    if not isinstance(value, Real):
        raise DomainError(f"not a real number: {value!r}")
    return float(value)


def format_number(value: Number) -> str:
    """Render a number without losing information (``p/q`` for fractions)."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


@dataclass(frozen=True)
class Interval:
    """Closed bounded interval ``[lo, hi]``."""

    lo: Number
    hi: Number

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise DomainError(f"interval lower end {self.lo} exceeds upper end {self.hi}")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


def interval_metric(a: Interval, b: Interval) -> Number:
    """Largest absolute difference between matching endpoints."""
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


@dataclass(frozen=True)
class SpreadPair:
    """Left and right spreads; ``0 <= t1 <= t2``."""

    t1: Number = 0
    t2: Number = 0

    def __post_init__(self):
        if self.t1 < 0 or self.t2 < 0:
            raise DomainError(f"spreads must be non-negative, got ({self.t1}, {self.t2})")
        if self.t1 > self.t2:
            raise DomainError(f"spreads must satisfy t1 <= t2, got ({self.t1}, {self.t2})")

    @property
    def is_crisp(self) -> bool:
        return self.t1 == 0 and self.t2 == 0

    @property
    def width(self) -> Number:
        """``max(t1, t2)``: the metric between two numbers with equal centers."""
        return max(self.t1, self.t2)

    @property
    def metric_floor(self) -> Number:
        """``(t1 + t2) / 2``: the smallest value the metric takes, at ``delta = (t1 - t2) / 2``."""
        return (self.t1 + self.t2) / 2

    def to_dict(self) -> dict:
        return {"t1": _json_number(self.t1), "t2": _json_number(self.t2)}

    @classmethod
    def from_dict(cls, doc: dict, exact: bool = False) -> SpreadPair:
        return cls(as_number(doc.get("t1", 0), exact), as_number(doc.get("t2", 0), exact))


CRISP = SpreadPair(0, 0)


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """The triangular number ``(center - t1, center, center + t2)``.

    Python operators map onto the fuzzy ones: ``+``, ``-``, ``*``, ``/``
    between numbers of one spread family, ``*`` with a plain real for
    scalar multiplication, unary ``-`` and ``abs``.
    """

    center: Number
    spreads: SpreadPair = CRISP

    @property
    def first(self) -> Number:
        return self.center - self.spreads.t1

    @property
    def end(self) -> Number:
        return self.center + self.spreads.t2

    @property
    def triple(self) -> tuple:
        return (self.first, self.center, self.end)

    def __add__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return sub(self, other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return mul(self, other)
        if isinstance(other, Real):
            return scalar_mul(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return scalar_mul(other, self)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, TriangularFuzzyNumber):
            return div(self, other)
        return NotImplemented

    def __neg__(self):
        return neg(self)

    def __abs__(self):
        return fuzzy_abs(self)

    def to_dict(self) -> dict:
        return {
            "center": _json_number(self.center),
            "t1": _json_number(self.spreads.t1),
            "t2": _json_number(self.spreads.t2),
        }

    @classmethod
    def from_dict(cls, doc: dict, exact: bool = False) -> TriangularFuzzyNumber:
        return cls(as_number(doc["center"], exact), SpreadPair.from_dict(doc, exact))


def _json_number(value: Number):
    # Fractions go out as "p/q" strings so they round-trip exactly.
    if isinstance(value, Fraction):
        return format_number(value)
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def _same_family(u: TriangularFuzzyNumber, v: TriangularFuzzyNumber) -> SpreadPair:
    if u.spreads != v.spreads:
        raise SpreadMismatch(f"spread pairs differ: {u.spreads} vs {v.spreads}")
    return u.spreads


def fuzzy_zero(spreads: SpreadPair = CRISP) -> TriangularFuzzyNumber:
    """Additive identity of the family: center 0, spreads kept."""
    return TriangularFuzzyNumber(0, spreads)


def add(u: TriangularFuzzyNumber, v: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(u.center + v.center, _same_family(u, v))


def sub(u: TriangularFuzzyNumber, v: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(u.center - v.center, _same_family(u, v))


def mul(u: TriangularFuzzyNumber, v: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(u.center * v.center, _same_family(u, v))


def div(u: TriangularFuzzyNumber, v: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    spreads = _same_family(u, v)
    if v.center == 0:
        raise DivisionByFuzzyZero("divisor has zero center")
    return TriangularFuzzyNumber(u.center / v.center, spreads)


def scalar_mul(alpha: Number, u: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    """Scale the center only; the spreads are not scaled."""
    return TriangularFuzzyNumber(alpha * u.center, u.spreads)


def neg(u: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(-u.center, u.spreads)


def fuzzy_abs(u: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(abs(u.center), u.spreads)


def dbar_from_delta(delta: Number, t1: Number, t2: Number) -> Number:
    """``max(|delta - t1|, |delta|, |delta + t2|)`` for a center difference."""
    return max(abs(delta - t1), abs(delta), abs(delta + t2))


def metric(u: TriangularFuzzyNumber, v: TriangularFuzzyNumber) -> Number:
    """Distance between two numbers of one family.

    Note that ``metric(u, u) == max(t1, t2)``, so the distance only
    vanishes between equal crisp numbers, and that the formula is
    symmetric in ``u, v`` only when ``t1 == t2``.
    """
    spreads = _same_family(u, v)
    return dbar_from_delta(u.center - v.center, spreads.t1, spreads.t2)


def _check_tent(u: TriangularFuzzyNumber) -> bool:
    """Return True for the crisp case, raise for one-sided degeneracy."""
    t1, t2 = u.spreads.t1, u.spreads.t2
    if t1 == 0 and t2 == 0:
        return True
    if t1 == 0 or t2 == 0:
        raise DegenerateSpread(f"membership undefined for spreads ({t1}, {t2})")
    return False


def membership_at(u: TriangularFuzzyNumber, x: Number) -> Number:
    """Tent-shaped membership degree of ``x``; 1 at the center."""
    if _check_tent(u):
        return 1 if x == u.center else 0
    t1, t2 = u.spreads.t1, u.spreads.t2
    if u.center - t1 <= x <= u.center:
        return (x - (u.center - t1)) / t1
    if u.center < x <= u.center + t2:
        return ((u.center + t2) - x) / t2
    return 0


def alpha_cut(u: TriangularFuzzyNumber, alpha: Number) -> Interval:
    """The level set ``{x : membership_at(u, x) >= alpha}`` for alpha in (0, 1]."""
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if _check_tent(u):
        return Interval(u.center, u.center)
    t1, t2 = u.spreads.t1, u.spreads.t2
    return Interval(u.center - (1 - alpha) * t1, u.center + (1 - alpha) * t2)
