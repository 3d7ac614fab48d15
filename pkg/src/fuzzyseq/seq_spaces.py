"""Sequences of triangular fuzzy numbers and the classical spaces over them.

A :class:`FuzzySequence` is a lazily evaluated map ``k -> u^k`` (index
origin 1) in which every term shares the sequence's spread pair, so a
sequence is really a real center sequence plus one :class:`SpreadPair`.

Membership in l_inf(F), c(F), c0(F), l_p(F), cs(F) and bs(F) is measured
with the metric ``dbar`` and decided on a truncation ladder; see
:mod:`fuzzyseq.verdict`. Because ``dbar`` never drops below ``(t1 + t2) / 2``, the
limit conditions of c(F), c0(F) and cs(F) can only hold for crisp
sequences, and l_p(F) likewise. Verdicts report this rather than hide it.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Sequence

from ._expr import compile_expression
from .errors import DomainError, GeneratorError, SpreadMismatch
from .fuzzy_core import (
    CRISP,
    Number,
    SpreadPair,
    TriangularFuzzyNumber,
    _json_number,
    as_number,
    dbar_from_delta,
)
from .verdict import (
    DEFAULT_POLICY,
    Status,
    TruncationPolicy,
    Verdict,
    check_bounded,
    check_convergent,
    check_null,
)

__all__ = [
    "FuzzySequence",
    "partial_sums",
    "sup_norm",
    "in_linf",
    "in_c",
    "in_c0",
    "in_lp",
    "in_l1",
    "in_cs",
    "in_bs",
    "in_space",
    "SPACE_NAMES",
]


class FuzzySequence:
    """Lazily generated fuzzy sequence with one shared spread pair.

    Args:
        center_fn: maps an index ``k >= 1`` to the center ``u^k``.
        spreads: spread pair shared by all terms.
        kind: generator label used for serialization.
        params: generator parameters used for serialization.
        bulk: optional ``n -> [u^1, ..., u^n]``, used instead of
            ``center_fn`` when a whole prefix is cheaper to build at once.
    """

    def __init__(
        self,
        center_fn: Callable[[int], Number],
        spreads: SpreadPair = CRISP,
        *,
        kind: str = "custom",
        params: dict | None = None,
        bulk: Callable[[int], list] | None = None,
        exact: bool = False,
    ):
        self._fn = center_fn
        self._bulk = bulk
        self._spreads = spreads
        self._kind = kind
        self._params = dict(params or {})
        self._exact = exact
        self._cache: list = []
        self._lock = threading.Lock()

    @property
    def spreads(self) -> SpreadPair:
        return self._spreads

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def params(self) -> dict:
        return dict(self._params)

    @property
    def exact(self) -> bool:
        return self._exact

    def __repr__(self):
        return f"FuzzySequence(kind={self._kind!r}, params={self._params!r}, spreads={self._spreads})"

    def _eval(self, k: int) -> Number:
        try:
            return self._fn(k)
        except (ArithmeticError, ValueError, TypeError) as exc:
            raise GeneratorError(f"{self._kind} generator failed at k={k}: {exc}") from exc

    def center(self, k: int) -> Number:
        if k < 1:
            raise DomainError(f"sequence index must be >= 1, got {k}")
        cache = self._cache
        if k <= len(cache):
            return cache[k - 1]
        if self._bulk is not None:
            return self.centers(k)[k - 1]
        return self._eval(k)

    def centers(self, n: int) -> list:
        """First ``n`` centers ``[u^1, ..., u^n]`` (memoized)."""
        if n <= len(self._cache):
            return self._cache[:n]
        with self._lock:
            cache = self._cache
            if n > len(cache):
                if self._bulk is not None:
                    try:
                        fresh = list(self._bulk(n))
                    except (ArithmeticError, ValueError, TypeError) as exc:
                        raise GeneratorError(f"{self._kind} generator failed: {exc}") from exc
                else:
                    fresh = cache + [self._eval(k) for k in range(len(cache) + 1, n + 1)]
                self._cache = fresh
            return self._cache[:n]

    def term(self, k: int) -> TriangularFuzzyNumber:
        return TriangularFuzzyNumber(self.center(k), self._spreads)

    def terms(self, n: int) -> list[TriangularFuzzyNumber]:
        return [TriangularFuzzyNumber(c, self._spreads) for c in self.centers(n)]

    def map_centers(self, fn: Callable[[Number], Number], kind: str) -> FuzzySequence:
        """Apply ``fn`` to every center, keeping the spreads."""
        src = self
        return FuzzySequence(
            lambda k: fn(src.center(k)),
            self._spreads,
            kind=kind,
            bulk=lambda n: [fn(c) for c in src.centers(n)],
            exact=self._exact,
        )

    def with_spreads(self, spreads: SpreadPair) -> FuzzySequence:
        return FuzzySequence(
            self._fn, spreads, kind=self._kind, params=self._params, bulk=self._bulk, exact=self._exact
        )

    def __add__(self, other: FuzzySequence) -> FuzzySequence:
        if not isinstance(other, FuzzySequence):
            return NotImplemented
        if self._spreads != other._spreads:
            raise SpreadMismatch(f"spread pairs differ: {self._spreads} vs {other._spreads}")
        a, b = self, other
        return FuzzySequence(
            lambda k: a.center(k) + b.center(k),
            self._spreads,
            kind="sum",
            bulk=lambda n: [x + y for x, y in zip(a.centers(n), b.centers(n))],
            exact=self._exact and other._exact,
        )

    def __rmul__(self, alpha):
        return self.map_centers(lambda c: alpha * c, kind="scaled")

    def __neg__(self):
        return self.map_centers(lambda c: -c, kind="negated")

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, value, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        c = as_number(value, exact)
        return cls(lambda k: c, spreads, kind="constant", params={"value": c}, exact=exact)

    @classmethod
    def zero(cls, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        return cls.constant(0, spreads, exact)

    @classmethod
    def geometric(cls, ratio, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        """Centers ``ratio ** k``; overflow in float mode yields a signed infinity."""
        r = as_number(ratio, exact)

        def fn(k):
            try:
                return r**k
            except OverflowError:
                sign = -1.0 if (r < 0 and k % 2) else 1.0
                return math.copysign(math.inf, sign)

        return cls(fn, spreads, kind="geometric", params={"ratio": r}, exact=exact)

    @classmethod
    def harmonic(cls, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        one = Fraction(1) if exact else 1.0
        return cls(lambda k: one / k, spreads, kind="harmonic", exact=exact)

    @classmethod
    def power(cls, exponent, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        """Centers ``k ** exponent``."""
        p = as_number(exponent, exact)
        if exact and isinstance(p, Fraction) and p.denominator == 1:
            e = int(p)
            fn = lambda k: Fraction(k) ** e  # noqa: E731
        else:
            pf = float(p)
            fn = lambda k: float(k) ** pf  # noqa: E731
        return cls(fn, spreads, kind="power", params={"exponent": p}, exact=exact)

    @classmethod
    def polynomial(cls, coeffs: Sequence, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        """Centers ``sum_i coeffs[i] * k**i``."""
        cs = [as_number(c, exact) for c in coeffs]
        if not cs:
            raise DomainError("polynomial needs at least one coefficient")

        def fn(k):
            acc = 0
            for c in reversed(cs):
                acc = acc * k + c
            return acc

        return cls(fn, spreads, kind="polynomial", params={"coeffs": cs}, exact=exact)

    @classmethod
    def explicit(cls, centers: Sequence, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        """Finite list of centers, zero-extended beyond its end."""
        cs = [as_number(c, exact) for c in centers]
        zero = Fraction(0) if exact else 0.0
        return cls(
            lambda k: cs[k - 1] if k <= len(cs) else zero,
            spreads,
            kind="explicit",
            params={"centers": cs},
            exact=exact,
        )

    @classmethod
    def expression(cls, source: str, spreads: SpreadPair = CRISP, exact: bool = False) -> FuzzySequence:
        """Centers from an arithmetic expression in ``k``, e.g. ``"(-1)**k / k"``."""
        fn = compile_expression(source, exact)
        return cls(fn, spreads, kind="expression", params={"expr": source}, exact=exact)

    @classmethod
    def custom(cls, fn: Callable[[int], Number], spreads: SpreadPair = CRISP, label: str = "custom") -> FuzzySequence:
        return cls(fn, spreads, kind="custom", params={"label": label})

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        if self._kind not in _KINDS:
            raise DomainError(f"sequence of kind {self._kind!r} has no document form")
        params = {
            k: ([_json_number(x) for x in v] if isinstance(v, list) else _json_number(v))
            for k, v in self._params.items()
        }
        return {"spreads": self._spreads.to_dict(), "kind": self._kind, "params": params}

    @classmethod
    def from_dict(cls, doc: dict, exact: bool = False) -> FuzzySequence:
        try:
            kind = doc["kind"]
        except (KeyError, TypeError) as exc:
            raise DomainError("sequence document needs a 'kind'") from exc
        if kind not in _KINDS:
            raise DomainError(f"unknown sequence kind {kind!r}")
        spreads = SpreadPair.from_dict(doc.get("spreads") or {}, exact)
        params = doc.get("params", {})
        if not isinstance(params, dict):
            params = {_SHORTHAND.get(kind, "value"): params}
        try:
            if kind == "constant":
                return cls.constant(params["value"], spreads, exact)
            if kind == "geometric":
                return cls.geometric(params["ratio"], spreads, exact)
            if kind == "harmonic":
                return cls.harmonic(spreads, exact)
            if kind == "power":
                return cls.power(params["exponent"], spreads, exact)
            if kind == "polynomial":
                return cls.polynomial(params["coeffs"], spreads, exact)
            if kind == "explicit":
                return cls.explicit(params["centers"], spreads, exact)
            return cls.expression(params["expr"], spreads, exact)
        except KeyError as exc:
            raise DomainError(f"{kind} sequence is missing parameter {exc}") from exc


_KINDS = ("constant", "geometric", "harmonic", "power", "polynomial", "explicit", "expression")
_SHORTHAND = {
    "constant": "value",
    "geometric": "ratio",
    "power": "exponent",
    "polynomial": "coeffs",
    "explicit": "centers",
    "expression": "expr",
}


def partial_sums(s: FuzzySequence) -> FuzzySequence:
    """Sequence of partial sums of the centers; spreads ride along."""

    def bulk(n):
        out, acc = [], 0
        for c in s.centers(n):
            acc = acc + c
            out.append(acc)
        return out

    return FuzzySequence(lambda k: bulk(k)[-1], s.spreads, kind="partial_sums", bulk=bulk, exact=s.exact)


def _dbar_values(s: FuzzySequence, against: FuzzySequence | None = None):
    t1, t2 = s.spreads.t1, s.spreads.t2
    if against is None:
        return lambda n: [dbar_from_delta(c, t1, t2) for c in s.centers(n)]
    if against.spreads != s.spreads:
        raise SpreadMismatch(f"spread pairs differ: {s.spreads} vs {against.spreads}")
    return lambda n: [dbar_from_delta(a - b, t1, t2) for a, b in zip(s.centers(n), against.centers(n))]


def sup_norm(
    s: FuzzySequence, against: FuzzySequence | None = None, policy: TruncationPolicy = DEFAULT_POLICY
) -> tuple:
    """``sup_k dbar(s^k, against^k)`` with its verdict.

    ``against`` defaults to the zero sequence of the same family. The
    value is the running sup at the last cutoff, or ``inf`` on Fails.
    """
    verdict = check_bounded(_dbar_values(s, against), policy)
    if verdict.fails:
        return math.inf, verdict
    return verdict.witness["sup"], verdict


def in_linf(s: FuzzySequence, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    return check_bounded(_dbar_values(s), policy)


def in_c0(s: FuzzySequence, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    return check_null(_dbar_values(s), policy)


def in_c(s: FuzzySequence, policy: TruncationPolicy = DEFAULT_POLICY) -> tuple:
    """Convergence test; returns ``(verdict, limit)`` with ``limit`` None unless Holds.

    The centers are tested for a limit first. A candidate limit ``u0`` with
    nonzero spreads can never satisfy ``dbar(u^k, u0) -> 0``, since the
    metric is bounded below by ``(t1 + t2) / 2``; that case Fails with the
    floor as witness.
    """
    verdict = check_convergent(s.centers, policy)
    if not verdict.holds:
        return verdict, None
    limit = TriangularFuzzyNumber(verdict.witness["limit"], s.spreads)
    floor = s.spreads.metric_floor
    if floor > policy.tol:
        n = verdict.ladder[-1]
        witness = dict(verdict.witness)
        witness.update(
            index=n,
            value=dbar_from_delta(s.center(n) - limit.center, s.spreads.t1, s.spreads.t2),
            metric_floor=floor,
            reason="metric to the limit is bounded below by (t1 + t2) / 2",
        )
        return Verdict(Status.FAILS, witness, verdict.tol, verdict.ladder), None
    return verdict, limit


def in_lp(s: FuzzySequence, p: float = 1, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    """``sum_k dbar(u^k, theta)^p < inf`` via the running partial sums."""
    if not p >= 1:
        raise DomainError(f"p must be >= 1, got {p}")
    dbar = _dbar_values(s)

    def sums(n):
        out, acc = [], 0
        for d in dbar(n):
            acc = acc + (d if p == 1 else float(d) ** p)
            out.append(acc)
        return out

    return check_bounded(sums, policy)


def in_l1(s: FuzzySequence, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    return in_lp(s, 1, policy)


def in_cs(s: FuzzySequence, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    return in_c(partial_sums(s), policy)[0]


def in_bs(s: FuzzySequence, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    return in_linf(partial_sums(s), policy)


SPACE_NAMES = ("linf", "c", "c0", "l1", "lp", "cs", "bs")


def in_space(s: FuzzySequence, name: str, policy: TruncationPolicy = DEFAULT_POLICY, p: float = 1) -> Verdict:
    """Dispatch a membership test by space name."""
    if name == "linf":
        return in_linf(s, policy)
    if name == "c":
        return in_c(s, policy)[0]
    if name == "c0":
        return in_c0(s, policy)
    if name == "l1":
        return in_l1(s, policy)
    if name == "lp":
        return in_lp(s, p, policy)
    if name == "cs":
        return in_cs(s, policy)
    if name == "bs":
        return in_bs(s, policy)
    raise DomainError(f"unknown space {name!r}; expected one of {SPACE_NAMES}")
