"""Row-finite infinite real matrices and their action on fuzzy sequences.

A matrix is an entry generator ``(n, k) -> a_nk`` (indices from 1)
together with the column bounds of each row's support. Rows are handed
out as ``(start, values)`` pairs covering columns ``start ..
start + len(values) - 1``; every entry outside that window is zero. All
builtin matrices are lower triangular, so an ``N x N`` leading block only
ever needs rows ``1..N`` and sequence terms ``1..N``.

``exact=True`` builds the builtins over :class:`fractions.Fraction` so
inverse identities can be checked with zero tolerance.
"""

from __future__ import annotations

import random
import threading
from fractions import Fraction
from operator import mul
from typing import Callable

from .errors import DomainError, GeneratorError
from .fuzzy_core import Number, TriangularFuzzyNumber, _json_number, as_number
from .seq_spaces import FuzzySequence
from .verdict import (
    DEFAULT_POLICY,
    Status,
    TruncationPolicy,
    Verdict,
    check_bounded,
    check_convergent,
    check_null,
    combine,
)

__all__ = [
    "InfiniteMatrix",
    "MatrixProbe",
    "omega",
    "gamma",
    "omega_inv",
    "gamma_inv",
    "identity",
    "zero",
    "cesaro",
    "diagonal",
    "explicit",
    "banded",
    "apply",
    "image",
    "compose",
    "truncate",
    "toeplitz_audit",
    "builtin",
    "BUILTINS",
]

Row = tuple  # (start column, list of values)


class InfiniteMatrix:
    """Row-finite matrix given by generators.

    Args:
        entry: ``(n, k) -> a_nk``, only called inside the row window.
        row_support: ``n -> `` largest column that may be nonzero in row n.
        name: label used in reports.
        row_start: ``n ->`` smallest column that may be nonzero (default 1).
        row: optional fast ``n -> (start, values)``; overrides ``entry``
            for bulk access.
    """

    def __init__(
        self,
        entry: Callable[[int, int], Number],
        row_support: Callable[[int], int],
        name: str = "A",
        *,
        row_start: Callable[[int], int] | None = None,
        row: Callable[[int], Row] | None = None,
        exact: bool = False,
        doc: dict | None = None,
    ):
        self._entry = entry
        self._support = row_support
        self._start = row_start or (lambda n: 1)
        self._row = row
        self.name = name
        self.exact = exact
        self.doc = doc

    def __repr__(self):
        return f"InfiniteMatrix({self.name!r})"

    @property
    def zero_value(self) -> Number:
        return Fraction(0) if self.exact else 0.0

    def row_support(self, n: int) -> int:
        return self._support(n)

    def entry(self, n: int, k: int) -> Number:
        if n < 1 or k < 1:
            raise DomainError(f"matrix indices start at 1, got ({n}, {k})")
        if self._row is not None:
            start, vals = self.row(n)
            i = k - start
            return vals[i] if 0 <= i < len(vals) else self.zero_value
        if k > self._support(n) or k < self._start(n):
            return self.zero_value
        try:
            return self._entry(n, k)
        except (ArithmeticError, ValueError, TypeError) as exc:
            raise GeneratorError(f"{self.name} entry ({n}, {k}) failed: {exc}") from exc

    __call__ = entry

    def row(self, n: int) -> Row:
        """Nonzero window of row ``n`` as ``(start, values)``."""
        if n < 1:
            raise DomainError(f"row index must be >= 1, got {n}")
        if self._row is not None:
            return self._row(n)
        start, stop = max(1, self._start(n)), self._support(n)
        try:
            return start, [self._entry(n, k) for k in range(start, stop + 1)]
        except (ArithmeticError, ValueError, TypeError) as exc:
            raise GeneratorError(f"{self.name} row {n} failed: {exc}") from exc

    def block(self, size: int) -> list[list[Number]]:
        return truncate(self, size)

    def __matmul__(self, other):
        if isinstance(other, InfiniteMatrix):
            return compose(self, other)
        if isinstance(other, FuzzySequence):
            return image(self, other)
        return NotImplemented

    def to_dict(self) -> dict:
        if self.doc is None:
            raise DomainError(f"matrix {self.name!r} has no document form")
        return self.doc


def _memo_rows(fn: Callable[[int], Row]) -> Callable[[int], Row]:
    cache: dict[int, Row] = {}
    lock = threading.Lock()

    def row(n):
        hit = cache.get(n)
        if hit is None:
            hit = fn(n)
            with lock:
                cache[n] = hit
        return hit

    return row


class _Reciprocals:
    """Growing table of ``1/k`` so row slices share one list."""

    def __init__(self, exact):
        self.exact = exact
        self.values: list = []
        self.lock = threading.Lock()

    def upto(self, n):
        if len(self.values) < n:
            with self.lock:
                one = Fraction(1) if self.exact else 1.0
                self.values.extend(one / k for k in range(len(self.values) + 1, n + 1))
        return self.values[:n]


def _num(x, exact):
    return Fraction(x) if exact else float(x)


def omega(exact: bool = False) -> InfiniteMatrix:
    """Lower-triangular matrix with ``a_nk = k`` for ``k <= n``."""
    cols: list = []

    def row(n):
        if len(cols) < n:
            cols.extend(_num(k, exact) for k in range(len(cols) + 1, n + 1))
        return 1, cols[:n]

    return InfiniteMatrix(
        lambda n, k: _num(k, exact), lambda n: n, "omega", row=row, exact=exact, doc={"kind": "omega"}
    )


def gamma(exact: bool = False) -> InfiniteMatrix:
    """Lower-triangular matrix with ``b_nk = 1/k`` for ``k <= n``."""
    recips = _Reciprocals(exact)
    return InfiniteMatrix(
        lambda n, k: _num(1, exact) / k,
        lambda n: n,
        "gamma",
        row=lambda n: (1, recips.upto(n)),
        exact=exact,
        doc={"kind": "gamma"},
    )


def omega_inv(exact: bool = False) -> InfiniteMatrix:
    """Bidiagonal inverse of omega: ``1/n`` on the diagonal, ``-1/n`` below."""
    one = _num(1, exact)

    def row(n):
        if n == 1:
            return 1, [one]
        return n - 1, [-one / n, one / n]

    return InfiniteMatrix(
        lambda n, k: one / n if k == n else -one / n,
        lambda n: n,
        "omega_inv",
        row_start=lambda n: max(1, n - 1),
        row=row,
        exact=exact,
        doc={"kind": "omega_inv"},
    )


def gamma_inv(exact: bool = False) -> InfiniteMatrix:
    """Bidiagonal inverse of gamma: ``n`` on the diagonal, ``-n`` below."""

    def row(n):
        if n == 1:
            return 1, [_num(1, exact)]
        return n - 1, [_num(-n, exact), _num(n, exact)]

    return InfiniteMatrix(
        lambda n, k: _num(n if k == n else -n, exact),
        lambda n: n,
        "gamma_inv",
        row_start=lambda n: max(1, n - 1),
        row=row,
        exact=exact,
        doc={"kind": "gamma_inv"},
    )


def identity(exact: bool = False) -> InfiniteMatrix:
    one = _num(1, exact)
    return InfiniteMatrix(
        lambda n, k: one,
        lambda n: n,
        "identity",
        row_start=lambda n: n,
        row=lambda n: (n, [one]),
        exact=exact,
        doc={"kind": "identity"},
    )


def zero(exact: bool = False) -> InfiniteMatrix:
    return InfiniteMatrix(
        lambda n, k: _num(0, exact),
        lambda n: 0,
        "zero",
        row=lambda n: (1, []),
        exact=exact,
        doc={"kind": "zero"},
    )


def cesaro(exact: bool = False) -> InfiniteMatrix:
    """Arithmetic-mean matrix, ``1/n`` for ``k <= n``."""
    one = _num(1, exact)
    return InfiniteMatrix(
        lambda n, k: one / n,
        lambda n: n,
        "cesaro",
        row=lambda n: (1, [one / n] * n),
        exact=exact,
        doc={"kind": "cesaro"},
    )


def diagonal(seq: FuzzySequence, name: str = "diag") -> InfiniteMatrix:
    """Diagonal matrix carrying the centers of ``seq``."""
    return InfiniteMatrix(
        lambda n, k: seq.center(n),
        lambda n: n,
        name,
        row_start=lambda n: n,
        row=lambda n: (n, [seq.center(n)]),
        exact=seq.exact,
    )


def explicit(rows: list, row_support: list | None = None, exact: bool = False) -> InfiniteMatrix:
    """Finite list of rows; later rows and columns are zero.

    ``row_support[n-1]`` may declare a support shorter than the listed row;
    listed entries beyond it must be zero.
    """
    data = [[as_number(x, exact) for x in r] for r in rows]
    if row_support is not None:
        if len(row_support) != len(data):
            raise DomainError("row_support must have one entry per row")
        for i, (r, s) in enumerate(zip(data, row_support)):
            if any(x != 0 for x in r[int(s):]):
                raise DomainError(f"row {i + 1} has nonzero entries beyond its declared support {s}")
        data = [r[: int(s)] for r, s in zip(data, row_support)]

    def row(n):
        if n > len(data):
            return 1, []
        return 1, data[n - 1]

    doc = {"kind": "explicit", "params": {"rows": [[_json_number(x) for x in r] for r in data]}}
    return InfiniteMatrix(
        lambda n, k: data[n - 1][k - 1],
        lambda n: len(data[n - 1]) if n <= len(data) else 0,
        "explicit",
        row=row,
        exact=exact,
        doc=doc,
    )


def banded(width: int = 4, seed: int = 0, low: float = -1.0, high: float = 1.0) -> InfiniteMatrix:
    """Lower-triangular band of seeded uniform random entries.

    Row ``n`` has nonzero entries in columns ``max(1, n - width + 1) .. n``,
    drawn from ``uniform(low, high)`` with a per-row seed, so the matrix is
    reproducible and rows can be generated independently.
    """
    if width < 1:
        raise DomainError("band width must be positive")

    @_memo_rows
    def row(n):
        rng = random.Random(f"{seed}:{n}")
        start = max(1, n - width + 1)
        return start, [rng.uniform(low, high) for _ in range(start, n + 1)]

    doc = {"kind": "banded", "params": {"width": width, "seed": seed, "low": low, "high": high}}
    return InfiniteMatrix(
        lambda n, k: row(n)[1][k - row(n)[0]],
        lambda n: n,
        f"banded(w={width},seed={seed})",
        row_start=lambda n: max(1, n - width + 1),
        row=row,
        doc=doc,
    )


BUILTINS: dict[str, Callable[..., InfiniteMatrix]] = {
    "omega": omega,
    "gamma": gamma,
    "omega_inv": omega_inv,
    "gamma_inv": gamma_inv,
    "identity": identity,
    "zero": zero,
    "cesaro": cesaro,
}


def builtin(name: str, exact: bool = False) -> InfiniteMatrix:
    try:
        return BUILTINS[name](exact)
    except KeyError:
        raise DomainError(f"unknown builtin matrix {name!r}; expected one of {sorted(BUILTINS)}") from None


def _dot(row: Row, centers: list) -> Number:
    start, vals = row
    if not vals:
        return 0
    return sum(map(mul, vals, centers[start - 1 : start - 1 + len(vals)]))


def apply(A: InfiniteMatrix, s: FuzzySequence, n: int) -> TriangularFuzzyNumber:
    """The ``n``-th term of ``A s``: center ``sum_k a_nk u^k``, spreads of ``s``."""
    start, vals = A.row(n)
    centers = s.centers(start + len(vals) - 1) if vals else []
    return TriangularFuzzyNumber(_dot((start, vals), centers), s.spreads)


def image(A: InfiniteMatrix, s: FuzzySequence) -> FuzzySequence:
    """The transformed sequence ``A s`` as a lazy sequence."""

    def bulk(n):
        rows = [A.row(m) for m in range(1, n + 1)]
        width = max((st + len(v) - 1 for st, v in rows if v), default=0)
        centers = s.centers(width) if width else []
        return [_dot(r, centers) for r in rows]

    return FuzzySequence(
        lambda n: apply(A, s, n).center,
        s.spreads,
        kind=f"{A.name}-image",
        bulk=bulk,
        exact=s.exact and A.exact,
    )


def compose(A: InfiniteMatrix, B: InfiniteMatrix) -> InfiniteMatrix:
    """Product ``A B``; each entry is a finite sum by row-finiteness of A."""

    @_memo_rows
    def row(n):
        a_start, a_vals = A.row(n)
        acc: dict[int, Number] = {}
        for j, a in enumerate(a_vals, a_start):
            if a == 0:
                continue
            b_start, b_vals = B.row(j)
            for k, b in enumerate(b_vals, b_start):
                acc[k] = acc.get(k, 0) + a * b
        cols = [k for k, v in acc.items() if v != 0]
        if not cols:
            return 1, []
        lo, hi = min(cols), max(cols)
        z = A.zero_value if A.exact and B.exact else 0.0
        return lo, [acc.get(k, z) for k in range(lo, hi + 1)]

    def support(n):
        start, vals = row(n)
        return start + len(vals) - 1

    doc = None
    if A.doc is not None and B.doc is not None:
        doc = {"kind": "derived", "params": {"op": "compose", "of": [A.doc, B.doc]}}
    return InfiniteMatrix(
        lambda n, k: None,
        support,
        f"{A.name}*{B.name}",
        row=row,
        exact=A.exact and B.exact,
        doc=doc,
    )


def truncate(A: InfiniteMatrix, size: int) -> list[list[Number]]:
    """Dense leading ``size x size`` block."""
    if size < 1:
        raise DomainError(f"block size must be >= 1, got {size}")
    z = A.zero_value
    out = []
    for n in range(1, size + 1):
        line = [z] * size
        start, vals = A.row(n)
        for k, v in enumerate(vals, start):
            if k <= size:
                line[k - 1] = v
        out.append(line)
    return out


class MatrixProbe:
    """Incremental cache of rows and row statistics for condition checks."""

    def __init__(self, A: InfiniteMatrix):
        self.matrix = A
        self._rows: list[Row] = []

    def rows(self, n: int) -> list[Row]:
        while len(self._rows) < n:
            self._rows.append(self.matrix.row(len(self._rows) + 1))
        return self._rows[:n]

    def row_sums(self, n: int) -> list:
        return [sum(v) if v else 0 for _, v in self.rows(n)]

    def abs_row_sums(self, n: int) -> list:
        return [sum(map(abs, v)) if v else 0 for _, v in self.rows(n)]

    def column(self, k: int, n: int) -> list:
        out = []
        z = self.matrix.zero_value
        for start, vals in self.rows(n):
            i = k - start
            out.append(vals[i] if 0 <= i < len(vals) else z)
        return out

    def min_entry(self, n: int):
        return min((min(v) for _, v in self.rows(n) if v), default=0)


def toeplitz_audit(A: InfiniteMatrix, policy: TruncationPolicy = DEFAULT_POLICY, columns: int = 8) -> dict:
    """Check the classical regularity conditions on a row-finite matrix.

    Audited: (a) ``lim_n sum_k a_nk`` exists and equals 1, (b) every
    column tends to 0 (columns ``1..columns``), (c) ``sup_n sum_k |a_nk|``
    is finite. ``report["regular"]`` is their conjunction.
    """
    probe = MatrixProbe(A)
    policy = policy.with_max_cutoff(None)
    row_sum = check_convergent(probe.row_sums, policy)
    limit = row_sum.witness.get("limit")
    limit_is_one = row_sum.holds and abs(float(limit) - 1.0) <= max(policy.tol, 1e-9) * 10
    if row_sum.holds and not limit_is_one:
        row_sum_one = Verdict(
            Status.FAILS,
            {"limit": limit, "index": policy.cutoff, "value": probe.row_sums(policy.cutoff)[-1]},
            policy.tol,
            policy.ladder,
        )
    else:
        row_sum_one = row_sum
    column_limits = {k: check_null(lambda n, k=k: probe.column(k, n), policy) for k in range(1, columns + 1)}
    sup_abs = check_bounded(probe.abs_row_sums, policy)
    regular = combine([row_sum_one, sup_abs, *column_limits.values()], policy)
    report = {
        "matrix": A.name,
        "row_sum_limit": {"verdict": row_sum, "value": limit if row_sum.holds else None, "equals_one": limit_is_one},
        "row_sums_at_ladder": [probe.row_sums(n)[-1] for n in policy.ladder],
        "column_limits": column_limits,
        "sup_abs_row_sums": sup_abs,
        "regular": regular.status,
    }
    if regular.status is Status.FAILS:
        report["finding"] = _audit_finding(row_sum, sup_abs, column_limits)
    return report


def _audit_finding(row_sum: Verdict, sup_abs: Verdict, columns: dict) -> str:
    parts = []
    if row_sum.fails:
        exp = row_sum.witness.get("growth_exponent")
        tail = f" (growth exponent {exp:.3f})" if isinstance(exp, float) else ""
        parts.append(f"row sums do not converge{tail}")
    elif row_sum.holds:
        parts.append(f"row sums converge to {float(row_sum.witness['limit']):.6g}, not 1")
    if sup_abs.fails:
        parts.append("absolute row sums are unbounded")
    bad = [k for k, v in columns.items() if v.fails]
    if bad:
        parts.append(f"columns {bad} do not tend to 0")
    return "not regular in the Silverman-Toeplitz sense: " + "; ".join(parts)
