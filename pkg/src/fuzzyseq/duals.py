"""Real duals of the omega/gamma domains and matrix-class characterizations.

Three groups of tools live here:

* builders: the multiplier matrices ``G`` (``a_n / n``) and ``H``
  (``n a_n``), the difference matrices ``tilde`` / ``hat`` and the
  summed matrices ``lambda`` / ``sigma``;
* checkers: :func:`check_class` evaluates the tabulated row/column
  conditions for a class ``(X : Y)``, and :func:`dual_membership`
  evaluates the condition sets d1..d6 for a multiplier sequence;
* oracles: :func:`class_oracle` and :func:`dual_oracle` apply the
  definitions directly to a finite corpus of members of the source space.

An oracle can only ever find counterexamples, so the one combination that
signals a defect is ``oracle Fails`` while ``conditions Hold``;
:func:`compare` turns it into a finding.

All matrix entries are crisp, so ``dbar(a_nk, theta) = |a_nk|``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .domains import DomainSpace
from .errors import DomainError, UnknownClass
from .fuzzy_core import Number
from .inf_matrix import (
    InfiniteMatrix,
    MatrixProbe,
    apply,
    compose,
    diagonal,
    gamma,
    gamma_inv,
    image,
    omega,
    omega_inv,
    truncate,
)
from .seq_spaces import FuzzySequence, in_space
from .verdict import (
    DEFAULT_POLICY,
    Status,
    TruncationPolicy,
    Verdict,
    _jsonable,
    check_bounded,
    check_convergent,
    check_null,
    combine,
)

__all__ = [
    "DualKind",
    "ClassCondition",
    "MatrixClass",
    "ClassReport",
    "DualReport",
    "TransferReport",
    "CLASS_TABLE",
    "build_G",
    "build_H",
    "derived_tilde",
    "derived_hat",
    "derived_lambda",
    "derived_sigma",
    "matrix_class",
    "check_class",
    "class_oracle",
    "condition_set",
    "dual_membership",
    "dual_oracle",
    "compare",
    "transfer_check",
    "THEOREMS",
]


class DualKind(str, enum.Enum):
    ALPHA = "alpha_r"
    BETA = "beta_r"
    GAMMA = "gamma_r"

    @property
    def target(self) -> str:
        return {"alpha_r": "l1", "beta_r": "cs", "gamma_r": "bs"}[self.value]

    def __str__(self):
        return self.value


def _as_sequence(a) -> FuzzySequence:
    if isinstance(a, FuzzySequence):
        return a
    if callable(a):
        return FuzzySequence.custom(a)
    return FuzzySequence.explicit(list(a))


# -- builders -----------------------------------------------------------


def build_G(a) -> InfiniteMatrix:
    """``g_nk = a_n / n`` for ``k <= n``."""
    a = _as_sequence(a)
    return InfiniteMatrix(
        lambda n, k: a.center(n) / n,
        lambda n: n,
        "G",
        row=lambda n: (1, [a.center(n) / n] * n),
        exact=a.exact,
    )


def build_H(a) -> InfiniteMatrix:
    """``h_nk = n a_n`` for ``k <= n``."""
    a = _as_sequence(a)
    return InfiniteMatrix(
        lambda n, k: n * a.center(n),
        lambda n: n,
        "H",
        row=lambda n: (1, [n * a.center(n)] * n),
        exact=a.exact,
    )


def _difference(A: InfiniteMatrix, weight: Callable[[int], Number], name: str) -> InfiniteMatrix:
    """Rows ``w(k) a_nk - w(k+1) a_{n,k+1}``.

    The window grows one column to the left, where only the second term
    survives.
    """

    def row(n):
        start, vals = A.row(n)
        if not vals:
            return 1, []
        lo = max(1, start - 1)
        end = start + len(vals) - 1

        def a(k):
            i = k - start
            return vals[i] if 0 <= i < len(vals) else 0

        return lo, [weight(k) * a(k) - weight(k + 1) * a(k + 1) for k in range(lo, end + 1)]

    def support(n):
        start, vals = A.row(n)
        return start + len(vals) - 1 if vals else 0

    doc = None
    if A.doc is not None:
        doc = {"kind": "derived", "params": {"op": name, "of": A.doc}}
    return InfiniteMatrix(lambda n, k: None, support, f"{name}({A.name})", row=row, exact=A.exact, doc=doc)


def derived_tilde(A: InfiniteMatrix) -> InfiniteMatrix:
    """``a_nk / k - a_{n,k+1} / (k+1)``."""
    one = Fraction(1) if A.exact else 1.0
    return _difference(A, lambda k: one / k, "tilde")


def derived_hat(A: InfiniteMatrix) -> InfiniteMatrix:
    """``k a_nk - (k+1) a_{n,k+1}``."""
    return _difference(A, lambda k: k, "hat")


def _weighted_running_sum(D: InfiniteMatrix, weight: Callable[[int], Number], name: str) -> InfiniteMatrix:
    """Rows ``sum_{j<=n} w(j) d_jk``, built by accumulating rows of D."""
    acc: dict[int, Number] = {}
    rows: list = []

    def row(n):
        while len(rows) < n:
            j = len(rows) + 1
            start, vals = D.row(j)
            w = weight(j)
            for k, v in enumerate(vals, start):
                acc[k] = acc.get(k, 0) + w * v
            cols = [k for k, v in acc.items() if v != 0]
            if cols:
                lo, hi = min(cols), max(cols)
                rows.append((lo, [acc.get(k, 0) for k in range(lo, hi + 1)]))
            else:
                rows.append((1, []))
        return rows[n - 1]

    def support(n):
        start, vals = row(n)
        return start + len(vals) - 1 if vals else 0

    doc = None
    if D.doc is not None:
        doc = {"kind": "derived", "params": {"op": name, "of": D.doc}}
    return InfiniteMatrix(lambda n, k: None, support, f"{name}({D.name})", row=row, exact=D.exact, doc=doc)


def derived_lambda(delta: InfiniteMatrix) -> InfiniteMatrix:
    """``lambda_nk = sum_{j<=n} j delta_jk``."""
    return _weighted_running_sum(delta, lambda j: j, "lambda")


def derived_sigma(pi: InfiniteMatrix) -> InfiniteMatrix:
    """``sigma_nk = sum_{j<=n} pi_jk / j``."""
    one = Fraction(1) if pi.exact else 1.0
    return _weighted_running_sum(pi, lambda j: one / j, "sigma")


def _f_matrix(a: FuzzySequence, V: InfiniteMatrix) -> InfiniteMatrix:
    """``f_nk = sum_{j=k}^{n} a_j v_jk`` for a lower-triangular V.

    This is the matrix that rewrites ``sum_{k<=n} a_k x_k`` in terms of
    ``y = V^{-1} x``; it backs the supplementary route in dual_membership.
    """
    acc: dict[int, Number] = {}
    rows: list = []

    def row(n):
        while len(rows) < n:
            j = len(rows) + 1
            start, vals = V.row(j)
            aj = a.center(j)
            for k, v in enumerate(vals, start):
                acc[k] = acc.get(k, 0) + aj * v
            hi = max(acc) if acc else 0
            rows.append((1, [acc.get(k, 0) for k in range(1, hi + 1)]))
        return rows[n - 1]

    return InfiniteMatrix(lambda n, k: None, lambda n: len(row(n)[1]), "F", row=row, exact=a.exact)


# -- matrix conditions --------------------------------------------------


def _sup_row_abs(probe: MatrixProbe, policy: TruncationPolicy, columns: int) -> Verdict:
    return check_bounded(probe.abs_row_sums, policy)


def _row_abs_null(probe, policy, columns) -> Verdict:
    return check_null(probe.abs_row_sums, policy)


def _row_sums_converge(probe, policy, columns) -> Verdict:
    return check_convergent(probe.row_sums, policy)


def _columns(check, probe, policy, columns) -> Verdict:
    per = {k: check(lambda n, k=k: probe.column(k, n), policy) for k in range(1, columns + 1)}
    return combine(per.values(), policy, columns=per)


def _columns_converge(probe, policy, columns) -> Verdict:
    return _columns(check_convergent, probe, policy, columns)


def _columns_null(probe, policy, columns) -> Verdict:
    return _columns(check_null, probe, policy, columns)


def _abs_columns_converge(probe, policy, columns) -> Verdict:
    def check(values, pol):
        return check_convergent(lambda n: [abs(v) for v in values(n)], pol)

    return _columns(check, probe, policy, columns)


def _best_subset(rows: list) -> tuple:
    """Exhaustive ``max_K sum_k |sum_{n in K} a_nk|`` over subsets of the given rows."""
    width = max((s + len(v) - 1 for s, v in rows if v), default=0)
    if width == 0:
        return 0, ()
    dense = []
    for s, v in rows:
        line = [0.0] * width
        for k, x in enumerate(v, s):
            line[k - 1] = float(x)
        dense.append(line)
    colsum = [0.0] * width
    best, best_set = 0.0, 0
    mask = 0
    # Gray-code walk toggles one row per step.
    for i in range(1, 1 << len(rows)):
        bit = (i & -i).bit_length() - 1
        mask ^= 1 << bit
        sign = 1.0 if mask >> bit & 1 else -1.0
        line = dense[bit]
        for k in range(width):
            colsum[k] += sign * line[k]
        total = sum(map(abs, colsum))
        if total > best:
            best, best_set = total, mask
    return best, tuple(j + 1 for j in range(len(rows)) if best_set >> j & 1)


EXHAUSTIVE_ROWS = 12


def _subset_sums(probe: MatrixProbe, policy: TruncationPolicy, columns: int) -> Verdict:
    """``sup_K sum_k |sum_{n in K} a_nk| < inf`` over finite row sets K.

    Bracketed between a lower bound (exhaustive search over subsets of the
    first EXHAUSTIVE_ROWS rows, the prefix sets ``{1..n}`` and single rows)
    and the upper bound ``sum_n sum_k |a_nk|``. Holds when the upper bound
    is finite, Fails when the lower bound diverges.
    """
    N = policy.cutoff
    rows = probe.rows(N)
    exhaustive, exhaustive_set = _best_subset(rows[: min(EXHAUSTIVE_ROWS, N)])
    colsum: dict[int, float] = {}
    prefix_total = 0.0
    upper, lower = [], []
    total_abs, row_max = 0.0, 0.0
    for start, vals in rows:
        row_abs = 0.0
        for k, v in enumerate(vals, start):
            v = float(v)
            old = colsum.get(k, 0.0)
            colsum[k] = old + v
            prefix_total += abs(old + v) - abs(old)
            row_abs += abs(v)
        total_abs += row_abs
        row_max = max(row_max, row_abs)
        upper.append(total_abs)
        lower.append(max(exhaustive, prefix_total, row_max))
    up = check_bounded(lambda n: upper[:n], policy)
    low = check_bounded(lambda n: lower[:n], policy)
    witness = {
        "exhaustive_rows": min(EXHAUSTIVE_ROWS, N),
        "exhaustive_value": exhaustive,
        "exhaustive_set": list(exhaustive_set),
        "upper_bound": up.witness.get("running_sup"),
        "lower_bound": low.witness.get("running_sup"),
    }
    if up.holds:
        return Verdict(Status.HOLDS, witness, policy.tol, policy.ladder)
    if low.fails:
        witness.update(index=low.witness.get("index"), value=low.witness.get("value"))
        return Verdict(Status.FAILS, witness, policy.tol, policy.ladder)
    return Verdict(Status.INCONCLUSIVE, witness, policy.tol, policy.ladder)


@dataclass(frozen=True)
class ClassCondition:
    """A named row/column condition evaluated on a :class:`MatrixProbe`."""

    name: str
    description: str
    check: Callable[[MatrixProbe, TruncationPolicy, int], Verdict] = field(repr=False)

    def evaluate(self, probe: MatrixProbe, policy: TruncationPolicy, columns: int = 8) -> Verdict:
        return self.check(probe, policy, columns)


SUP_ROW_ABS = ClassCondition("sup_row_abs_sum", "sup_n sum_k |a_nk| < inf", _sup_row_abs)
ROW_ABS_NULL = ClassCondition("row_abs_sum_to_zero", "lim_n sum_k |a_nk| = 0", _row_abs_null)
COLUMNS_CONVERGE = ClassCondition("column_limits_exist", "lim_n a_nk exists for each k", _columns_converge)
COLUMNS_NULL = ClassCondition("column_limits_zero", "lim_n a_nk = 0 for each k", _columns_null)
ROW_SUMS_CONVERGE = ClassCondition("row_sums_converge", "lim_n sum_k a_nk exists", _row_sums_converge)
SUBSET_SUMS = ClassCondition(
    "sup_subset_column_sums", "sup_K sum_k |sum_{n in K} a_nk| < inf", _subset_sums
)


@dataclass(frozen=True)
class MatrixClass:
    """The class ``(source : target)`` with its characterizing conditions.

    ``nonnegative_only`` marks characterizations stated for matrices of
    non-negative entries; on other matrices the check reports
    Inconclusive instead of applying them.
    """

    source: str
    target: str
    conditions: tuple
    nonnegative_only: bool = False

    @property
    def label(self) -> str:
        return f"{self.source}:{self.target}"


CLASS_TABLE: dict[tuple, MatrixClass] = {
    ("linf", "linf"): MatrixClass("linf", "linf", (SUP_ROW_ABS,)),
    ("c", "linf"): MatrixClass("c", "linf", (SUP_ROW_ABS,)),
    ("c0", "linf"): MatrixClass("c0", "linf", (SUP_ROW_ABS,)),
    ("linf", "c0"): MatrixClass("linf", "c0", (ROW_ABS_NULL,)),
    ("c0", "c"): MatrixClass("c0", "c", (SUP_ROW_ABS, COLUMNS_CONVERGE)),
    ("c0", "c0"): MatrixClass("c0", "c0", (SUP_ROW_ABS, COLUMNS_NULL)),
    ("c", "c"): MatrixClass("c", "c", (SUP_ROW_ABS, COLUMNS_NULL), nonnegative_only=True),
    ("c0", "l1"): MatrixClass("c0", "l1", (SUBSET_SUMS,), nonnegative_only=True),
}


def matrix_class(spec) -> MatrixClass:
    """Look up ``"linf:linf"``-style labels or ``(source, target)`` pairs."""
    if isinstance(spec, MatrixClass):
        return spec
    if isinstance(spec, str):
        source, sep, target = spec.partition(":")
        if not sep:
            raise UnknownClass(f"class label must look like 'source:target', got {spec!r}")
        key = (source.strip(), target.strip())
    else:
        key = tuple(spec)
    try:
        return CLASS_TABLE[key]
    except KeyError:
        known = ", ".join(f"{s}:{t}" for s, t in CLASS_TABLE)
        raise UnknownClass(f"no characterization for {key[0]}:{key[1]}; known classes: {known}") from None


@dataclass
class ClassReport:
    matrix: str
    matrix_class: MatrixClass
    conditions: dict
    overall: Verdict
    note: str | None = None

    @property
    def status(self) -> Status:
        return self.overall.status

    def to_dict(self) -> dict:
        out = {
            "matrix": self.matrix,
            "class": self.matrix_class.label,
            "status": self.status.value,
            "conditions": [
                {"condition": name, **v.to_dict()} for name, v in self.conditions.items()
            ],
        }
        if self.note:
            out["note"] = self.note
        return out


def _matrix_policy(policy: TruncationPolicy) -> TruncationPolicy:
    # Row evaluation is quadratic in the cutoff; never auto-extend here.
    return policy.with_max_cutoff(None)


def check_class(
    A: InfiniteMatrix, cls, policy: TruncationPolicy = DEFAULT_POLICY, columns: int = 8
) -> ClassReport:
    """Evaluate every tabulated condition of ``cls`` on ``A``."""
    cls = matrix_class(cls)
    policy = _matrix_policy(policy)
    probe = MatrixProbe(A)
    if cls.nonnegative_only:
        low = probe.min_entry(policy.cutoff)
        if low < 0:
            witness = {"reason": "characterization stated for non-negative matrices", "min_entry": low}
            skipped = Verdict(Status.INCONCLUSIVE, witness, policy.tol, policy.ladder)
            return ClassReport(
                A.name,
                cls,
                {c.name: skipped for c in cls.conditions},
                skipped,
                note=f"negative entry {float(low):.4g} found; conditions not applicable",
            )
    results = {c.name: c.evaluate(probe, policy, columns) for c in cls.conditions}
    return ClassReport(A.name, cls, results, combine(results.values(), policy))


def _verdict_over_samples(results: list, policy: TruncationPolicy) -> Verdict:
    detail = [{"sample": label, "status": v.status.value} for label, v in results]
    overall = combine((v for _, v in results), policy, samples=detail)
    if overall.fails:
        label, bad = next((lab, v) for lab, v in results if v.fails)
        overall.witness.update(counterexample=label, index=bad.witness.get("index"), value=bad.witness.get("value"))
    return overall


def class_oracle(
    A: InfiniteMatrix, cls, samples: Iterable | None = None, policy: TruncationPolicy = DEFAULT_POLICY
) -> Verdict:
    """Apply ``A`` to members of the source space and test each image.

    ``samples`` is an iterable of ``(label, sequence)``; by default the
    standard corpus for the source space.
    """
    from .corpus import space_samples

    cls = matrix_class(cls)
    policy = _matrix_policy(policy)
    if samples is None:
        samples = space_samples(cls.source)
    results = [(label, in_space(image(A, x), cls.target, policy)) for label, x in samples]
    return _verdict_over_samples(results, policy)


def compare(oracle: Verdict, conditions: Verdict, context: dict | None = None) -> dict | None:
    """Finding record if the oracle refutes conditions that claim to hold."""
    if oracle.fails and conditions.holds:
        return {
            "finding": "oracle counterexample contradicts conditions",
            "context": context or {},
            "oracle": oracle.to_dict(),
            "conditions": conditions.to_dict(),
        }
    return None


# -- duals --------------------------------------------------------------


def _diag(a: FuzzySequence, weight: Callable[[int], Number], name: str) -> InfiniteMatrix:
    return diagonal(
        FuzzySequence(
            lambda n: weight(n) * a.center(n),
            kind=name,
            bulk=lambda N: [weight(n) * c for n, c in enumerate(a.centers(N), 1)],
            exact=a.exact,
        ),
        name,
    )


def _weights(a: FuzzySequence):
    one = Fraction(1) if a.exact else 1.0
    return (lambda n: one / n), (lambda n: n * one)


CONDITION_SETS = ("d1", "d2", "d3", "d4", "d5", "d6")


def condition_set(name: str, a, policy: TruncationPolicy = DEFAULT_POLICY, columns: int = 8) -> Verdict:
    """Evaluate one of the multiplier condition sets d1..d6 on ``a``.

    d1 / d2: subset-sum condition on ``diag(a_n / n)`` / ``diag(n a_n)``;
    d3 / d4: bounded absolute row sums / convergent absolute columns of G;
    d5 / d6: the same for H.
    """
    a = _as_sequence(a)
    policy = _matrix_policy(policy)
    inv, ident = _weights(a)
    if name == "d1":
        return _subset_sums(MatrixProbe(_diag(a, inv, "a/n")), policy, columns)
    if name == "d2":
        return _subset_sums(MatrixProbe(_diag(a, ident, "n*a")), policy, columns)
    if name in ("d3", "d4"):
        probe = MatrixProbe(build_G(a))
    elif name in ("d5", "d6"):
        probe = MatrixProbe(build_H(a))
    else:
        raise DomainError(f"unknown condition set {name!r}; expected one of {CONDITION_SETS}")
    if name in ("d3", "d5"):
        return _sup_row_abs(probe, policy, columns)
    return _abs_columns_converge(probe, policy, columns)


# Condition sets per (kind, transform matrix). The alpha pairing follows the
# stated order (integrated -> d1, differentiated -> d2); the swapped
# pairing is reported alongside.
DUAL_CONDITIONS = {
    ("alpha_r", "omega"): ("d1",),
    ("alpha_r", "gamma"): ("d2",),
    ("beta_r", "omega"): ("d3", "d4"),
    ("beta_r", "gamma"): ("d5", "d6"),
    ("gamma_r", "omega"): ("d3",),
    ("gamma_r", "gamma"): ("d5",),
}
_SWAPPED_ALPHA = {"omega": ("d2",), "gamma": ("d1",)}


@dataclass
class DualReport:
    a: str
    space: DomainSpace
    kind: DualKind
    conditions: dict
    verdict: Verdict
    swapped_pairing: dict | None = None
    inverse_route: Verdict | None = None

    @property
    def status(self) -> Status:
        return self.verdict.status

    def to_dict(self) -> dict:
        out = {
            "a": self.a,
            "space": self.space.name,
            "kind": self.kind.value,
            "status": self.status.value,
            "conditions": [{"condition": k, **v.to_dict()} for k, v in self.conditions.items()],
        }
        if self.swapped_pairing is not None:
            out["swapped_pairing"] = [
                {"condition": k, **v.to_dict()} for k, v in self.swapped_pairing.items()
            ]
        if self.inverse_route is not None:
            out["inverse_route"] = self.inverse_route.to_dict()
            if self.verdict.holds and self.inverse_route.fails:
                out["finding"] = "condition sets hold but the inverse-matrix characterization fails"
        return out


def _inverse_matrix(space: DomainSpace, exact: bool) -> InfiniteMatrix:
    return omega_inv(exact) if space.matrix == "omega" else gamma_inv(exact)


def _inverse_route(a: FuzzySequence, space: DomainSpace, kind: DualKind, policy, columns) -> Verdict:
    """Classical route: rewrite ``a x`` through ``y = M x`` and test the matrix class."""
    V = _inverse_matrix(space, a.exact)
    if kind is DualKind.ALPHA:
        probe = MatrixProbe(compose(diagonal(a), V))
        return _subset_sums(probe, policy, columns)
    probe = MatrixProbe(_f_matrix(a, V))
    if kind is DualKind.GAMMA:
        return _sup_row_abs(probe, policy, columns)
    parts = [_sup_row_abs(probe, policy, columns), _columns_converge(probe, policy, columns)]
    if space.base == "c":
        parts.append(_row_sums_converge(probe, policy, columns))
    elif space.base == "linf":
        skipped = {"reason": "uniform column convergence over linf is not evaluated"}
        parts.append(Verdict(Status.INCONCLUSIVE, skipped, policy.tol, policy.ladder))
    return combine(parts, policy)


def dual_membership(
    a,
    space: DomainSpace,
    kind,
    policy: TruncationPolicy = DEFAULT_POLICY,
    columns: int = 8,
    label: str | None = None,
) -> DualReport:
    """Decide ``a`` in the alpha/beta/gamma real dual of ``space`` via d1..d6."""
    a = _as_sequence(a)
    kind = DualKind(kind)
    policy = _matrix_policy(policy)
    names = DUAL_CONDITIONS[(kind.value, space.matrix)]
    conds = {n: condition_set(n, a, policy, columns) for n in names}
    verdict = combine(conds.values(), policy)
    swapped = None
    if kind is DualKind.ALPHA:
        swapped = {n: condition_set(n, a, policy, columns) for n in _SWAPPED_ALPHA[space.matrix]}
    inverse = _inverse_route(a, space, kind, policy, columns)
    return DualReport(label or a.kind, space, kind, conds, verdict, swapped, inverse)


def dual_oracle(
    a,
    space: DomainSpace,
    kind,
    samples: Iterable | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
    transform_mode: str = "raw",
) -> Verdict:
    """Test ``(a_k x_k)`` against the dual's target space for sample members ``x``.

    Without explicit ``samples`` the corpus comes from
    :func:`~fuzzyseq.corpus.domain_samples` for the given transform reading.
    """
    from .corpus import domain_samples

    a = _as_sequence(a)
    kind = DualKind(kind)
    policy = _matrix_policy(policy)
    if samples is None:
        samples = domain_samples(space, transform_mode)
    results = []
    for label, x in samples:
        prod = FuzzySequence(
            lambda k, x=x: a.center(k) * x.center(k),
            x.spreads,
            kind="product",
            bulk=lambda n, x=x: [_safe_mul(p, q) for p, q in zip(a.centers(n), x.centers(n))],
            exact=a.exact and x.exact,
        )
        results.append((label, in_space(prod, kind.target, policy)))
    return _verdict_over_samples(results, policy)


def _safe_mul(p, q):
    # inf * 0 would poison the series with nan; an exactly zero factor wins.
    if q == 0 or p == 0:
        return 0
    return p * q


# -- transfer identities ------------------------------------------------

# Source forms: P acting on a domain. Target forms: P mapping into one.
THEOREMS = ("omega-source", "gamma-source", "omega-target", "gamma-target")


@dataclass
class TransferReport:
    theorem: str
    n: int
    lhs: list
    rhs: list
    residual: float
    tol: float
    swapped_residual: float | None = None
    factorization_residual: float | None = None
    row_l1: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.residual <= self.tol

    @property
    def status(self) -> Status:
        return Status.HOLDS if self.holds else Status.FAILS

    def to_dict(self) -> dict:
        return _jsonable(
            {
                "theorem": self.theorem,
                "n": self.n,
                "status": self.status.value,
                "residual": self.residual,
                "tol": self.tol,
                "swapped_residual": self.swapped_residual,
                "factorization_residual": self.factorization_residual,
                "row_l1": self.row_l1,
                "lhs": self.lhs,
                "rhs": self.rhs,
            }
        )


def _residual(xs, ys) -> float:
    return max((float(abs(x - y)) for x, y in zip(xs, ys)), default=0.0)


def transfer_check(P: InfiniteMatrix, theorem: str, x: FuzzySequence, n: int, tol: float | None = None) -> TransferReport:
    """Two-sided evaluation of the identity behind a transfer theorem, rows ``1..n``.

    ``omega-source``: ``R = tilde(P)`` and ``z = omega x`` give
    ``sum_i r_mi z_i = sum_i p_mi x_i``; additionally ``R omega = P`` on the
    leading block.
    ``gamma-source``: the same with ``hat`` and ``gamma``.
    ``omega-target``: ``Lambda = lambda(P)`` gives ``Lambda x = omega (P x)``.
    ``gamma-target``: ``Sigma = sigma(P)`` gives ``Sigma x = gamma (P x)``.

    For the target forms, ``swapped_residual`` measures the same identity
    with omega and gamma exchanged on the right.
    """
    name = str(theorem)
    if name not in THEOREMS:
        raise DomainError(f"unknown transfer identity {theorem!r}; expected one of {list(THEOREMS)}")
    if n < 1:
        raise DomainError("n must be >= 1")
    exact = P.exact and x.exact
    if tol is None:
        tol = 0.0 if exact else 1e-10
    M, other = (omega(exact), gamma(exact)) if name.startswith("omega") else (gamma(exact), omega(exact))
    rows = range(1, n + 1)
    swapped = factorization = None
    row_l1 = {}
    if name.endswith("source"):
        R = derived_tilde(P) if name == "omega-source" else derived_hat(P)
        z = image(M, x)
        lhs = [apply(R, z, m).center for m in rows]
        rhs = [apply(P, x, m).center for m in rows]
        RM = truncate(compose(R, M), n)
        PB = truncate(P, n)
        factorization = max(float(abs(u - v)) for ru, rv in zip(RM, PB) for u, v in zip(ru, rv))
        row_l1 = {
            "p": float(sum(map(abs, P.row(n)[1]))),
            "r": float(sum(map(abs, R.row(n)[1]))),
        }
    else:
        L = derived_lambda(P) if name == "omega-target" else derived_sigma(P)
        Px = image(P, x)
        lhs = [apply(L, x, m).center for m in rows]
        rhs = [apply(M, Px, m).center for m in rows]
        swapped = _residual(lhs, [apply(other, Px, m).center for m in rows])
    return TransferReport(name, n, lhs, rhs, _residual(lhs, rhs), tol, swapped, factorization, row_l1)
