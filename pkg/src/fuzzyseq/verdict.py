"""Three-valued verdicts for infinitary conditions checked at finite truncation.

Every condition of the form ``sup_k f(k) < inf``, ``lim_k f(k) = 0`` or
``lim_k f(k)`` exists is decided on a ladder of cutoffs ``N_1 < N_2 < ...``.
The evidence used is the behaviour of the last ``stabilization_window``
ladder steps:

* increments of the running sup, for boundedness;
* the sup of ``f`` over each ladder block ``(N_{i-1}, N_i]``, for null limits;
* the oscillation of ``f`` over two adjacent blocks, for convergence.

A quantity that is below ``tol`` or shrinks geometrically along the
ladder counts as settled (Holds). One that stays above ``tol`` without
shrinking counts as a divergence witness (Fails). Anything in between
is Inconclusive.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from .errors import DomainError

__all__ = [
    "Status",
    "TruncationPolicy",
    "Verdict",
    "DEFAULT_POLICY",
    "combine",
    "check_bounded",
    "check_null",
    "check_convergent",
]

# Ratio of consecutive ladder measurements below which a quantity counts
# as geometrically shrinking, and above which it counts as not shrinking.
DECAY_RATIO = 0.95
FLAT_RATIO = 0.99


class Status(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TruncationPolicy:
    """Ladder of cutoffs plus the thresholds used to read it.

    ``max_cutoff`` enables automatic doubling of the ladder while the
    verdict is Inconclusive; ``None`` disables it.
    """

    ladder: tuple = (16, 32, 64, 128, 256, 512, 1024)
    tol: float = 1e-8
    stabilization_window: int = 3
    max_cutoff: int | None = None

    def __post_init__(self):
        ladder = tuple(int(n) for n in self.ladder)
        object.__setattr__(self, "ladder", ladder)
        if not ladder or ladder[0] < 1:
            raise DomainError("ladder must be a non-empty list of positive cutoffs")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise DomainError(f"ladder must be strictly increasing: {ladder}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.stabilization_window < 1:
            raise DomainError("stabilization_window must be at least 1")
        if len(ladder) < self.stabilization_window + 2:
            raise DomainError(
                f"ladder needs at least {self.stabilization_window + 2} cutoffs "
                f"for a window of {self.stabilization_window}"
            )
        if self.max_cutoff is not None and self.max_cutoff < ladder[-1]:
            raise DomainError("max_cutoff must not be below the last ladder cutoff")

    @property
    def cutoff(self) -> int:
        return self.ladder[-1]

    def with_max_cutoff(self, max_cutoff: int | None) -> TruncationPolicy:
        if max_cutoff is not None:
            max_cutoff = max(max_cutoff, self.cutoff)
        return replace(self, max_cutoff=max_cutoff)

    def doubled(self) -> TruncationPolicy:
        return replace(self, ladder=self.ladder + (2 * self.cutoff,))

    def can_extend(self) -> bool:
        return self.max_cutoff is not None and 2 * self.cutoff <= self.max_cutoff

    def to_dict(self) -> dict:
        return {
            "ladder": list(self.ladder),
            "tol": self.tol,
            "window": self.stabilization_window,
            "max_cutoff": self.max_cutoff,
        }


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class Verdict:
    """Outcome of one truncated condition with its evidence trace."""

    status: Status
    witness: dict = field(default_factory=dict)
    tol: float = DEFAULT_POLICY.tol
    ladder: tuple = DEFAULT_POLICY.ladder

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "evidence": {"ladder": list(self.ladder), "tol": self.tol, "witness": _jsonable(self.witness)},
        }


def _jsonable(obj):
    from fractions import Fraction

    from .fuzzy_core import format_number

    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Verdict):
        return obj.to_dict()
    if isinstance(obj, Status):
        return obj.value
    if isinstance(obj, Fraction):
        return format_number(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


def combine(verdicts: Iterable[Verdict], policy: TruncationPolicy = DEFAULT_POLICY, **witness) -> Verdict:
    """Conjunction: any Fails wins, then any Inconclusive, else Holds."""
    verdicts = list(verdicts)
    statuses = {v.status for v in verdicts}
    if Status.FAILS in statuses:
        status = Status.FAILS
    elif Status.INCONCLUSIVE in statuses:
        status = Status.INCONCLUSIVE
    else:
        status = Status.HOLDS
    ladder = max((v.ladder for v in verdicts), key=len, default=policy.ladder)
    return Verdict(status, witness, policy.tol, ladder)


ValuesFn = Callable[[int], Sequence]


def _finite(x) -> bool:
    return math.isfinite(float(x))


def _first_nonfinite(values: Sequence) -> int | None:
    for i, v in enumerate(values):
        if not _finite(v):
            return i
    return None


def _nonfinite_verdict(values, idx, policy) -> Verdict:
    return Verdict(
        Status.FAILS,
        {"index": idx + 1, "value": float(values[idx]), "reason": "non-finite term"},
        policy.tol,
        policy.ladder,
    )


def _trend(measures: Sequence[float], floor: float) -> str:
    """Classify the tail of a non-negative measurement series.

    Returns ``"small"`` if every windowed value is below ``floor``,
    ``"decaying"`` if each nonzero value is at most DECAY_RATIO times the
    last nonzero value before it (zeros in between are allowed, as in the
    increments of a running sup), ``"flat"`` if every value exceeds
    ``floor`` and no ratio drops below FLAT_RATIO, otherwise ``"mixed"``.
    """
    if all(m <= floor for m in measures[1:]):
        return "small"
    if measures[0] > 0:
        ref, decaying = measures[0], True
        for m in measures[1:]:
            if m == 0:
                continue
            if m > DECAY_RATIO * ref:
                decaying = False
                break
            ref = m
        if decaying:
            return "decaying"
    ratios = [cur / prev if prev else (0.0 if cur == 0 else math.inf) for prev, cur in zip(measures, measures[1:])]
    if all(m > floor for m in measures[1:]) and all(r >= FLAT_RATIO for r in ratios):
        return "flat"
    return "mixed"


def _extend(evaluate: Callable[[TruncationPolicy], Verdict], policy: TruncationPolicy) -> Verdict:
    verdict = evaluate(policy)
    while verdict.status is Status.INCONCLUSIVE and policy.can_extend():
        policy = policy.doubled()
        verdict = evaluate(policy)
    return verdict


def _growth_exponent(n0: int, m0: float, n1: int, m1: float) -> float | None:
    if m0 > 0 and m1 > 0 and n1 > n0:
        return math.log(m1 / m0) / math.log(n1 / n0)
    return None


def check_bounded(values: ValuesFn, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    """Decide ``sup_k |f(k)| < inf`` from the running sup along the ladder.

    ``values(N)`` must return ``[f(1), ..., f(N)]``. The witness always
    holds the running sup at each cutoff under ``"running_sup"``.
    """

    def evaluate(pol: TruncationPolicy) -> Verdict:
        vals = values(pol.cutoff)
        bad = _first_nonfinite(vals)
        if bad is not None:
            return _nonfinite_verdict(vals, bad, pol)
        running, argmax, best = [], 0, None
        start = 0
        for n in pol.ladder:
            for i in range(start, n):
                a = abs(vals[i])
                if best is None or a > best:
                    best, argmax = a, i + 1
            start = n
            running.append(best)
        w = pol.stabilization_window
        incs = [float(b - a) for a, b in zip(running, running[1:])][-(w + 1):]
        # Scale the floor by the sup before the window so fast growth
        # cannot hide below a floor proportional to itself.
        scale = max(1.0, float(abs(running[-(w + 2)])))
        trend = _trend(incs, pol.tol * scale)
        witness = {"running_sup": running, "argmax": argmax, "sup": running[-1]}
        if trend in ("small", "decaying"):
            if trend == "decaying" and incs[-2] > 0:
                r = incs[-1] / incs[-2]
                witness["tail_bound"] = incs[-1] * r / (1 - r)
            return Verdict(Status.HOLDS, witness, pol.tol, pol.ladder)
        if trend == "flat":
            witness["growth_exponent"] = _growth_exponent(
                pol.ladder[-2], float(running[-2]), pol.ladder[-1], float(running[-1])
            )
            witness["increments"] = incs
            witness["index"] = argmax
            witness["value"] = running[-1]
            return Verdict(Status.FAILS, witness, pol.tol, pol.ladder)
        witness["increments"] = incs
        return Verdict(Status.INCONCLUSIVE, witness, pol.tol, pol.ladder)

    return _extend(evaluate, policy)


def _block_bounds(ladder: Sequence[int]):
    prev = 0
    for n in ladder:
        yield prev, n
        prev = n


def check_null(values: ValuesFn, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    """Decide ``lim_k f(k) = 0`` from per-block sups of ``|f|``."""

    def evaluate(pol: TruncationPolicy) -> Verdict:
        vals = values(pol.cutoff)
        bad = _first_nonfinite(vals)
        if bad is not None:
            return _nonfinite_verdict(vals, bad, pol)
        block_sups, block_arg = [], []
        for lo, hi in _block_bounds(pol.ladder):
            seg = [abs(v) for v in vals[lo:hi]]
            m = max(seg)
            block_sups.append(m)
            block_arg.append(lo + seg.index(m) + 1)
        w = pol.stabilization_window
        tail = [float(m) for m in block_sups][-(w + 1):]
        trend = _trend(tail, pol.tol)
        witness = {"block_sup": block_sups}
        if trend in ("small", "decaying"):
            return Verdict(Status.HOLDS, witness, pol.tol, pol.ladder)
        if trend == "flat":
            witness["index"] = block_arg[-1]
            witness["value"] = block_sups[-1]
            return Verdict(Status.FAILS, witness, pol.tol, pol.ladder)
        return Verdict(Status.INCONCLUSIVE, witness, pol.tol, pol.ladder)

    return _extend(evaluate, policy)


def check_convergent(values: ValuesFn, policy: TruncationPolicy = DEFAULT_POLICY) -> Verdict:
    """Decide whether ``lim_k f(k)`` exists (Cauchy criterion).

    The measured quantity is the oscillation ``max - min`` of ``f`` over
    two adjacent ladder blocks. The limit estimate is the mean of the last
    block, reported as ``"limit"`` in the witness.
    """

    def evaluate(pol: TruncationPolicy) -> Verdict:
        vals = values(pol.cutoff)
        bad = _first_nonfinite(vals)
        if bad is not None:
            return _nonfinite_verdict(vals, bad, pol)
        bounds = list(_block_bounds(pol.ladder))
        osc, osc_idx = [], []
        for i, (lo, hi) in enumerate(bounds):
            lo2 = bounds[i - 1][0] if i else lo
            seg = vals[lo2:hi]
            top, bot = max(seg), min(seg)
            osc.append(top - bot)
            osc_idx.append((lo2 + seg.index(bot) + 1, lo2 + seg.index(top) + 1))
        lo, hi = bounds[-1]
        last = vals[lo:hi]
        limit = sum(last) / len(last)
        w = pol.stabilization_window
        tail = [float(o) for o in osc][-(w + 1):]
        lo0, hi0 = bounds[-(w + 2)]
        early = vals[lo0:hi0]
        scale = max(1.0, abs(float(sum(early) / len(early))))
        trend = _trend(tail, pol.tol * scale)
        # Oscillations shrinking by r per rung leave at most osc / (1 - r)
        # of movement, which bounds the distance of the estimate to the limit.
        err = float(osc[-1])
        if len(osc) > 1 and 0 < osc[-1] < osc[-2]:
            err /= 1 - float(osc[-1] / osc[-2])
        witness = {"oscillation": osc, "limit": limit, "limit_error": err}
        if trend in ("small", "decaying"):
            return Verdict(Status.HOLDS, witness, pol.tol, pol.ladder)
        if trend == "flat":
            i_lo, i_hi = osc_idx[-1]
            witness["index"] = i_hi
            witness["value"] = vals[i_hi - 1]
            witness["paired_index"] = i_lo
            witness["paired_value"] = vals[i_lo - 1]
            witness["growth_exponent"] = _growth_exponent(
                pol.ladder[-2], float(abs(vals[pol.ladder[-2] - 1])), pol.ladder[-1], float(abs(vals[-1]))
            )
            return Verdict(Status.FAILS, witness, pol.tol, pol.ladder)
        return Verdict(Status.INCONCLUSIVE, witness, pol.tol, pol.ladder)

    return _extend(evaluate, policy)
