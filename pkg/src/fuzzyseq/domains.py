"""Integrated and differentiated spaces: matrix domains of omega and gamma.

``[X(F)]_omega`` holds the sequences whose omega-transform lies in X(F),
``[X(F)]_gamma`` those whose gamma-transform does, for X in {linf, c, c0}.

Two transforms are available for each matrix:

* ``"abs"``: ``v^n = sum_{k<=n} |w_k u^k|`` with weights ``w_k = k``
  (omega) or ``1/k`` (gamma). This is the map used for the isometries
  :func:`phi` and :func:`psi` and is the default for norms.
* ``"raw"``: the plain matrix product ``(M u)^n``, which is what the set
  definition of the domain uses and the default for membership.

The two agree on sequences with non-negative centers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, SpreadMismatch
from .fuzzy_core import TriangularFuzzyNumber
from .inf_matrix import InfiniteMatrix, gamma, image, omega
from .seq_spaces import FuzzySequence, in_space, sup_norm
from .verdict import DEFAULT_POLICY, TruncationPolicy, Verdict

__all__ = [
    "DomainSpace",
    "TransformedSequence",
    "omega_transform",
    "gamma_transform",
    "phi",
    "psi",
    "transform",
    "in_domain",
    "domain_norm",
    "DOMAIN_SLOW_CUTOFF",
]

# Ladder ceiling used by in_domain while the verdict stays Inconclusive.
DOMAIN_SLOW_CUTOFF = 2**16

_MATRICES = ("omega", "gamma")
_BASES = ("linf", "c", "c0")
_PREFIX = {"omega": "int", "gamma": "diff"}


@dataclass(frozen=True)
class DomainSpace:
    """``[base(F)]_matrix`` for base in {linf, c, c0}, matrix in {omega, gamma}."""

    base: str
    matrix: str

    def __post_init__(self):
        if self.base not in _BASES:
            raise DomainError(f"domain base must be one of {_BASES}, got {self.base!r}")
        if self.matrix not in _MATRICES:
            raise DomainError(f"domain matrix must be one of {_MATRICES}, got {self.matrix!r}")

    @property
    def name(self) -> str:
        return f"{_PREFIX[self.matrix]}-{self.base}"

    @classmethod
    def parse(cls, name: str) -> DomainSpace:
        """Parse CLI names such as ``int-c0`` or ``diff-linf``."""
        prefix, _, base = name.partition("-")
        for matrix, p in _PREFIX.items():
            if prefix == p:
                return cls(base, matrix)
        raise DomainError(f"unknown domain space {name!r}; expected int-/diff- followed by {_BASES}")

    def transform_matrix(self, exact: bool = False) -> InfiniteMatrix:
        return omega(exact) if self.matrix == "omega" else gamma(exact)

    def __str__(self):
        return self.name


class TransformedSequence(FuzzySequence):
    """Prefix-sum transform of ``source`` with per-term weights.

    Centers are ``sum_{k<=n} w_k u^k``, or ``sum_{k<=n} |w_k u^k|`` when
    ``absolute`` is set.
    """

    def __init__(self, source: FuzzySequence, matrix: str, absolute: bool = True):
        if matrix not in _MATRICES:
            raise DomainError(f"transform matrix must be one of {_MATRICES}, got {matrix!r}")
        self.source = source
        self.matrix = matrix
        self.absolute = absolute
        exact = source.exact
        one = Fraction(1) if exact else 1.0

        def weight(k):
            return one * k if matrix == "omega" else one / k

        def bulk(n):
            out, acc = [], 0
            for k, c in enumerate(source.centers(n), 1):
                term = weight(k) * c
                acc = acc + (abs(term) if absolute else term)
                out.append(acc)
            return out

        super().__init__(
            lambda n: bulk(n)[-1],
            source.spreads,
            kind=f"{matrix}-{'abs' if absolute else 'raw'}-transform",
            bulk=bulk,
            exact=exact,
        )


def omega_transform(s: FuzzySequence, n: int) -> TriangularFuzzyNumber:
    """``n``-th term of ``sum_{k<=n} |k u^k|``."""
    return TransformedSequence(s, "omega").term(n)


def gamma_transform(s: FuzzySequence, n: int) -> TriangularFuzzyNumber:
    """``n``-th term of ``sum_{k<=n} |u^k / k|``."""
    return TransformedSequence(s, "gamma").term(n)


def phi(s: FuzzySequence) -> TransformedSequence:
    """Absolute omega-transform as a first-class sequence."""
    return TransformedSequence(s, "omega", absolute=True)


def psi(s: FuzzySequence) -> TransformedSequence:
    """Absolute gamma-transform as a first-class sequence."""
    return TransformedSequence(s, "gamma", absolute=True)


def transform(s: FuzzySequence, matrix: str, mode: str = "raw") -> TransformedSequence:
    if mode not in ("abs", "raw"):
        raise DomainError(f"transform mode must be 'abs' or 'raw', got {mode!r}")
    return TransformedSequence(s, matrix, absolute=(mode == "abs"))


def in_domain(
    s: FuzzySequence,
    space: DomainSpace,
    policy: TruncationPolicy = DEFAULT_POLICY,
    transform_mode: str = "raw",
) -> Verdict:
    """Transform ``s`` and test the result for membership in the base space.

    Slowly diverging transforms (harmonic sums) may leave the default ladder
    undecided, so the ladder is doubled up to ``DOMAIN_SLOW_CUTOFF`` while
    the verdict is Inconclusive unless the policy sets its own ceiling.
    """
    if policy.max_cutoff is None:
        policy = policy.with_max_cutoff(DOMAIN_SLOW_CUTOFF)
    return in_space(transform(s, space.matrix, transform_mode), space.base, policy)


def domain_norm(
    s: FuzzySequence,
    space: DomainSpace,
    against: FuzzySequence | None = None,
    policy: TruncationPolicy = DEFAULT_POLICY,
    transform_mode: str = "abs",
) -> tuple:
    """Sup-metric between the transforms of ``s`` and ``against``.

    The transforms are evaluated through the transform matrix itself
    (row-by-row products), independently of the prefix sums behind
    :func:`phi` / :func:`psi`. ``against`` defaults to the zero sequence.
    """
    if against is None:
        against = FuzzySequence.zero(s.spreads, exact=s.exact)
    elif against.spreads != s.spreads:
        raise SpreadMismatch(f"spread pairs differ: {s.spreads} vs {against.spreads}")
    if transform_mode not in ("abs", "raw"):
        raise DomainError(f"transform mode must be 'abs' or 'raw', got {transform_mode!r}")
    M = space.transform_matrix(exact=s.exact)

    def prepared(seq):
        if transform_mode == "abs":
            return seq.map_centers(abs, kind="abs")
        return seq

    value, verdict = sup_norm(image(M, prepared(s)), image(M, prepared(against)), policy)
    return value, verdict

