"""Standard sample sets used by the oracles, the property tests and the CLI.

Every entry is a ``(label, object)`` pair so reports can name the sample
that produced a counterexample.
"""

from __future__ import annotations

from fractions import Fraction

from .domains import DomainSpace
from .fuzzy_core import SpreadPair
from .inf_matrix import InfiniteMatrix, banded, cesaro, gamma, gamma_inv, identity, image, omega, omega_inv, zero
from .seq_spaces import FuzzySequence

__all__ = [
    "standard_sequences",
    "space_samples",
    "domain_samples",
    "dual_test_sequences",
    "matrix_corpus",
]


def standard_sequences(exact: bool = False) -> list[tuple[str, FuzzySequence]]:
    """Twenty generator sequences covering null, convergent, bounded and unbounded behavior."""
    S = FuzzySequence
    wide = SpreadPair(1, 2)
    half = SpreadPair(Fraction(1, 2), Fraction(1, 2)) if exact else SpreadPair(0.5, 0.5)
    return [
        ("zero", S.zero(exact=exact)),
        ("constant 5", S.constant(5, exact=exact)),
        ("constant -2.5 (1,2)", S.constant("-5/2", wide, exact=exact)),
        ("geometric 1/2", S.geometric("1/2", exact=exact)),
        ("geometric -1/2", S.geometric("-1/2", exact=exact)),
        ("geometric 1", S.geometric(1, exact=exact)),
        ("geometric -1", S.geometric(-1, exact=exact)),
        ("geometric 11/10", S.geometric("11/10", exact=exact)),
        ("harmonic", S.harmonic(exact=exact)),
        ("harmonic (1,2)", S.harmonic(wide, exact=exact)),
        ("k^-2", S.power(-2, exact=exact)),
        ("k^-1/2", S.power(-0.5)),
        ("k", S.power(1, exact=exact)),
        ("1 - k", S.polynomial([1, -1], exact=exact)),
        ("k^2", S.polynomial([0, 0, 1], exact=exact)),
        ("e1", S.explicit([1], exact=exact)),
        ("explicit (1/2,1/2)", S.explicit([3, -1, 4, 1, -5], half, exact=exact)),
        ("(-1)^k/k", S.expression("(-1)**k / k", exact=exact)),
        ("1 + 1/k", S.expression("1 + 1/k", exact=exact)),
        ("sin k", S.expression("sin(k)")),
    ]


_NULL = [
    ("zero", lambda: FuzzySequence.zero()),
    ("1/k", lambda: FuzzySequence.harmonic()),
    ("1/k^2", lambda: FuzzySequence.power(-2)),
    ("(-1)^k/k", lambda: FuzzySequence.expression("(-1)**k / k")),
    ("1/sqrt k", lambda: FuzzySequence.power(-0.5)),
    ("2^-k", lambda: FuzzySequence.geometric(0.5)),
    ("e1", lambda: FuzzySequence.explicit([1])),
    ("1/log(k+1)", lambda: FuzzySequence.expression("1 / log(k + 1)")),
    ("(-1/2)^k", lambda: FuzzySequence.geometric(-0.5)),
    ("sin(k)/k", lambda: FuzzySequence.expression("sin(k) / k")),
]

_CONVERGENT = [
    ("ones", lambda: FuzzySequence.constant(1)),
    ("1 + 1/k", lambda: FuzzySequence.expression("1 + 1/k")),
    ("2 - 2^-k", lambda: FuzzySequence.expression("2 - 0.5**k")),
    ("-3 + (-1)^k/k", lambda: FuzzySequence.expression("-3 + (-1)**k / k")),
    ("k/(k+1)", lambda: FuzzySequence.expression("k / (k + 1)")),
    ("1/k", lambda: FuzzySequence.harmonic()),
    ("zero", lambda: FuzzySequence.zero()),
    ("1 + 1/sqrt k", lambda: FuzzySequence.expression("1 + 1/sqrt(k)")),
    ("e1", lambda: FuzzySequence.explicit([1])),
    ("1/2 + 1/k^2", lambda: FuzzySequence.expression("0.5 + 1/k**2")),
]

_BOUNDED = [
    ("ones", lambda: FuzzySequence.constant(1)),
    ("(-1)^k", lambda: FuzzySequence.geometric(-1)),
    ("sin k", lambda: FuzzySequence.expression("sin(k)")),
    ("1/k", lambda: FuzzySequence.harmonic()),
    ("zero", lambda: FuzzySequence.zero()),
    ("k mod 3", lambda: FuzzySequence.expression("k % 3")),
    ("(-1)^k + 1/k", lambda: FuzzySequence.expression("(-1)**k + 1/k")),
    ("cos k", lambda: FuzzySequence.expression("cos(k)")),
    ("1 + 1/k", lambda: FuzzySequence.expression("1 + 1/k")),
    ("e1", lambda: FuzzySequence.explicit([1])),
]

_SAMPLES = {"c0": _NULL, "c": _CONVERGENT, "linf": _BOUNDED}


def space_samples(space: str) -> list[tuple[str, FuzzySequence]]:
    """Ten crisp members of ``linf``, ``c`` or ``c0``."""
    try:
        table = _SAMPLES[space]
    except KeyError:
        raise KeyError(f"no sample corpus for space {space!r}; expected one of {sorted(_SAMPLES)}") from None
    return [(label, make()) for label, make in table]


_SUMMABLE = [
    ("zero", "0"),
    ("2^-k", "0.5**k"),
    ("1/k^2", "1 / k**2"),
    ("(-1)^k/k^2", "(-1)**k / k**2"),
    ("1/k^1.5", "k**-1.5"),
    ("1/(k(k+1))", "1 / (k * (k + 1))"),
    ("e1", None),
    ("(-1/2)^k", "(-0.5)**k"),
    ("1/(k log^2(k+1))", "1 / (k * log(k + 1)**2)"),
    ("1/k^3", "k**-3"),
]


def domain_samples(space: DomainSpace, transform_mode: str = "raw") -> list[tuple[str, FuzzySequence]]:
    """Members of a domain space under the raw or the absolute transform.

    Raw: with ``y`` in the base space, ``x = M^{-1} y`` has ``M x = y``.
    Abs: the transform ``sum_{k<=n} |w_k x_k|`` is non-decreasing, so it
    is null only for ``x = 0`` and bounded exactly when it converges. The
    members are ``x_k = d_k / w_k`` for summable ``d``.
    """
    if transform_mode == "raw":
        inv = omega_inv() if space.matrix == "omega" else gamma_inv()
        return [(f"{space.matrix}^-1({label})", image(inv, y)) for label, y in space_samples(space.base)]
    if transform_mode != "abs":
        raise ValueError(f"transform mode must be 'raw' or 'abs', got {transform_mode!r}")
    if space.base == "c0":
        return [("zero", FuzzySequence.zero())]
    scale = "/ k" if space.matrix == "omega" else "* k"
    # e1 has weight 1 at k = 1 under both transforms
    return [
        (f"({label}) {scale}", FuzzySequence.expression(f"({expr}) {scale}") if expr else FuzzySequence.explicit([1]))
        for label, expr in _SUMMABLE
    ]


def dual_test_sequences() -> list[tuple[str, FuzzySequence]]:
    """Multiplier sequences for the dual cross-check."""
    S = FuzzySequence
    return [
        ("zero", S.zero()),
        ("ones", S.constant(1)),
        ("n", S.power(1)),
        ("2^n", S.geometric(2)),
        ("1/n", S.harmonic()),
        ("1/n^2", S.power(-2)),
        ("(-1)^n", S.geometric(-1)),
        ("1/n^3", S.power(-3)),
        ("n^-1/2", S.power(-0.5)),
        ("2^-n", S.geometric(0.5)),
    ]


def matrix_corpus(seed: int = 0) -> list[tuple[str, InfiniteMatrix]]:
    return [
        ("identity", identity()),
        ("cesaro", cesaro()),
        ("omega", omega()),
        ("gamma", gamma()),
        ("zero", zero()),
        ("banded", banded(width=4, seed=seed)),
    ]
