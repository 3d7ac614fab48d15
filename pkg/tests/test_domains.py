from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyseq.domains import (
    DomainSpace,
    TransformedSequence,
    domain_norm,
    gamma_transform,
    in_domain,
    omega_transform,
    phi,
    psi,
    transform,
)
from fuzzyseq.errors import DomainError, SpreadMismatch
from fuzzyseq.fuzzy_core import SpreadPair
from fuzzyseq.inf_matrix import gamma, image, omega
from fuzzyseq.seq_spaces import FuzzySequence as S
from fuzzyseq.seq_spaces import in_space, sup_norm
from fuzzyseq.verdict import Status, TruncationPolicy

S12 = SpreadPair(1, 2)
ALL_SPACES = [DomainSpace(b, m) for m in ("omega", "gamma") for b in ("linf", "c", "c0")]

fractions = st.fractions(-20, 20, max_denominator=12)


def test_transform_examples():
    ones = S.constant(1, exact=True)
    assert omega_transform(ones, 4).center == 10
    assert gamma_transform(ones, 4).center == Fr(25, 12)
    alt = S.geometric(-1, exact=True)
    # abs transform ignores the sign, raw one does not
    assert phi(alt).centers(4) == [1, 3, 6, 10]
    assert transform(alt, "omega", "raw").centers(4) == [-1, 1, -2, 2]
    assert psi(S.power(1, exact=True)).centers(3) == [1, 2, 3]


def test_transform_keeps_spreads_and_exactness():
    s = S.harmonic(S12, exact=True)
    t = phi(s)
    assert t.spreads == S12 and t.exact
    assert all(isinstance(c, Fr) for c in t.centers(8))


def test_transform_errors():
    with pytest.raises(DomainError):
        transform(S.zero(), "omega", "signed")
    with pytest.raises(DomainError):
        TransformedSequence(S.zero(), "cesaro")


def test_domain_space_parse_and_names():
    for space in ALL_SPACES:
        assert DomainSpace.parse(space.name) == space
        assert str(space) == space.name
    assert DomainSpace.parse("int-c0") == DomainSpace("c0", "omega")
    for bad in ("int-l1", "sum-c0", "c0", ""):
        with pytest.raises(DomainError):
            DomainSpace.parse(bad)


@settings(max_examples=60, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=30), st.sampled_from(["omega", "gamma"]))
def test_prefix_sums_match_matrix_product(xs, matrix):
    # Independent route: the row-by-row matrix product.
    s = S.explicit(xs, exact=True)
    M = omega(True) if matrix == "omega" else gamma(True)
    n = len(xs) + 3
    assert transform(s, matrix, "raw").centers(n) == image(M, s).centers(n)
    assert transform(s, matrix, "abs").centers(n) == image(M, s.map_centers(abs, "abs")).centers(n)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.fractions(0, 20, max_denominator=12), min_size=1, max_size=20),
    st.lists(st.fractions(0, 20, max_denominator=12), min_size=1, max_size=20),
    st.fractions(0, 5, max_denominator=7),
    st.sampled_from([phi, psi]),
)
def test_abs_transform_linear_on_nonnegative(xs, ys, c, T):
    s, r = S.explicit(xs, exact=True), S.explicit(ys, exact=True)
    n = max(len(xs), len(ys)) + 2
    lhs = T(c * s + r).centers(n)
    rhs = [c * a + b for a, b in zip(T(s).centers(n), T(r).centers(n))]
    assert lhs == rhs


def test_abs_transform_not_linear_with_signs():
    s, r = S.explicit([1], exact=True), S.explicit([-1], exact=True)
    assert phi(s + r).centers(1) == [0]
    assert phi(s).centers(1)[0] + phi(r).centers(1)[0] == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=25), st.sampled_from([phi, psi]))
def test_abs_transform_monotone(xs, T):
    cs = T(S.explicit(xs, exact=True)).centers(len(xs) + 5)
    assert all(a <= b for a, b in zip(cs, cs[1:]))
    assert cs[0] >= 0


@pytest.mark.parametrize("space", ALL_SPACES, ids=lambda s: s.name)
@pytest.mark.parametrize(
    "seq",
    [S.zero(), S.power(-3), S.geometric(0.5), S.expression("(-1)**k / k**2"), S.explicit([1, -2, 3])],
    ids=["zero", "k^-3", "2^-k", "(-1)^k/k^2", "finite"],
)
def test_isometry_norm_equality(space, seq):
    # Norm in the domain equals the sup norm of phi/psi, cutoff for cutoff.
    T = phi if space.matrix == "omega" else psi
    lhs, lv = domain_norm(seq, space)
    rhs, rv = sup_norm(T(seq))
    assert lv.status is rv.status
    if lv.holds:
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_isometry_exact():
    s = S.explicit([3, Fr(-1, 2), 4, 0, Fr(5, 3)], S12, exact=True)
    for space in (DomainSpace("linf", "omega"), DomainSpace("linf", "gamma")):
        T = phi if space.matrix == "omega" else psi
        value, verdict = domain_norm(s, space)
        assert verdict.holds
        assert value == sup_norm(T(s))[0]


def test_domain_norm_zero_is_spread_width():
    value, verdict = domain_norm(S.zero(S12), DomainSpace("linf", "omega"))
    assert verdict.holds and value == 2


def test_domain_norm_spread_mismatch():
    with pytest.raises(SpreadMismatch):
        domain_norm(S.zero(S12), DomainSpace("linf", "omega"), against=S.zero())


@pytest.mark.parametrize(
    "seq,space,expected",
    [
        (S.zero(), "int-c0", Status.HOLDS),
        (S.explicit([1, -1]), "int-c0", Status.FAILS),  # Omega x = 1, -1, -1, ...
        (S.explicit([1, Fr(-1, 2)]), "int-c0", Status.HOLDS),
        (S.power(-2), "int-linf", Status.FAILS),  # H_n growth
        (S.power(-3), "int-c", Status.HOLDS),
        (S.constant(1), "diff-linf", Status.FAILS),
        (S.power(1), "diff-linf", Status.FAILS),
        (S.geometric(-1), "diff-c", Status.HOLDS),  # alternating harmonic
        (S.power(-1), "diff-c", Status.HOLDS),
        (S.geometric(0.5), "diff-c0", Status.FAILS),
    ],
)
def test_in_domain_examples(seq, space, expected):
    assert in_domain(seq, DomainSpace.parse(space)).status is expected


def test_harmonic_growth_under_gamma_decided_by_extension():
    v = in_domain(S.constant(1), DomainSpace("linf", "gamma"))
    assert v.fails
    # with the ceiling at the default ladder top nothing extends
    short = TruncationPolicy(max_cutoff=1024)
    assert in_domain(S.constant(1), DomainSpace("linf", "gamma"), short).status in (Status.FAILS, Status.INCONCLUSIVE)


@pytest.mark.parametrize("space", ALL_SPACES, ids=lambda s: s.name)
@pytest.mark.parametrize(
    "seq",
    [S.zero(), S.power(-3), S.geometric(0.5), S.constant(1), S.power(-2), S.explicit([2, 1])],
    ids=["zero", "k^-3", "2^-k", "ones", "k^-2", "finite"],
)
def test_in_domain_abs_matches_base_space_of_phi(space, seq):
    T = phi if space.matrix == "omega" else psi
    policy = TruncationPolicy(max_cutoff=4096)
    assert in_domain(seq, space, policy, "abs").status is in_space(T(seq), space.base, policy).status


def test_in_domain_rejects_bad_mode():
    with pytest.raises(DomainError):
        in_domain(S.zero(), DomainSpace("c0", "omega"), transform_mode="x")
