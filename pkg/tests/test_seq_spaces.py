import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyseq.corpus import standard_sequences
from fuzzyseq.errors import DomainError, GeneratorError, SpreadMismatch
from fuzzyseq.fuzzy_core import CRISP, SpreadPair, TriangularFuzzyNumber as T
from fuzzyseq.seq_spaces import (
    FuzzySequence as S,
    in_bs,
    in_c,
    in_c0,
    in_cs,
    in_l1,
    in_linf,
    in_lp,
    in_space,
    partial_sums,
    sup_norm,
)
from fuzzyseq.verdict import Status

S11 = SpreadPair(1, 1)
S12 = SpreadPair(1, 2)


def test_term_examples():
    assert S.constant(5, S11).term(3) == T(5, S11)
    assert S.harmonic().term(4) == T(0.25)
    assert S.geometric(0.5, S12).term(3) == T(0.125, S12)


def test_generators():
    assert S.power(2).centers(4) == [1, 4, 9, 16]
    assert S.polynomial([1, 0, 2]).centers(3) == [3, 9, 19]
    assert S.explicit([3, 4]).centers(4) == [3, 4, 0, 0]
    assert S.expression("(-1)**k * k").centers(3) == [-1, 2, -3]
    assert S.harmonic(exact=True).center(3) == Fraction(1, 3)


def test_term_errors():
    with pytest.raises(DomainError):
        S.harmonic().term(0)
    with pytest.raises(GeneratorError):
        S.expression("1/(k-2)").term(2)
    with pytest.raises(DomainError):
        S.expression("__import__('os')")


def test_sequence_arithmetic():
    a, b = S.constant(1, S12), S.harmonic(S12)
    assert (a + b).term(2) == T(1.5, S12)
    assert (3 * b).term(3).center == pytest.approx(1.0)
    assert (-a).term(1) == T(-1, S12)
    with pytest.raises(SpreadMismatch):
        a + S.harmonic()


@pytest.mark.parametrize(
    "seq",
    [
        S.constant(-2, S12),
        S.geometric("1/3", exact=True),
        S.harmonic(SpreadPair(0.5, 1.5)),
        S.power(-1.5),
        S.polynomial([1, 2, 3]),
        S.explicit(["1/2", 3], exact=True),
        S.expression("sin(k)", S11),
    ],
)
def test_document_round_trip(seq):
    back = S.from_dict(seq.to_dict(), exact=seq.exact)
    assert back.centers(12) == seq.centers(12)
    assert back.spreads == seq.spreads


def test_document_shorthand_and_errors():
    assert S.from_dict({"kind": "constant", "params": 4}).center(9) == 4
    with pytest.raises(DomainError):
        S.from_dict({"kind": "nope"})
    with pytest.raises(DomainError):
        S.from_dict({"kind": "geometric", "params": {}})


def test_sup_norm_examples():
    s = S.harmonic(S12)
    value, v = sup_norm(s, s)
    assert value == 2 and v.holds
    value, v = sup_norm(S.harmonic())
    assert value == 1 and v.holds and v.witness["argmax"] == 1
    value, v = sup_norm(S.power(1))
    assert math.isinf(value) and v.fails and "index" in v.witness


def test_membership_examples():
    c5 = S.constant(5)
    assert in_linf(c5).holds
    verdict, limit = in_c(c5)
    assert verdict.holds and limit == T(5)
    assert in_c0(c5).fails
    assert in_c0(S.harmonic()).holds
    wide = in_c0(S.harmonic(S12))
    assert wide.fails and wide.witness["value"] == pytest.approx(2 + 1 / wide.witness["index"])


def test_series_examples():
    assert in_cs(S.geometric(0.5)).holds
    assert in_c(partial_sums(S.geometric(0.5)))[1].center == pytest.approx(1, abs=1e-9)
    assert in_bs(S.constant(1)).fails
    alt = S.geometric(-1)
    assert in_bs(alt).holds
    assert in_cs(alt).fails


def test_convergence_impossible_with_spreads():
    verdict, limit = in_c(S.constant(1, S12))
    assert verdict.fails and limit is None
    assert verdict.witness["metric_floor"] == 1.5


def test_lp():
    assert in_lp(S.harmonic(), 2).holds
    assert in_l1(S.harmonic()).fails
    with pytest.raises(DomainError):
        in_lp(S.harmonic(), 0.5)


def test_in_space_dispatch():
    assert in_space(S.harmonic(), "c0").holds
    with pytest.raises(DomainError):
        in_space(S.harmonic(), "lq")


# -- independent crisp oracle ----------------------------------------------
#
# Classical facts for r^k and k^p decide each space analytically; the
# verdicts must agree on parameters away from the boundary, where finite
# truncation cannot separate the cases.


def geometric_truth(r):
    return {
        "linf": abs(r) <= 1,
        "c0": abs(r) < 1,
        "c": -1 < r <= 1,
        "l1": abs(r) < 1,
        "cs": abs(r) < 1,
        "bs": abs(r) < 1 or r == -1,
    }


def power_truth(p):
    return {"linf": p <= 0, "c0": p < 0, "c": p <= 0, "l1": p < -1, "cs": p < -1, "bs": p < -1}


def agrees(verdict, truth):
    return verdict.status is (Status.HOLDS if truth else Status.FAILS)


@pytest.mark.parametrize("r", [-2, -1, -0.5, 0, 0.25, 0.5, 1, 1.5, 3])
def test_crisp_oracle_geometric(r):
    s = S.geometric(r)
    for space, truth in geometric_truth(r).items():
        assert agrees(in_space(s, space), truth), (r, space)


@pytest.mark.parametrize("p", [-3, -2, -1.5, -0.5, 0, 0.5, 1, 2])
def test_crisp_oracle_power(p):
    s = S.power(p)
    for space, truth in power_truth(p).items():
        assert agrees(in_space(s, space), truth), (p, space)


@settings(max_examples=40, deadline=None)
@given(st.one_of(st.floats(-0.9, 0.9), st.floats(1.1, 4), st.floats(-4, -1.1)))
def test_crisp_oracle_geometric_random(r):
    s = S.geometric(r)
    for space, truth in geometric_truth(r).items():
        v = in_space(s, space)
        assert v.status is not (Status.FAILS if truth else Status.HOLDS), (r, space)


@settings(max_examples=40, deadline=None)
@given(st.one_of(st.floats(-4, -1.2), st.floats(-0.8, -0.1), st.floats(0.1, 3)))
def test_crisp_oracle_power_random(p):
    s = S.power(p)
    for space, truth in power_truth(p).items():
        v = in_space(s, space)
        assert v.status is not (Status.FAILS if truth else Status.HOLDS), (p, space)


# -- structural invariants -------------------------------------------------


@pytest.mark.parametrize("label,seq", standard_sequences(), ids=[l for l, _ in standard_sequences()])
def test_inclusion_chain(label, seq):
    if in_c0(seq).holds:
        verdict, limit = in_c(seq)
        assert verdict.holds and abs(limit.center) <= verdict.witness["limit_error"]
    if in_c(seq)[0].holds:
        assert in_linf(seq).holds


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30), st.floats(-50, 50))
def test_norm_homogeneity_crisp(centers, alpha):
    s = S.explicit(centers)
    pointwise = [abs(alpha * c) for c in s.centers(40)]
    assert pointwise == [abs(alpha) * abs(c) for c in s.centers(40)]
    scaled, _ = sup_norm(alpha * s)
    base, _ = sup_norm(s)
    assert scaled == pytest.approx(abs(alpha) * base, rel=1e-12, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30),
    st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=30),
)
def test_norm_triangle_inequality_crisp(xs, ys):
    s, r = S.explicit(xs), S.explicit(ys)
    for a, b in zip(s.centers(40), r.centers(40)):
        assert abs(a + b) <= abs(a) + abs(b)
    total, _ = sup_norm(s + r)
    assert total <= sup_norm(s)[0] + sup_norm(r)[0] + 1e-9


def test_norm_lower_bound_with_spreads():
    # the zero sequence has norm max(t1, t2), not 0
    for sp in (S11, S12, SpreadPair(0, 3)):
        value, _ = sup_norm(S.zero(sp))
        assert value == max(sp.t1, sp.t2)


def test_spreads_shared_by_every_term():
    s = S.expression("k % 5", S12)
    assert {t.spreads for t in s.terms(50)} == {S12}
    assert S.zero().spreads == CRISP
