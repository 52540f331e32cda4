import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic_yamamoto.fixtures import wedge
from motivic_yamamoto.numeric import (
    NonStdPath,
    NumericValue,
    compare,
    eval_formal,
    eval_poset,
    eval_word,
    log_power_tail,
    mzv_eval,
    mzv_tail_bound,
)
from motivic_yamamoto.words import (
    FormalSum,
    IISymbol,
    Level,
    NotAdmissible,
    NotAdmissibleIndex,
    index_to_word,
    parse_symbol,
    regularize,
    shuffle_sum,
)

indices = st.lists(st.integers(1, 3), min_size=0, max_size=2).flatmap(
    lambda head: st.integers(2, 4).map(lambda last: tuple(head) + (last,))
)


def _exact(index, N):
    """The truncated nested sum by direct recursion in exact arithmetic."""
    def rec(depth, upper):
        if depth < 0:
            return Fraction(1)
        k = index[depth]
        return sum(Fraction(1, n**k) * rec(depth - 1, n - 1) for n in range(depth + 1, upper + 1))
    return rec(len(index) - 1, N)


def test_zeta2_against_pi():
    v = mzv_eval((2,), 1000)
    assert v.value == pytest.approx(1.643935, abs=1e-6)
    assert v.tail_bound <= 1 / 1000 + 1e-12
    assert abs(v.value - math.pi**2 / 6) <= v.tail_bound


def test_even_zetas_against_bernoulli():
    # B_2 = 1/6, B_4 = -1/30
    for k, b in ((1, Fraction(1, 6)), (2, Fraction(-1, 30))):
        closed = (-1) ** (k + 1) * float(b) * (2 * math.pi) ** (2 * k) / (2 * math.factorial(2 * k))
        v = mzv_eval((2 * k,), 2000)
        assert abs(v.value - closed) <= v.tail_bound + 1e-9


def test_euler_relation():
    assert compare(mzv_eval((1, 2), 2000), mzv_eval((3,), 2000), 1e-12)


def test_distinct_constants():
    assert not compare(mzv_eval((2,), 2000), mzv_eval((3,), 2000), 1e-3)
    assert compare(mzv_eval((2,), 50), mzv_eval((2,), 50), 1e-12)
    with pytest.raises(ValueError):
        compare(mzv_eval((2,), 50), mzv_eval((2,), 50), 0)


@settings(max_examples=30, deadline=None)
@given(indices, st.integers(3, 25))
def test_values_match_exact_sums(index, N):
    if N < len(index):
        return
    assert mzv_eval(index, N).value == pytest.approx(float(_exact(index, N)), rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(indices, st.sampled_from([50, 200, 800]))
def test_tails_are_honest_and_monotone(index, N):
    a, b = mzv_eval(index, N), mzv_eval(index, 4 * N)
    assert a.value <= b.value <= a.value + a.tail_bound
    assert mzv_tail_bound(index, 4 * N) < a.tail_bound


def test_log_power_tail_against_partial_sum():
    for j, k in ((0, 2), (1, 2), (2, 3)):
        direct = sum((1 + math.log(v)) ** j / v**k for v in range(101, 200001))
        assert direct <= log_power_tail(j, k, 100)
    with pytest.raises(ValueError):
        log_power_tail(0, 1, 10)


def test_inadmissible_index():
    with pytest.raises(NotAdmissibleIndex):
        mzv_eval((2, 1), 10)
    with pytest.raises(ValueError):
        mzv_eval((1, 1, 2), 2)


def test_words_and_sums():
    sign, w = index_to_word((1, 2))
    v = eval_word(IISymbol(0, w, 1, Level.M, "std"), 500)
    assert v.value == pytest.approx(sign * mzv_eval((1, 2), 500).value)
    assert eval_formal(FormalSum.zero(), 100) == NumericValue(0.0, 0.0, 100)
    with pytest.raises(NonStdPath):
        eval_word(parse_symbol("I(0;1,0;1)@g"), 100)
    with pytest.raises(NotAdmissible):
        eval_word(parse_symbol("I(0;1,0;2)@std"), 100)


def test_wedge_is_twice_zeta3():
    v = eval_poset(wedge(), 2000)
    assert abs(v.value - 2 * 1.2020569031595942) <= v.tail_bound


def test_regularized_word():
    v = eval_formal(regularize(parse_symbol("I(0;0,1;1)@std")), 2000)
    z2 = mzv_eval((2,), 2000)
    assert abs(v.value - z2.value) <= v.tail_bound + z2.tail_bound + 1e-12


def test_zeta2_squared_by_shuffles():
    w = (1, 0)
    sq = FormalSum({(IISymbol(0, u, 1, Level.M, "std"),): c for u, c in shuffle_sum(w, w).items()})
    z2 = mzv_eval((2,), 2000)
    assert compare(z2.times(z2), eval_formal(sq, 2000), 1e-6)


words = st.lists(st.integers(0, 1), min_size=0, max_size=2).map(lambda m: (1,) + tuple(m) + (0,))


@settings(max_examples=30, deadline=None)
@given(words, words)
def test_shuffle_products_numerically(u, v):
    s = IISymbol(0, u, 1, Level.M, "std")
    t = IISymbol(0, v, 1, Level.M, "std")
    prod = FormalSum({(IISymbol(0, w, 1, Level.M, "std"),): c for w, c in shuffle_sum(u, v).items()})
    assert compare(eval_word(s, 2000).times(eval_word(t, 2000)), eval_formal(prod, 2000), 1e-6)
