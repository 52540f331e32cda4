import itertools
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings

from motivic_yamamoto.fixtures import example3, w5, wedge
from motivic_yamamoto.numeric import compare, eval_formal, eval_poset
from motivic_yamamoto.poset import LabeledPoset, PathSpec, antichain, chain
from motivic_yamamoto.words import FormalSum, IISymbol, Level, NotAdmissible, index_to_word, parse_symbol
from motivic_yamamoto.yamamoto import (
    STD_PATH,
    expand,
    is_admissible,
    product_identity,
    recursion_identity,
    shuffle_words,
    unfold,
)

from strategies import admissible_posets, brute_extensions


def _brute_words(X, path=STD_PATH):
    """Label words read off permutation-filtered extensions."""
    counts = Counter(tuple(X.label(x) for x in p) for p in brute_extensions(X))
    return FormalSum({(IISymbol(path.start, w, path.end, Level.M, path.tag),): c for w, c in counts.items()})


def test_empty_poset_is_one():
    assert expand(LabeledPoset([], {})).words == FormalSum.one()


def test_wedge_reads_one_word_twice():
    assert expand(wedge()).words == FormalSum.of((parse_symbol("I(0;1,1,0;1)@std"),), 2)


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        expand(chain([0, 0]))
    with pytest.raises(NotAdmissible):
        expand(chain([1, 1]))
    assert is_admissible(chain([0, 1]), PathSpec(1, 0, "g"))


def test_path_endpoints_and_tag():
    ((m, c),) = expand(chain([2, 0]), PathSpec(1, 3, "g")).words.items()
    assert m == (parse_symbol("I(1;2,0;3)@g"),) and c == 1


@settings(max_examples=80, deadline=None)
@given(admissible_posets(max_size=6))
def test_expansion_matches_permutation_oracle(X):
    e = expand(X)
    assert e.words == _brute_words(X)
    assert e.extension_count == len(brute_extensions(X))


def test_recursion_on_w5():
    X = w5()
    assert recursion_identity(X, "x1", "x3")
    a = expand(X.saturate("x1", "x3"), check=False).extension_count
    b = expand(X.saturate("x3", "x1"), check=False).extension_count
    assert a + b == 9


def test_recursion_on_antichain():
    # not admissible, but the identity is combinatorial
    assert recursion_identity(antichain([1, 0], prefix="x"), "x1", "x2")


@settings(max_examples=60, deadline=None)
@given(admissible_posets(max_size=6))
def test_recursion_identity_random(X):
    for a, b in itertools.combinations(X.elements, 2):
        if not X.comparable(a, b):
            assert recursion_identity(X, a, b)


@settings(max_examples=40, deadline=None)
@given(admissible_posets(max_size=6))
def test_unfold_reproduces_expansion(X):
    assert unfold(X) == expand(X).words


def test_product_with_point_and_unit():
    assert not is_admissible(chain([1]))  # a lone 1 is maximal
    assert product_identity(wedge(), LabeledPoset([], {}))
    assert product_identity(wedge(), chain([1, 0]))


@settings(max_examples=60, deadline=None)
@given(admissible_posets(max_size=3), admissible_posets(max_size=3))
def test_product_identity_random(X, Y):
    assert product_identity(X, Y)
    total, _ = X.direct_sum(Y)
    cx, cy = expand(X).extension_count, expand(Y).extension_count
    assert expand(total).extension_count == comb(len(X) + len(Y), len(X)) * cx * cy


def test_shuffle_words_rejects_mismatched_endpoints():
    with pytest.raises(ValueError):
        shuffle_words(FormalSum.of((parse_symbol("I(0;1;2)@std"),)), FormalSum.of((parse_symbol("I(0;1;3)@std"),)))


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 5) for m in range(1, 5)])
def test_example3_expansion_counts_interleavings(n, m):
    """Coefficients count the interleavings of the two tails; both words have depth 2."""
    expected = {}
    for i in range(1, n + 1):
        sign, w = index_to_word((i, n - i + m + 1))
        expected[w] = expected.get(w, 0) + sign * comb(n - i + m - 1, n - i)
    for j in range(1, m + 1):
        sign, w = index_to_word((j, n + m - j + 1))
        expected[w] = expected.get(w, 0) + sign * comb(n + m - j - 1, m - j)
    want = FormalSum({(IISymbol(0, w, 1, Level.M, "std"),): c for w, c in expected.items()})
    assert expand(example3(n, m)).words == want


def test_example3_printed_coefficients_overcount():
    X = example3(1, 2)
    printed = comb(1 - 1 + 2, 0) + sum(comb(1 + 2 - j, 2 - j) for j in (1, 2))
    assert printed == 4 and expand(X).extension_count == 3


@settings(max_examples=25, deadline=None)
@given(admissible_posets(max_size=3), admissible_posets(max_size=3))
def test_numeric_product(X, Y):
    total, _ = X.direct_sum(Y)
    lhs = eval_poset(X, 2000).times(eval_poset(Y, 2000))
    assert compare(lhs, eval_poset(total, 2000), 1e-6)
    assert compare(lhs, eval_formal(expand(total).words, 2000), 1e-6)
