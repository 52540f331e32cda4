"""Acceptance criteria 1-12, one test each, at the stated tolerances.

Every test records a PASS/FAIL line (shown in the terminal summary).  Criteria 7
and 8(a) compare against term lists that the computation does not reproduce; they
are marked as strict expected failures so the discrepancy stays visible and any
change in behaviour is flagged.
"""

import itertools
import math
import time
from fractions import Fraction
from math import comb

import pytest

from motivic_yamamoto.coaction import closed_terms, delta_poset
from motivic_yamamoto.fixtures import example1, example3
from motivic_yamamoto.numeric import NumericValue, compare, eval_formal, mzv_eval
from motivic_yamamoto.poset import enumerate_posets
from motivic_yamamoto.schur import TableauIndex, poset_sign, smzv_numeric, smzv_to_poset
from motivic_yamamoto.verify import (
    verify_choice_independence,
    verify_d1,
    verify_delta_y,
    verify_dr_closed,
    verify_exp_identity,
    verify_numeric_products,
    verify_product_recursion,
    verify_word_projection,
)
from motivic_yamamoto.words import FormalSum, IISymbol, Level, TensorTerm, index_to_word, regularize_sum, zeta_symbol
from motivic_yamamoto.yamamoto import expand

import test_lemmas
from acceptance_log import record


def _sweep(label, rep, limit=None):
    ok = rep.all_ok and (limit is None or rep.elapsed < limit)
    extra = f", {rep.skipped} skipped" if rep.skipped else ""
    record(label, ok, f"{rep.name}: {rep.passed}/{len(rep.instances)} verified{extra} in {rep.elapsed:.1f}s")
    for inst in rep.failed[:5]:
        print("   ", inst.to_json())
    return ok


def test_criterion_01_dr_closed_formula():
    assert _sweep("1", verify_dr_closed(4, (0, 1), ("w5", "diamond", "example1(5)")), limit=600)


def test_criterion_02_d1_closed_formula():
    assert _sweep("2", verify_d1(4, (0, 1), ("w5", "diamond", "example1(5)")))


def test_criterion_03_choice_independence():
    assert _sweep("3", verify_choice_independence(choices=3))


def test_criterion_04_delta_y_closed_form():
    assert _sweep("4", verify_delta_y(4, (0, 1), weight=4))


def test_criterion_05_word_projection():
    rep = verify_word_projection(6)
    assert len(rep.instances) == sum(2**k for k in range(7))
    assert _sweep("5", rep)


def test_criterion_06_exp_identity():
    assert _sweep("6", verify_exp_identity(3))


# the displayed D_3' sum for n = 5: (window, p, q), bottom x0 and top x6'
PRINTED_TERMS = {
    (frozenset({"x1", "x2", "x3"}), "x0", "x1'"),
    (frozenset({"x1'", "x1", "x2"}), "x0", "x2'"),
    (frozenset({"x2'", "x2", "x3"}), "x1'", "x3'"),
    (frozenset({"x2'", "x2", "x3"}), "x1'", "x4"),
    (frozenset({"x1'", "x2'", "x2"}), "x1", "x3"),
    (frozenset({"x2'", "x3'", "x3"}), "x1'", "x4"),
    (frozenset({"x4'", "x5'", "x5"}), "x4", "x6'"),
    (frozenset({"x4'", "x5'", "x5"}), "x3'", "x6'"),
}


@pytest.mark.xfail(strict=True, reason="the closed formula has a ninth non-vanishing term (see the decisions ledger)")
def test_criterion_07_example1_terms():
    got = {(t.window, t.p, t.q) for t in closed_terms(example1(5), r=3, bottom="x0", top="x6'")}
    ok = got == PRINTED_TERMS
    extra = sorted((sorted(w), p, q) for w, p, q in got - PRINTED_TERMS)
    missing = sorted((sorted(w), p, q) for w, p, q in PRINTED_TERMS - got)
    record("7", ok, f"{len(got)} terms computed vs {len(PRINTED_TERMS)} printed; extra {extra}; missing {missing}")
    assert ok


def _printed_example3(n, m):
    out = {}
    for i in range(1, n + 1):
        sign, w = index_to_word((i, n - i + m + 1))
        out[w] = out.get(w, 0) + sign * comb(n - i + m, n - i)
    for j in range(1, m + 1):
        sign, w = index_to_word((j, n + m - j + 1))
        out[w] = out.get(w, 0) + sign * comb(n + m - j, m - j)
    return FormalSum({(IISymbol(0, w, 1, Level.M, "std"),): c for w, c in out.items()})


@pytest.mark.xfail(strict=True, reason="the printed binomial coefficients overcount (see the decisions ledger)")
def test_criterion_08a_example3_expansion():
    bad = [(n, m) for n in range(1, 5) for m in range(1, 5) if expand(example3(n, m)).words != _printed_example3(n, m)]
    record("8a", not bad, f"printed expansion differs for {len(bad)} of 16 (n, m) pairs, e.g. {bad[:4]}")
    assert not bad


def test_criterion_08b_binomial_identity():
    bad = []
    for i in range(21):
        for m in range(1, 21):
            lhs = sum(Fraction((-1) ** (i - k + 1) * m, m + k) * comb(i, k) for k in range(i + 1))
            if lhs != Fraction((-1) ** (i + 1), comb(i + m, m)):
                bad.append((i, m))
    record("8b", not bad, f"binomial identity exact for i <= 20, 1 <= m <= 20 ({21 * 20 - len(bad)}/{21 * 20})")
    assert not bad


def _example3_display(X, n, m):
    words = expand(X).words
    out = FormalSum({TensorTerm((), mono): c for mono, c in words.items()})
    out = out + FormalSum({TensorTerm(tuple(s.at_level(Level.A) for s in mono), ()): c for mono, c in words.items()})

    def zz(a, b, sign):
        left, right = zeta_symbol((a,), Level.A), zeta_symbol((b,), Level.M, "std")
        return FormalSum({TensorTerm(l, r): sign * c * d for l, c in left.items() for r, d in right.items()})

    for i in range(n - 1):
        out = out + zz(m + i + 1, n - i, (-1) ** i)
    for j in range(m - 1):
        out = out + zz(n + j + 1, m - j, (-1) ** j)
    return regularize_sum(out)


def test_criterion_08c_example3_coaction():
    bad = []
    for n, m in itertools.product(range(1, 4), repeat=2):
        X = example3(n, m)
        want = _example3_display(X, n, m)
        for mode in ("definition", "via_thm2"):
            if regularize_sum(delta_poset(X, mode=mode).terms) != want:
                bad.append((n, m, mode))
    record("8c", not bad, f"regularized coaction matches the closed display for n, m <= 3 in both modes ({18 - len(bad)}/18)")
    assert not bad


def test_criterion_09_product_and_recursion():
    rep = verify_product_recursion(6)
    num = verify_numeric_products(truncation=2000, pairs=24, tol=1e-6)
    ok = _sweep("9 (exact)", rep) & _sweep("9 (numeric)", num)
    assert len(num.instances) >= 20
    assert ok


def test_criterion_10_euler_and_zeta2():
    a, b = mzv_eval((1, 2), 2000), mzv_eval((3,), 2000)
    euler = abs(a.value - b.value) <= a.tail_bound + b.tail_bound
    z2 = mzv_eval((2,), 1000)
    basel = abs(z2.value - math.pi**2 / 6) < 1e-3
    record(
        "10",
        euler and basel,
        f"|zeta(1,2) - zeta(3)| = {abs(a.value - b.value):.2e} <= {a.tail_bound + b.tail_bound:.2e}; "
        f"|zeta(2) - pi^2/6| = {abs(z2.value - math.pi**2 / 6):.2e}",
    )
    assert euler and basel


def _schur_shapes():
    yield [[2, 1], [1, 2]]
    for width in range(2, 6):
        for s in range(1, 6):
            for t in range(2, 6):
                if s + t + width - 1 <= 6:
                    yield [[None] * (width - 1) + [s], [1] * (width - 1) + [t]]


def test_criterion_11_schur_numeric():
    N = 2000
    rows = []
    for shape in _schur_shapes():
        k = TableauIndex.from_rows(shape)
        X = smzv_to_poset(k)
        value, tail = smzv_numeric(k, N)
        via = eval_formal(expand(X).words, N).scale(poset_sign(X))
        rows.append((shape, compare(NumericValue(value, tail, N), via, 1e-4), abs(value - via.value)))
    bad = [r for r in rows if not r[1]]
    worst = max(r[2] for r in rows)
    record("11", not bad, f"{len(rows) - len(bad)}/{len(rows)} tableaux agree within tails + 1e-4 at N = {N} (largest gap {worst:.3g})")
    assert not bad


def test_criterion_12_lemma_suites():
    t0 = time.perf_counter()
    checks = [
        test_lemmas.test_partition_by_arrow_pairs,
        test_lemmas.test_projection_from_arrow_part_onto_contraction,
        test_lemmas.test_transplant_is_a_bijection_between_block_orders,
        test_lemmas.test_projection_onto_complement_is_surjective,
        test_lemmas.test_transplant_relation_is_an_equivalence_on_fibres,
    ]
    posets = [X for n in range(1, 6) for X in enumerate_posets(n)]
    failures = []
    for check in checks:
        for X in posets:
            try:
                check(X)
            except AssertionError:
                failures.append((check.__name__, X.covers()))
    total = len(checks) * len(posets)
    record("12", not failures, f"{total - len(failures)}/{total} lemma checks over {len(posets)} posets in {time.perf_counter() - t0:.1f}s")
    assert not failures
