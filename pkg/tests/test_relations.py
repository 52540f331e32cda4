import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic_yamamoto.relations import (
    BoundTooLarge,
    MembershipCertificate,
    NotMember,
    RelationFamily,
    RelationKind,
    UniverseMismatch,
    UnknownRelation,
    generate_relations,
    is_lyndon,
    lyndon_factorization,
    path_split_relation,
    shuffle_vanish_relation,
    span_membership,
    verify_certificate,
    zeta2_relation,
)
from motivic_yamamoto.words import (
    ONE,
    FormalSum,
    IISymbol,
    Level,
    TensorTerm,
    monomial,
    normalize_sum,
    parse_symbol,
    shuffle_sum,
)

L3 = RelationFamily([0, 1], 3, Level.L)
L4 = RelationFamily([0, 1], 4, Level.L)
A4 = RelationFamily([0, 1], 4, Level.A, 2)
L3_012 = RelationFamily([0, 1, 2], 3, Level.L)


def one(text, c=1):
    return FormalSum.of((parse_symbol(text),), c)


def _random_combination(family, rng, k=4):
    rels = [r for r in family if not r.body.is_zero()]
    out = FormalSum.zero()
    for rel in rng.sample(rels, k):
        out = out + rel.body.scale(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    return out


def test_bound_too_large():
    with pytest.raises(BoundTooLarge):
        RelationFamily([0, 1], 13, Level.L)
    with pytest.raises(BoundTooLarge):
        RelationFamily([0, 1], 9, Level.A)


def test_generation_is_deterministic_and_duplicate_free():
    a = [r.describe() for r in generate_relations([0, 1], 3)]
    b = [r.describe() for r in generate_relations([1, 0], 3)]
    assert a == b
    assert len(set(a)) == len(a)


def test_family_contains_its_members_only():
    assert all(L3.contains(r) for r in L3)
    assert not L3.contains(path_split_relation(0, (1, 0, 1, 0), 1, 0))
    assert not L3.contains(zeta2_relation())
    assert A4.contains(zeta2_relation())


def test_path_split_body():
    rel = path_split_relation(0, (2,), 1, 5, Level.A)
    expected = normalize_sum(one("I(0;2;1)") - one("I(0;2;5)") - one("I(5;2;1)"))
    assert rel.body == expected or rel.body == -expected


def test_shuffle_vanish_body_is_the_shuffle():
    rel = shuffle_vanish_relation(0, (1,), (0, 2), 1)
    expected = FormalSum({(IISymbol(0, w, 1, Level.L),): c for w, c in shuffle_sum((1,), (0, 2)).items()})
    assert rel.raw == expected


def test_zeta2_relation_body():
    assert zeta2_relation().body == one("I(0;1,0;1)") or zeta2_relation().body == one("I(0;1,0;1)", -1)


@pytest.mark.parametrize("engine", ["shuffle", "elimination"])
def test_members_are_certified(engine):
    rng = random.Random(7)
    for _ in range(15):
        target = _random_combination(L4, rng)
        cert = span_membership(target, L4, engine=engine)
        assert isinstance(cert, MembershipCertificate)
        assert verify_certificate(target, cert)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(0, 1), min_size=1, max_size=4), st.integers(-3, 3)), min_size=1, max_size=4))
def test_engines_agree_on_membership(rows):
    """The Lyndon-rewriting engine and plain elimination give the same answer."""
    target = FormalSum({(IISymbol(0, tuple(w), 1, Level.L),): c for w, c in rows})
    a = span_membership(target, L4, engine="shuffle")
    b = span_membership(target, L4, engine="elimination")
    assert isinstance(a, MembershipCertificate) == isinstance(b, MembershipCertificate)
    if isinstance(a, NotMember):
        # residuals differ by a member of the span
        assert isinstance(span_membership(a.residual - b.residual, L4, engine="elimination"), MembershipCertificate)


def test_engines_agree_with_three_labels():
    rng = random.Random(3)
    syms = [IISymbol(a, w, b, Level.L) for a in (0, 1, 2) for b in (0, 1, 2) for w in [(0, 2), (2, 1), (1, 2, 0), (2,)]]
    for _ in range(25):
        target = FormalSum({(s,): rng.randint(-2, 2) for s in rng.sample(syms, 3)})
        target = target + _random_combination(L3_012, rng, 2)
        a = span_membership(target, L3_012, engine="shuffle")
        b = span_membership(target, L3_012, engine="elimination")
        assert isinstance(a, MembershipCertificate) == isinstance(b, MembershipCertificate)


def test_zeta3_is_not_in_the_level_l_span():
    res = span_membership(one("Il(0;1,0,0;1)"), L3)
    assert isinstance(res, NotMember) and not res
    assert not res.residual.is_zero()


def test_duality_is_not_among_the_relations():
    """zeta(1,2) = zeta(3) needs the substitution t -> 1 - t, which is not generated."""
    target = one("Il(0;1,1,0;1)") + one("Il(0;1,0,0;1)")
    assert isinstance(span_membership(target, L3), NotMember)


def test_shuffle_products_vanish_at_level_l():
    target = FormalSum({(IISymbol(0, w, 1, Level.L),): c for w, c in shuffle_sum((1, 0), (1,)).items()})
    assert isinstance(span_membership(target, L3), MembershipCertificate)


def test_zeta2_vanishes_at_level_a_only_with_its_relation():
    target = FormalSum.of(TensorTerm(monomial(parse_symbol("I(0;1,0;1)")), (parse_symbol("I(0;1,1,0;1)@std"),)))
    cert = span_membership(target, A4)
    assert isinstance(cert, MembershipCertificate)
    assert cert.kinds().get(RelationKind.ZETA2_VANISH.value)
    no_z2 = [r for r in A4 if r.kind is not RelationKind.ZETA2_VANISH and "times" not in r.describe()]
    assert isinstance(span_membership(target, no_z2), NotMember)


def test_tensor_targets_split_by_right_factor():
    left = one("Il(0;1,0;1)") - one("Il(1;0,1;0)")
    right = (parse_symbol("I(0;1,0;1)@std"),)
    target = FormalSum({TensorTerm(m, right): c for m, c in left.items()})
    cert = span_membership(target, L3)
    assert isinstance(cert, MembershipCertificate)
    assert all(r == right for _, r in cert.entries)


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        span_membership(one("I(0;1,0;1)@std"), L3)


def test_tampered_certificate_is_rejected():
    target = one("Il(0;1,0;1)") - one("Il(1;0,1;0)")
    cert = span_membership(target, L3)
    assert verify_certificate(target, cert)
    assert not verify_certificate(target + one("Il(0;2;1)"), cert)
    # a weight-3 certificate checked against a weight-2 family
    shuffled = FormalSum({(IISymbol(0, w, 1, Level.L),): c for w, c in shuffle_sum((1, 0), (1,)).items()})
    big = span_membership(shuffled, L3)
    assert isinstance(big, MembershipCertificate) and len(big)
    big.family = RelationFamily([0, 1], 2, Level.L)
    with pytest.raises(UnknownRelation):
        verify_certificate(big.combination(), big)


def test_zero_target_has_empty_certificate():
    cert = span_membership(FormalSum.zero(), L3)
    assert isinstance(cert, MembershipCertificate) and len(cert) == 0


@given(st.lists(st.integers(0, 2), max_size=8).map(tuple))
def test_lyndon_factorization(w):
    parts = lyndon_factorization(w)
    assert sum(parts, ()) == w
    assert all(is_lyndon(p) for p in parts)
    assert all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def test_normal_form_of_targets_is_used():
    # I(0;;1) normalizes to 1, which is never in a span of positive-weight relations
    assert isinstance(span_membership(FormalSum.of((IISymbol(0, (), 1, Level.L),)), L3), NotMember)
    assert normalize_sum(FormalSum.of((IISymbol(0, (), 1, Level.L),))) == FormalSum.of(ONE)
