"""Combinatorial facts behind the closed coaction formulas, by exhaustive enumeration.

All posets with at most five elements (up to isomorphism) are checked; the
statements only involve the order, so labels are irrelevant.
"""

import itertools

import pytest

from motivic_yamamoto.poset import enumerate_posets, project_total, transplant

from strategies import brute_extensions, is_block

ALL = [X for n in range(1, 6) for X in enumerate_posets(n)]


def _ids(X):
    return "-".join(f"{a}<{b}" for a, b in X.covers()) or f"anti{len(X)}"


def _windows(X):
    for r in range(1, len(X) + 1):
        yield from X.window_subsets(r)


def _orders(X, subset):
    return X.subposet(subset).linear_extensions()


@pytest.mark.parametrize("X", ALL, ids=[_ids(X) for X in ALL])
def test_partition_by_arrow_pairs(X):
    """For a window Y and an order of Y, the sets of extensions indexed by (p, q) partition
    the extensions in which Y is a block in that order, and none is empty."""
    ext = X.extend(0, 0, bottom="_b", top="_t")
    brute = brute_extensions(X)
    for Y in _windows(X):
        arr = ext.arrows(Y)
        for Ybar in _orders(X, Y):
            whole = {p for p in brute if is_block(p, Ybar.sequence)}
            parts = []
            for p in arr.max_below:
                for q in arr.min_above:
                    part = {t.sequence for t in ext.block_extensions_pq(Ybar, p, q)}
                    assert part, (sorted(Y), p, q)
                    parts.append(part)
            assert sum(len(s) for s in parts) == len(whole)
            assert set().union(*parts) == whole


@pytest.mark.parametrize("X", ALL, ids=[_ids(X) for X in ALL])
def test_projection_from_arrow_part_onto_contraction(X):
    """Removing the block maps the (p, q) part onto the extensions of the contraction;
    the fibre over W is the block inserted right after each x with p <= x < q in W."""
    ext = X.extend(0, 0, bottom="_b", top="_t")
    for Y in _windows(X):
        arr = ext.arrows(Y)
        for Ybar in _orders(X, Y):
            for p in arr.max_below:
                for q in arr.min_above:
                    part = ext.block_extensions_pq(Ybar, p, q)
                    C = ext.contract(Y, p, q)
                    targets = {t.sequence for t in C.linear_extensions()}
                    fibres: dict = {}
                    for t in part:
                        fibres.setdefault(project_total(t, Y).sequence, set()).add(t.sequence)
                    assert set(fibres) == targets
                    for W, fibre in fibres.items():
                        full = ("_b",) + W + ("_t",)
                        ip, iq = full.index(p), full.index(q)
                        expected = set()
                        for i in range(ip, iq):
                            expected.add(W[:i] + Ybar.sequence + W[i:])
                        assert fibre == expected


@pytest.mark.parametrize("X", ALL, ids=[_ids(X) for X in ALL])
def test_transplant_is_a_bijection_between_block_orders(X):
    for Y in _windows(X):
        orders = _orders(X, Y)
        blocks = {o.sequence: [t for t in X.linear_extensions() if t.is_block(o)] for o in orders}
        for Y1, Y2 in itertools.product(orders, repeat=2):
            images = []
            for t in blocks[Y1.sequence]:
                res = transplant(t, Y1, Y2)
                assert res.valid
                images.append(res.order)
                back = transplant(res.order, Y2, Y1)
                assert back.valid and back.order == t
            assert len(set(images)) == len(images)
            assert set(images) == set(blocks[Y2.sequence])


@pytest.mark.parametrize("X", ALL, ids=[_ids(X) for X in ALL])
def test_projection_onto_complement_is_surjective(X):
    exts = X.linear_extensions()
    for r in range(len(X) + 1):
        for Y in itertools.combinations(X.elements, r):
            image = {project_total(t, Y).sequence for t in exts}
            assert image == {t.sequence for t in X.without(Y).linear_extensions()}


def _related(t, u, Y) -> bool:
    """t ~ u: t is obtained from u by replacing u's order on Y with t's."""
    res = transplant(u, u.restrict(Y), t.restrict(Y))
    return res.valid and res.order == t


def _run_key(t, Y):
    """Independent description of a class: occupied positions and the runs as sets."""
    ys = set(Y)
    runs, cur = [], []
    for x in t.sequence:
        if x in ys:
            cur.append(x)
        elif cur:
            runs.append(frozenset(cur))
            cur = []
    if cur:
        runs.append(frozenset(cur))
    return tuple(i for i, x in enumerate(t.sequence) if x in ys), tuple(runs)


@pytest.mark.parametrize("X", ALL, ids=[_ids(X) for X in ALL])
def test_transplant_relation_is_an_equivalence_on_fibres(X):
    exts = X.linear_extensions()
    for r in range(len(X) + 1):
        for Y in itertools.combinations(X.elements, r):
            fibres: dict = {}
            for t in exts:
                fibres.setdefault(project_total(t, Y).sequence, []).append(t)
            for fibre in fibres.values():
                rel = {a: frozenset(b for b in fibre if _related(a, b, Y)) for a in fibre}
                assert all(a in rel[a] for a in fibre)
                assert all(a in rel[b] for a in fibre for b in rel[a])
                assert all(rel[b] <= rel[a] for a in fibre for b in rel[a])
                classes = set(rel.values())
                assert sum(len(c) for c in classes) == len(fibre)
                by_key: dict = {}
                for t in fibre:
                    by_key.setdefault(_run_key(t, Y), set()).add(t)
                assert classes == {frozenset(v) for v in by_key.values()}
