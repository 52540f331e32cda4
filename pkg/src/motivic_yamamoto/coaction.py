"""Goncharov's coproduct, the infinitesimal coactions, and their poset-level formulas.

Word-level operations act on a single path-tagged symbol ``I(a_0; a_1..a_k; a_{k+1})``.
Poset-level operations come in two flavours: ``definition`` expands the poset
over its linear extensions and applies the word formula, while the closed forms
sum over window subsets and arrow pairs of the extended poset directly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence, Union

from ._rational import fmt
from .poset import ExtendedPoset, LabeledPoset, PathSpec, TotalOrder
from .relations import MembershipCertificate, RelationFamily, span_membership
from .words import (
    ONE,
    FormalSum,
    IISymbol,
    Level,
    Monomial,
    TensorTerm,
    format_monomial,
    format_symbol,
    monomial_weight,
    multiply,
    normalize_sum,
)
from .yamamoto import STD_PATH, check_admissible, integral_sum


class BadR(ValueError):
    pass


@dataclass(frozen=True)
class CoactionResult:
    """A normalized combination of tensor terms at level A or L, of fixed total weight."""

    terms: FormalSum
    level: Level
    weight: int
    flags: tuple = field(default=(), compare=False)

    def __add__(self, other: "CoactionResult") -> "CoactionResult":
        self._compatible(other)
        return CoactionResult(self.terms + other.terms, self.level, self.weight, self.flags + other.flags)

    def __sub__(self, other: "CoactionResult") -> "CoactionResult":
        self._compatible(other)
        return CoactionResult(self.terms - other.terms, self.level, self.weight)

    def _compatible(self, other: "CoactionResult") -> None:
        if self.level is not other.level or self.weight != other.weight:
            raise ValueError("coaction results of different level or weight")

    def is_zero(self) -> bool:
        return self.terms.is_zero()

    def is_graded(self) -> bool:
        for t in self.terms:
            a, b = t.weights
            if a + b != self.weight:
                return False
            if self.level is Level.L and sum(1 for s in t.left if s.weight > 0) > 1:
                return False
        return True

    def to_json(self) -> list[dict]:
        return [
            {
                "left": [format_symbol(s) for s in t.left],
                "right": format_monomial(t.right),
                "coeff": fmt(c),
            }
            for t, c in self.terms.items()
        ]

    def __str__(self) -> str:
        return str(self.terms)


def _result(terms: FormalSum, level: Level, weight: int, flags: tuple = ()) -> CoactionResult:
    return CoactionResult(normalize_sum(terms), level, weight, flags)


def tensor(left: FormalSum, right: FormalSum) -> FormalSum:
    """Tensor product of a combination of path-free monomials with one of path-tagged monomials."""
    out: dict = {}
    for a, c in left.items():
        for b, d in right.items():
            t = TensorTerm(a, b)
            out[t] = out.get(t, 0) + c * d
    return FormalSum(out)


def _check_word(w: IISymbol) -> None:
    if w.level is not Level.M:
        raise ValueError("word-level coactions act on path-tagged (level M) symbols")


# ------------------------------------------------------------------ words
@lru_cache(maxsize=4096)
def _delta(w: IISymbol) -> FormalSum:
    a = w.labels
    k = w.weight
    out: dict = {}
    for s in range(k + 1):
        for chosen in itertools.combinations(range(1, k + 1), s):
            marks = (0,) + chosen + (k + 1,)
            left = tuple(
                IISymbol(a[marks[p]], a[marks[p] + 1 : marks[p + 1]], a[marks[p + 1]], Level.A)
                for p in range(len(marks) - 1)
            )
            right = (IISymbol(a[0], tuple(a[i] for i in chosen), a[k + 1], Level.M, w.path),)
            t = TensorTerm(tuple(sorted(left, key=IISymbol.sort_key)), right)
            out[t] = out.get(t, 0) + 1
    return normalize_sum(FormalSum(out))


def delta_word(w: IISymbol) -> CoactionResult:
    """Goncharov's coproduct of one word, summed over all marked subsequences."""
    _check_word(w)
    return CoactionResult(_delta(w), Level.A, w.weight)


@lru_cache(maxsize=8192)
def _blocks(w: IISymbol, r: int, level: Level) -> FormalSum:
    a = w.labels
    k = w.weight
    out: dict = {}
    for s in range(k - r + 1):
        left = (IISymbol(a[s], a[s + 1 : s + r + 1], a[s + r + 1], level),)
        right = (IISymbol(a[0], a[1 : s + 1] + a[s + r + 1 : k + 1], a[k + 1], Level.M, w.path),)
        t = TensorTerm(left, right)
        out[t] = out.get(t, 0) + 1
    return normalize_sum(FormalSum(out))


def _check_r(w: IISymbol, r: int) -> None:
    if not 1 <= r <= w.weight:
        raise BadR(f"r must lie in 1..{w.weight}, got {r}")


def dr_word(w: IISymbol, r: int) -> CoactionResult:
    """``D_r``: consecutive blocks of length ``r`` cut out, left factor at level L."""
    _check_word(w)
    _check_r(w, r)
    return CoactionResult(_blocks(w, r, Level.L), Level.L, w.weight)


def drprime_word(w: IISymbol, r: int) -> CoactionResult:
    """``D_r'``: as :func:`dr_word` but with the left factor kept at level A."""
    _check_word(w)
    _check_r(w, r)
    return CoactionResult(_blocks(w, r, Level.A), Level.A, w.weight)


def _dprime_total(h: Monomial) -> FormalSum:
    if h == ONE:
        return FormalSum.zero()
    if len(h) != 1:
        raise ValueError("the infinitesimal coaction is applied to single words only")
    (w,) = h
    out = FormalSum.zero()
    for r in range(1, w.weight + 1):
        out = out + _blocks(w, r, Level.A)
    return out


def _apply_dprime(x: FormalSum) -> FormalSum:
    """``a (x) h  ->  sum (a * l) (x) h'`` over the terms ``l (x) h'`` of ``sum_r D_r'(h)``."""
    out: dict = {}
    for t, c in x.items():
        for u, d in _dprime_total(t.right).items():
            left = tuple(sorted(t.left + u.left, key=IISymbol.sort_key))
            key = TensorTerm(left, u.right)
            out[key] = out.get(key, 0) + c * d
    return normalize_sum(FormalSum(out))


def exp_drprime(w: IISymbol) -> CoactionResult:
    """``exp(sum_r D_r')`` applied to ``1 (x) w``; the series stops once the right weight is spent."""
    _check_word(w)
    current = FormalSum.of(TensorTerm(ONE, (w,)))
    total = normalize_sum(current)
    n = 0
    while not current.is_zero():
        n += 1
        current = _apply_dprime(current)
        total = total + current.scale(Fraction(1, math.factorial(n)))
    return CoactionResult(total, Level.A, w.weight)


def project_L(result: CoactionResult) -> CoactionResult:
    """Drop terms with two or more positive-weight left factors; relabel the rest at level L."""
    out: dict = {}
    for t, c in result.terms.items():
        pos = [s for s in t.left if s.weight > 0]
        if len(pos) >= 2:
            continue
        left = tuple(s.at_level(Level.L) for s in pos)
        key = TensorTerm(left, t.right)
        out[key] = out.get(key, 0) + c
    return _result(FormalSum(out), Level.L, result.weight)


# ------------------------------------------------------------------ posets
def _ends(X: LabeledPoset, bottom: str | None, top: str | None) -> tuple[str, str]:
    b = bottom or "x_0"
    t = top or "x_1"
    while b in X:
        b += "'"
    while t in X or t == b:
        t += "'"
    return b, t


def extended(X: LabeledPoset, path: PathSpec = STD_PATH, bottom: str | None = None, top: str | None = None) -> ExtendedPoset:
    b, t = _ends(X, bottom, top)
    return X.extend(path.start, path.end, b, t)


def _word_symbol(path: PathSpec, word: Sequence[Fraction]) -> IISymbol:
    return IISymbol(path.start, tuple(word), path.end, Level.M, path.tag)


def _over_extensions(X: LabeledPoset, path: PathSpec, op: Callable[[IISymbol], FormalSum]) -> FormalSum:
    out = FormalSum.zero()
    for word, count in sorted(X.label_word_counts().items()):
        out = out + op(_word_symbol(path, word)).scale(count)
    return out


def _left_poset(Y: LabeledPoset, a: Fraction, b: Fraction, level: Level) -> FormalSum:
    """``I_(a;b)(Y)`` at a path-free level: the sum over Tot(Y) of words with endpoints a, b."""
    return FormalSum(
        {(IISymbol(a, w, b, level),): c for w, c in Y.label_word_counts().items()}
    )


def _right_poset(X: LabeledPoset, path: PathSpec) -> FormalSum:
    return integral_sum(X, path.start, path.end, Level.M, path.tag)


def _check_poset_r(X: LabeledPoset, r: int) -> None:
    if r < 1:
        raise BadR(f"r must be positive, got {r}")


def dr_poset(X: LabeledPoset, path: PathSpec = STD_PATH, r: int = 1, mode: str = "definition") -> CoactionResult:
    """``D_r`` of the Yamamoto integral, from the word formula or from the window/arrow formula."""
    check_admissible(X, path)
    _check_poset_r(X, r)
    n = len(X)
    if r > n:
        return CoactionResult(FormalSum.zero(), Level.L, n)
    if mode == "definition":
        return _result(_over_extensions(X, path, lambda w: _blocks(w, r, Level.L)), Level.L, n)
    if mode == "closed":
        out = FormalSum.zero()
        for term in closed_terms(X, path, r, drop_vanishing=False):
            out = out + term.tensor()
        return _result(out, Level.L, n)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class ClosedTerm:
    """One summand ``I_(p;q)(Y) (x) I(contracted poset)`` of the closed formula for ``D_r``."""

    window: frozenset
    p: str
    q: str
    left: FormalSum
    right: FormalSum
    contracted: LabeledPoset

    def tensor(self) -> FormalSum:
        return tensor(self.left, self.right)

    def key(self) -> tuple:
        return (tuple(sorted(self.window)), self.p, self.q)


def closed_terms(
    X: LabeledPoset,
    path: PathSpec = STD_PATH,
    r: int = 1,
    *,
    drop_vanishing: bool = True,
    bottom: str | None = None,
    top: str | None = None,
) -> list[ClosedTerm]:
    """The summands over irreducible windows ``Y`` of size ``r`` and arrow pairs ``(p, q)``.

    With ``drop_vanishing`` a summand is omitted when its left factor lies in
    the level-L relation span or its right factor normalizes to zero.
    """
    check_admissible(X, path)
    _check_poset_r(X, r)
    ext = extended(X, path, bottom, top)
    out = []
    family = None
    for Y in X.window_subsets(r) if r <= len(X) else []:
        sub = X.subposet(Y)
        if not sub.is_irreducible():
            continue
        arr = ext.arrows(Y)
        for p in arr.max_below:
            for q in arr.min_above:
                left = _left_poset(sub, ext.label(p), ext.label(q), Level.L)
                contracted = ext.contract(Y, p, q)
                right = _right_poset(contracted, path)
                term = ClosedTerm(frozenset(Y), p, q, left, right, contracted)
                if drop_vanishing:
                    if normalize_sum(right).is_zero():
                        continue
                    if family is None:
                        labels = set(X.labels.values()) | {path.start, path.end}
                        family = RelationFamily(labels, r, Level.L)
                    if isinstance(span_membership(left, family), MembershipCertificate):
                        continue
                out.append(term)
    return out


def d1_closed(X: LabeledPoset, path: PathSpec = STD_PATH, *, contracted: bool = True) -> CoactionResult:
    """``D_1`` as a sum over single elements and their arrow pairs.

    The right factor is the contracted poset; with ``contracted=False`` it is the
    plain complement of the element instead.
    """
    check_admissible(X, path)
    ext = extended(X, path)
    out = FormalSum.zero()
    for x in X.elements:
        arr = ext.arrows([x])
        for p in arr.max_below:
            for q in arr.min_above:
                left = FormalSum.of((IISymbol(ext.label(p), (X.label(x),), ext.label(q), Level.L),))
                rest = ext.contract([x], p, q) if contracted else X.without([x])
                out = out + tensor(left, _right_poset(rest, path))
    return _result(out, Level.L, len(X))


Choice = Union[int, Callable[[LabeledPoset, list[TotalOrder]], TotalOrder], None]


def _choose(sub: LabeledPoset, choice: Choice) -> TotalOrder:
    exts = sub.linear_extensions()
    if choice is None:
        return exts[0]
    if isinstance(choice, int):
        return exts[choice % len(exts)]
    picked = choice(sub, exts)
    if picked not in exts:
        raise ValueError("the choice must return a linear extension of the window")
    return picked


def drprime_poset(
    X: LabeledPoset, path: PathSpec = STD_PATH, r: int = 1, choice: Choice = None
) -> CoactionResult:
    """``D_r'`` via one fixed linear extension ``Z`` of each window ``Y``.

    For every extension of ``X`` in which ``Z`` sits as a block, the left factor is
    the product over the connected components of ``Y`` taken between the block's
    neighbours, and the right factor is the word with the block removed.
    """
    check_admissible(X, path)
    _check_poset_r(X, r)
    n = len(X)
    if r > n:
        return CoactionResult(FormalSum.zero(), Level.A, n)
    ext = extended(X, path)
    out = FormalSum.zero()
    for Y in X.window_subsets(r):
        sub = X.subposet(Y)
        Z = _choose(sub, choice)
        parts = [X.subposet(c) for c in sub.connected_components()]
        for total in ext.block_extensions(Z):
            before, after = ext.neighbours(total, Y)
            a, b = ext.label(before), ext.label(after)
            left = FormalSum.one()
            for part in parts:
                left = multiply(left, _left_poset(part, a, b, Level.A))
            rest = total.restrict([x for x in total.sequence if x not in Y])
            right = FormalSum.of((_word_symbol(path, rest.word),))
            out = out + tensor(left, right)
    return _result(out, Level.A, n)


def drprime_poset_definition(X: LabeledPoset, path: PathSpec = STD_PATH, r: int = 1) -> CoactionResult:
    """``D_r'`` as the word-level formula summed over linear extensions."""
    check_admissible(X, path)
    _check_poset_r(X, r)
    n = len(X)
    if r > n:
        return CoactionResult(FormalSum.zero(), Level.A, n)
    return _result(_over_extensions(X, path, lambda w: _blocks(w, r, Level.A)), Level.A, n)


# ------------------------------------------------------------ full coaction
def _runs(total: TotalOrder, Y: frozenset) -> list[tuple[int, int]]:
    runs = []
    seq = total.sequence
    i = 0
    while i < len(seq):
        if seq[i] in Y:
            j = i
            while j + 1 < len(seq) and seq[j + 1] in Y:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    return runs


def delta_y_definition(X: LabeledPoset, Y: Iterable[str], path: PathSpec = STD_PATH) -> CoactionResult:
    """``Delta_Y``: over linear extensions, maximal runs of ``Y`` give left factors."""
    Y = frozenset(Y)
    ext = extended(X, path)
    out: dict = {}
    for total in X.linear_extensions():
        seq = total.sequence
        left = []
        for i, j in _runs(total, Y):
            a = ext.label(seq[i - 1]) if i > 0 else path.start
            b = ext.label(seq[j + 1]) if j + 1 < len(seq) else path.end
            left.append(IISymbol(a, tuple(X.label(x) for x in seq[i : j + 1]), b, Level.A))
        right = (_word_symbol(path, [X.label(x) for x in seq if x not in Y]),)
        t = TensorTerm(tuple(sorted(left, key=IISymbol.sort_key)), right)
        out[t] = out.get(t, 0) + 1
    return _result(FormalSum(out), Level.A, len(X))


def closed_hypothesis(X: LabeledPoset, Y: Iterable[str], path: PathSpec = STD_PATH) -> bool:
    """Every component of ``Y`` is a window with a single arrow on each side in the extension."""
    ext = extended(X, path)
    for Z in X.components(Y):
        if not X.is_window(Z):
            return False
        arr = ext.arrows(Z)
        if len(arr.max_below) != 1 or len(arr.min_above) != 1:
            return False
    return True


def delta_y_closed(X: LabeledPoset, Y: Iterable[str], path: PathSpec = STD_PATH) -> CoactionResult:
    """Product over components ``Z`` of ``I_(p_Z;q_Z)(Z)``, tensored with the complement."""
    Y = frozenset(Y)
    if not closed_hypothesis(X, Y, path):
        raise ValueError("the closed form for this subset needs window components with single arrows")
    ext = extended(X, path)
    left = FormalSum.one()
    for Z in X.components(Y):
        arr = ext.arrows(Z)
        left = multiply(left, _left_poset(X.subposet(Z), ext.label(arr.max_below[0]), ext.label(arr.min_above[0]), Level.A))
    right = _right_poset(X.without(Y), path)
    return _result(tensor(left, right), Level.A, len(X))


def delta_poset(X: LabeledPoset, path: PathSpec = STD_PATH, mode: str = "definition") -> CoactionResult:
    """The full coaction as a sum of ``Delta_Y`` over all subsets.

    In ``via_thm2`` mode each subset satisfying the closed-form hypothesis uses
    the closed form; the others use the definition.  ``flags`` records, per
    subset, whether the closed form was used.
    """
    check_admissible(X, path)
    if mode not in ("definition", "via_thm2"):
        raise ValueError(f"unknown mode {mode!r}")
    out = FormalSum.zero()
    flags = []
    for s in range(len(X) + 1):
        for Y in itertools.combinations(X.elements, s):
            Y = frozenset(Y)
            use_closed = mode == "via_thm2" and closed_hypothesis(X, Y, path)
            part = delta_y_closed(X, Y, path) if use_closed else delta_y_definition(X, Y, path)
            out = out + part.terms
            flags.append((tuple(sorted(Y)), use_closed))
    return _result(out, Level.A, len(X), tuple(flags))


def delta_poset_words(X: LabeledPoset, path: PathSpec = STD_PATH) -> CoactionResult:
    """The word-level coproduct summed over linear extensions."""
    check_admissible(X, path)
    return _result(_over_extensions(X, path, _delta), Level.A, len(X))
