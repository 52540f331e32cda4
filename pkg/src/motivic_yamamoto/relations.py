"""Relation instances in the path-free algebras and exact span membership.

Two engines decide whether a combination lies in the span of a relation set:

* a generic sparse elimination over exact rationals (any relation list), and
* for complete families at the indecomposable level, a rewriting engine that
  first reduces modulo shuffle products onto Lyndon words and only then
  eliminates the few remaining path-splitting relations.

Both return certificates expressed in terms of :class:`RelationInstance`
objects and both certificates are re-verified before being returned.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from ._rational import RationalLike, fmt, to_fraction
from .words import (
    ONE,
    FormalSum,
    IISymbol,
    Level,
    Monomial,
    TensorTerm,
    format_monomial,
    format_symbol,
    monomial,
    monomial_key,
    monomial_weight,
    multiply,
    normalize,
    normalize_sum,
    shuffle_sum,
    symbol_sum,
)

MAX_WEIGHT = {Level.L: 12, Level.A: 8}


class RelationKind(enum.Enum):
    UNIT = "unit"
    EQUAL_ENDPOINT = "equal_endpoint"
    REVERSAL = "reversal"
    PATH_SPLIT = "path_split"
    SHUFFLE_VANISH = "shuffle_vanish"
    SHUFFLE_PRODUCT = "shuffle_product"
    L_PRODUCT_ZERO = "l_product_zero"
    ZETA2_VANISH = "zeta2_vanish"


class BoundTooLarge(ValueError):
    pass


class UniverseMismatch(ValueError):
    pass


class UnknownRelation(KeyError):
    pass


class RelationInstance:
    """A combination asserted to vanish; ``body`` is its normalized form.

    ``raw`` and ``body`` are built on first access.
    """

    __slots__ = ("kind", "level", "provenance", "_build", "_raw", "_body", "_hash")

    def __init__(self, kind: RelationKind, level: Level, provenance: tuple, build) -> None:
        self.kind = kind
        self.level = level
        self.provenance = provenance
        self._build = build
        self._raw = None
        self._body = None
        self._hash = hash((kind, level, provenance))

    @property
    def raw(self) -> FormalSum:
        if self._raw is None:
            self._raw = self._build()
        return self._raw

    @property
    def body(self) -> FormalSum:
        if self._body is None:
            self._body = normalize_sum(self.raw)
        return self._body

    def _id(self):
        return (self.kind, self.level, self.provenance)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RelationInstance) and self._hash == other._hash and self._id() == other._id()

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"RelationInstance({self.describe()})"

    @property
    def weight(self) -> int:
        for t in self.raw:
            return monomial_weight(t)
        return 0

    def describe(self) -> str:
        return f"{self.kind.value}{_fmt_prov(self.provenance)}"


def _fmt_prov(p) -> str:
    if isinstance(p, tuple):
        return "(" + ", ".join(_fmt_prov(x) for x in p) + ")"
    if isinstance(p, Fraction):
        return fmt(p)
    if isinstance(p, IISymbol):
        return format_symbol(p)
    return str(p)


def _sym(a, word, b, level: Level) -> IISymbol:
    return IISymbol(a, tuple(word), b, level)


def _make(kind: RelationKind, level: Level, provenance: tuple, build) -> RelationInstance:
    return RelationInstance(kind, level, provenance, build)


# ----------------------------------------------------------- instance builders
def unit_relation(a, b, level: Level = Level.L) -> RelationInstance:
    a, b = to_fraction(a), to_fraction(b)
    return _make(
        RelationKind.UNIT, level, (a, b), lambda: symbol_sum(_sym(a, (), b, level)) - FormalSum.one()
    )


def equal_endpoint_relation(a, word, level: Level = Level.L) -> RelationInstance:
    a = to_fraction(a)
    word = tuple(to_fraction(x) for x in word)
    return _make(RelationKind.EQUAL_ENDPOINT, level, (a, word), lambda: symbol_sum(_sym(a, word, a, level)))


def reversal_relation(a, word, b, level: Level = Level.L) -> RelationInstance:
    a, b = to_fraction(a), to_fraction(b)
    word = tuple(to_fraction(x) for x in word)

    def build() -> FormalSum:
        return symbol_sum(_sym(a, word, b, level)) - symbol_sum(_sym(b, word[::-1], a, level), (-1) ** len(word))

    return _make(RelationKind.REVERSAL, level, (a, word, b), build)


def path_split_relation(a, word, b, c, level: Level = Level.L) -> RelationInstance:
    """``I(a;w;b)`` minus its splitting at ``c`` (telescoping form at level L)."""
    a, b, c = to_fraction(a), to_fraction(b), to_fraction(c)
    word = tuple(to_fraction(x) for x in word)

    def build() -> FormalSum:
        raw = symbol_sum(_sym(a, word, b, level))
        if level is Level.L:
            return raw - symbol_sum(_sym(a, word, c, level)) - symbol_sum(_sym(c, word, b, level))
        parts: dict = {}
        for j in range(len(word) + 1):
            m = monomial(_sym(a, word[:j], c, level), _sym(c, word[j:], b, level))
            parts[m] = parts.get(m, 0) + 1
        return raw - FormalSum(parts)

    return _make(RelationKind.PATH_SPLIT, level, (a, word, b, c), build)


def shuffle_vanish_relation(a, alpha, beta, b) -> RelationInstance:
    """``I^l(a; alpha sh beta; b) = 0`` for nonempty ``alpha``, ``beta``."""
    a, b = to_fraction(a), to_fraction(b)
    alpha = tuple(to_fraction(x) for x in alpha)
    beta = tuple(to_fraction(x) for x in beta)

    def build() -> FormalSum:
        return FormalSum({(_sym(a, w, b, Level.L),): c for w, c in shuffle_sum(alpha, beta).items()})

    return _make(RelationKind.SHUFFLE_VANISH, Level.L, (a, alpha, beta, b), build)


def shuffle_product_relation(a, alpha, beta, b) -> RelationInstance:
    """``I^a(a;alpha;b) I^a(a;beta;b) - I^a(a; alpha sh beta; b)``."""
    a, b = to_fraction(a), to_fraction(b)
    alpha = tuple(to_fraction(x) for x in alpha)
    beta = tuple(to_fraction(x) for x in beta)

    def build() -> FormalSum:
        prod = FormalSum.of(monomial(_sym(a, alpha, b, Level.A), _sym(a, beta, b, Level.A)))
        sh = FormalSum({(_sym(a, w, b, Level.A),): c for w, c in shuffle_sum(alpha, beta).items()})
        return prod - sh

    return _make(RelationKind.SHUFFLE_PRODUCT, Level.A, (a, alpha, beta, b), build)


def zeta2_relation(level: Level = Level.A) -> RelationInstance:
    """``I(0;1,0;1) = 0``: the motivic 2*pi*i is divided out, and zeta(2) is a multiple of its square."""
    return _make(
        RelationKind.ZETA2_VANISH, level, (Fraction(0), Fraction(1)),
        lambda: symbol_sum(_sym(0, (1, 0), 1, level)),
    )


def l_product_zero_relation(s: IISymbol, t: IISymbol) -> RelationInstance:
    return _make(RelationKind.L_PRODUCT_ZERO, Level.L, (s, t), lambda: FormalSum.of(monomial(s, t)))


def times(rel: RelationInstance, m: Monomial) -> RelationInstance:
    """The ideal multiple ``m * rel`` (path-free level)."""
    return _make(
        rel.kind, rel.level, rel.provenance + (("times",) + tuple(m),), lambda: multiply(rel.raw, FormalSum.of(m))
    )


# --------------------------------------------------------------- families
def _words(labels: Sequence[Fraction], k: int) -> Iterator[tuple[Fraction, ...]]:
    return itertools.product(labels, repeat=k)


class RelationFamily(Sequence):
    """All generated instances for a label set, weight bound, level and monomial degree.

    Behaves as a (lazily materialized) deterministic sequence of
    :class:`RelationInstance`; the span engines use its parameters directly.
    """

    def __init__(self, labels: Iterable[RationalLike], weight: int, level: Level, monomial_degree: int = 2) -> None:
        self.labels = tuple(sorted({to_fraction(x) for x in labels}))
        if weight < 0:
            raise ValueError("weight bound must be nonnegative")
        if weight > MAX_WEIGHT[level]:
            raise BoundTooLarge(f"weight {weight} exceeds the cap {MAX_WEIGHT[level]} for level {level.value}")
        self.weight = weight
        self.level = level
        self.degree = monomial_degree if level is Level.A else 1
        self._items: list[RelationInstance] | None = None
        self._lock = threading.Lock()

    def _generate(self) -> Iterator[RelationInstance]:
        L, lev = self.labels, self.level
        for a in L:
            for b in L:
                yield unit_relation(a, b, lev)
        for k in range(1, self.weight + 1):
            yield from self.base_relations(k)
        if lev is Level.L:
            for k in range(2, self.weight + 1):
                for k1 in range(1, k):
                    for s in self._symbols(k1):
                        for t in self._symbols(k - k1):
                            if s.sort_key() <= t.sort_key():
                                yield l_product_zero_relation(s, t)
        elif self.degree >= 2:
            yield from self._multiples()

    def _symbols(self, k: int) -> Iterator[IISymbol]:
        for a in self.labels:
            for b in self.labels:
                for w in _words(self.labels, k):
                    yield _sym(a, w, b, self.level)

    def base_relations(self, k: int) -> Iterator[RelationInstance]:
        L, lev = self.labels, self.level
        for a in L:
            for w in _words(L, k):
                yield equal_endpoint_relation(a, w, lev)
        for a in L:
            for b in L:
                if a != b:
                    for w in _words(L, k):
                        yield reversal_relation(a, w, b, lev)
        for a in L:
            for b in L:
                for c in L:
                    for w in _words(L, k):
                        yield path_split_relation(a, w, b, c, lev)
        for a in L:
            for b in L:
                for k1 in range(1, k):
                    for alpha in _words(L, k1):
                        for beta in _words(L, k - k1):
                            if lev is Level.L:
                                yield shuffle_vanish_relation(a, alpha, beta, b)
                            elif self.degree >= 2 and (k1, alpha) <= (k - k1, beta):
                                yield shuffle_product_relation(a, alpha, beta, b)
        if lev is Level.A and k == 2 and {Fraction(0), Fraction(1)} <= set(L):
            yield zeta2_relation(lev)

    def _multiples(self) -> Iterator[RelationInstance]:
        # nonzero canonical symbols of positive weight, used as ideal multipliers
        canon: list[IISymbol] = []
        for k in range(1, self.weight):
            for s in self._symbols(k):
                n = normalize(s)
                if n.items() and n.items()[0][0] == (s,):
                    canon.append(s)
        for k in range(1, self.weight):
            for rel in self.base_relations(k):
                if rel.body.is_zero():
                    continue
                deg = max(len(t) for t in rel.body)
                for extra in range(1, self.degree - deg + 1):
                    for combo in itertools.combinations_with_replacement(canon, extra):
                        if k + sum(s.weight for s in combo) <= self.weight:
                            yield times(rel, monomial(*combo))

    def _materialize(self) -> list[RelationInstance]:
        with self._lock:
            if self._items is None:
                seen = set()
                items = []
                for r in self._generate():
                    if r not in seen:
                        seen.add(r)
                        items.append(r)
                self._items = items
            return self._items

    def __len__(self) -> int:
        return len(self._materialize())

    def __getitem__(self, i):
        return self._materialize()[i]

    def __iter__(self) -> Iterator[RelationInstance]:
        return iter(self._materialize())

    def contains(self, rel: RelationInstance) -> bool:
        """Whether ``rel`` is one of the family's instances (checked structurally)."""
        if rel.level is not self.level:
            return False
        labels = set(self.labels)

        def ok_word(w) -> bool:
            return all(x in labels for x in w)

        p = rel.provenance
        base = p
        multiplier = ()
        if p and isinstance(p[-1], tuple) and p[-1] and p[-1][0] == "times":
            base, multiplier = p[:-1], p[-1][1:]
            if self.level is not Level.A:
                return False
        try:
            if rel.kind is RelationKind.UNIT:
                ok = base[0] in labels and base[1] in labels
                weight = 0
            elif rel.kind is RelationKind.EQUAL_ENDPOINT:
                ok = base[0] in labels and ok_word(base[1])
                weight = len(base[1])
            elif rel.kind is RelationKind.REVERSAL:
                ok = base[0] in labels and base[2] in labels and ok_word(base[1])
                weight = len(base[1])
            elif rel.kind is RelationKind.PATH_SPLIT:
                ok = all(x in labels for x in (base[0], base[2], base[3])) and ok_word(base[1])
                weight = len(base[1])
            elif rel.kind in (RelationKind.SHUFFLE_VANISH, RelationKind.SHUFFLE_PRODUCT):
                ok = (
                    base[0] in labels and base[3] in labels and ok_word(base[1]) and ok_word(base[2])
                    and len(base[1]) > 0 and len(base[2]) > 0
                )
                weight = len(base[1]) + len(base[2])
                if rel.kind is RelationKind.SHUFFLE_VANISH and self.level is not Level.L:
                    return False
                if rel.kind is RelationKind.SHUFFLE_PRODUCT and (self.level is not Level.A or self.degree < 2):
                    return False
            elif rel.kind is RelationKind.ZETA2_VANISH:
                ok = self.level is Level.A and base == (Fraction(0), Fraction(1)) and set(base) <= labels
                weight = 2
            elif rel.kind is RelationKind.L_PRODUCT_ZERO:
                ok = self.level is Level.L and all(
                    s.start in labels and s.end in labels and ok_word(s.interior) for s in base
                )
                weight = sum(s.weight for s in base)
            else:
                return False
        except (IndexError, TypeError):
            return False
        weight += sum(s.weight for s in multiplier)
        if multiplier and max((len(t) for t in rel.body), default=0) > self.degree:
            return False
        return ok and weight <= self.weight

    def describe(self) -> dict:
        return {
            "labels": [fmt(x) for x in self.labels],
            "weight": self.weight,
            "level": self.level.value,
            "monomial_degree": self.degree,
        }


def generate_relations(
    labels: Iterable[RationalLike], weight: int, level: Level = Level.L, monomial_degree: int = 2
) -> RelationFamily:
    """Deterministic, duplicate-free instances up to ``weight`` over ``labels``."""
    return RelationFamily(labels, weight, level, monomial_degree)


# ----------------------------------------------------------- certificates
@dataclass
class MembershipCertificate:
    """``target == sum(coeff * relation.body (x) right)`` over the entries."""

    entries: dict  # (RelationInstance, right monomial or None) -> Fraction
    family: RelationFamily | None = None
    engine: str = "elimination"

    def __len__(self) -> int:
        return len(self.entries)

    def combination(self) -> FormalSum:
        out: dict = {}
        for (rel, right), c in self.entries.items():
            for t, d in rel.body.items():
                key = t if right is None else TensorTerm(t, right)
                out[key] = out.get(key, 0) + c * d
        return FormalSum(out)

    def scaled(self, c: RationalLike) -> "MembershipCertificate":
        c = to_fraction(c)
        return MembershipCertificate({k: v * c for k, v in self.entries.items() if v * c}, self.family, self.engine)

    def kinds(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for rel, _ in self.entries:
            out[rel.kind.value] = out.get(rel.kind.value, 0) + 1
        return out

    def to_json(self) -> list[dict]:
        rows = []
        for (rel, right), c in sorted(self.entries.items(), key=lambda kv: (kv[0][0].describe(), str(kv[0][1]))):
            row = {"kind": rel.kind.value, "provenance": _fmt_prov(rel.provenance), "coeff": fmt(c)}
            if right is not None:
                row["right"] = format_monomial(right)
            rows.append(row)
        return rows


@dataclass
class NotMember:
    """Negative answer, relative to the supplied relations only."""

    residual: FormalSum
    target: FormalSum

    def __bool__(self) -> bool:
        return False


def verify_certificate(target: FormalSum, certificate: MembershipCertificate) -> bool:
    fam = certificate.family
    if fam is not None:
        for rel, _ in certificate.entries:
            if not fam.contains(rel):
                raise UnknownRelation(rel.describe())
    return certificate.combination() == normalize_sum(target)


# ------------------------------------------------------ generic elimination
class _Echelon:
    """Semi-echelon rows keyed by pivot = smallest monomial in canonical order."""

    def __init__(self) -> None:
        self.rows: dict = {}

    def reduce(self, vec: dict, used: dict) -> tuple[dict, dict]:
        vec = dict(vec)
        used = dict(used)
        heap = [(monomial_key(t), t) for t in vec]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, t = heapq.heappop(heap)
            if t in seen:
                continue
            seen.add(t)
            c = vec.get(t)
            if not c or t not in self.rows:
                continue
            row, combo = self.rows[t]
            for u, d in row.items():
                nv = vec.get(u, 0) - c * d
                if nv:
                    vec[u] = nv
                    if u not in seen:
                        heapq.heappush(heap, (monomial_key(u), u))
                else:
                    vec.pop(u, None)
            for r, d in combo.items():
                nv = used.get(r, 0) + c * d
                if nv:
                    used[r] = nv
                else:
                    used.pop(r, None)
        return vec, used

    def add(self, vec: dict, combo: dict) -> None:
        # rows hold vec = sum(combo) exactly; reducing by rows keeps that invariant
        red, used = self.reduce(vec, {})
        if not red:
            return
        for r, d in used.items():
            combo = dict(combo)
            combo[r] = combo.get(r, 0) - d
            if not combo[r]:
                del combo[r]
        pivot = min(red, key=monomial_key)
        inv = 1 / red[pivot]
        self.rows[pivot] = ({u: d * inv for u, d in red.items()}, {r: d * inv for r, d in combo.items()})


class _EliminationSpan:
    def __init__(self, relations: Sequence[RelationInstance]) -> None:
        self.by_weight: dict[int, list[RelationInstance]] = {}
        for rel in relations:
            if rel.body.is_zero():
                continue
            w = {monomial_weight(t) for t in rel.body}
            if len(w) != 1:
                raise ValueError(f"inhomogeneous relation {rel.describe()}")
            self.by_weight.setdefault(w.pop(), []).append(rel)
        self.levels = {rel.level for rel in relations}
        self._ech: dict[int, _Echelon] = {}
        self._lock = threading.Lock()

    def echelon(self, w: int) -> _Echelon:
        with self._lock:
            if w not in self._ech:
                e = _Echelon()
                for rel in self.by_weight.get(w, ()):
                    e.add(rel.body.terms(), {rel: Fraction(1)})
                self._ech[w] = e
            return self._ech[w]

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        groups: dict[int, dict] = {}
        for t, c in vec.items():
            groups.setdefault(monomial_weight(t), {})[t] = c
        residual: dict = {}
        used: dict = {}
        for w, g in sorted(groups.items()):
            r, u = self.echelon(w).reduce(g, {})
            residual.update(r)
            for k, v in u.items():
                used[k] = used.get(k, 0) + v
        return residual, used


# --------------------------------------------- shuffle quotient (level L)
def lyndon_factorization(w: tuple) -> list[tuple]:
    out = []
    n = len(w)
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        while i <= k:
            out.append(w[i : i + j - k])
            i += j - k
    return out


def is_lyndon(w: tuple) -> bool:
    return len(w) > 0 and len(lyndon_factorization(w)) == 1


@lru_cache(maxsize=None)
def _factor_product(w: tuple) -> tuple[Fraction, tuple, dict]:
    """Shuffle product of the Lyndon factors of ``w`` as ``l1 sh x`` pieces.

    Returns (coefficient of w, ((x, multiplicity), ...), full product).
    """
    fs = lyndon_factorization(w)
    rest: dict = {(): 1}
    for f in fs[1:]:
        nxt: dict = {}
        for x, c in rest.items():
            for y, d in shuffle_sum(x, f).items():
                nxt[y] = nxt.get(y, 0) + c * d
        rest = nxt
    total: dict = {}
    for x, m in rest.items():
        for y, d in shuffle_sum(fs[0], x).items():
            total[y] = total.get(y, 0) + m * d
    lead = total[w]
    if any(y > w for y in total):
        raise AssertionError("leading word property violated")
    return Fraction(lead), tuple(sorted(rest.items())), total


def shuffle_reduce(vec: dict) -> tuple[dict, dict]:
    """Rewrite an L-vector onto Lyndon words modulo shuffle products.

    Returns ``(reduced, used)`` with ``vec == reduced + sum(used[s] * s.body)``,
    where the keys of ``used`` are shuffle-vanishing instances.
    """
    groups: dict = {}
    reduced: dict = {}
    for t, c in vec.items():
        if len(t) != 1:
            reduced[t] = reduced.get(t, 0) + c
            continue
        s = t[0]
        groups.setdefault((s.start, s.end, s.weight), {})[s.interior] = c
    used: dict = {}
    for (a, b, _), words in groups.items():
        heap = [tuple(-x for x in w) for w in words]
        heapq.heapify(heap)
        done = set()
        while heap:
            neg = heapq.heappop(heap)
            w = tuple(-x for x in neg)
            if w in done:
                continue
            done.add(w)
            c = words.pop(w, 0)
            if not c:
                continue
            if is_lyndon(w):
                t = (IISymbol(a, w, b, Level.L),)
                reduced[t] = reduced.get(t, 0) + c
                continue
            lead, pieces, total = _factor_product(w)
            scale = c / lead
            l1 = lyndon_factorization(w)[0]
            for x, m in pieces:
                rel = shuffle_vanish_relation(a, l1, x, b)
                used[rel] = used.get(rel, 0) + scale * m
            for y, d in total.items():
                if y == w:
                    continue
                nv = words.get(y, 0) - scale * d
                if nv:
                    if y not in words:
                        heapq.heappush(heap, tuple(-x for x in y))
                    words[y] = nv
                else:
                    words.pop(y, None)
    reduced = {t: c for t, c in reduced.items() if c}
    used = {r: c for r, c in used.items() if c}
    return reduced, used


class _ShuffleQuotientSpan:
    """Span of a complete level-L family, computed modulo shuffle products first."""

    def __init__(self, family: RelationFamily) -> None:
        self.family = family
        self._ech: dict[int, _Echelon] = {}
        self._lock = threading.Lock()

    def echelon(self, k: int) -> _Echelon:
        with self._lock:
            if k not in self._ech:
                e = _Echelon()
                L = self.family.labels
                if k <= self.family.weight:
                    for w in _words(L, k):
                        if not is_lyndon(w):
                            continue
                        for a in L:
                            for b in L:
                                for c in L:
                                    rel = path_split_relation(a, w, b, c, Level.L)
                                    if rel.body.is_zero():
                                        continue
                                    red, used = shuffle_reduce(rel.body.terms())
                                    combo = {rel: Fraction(1)}
                                    for s, d in used.items():
                                        combo[s] = combo.get(s, 0) - d
                                    e.add(red, combo)
                self._ech[k] = e
            return self._ech[k]

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        red, used = shuffle_reduce(vec)
        groups: dict[int, dict] = {}
        for t, c in red.items():
            groups.setdefault(monomial_weight(t), {})[t] = c
        residual: dict = {}
        for w, g in sorted(groups.items()):
            if w == 0 or w > self.family.weight:
                residual.update(g)
                continue
            r, u = self.echelon(w).reduce(g, {})
            residual.update(r)
            for k, v in u.items():
                used[k] = used.get(k, 0) + v
        return residual, {k: v for k, v in used.items() if v}


_ENGINES: dict = {}
_ENGINES_LOCK = threading.Lock()


def _engine(relations, engine: str):
    key = (id(relations), engine)
    with _ENGINES_LOCK:
        hit = _ENGINES.get(key)
        if hit is not None and hit[0] is relations:
            return hit[1]
    if engine == "shuffle":
        eng = _ShuffleQuotientSpan(relations)
    else:
        eng = _EliminationSpan(list(relations))
    with _ENGINES_LOCK:
        _ENGINES[key] = (relations, eng)
    return eng


def _check_universe(target: FormalSum, relations) -> None:
    levels = {r.level for r in relations} if not isinstance(relations, RelationFamily) else {relations.level}
    for t in target:
        mono = t.left if isinstance(t, TensorTerm) else t
        for s in mono:
            if s.level is Level.M or (levels and s.level not in levels):
                raise UniverseMismatch(f"{format_symbol(s)} is outside the relation universe")


def span_membership(target: FormalSum, relations, *, engine: str = "auto"):
    """Certificate that ``target`` lies in the span of ``relations``, or :class:`NotMember`.

    ``target`` may be a combination of monomials or of tensor terms; in the
    latter case each right factor is treated separately.  ``engine`` is
    ``"auto"``, ``"elimination"`` or ``"shuffle"`` (complete level-L families).
    """
    target = normalize_sum(target)
    _check_universe(target, relations)
    family = relations if isinstance(relations, RelationFamily) else None
    if engine == "auto":
        engine = "shuffle" if family is not None and family.level is Level.L else "elimination"
    if engine == "shuffle" and (family is None or family.level is not Level.L):
        raise ValueError("the shuffle engine needs a complete level-L relation family")
    if target.is_zero():
        return MembershipCertificate({}, family, engine)
    eng = _engine(relations, engine)

    groups: dict = {}
    for t, c in target.items():
        if isinstance(t, TensorTerm):
            groups.setdefault(t.right, {})[t.left] = c
        else:
            groups.setdefault(None, {})[t] = c
    entries: dict = {}
    residual: dict = {}
    for right, vec in groups.items():
        res, used = eng.reduce(vec)
        for t, c in res.items():
            residual[t if right is None else TensorTerm(t, right)] = c
        for rel, c in used.items():
            entries[(rel, right)] = c
    if residual:
        return NotMember(FormalSum(residual), target)
    cert = MembershipCertificate(entries, family, engine)
    if cert.combination() != target:
        raise AssertionError("internal error: certificate does not reproduce the target")
    return cert
