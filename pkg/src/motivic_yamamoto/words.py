"""Iterated-integral symbols, formal linear combinations, and the word algebra.

Three flavours of symbol share one type, distinguished by ``level``:

* ``Level.M``: a path-tagged symbol ``I^m_gamma(a0; a1..ak; a_{k+1})``
* ``Level.A``: a path-free symbol ``I^a(...)``
* ``Level.L``: the image ``I^l(...)`` in the quotient by products of positive weight

A *monomial* is a sorted tuple of symbols (the empty tuple is 1).  A
:class:`TensorTerm` pairs a monomial of path-free symbols with a monomial of
path-tagged ones.  :class:`FormalSum` holds rational combinations of monomials
or tensor terms.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from ._rational import RationalLike, fmt, to_fraction

STD = "std"


class Level(enum.Enum):
    M = "m"
    A = "a"
    L = "l"


class NotBinaryWord(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class NotAdmissibleIndex(ValueError):
    pass


class LiteralError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IISymbol:
    start: Fraction
    interior: tuple[Fraction, ...]
    end: Fraction
    level: Level = Level.A
    path: str | None = None
    _key: tuple = field(init=False, repr=False, compare=False, default=())
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", to_fraction(self.start))
        object.__setattr__(self, "end", to_fraction(self.end))
        object.__setattr__(self, "interior", tuple(to_fraction(v) for v in self.interior))
        if self.level is Level.M:
            if self.path is None:
                object.__setattr__(self, "path", STD)
        elif self.path is not None:
            raise ValueError("only path-tagged (level M) symbols carry a path")
        key = (len(self.interior), self.labels, self.level.value, self.path or "")
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IISymbol):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    @property
    def weight(self) -> int:
        return len(self.interior)

    @property
    def labels(self) -> tuple[Fraction, ...]:
        return (self.start,) + self.interior + (self.end,)

    def sort_key(self) -> tuple:
        return self._key

    def __lt__(self, other: "IISymbol") -> bool:
        return self.sort_key() < other.sort_key()

    def with_interior(self, interior: Sequence[RationalLike]) -> "IISymbol":
        return IISymbol(self.start, tuple(interior), self.end, self.level, self.path)

    def at_level(self, level: Level, path: str | None = None) -> "IISymbol":
        if level is Level.M:
            return IISymbol(self.start, self.interior, self.end, level, path or self.path or STD)
        return IISymbol(self.start, self.interior, self.end, level, None)

    def __str__(self) -> str:
        return format_symbol(self)

    def __repr__(self) -> str:
        return f"IISymbol<{format_symbol(self)}>"


Monomial = tuple  # tuple[IISymbol, ...], sorted
ONE: Monomial = ()


def monomial(*symbols: IISymbol) -> Monomial:
    return tuple(sorted(symbols, key=IISymbol.sort_key))


def monomial_key(m: Monomial) -> tuple:
    return (sum(s.weight for s in m), len(m), tuple(s.sort_key() for s in m))


def monomial_weight(m: Monomial) -> int:
    return sum(s.weight for s in m)


@dataclass(frozen=True)
class TensorTerm:
    """``left`` (path-free monomial) tensor ``right`` (path-tagged monomial)."""

    left: Monomial
    right: Monomial

    def sort_key(self) -> tuple:
        return (monomial_key(self.right), monomial_key(self.left))

    @property
    def weights(self) -> tuple[int, int]:
        return monomial_weight(self.left), monomial_weight(self.right)

    def __str__(self) -> str:
        return f"{format_monomial(self.left)} ⊗ {format_monomial(self.right)}"


Term = Union[Monomial, TensorTerm]


def term_key(t: Term) -> tuple:
    if isinstance(t, TensorTerm):
        return (1,) + t.sort_key()
    return (0, monomial_key(t))


class FormalSum:
    """A finite rational linear combination with no zero coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Term, RationalLike] | Iterable[tuple[Term, RationalLike]] = ()) -> None:
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for t, c in items:
            c = to_fraction(c)
            if c:
                acc[t] = acc.get(t, 0) + c
        self._terms = {t: c for t, c in acc.items() if c}
        self._hash = None

    @classmethod
    def of(cls, term: Term, coeff: RationalLike = 1) -> "FormalSum":
        return cls({term: coeff})

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def one(cls) -> "FormalSum":
        return cls({ONE: 1})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(sorted(self._terms, key=term_key))

    def items(self) -> list[tuple[Term, Fraction]]:
        return [(t, self._terms[t]) for t in self]

    def coeff(self, term: Term) -> Fraction:
        return self._terms.get(term, Fraction(0))

    def terms(self) -> dict:
        return dict(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self._terms)
        for t, c in other._terms.items():
            out[t] = out.get(t, 0) + c
        return FormalSum(out)

    def __neg__(self) -> "FormalSum":
        return FormalSum({t: -c for t, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scale(self, c: RationalLike) -> "FormalSum":
        c = to_fraction(c)
        return FormalSum({t: c * v for t, v in self._terms.items()})

    def __rmul__(self, c: RationalLike) -> "FormalSum":
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, FormalSum):
            return multiply(self, other)
        return self.scale(other)

    def map(self, f: Callable[[Term], "FormalSum"]) -> "FormalSum":
        out: dict = {}
        for t, c in self._terms.items():
            for u, d in f(t)._terms.items():
                out[u] = out.get(u, 0) + c * d
        return FormalSum(out)

    def filter(self, keep: Callable[[Term], bool]) -> "FormalSum":
        return FormalSum({t: c for t, c in self._terms.items() if keep(t)})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for t, c in self.items():
            body = str(t) if isinstance(t, TensorTerm) else format_monomial(t)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            parts.append((sign, body if a == 1 else f"{fmt(a)}*{body}"))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"FormalSum({self})"


def multiply(x: FormalSum, y: FormalSum) -> FormalSum:
    """Product of combinations of monomials (commutative concatenation)."""
    out: dict = {}
    for s, a in x.items():
        for t, b in y.items():
            m = tuple(sorted(s + t, key=IISymbol.sort_key))
            out[m] = out.get(m, 0) + a * b
    return FormalSum(out)


def symbol_sum(s: IISymbol, coeff: RationalLike = 1) -> FormalSum:
    return FormalSum({(s,): coeff})


# ------------------------------------------------------------- normalization
_ZERO_PATTERNS = {
    (Fraction(0), Fraction(0), Fraction(1)),
    (Fraction(0), Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(0)),
}


def _canonical_reversal(s: IISymbol) -> tuple[IISymbol, int]:
    lab = s.labels
    rev = lab[::-1]
    if rev < lab:
        return IISymbol(rev[0], rev[1:-1], rev[-1], s.level, None), (-1) ** s.weight
    return s, 1


@lru_cache(maxsize=None)
def _normalize_symbol(s: IISymbol) -> FormalSum:
    if s.weight == 0:
        return FormalSum.one()
    if s.start == s.end:
        return FormalSum.zero()
    if s.weight == 1 and s.labels in _ZERO_PATTERNS:
        return FormalSum.zero()
    if s.level is Level.M:
        return symbol_sum(s)
    c, sign = _canonical_reversal(s)
    return symbol_sum(c, sign)


def normalize(s: IISymbol) -> FormalSum:
    """Unit, equal-endpoint, small-weight vanishing and (path-free) reversal rules."""
    return _normalize_symbol(s)


def _l_product_zero(m: Monomial) -> bool:
    return sum(1 for s in m if s.level is Level.L and s.weight > 0) >= 2


def normalize_monomial(m: Monomial) -> FormalSum:
    out = FormalSum.one()
    for s in m:
        out = multiply(out, _normalize_symbol(s))
        if out.is_zero():
            return out
    return out.filter(lambda t: not _l_product_zero(t))


def normalize_term(t: Term) -> FormalSum:
    if isinstance(t, TensorTerm):
        left = normalize_monomial(t.left)
        if left.is_zero():
            return left
        right = normalize_monomial(t.right)
        return FormalSum(
            {TensorTerm(a, b): c * d for a, c in left.items() for b, d in right.items()}
        )
    return normalize_monomial(t)


def normalize_sum(x: FormalSum) -> FormalSum:
    return x.map(normalize_term)


# ---------------------------------------------------------- basic operations
def inverse_path(tag: str) -> str:
    return tag[:-3] if tag.endswith("^-1") else tag + "^-1"


def reverse(s: IISymbol) -> FormalSum:
    """The symbol along the reversed path, with sign ``(-1)^weight``."""
    path = inverse_path(s.path) if s.path is not None else None
    r = IISymbol(s.end, s.interior[::-1], s.start, s.level, path)
    return symbol_sum(r, (-1) ** s.weight)


def shuffle(alpha: Sequence, beta: Sequence) -> list[tuple]:
    """All interleavings of ``alpha`` and ``beta`` as a list (with multiplicity)."""
    alpha, beta = tuple(alpha), tuple(beta)
    n = len(alpha) + len(beta)
    out = []
    for pos in combinations(range(n), len(alpha)):
        word = [None] * n
        chosen = set(pos)
        ia = iter(alpha)
        ib = iter(beta)
        for i in range(n):
            word[i] = next(ia) if i in chosen else next(ib)
        out.append(tuple(word))
    return out


def shuffle_sum(alpha: Sequence, beta: Sequence) -> dict[tuple, int]:
    acc: dict[tuple, int] = {}
    for w in shuffle(alpha, beta):
        acc[w] = acc.get(w, 0) + 1
    return acc


def shuffle_product(s: IISymbol, t: IISymbol) -> FormalSum:
    """Product of two symbols with common endpoints (and path), as a shuffle expansion."""
    if (s.start, s.end, s.level, s.path) != (t.start, t.end, t.level, t.path):
        raise ValueError("shuffle product needs equal endpoints, level and path")
    return FormalSum({(s.with_interior(w),): c for w, c in shuffle_sum(s.interior, t.interior).items()})


def path_compose_expand(
    s: IISymbol, split: tuple[str, str] = (STD, STD), c: RationalLike = 0, *, normalized: bool = True
) -> FormalSum:
    """Split the path of ``s`` at the point ``c``: sum over ``interior = alpha beta``."""
    c = to_fraction(c)
    level = s.level
    p1, p2 = split if level is Level.M else (None, None)
    out = FormalSum.zero()
    terms = {}
    for j in range(s.weight + 1):
        a = IISymbol(s.start, s.interior[:j], c, level, p1)
        b = IISymbol(c, s.interior[j:], s.end, level, p2)
        m = monomial(a, b)
        terms[m] = terms.get(m, 0) + 1
    out = FormalSum(terms)
    return normalize_sum(out) if normalized else out


# ----------------------------------------------------------- regularization
def _word01(interior: Sequence[Fraction]) -> tuple[int, ...]:
    w = []
    for v in interior:
        if v == 0:
            w.append(0)
        elif v == 1:
            w.append(1)
        else:
            raise NotBinaryWord(f"label {v} is not 0 or 1")
    return tuple(w)


@lru_cache(maxsize=None)
def _reg(w: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    if not w:
        return (((), Fraction(1)),)
    if all(x == 0 for x in w) or all(x == 1 for x in w):
        return ()
    acc: dict[tuple[int, ...], Fraction] = {}
    if w[0] == 0:
        a = next(i for i, x in enumerate(w) if x == 1)
        v = w[a:]
        head = (0,) * (a - 1)
        scale = Fraction(-1, a)
        parts = [head + v[:j] + (0,) + v[j:] for j in range(1, len(v) + 1)]
    elif w[-1] == 1:
        b = next(i for i, x in enumerate(reversed(w)) if x == 0)
        u = w[: len(w) - b]
        tail = (1,) * (b - 1)
        scale = Fraction(-1, b)
        parts = [u[:j] + (1,) + u[j:] + tail for j in range(len(u))]
    else:
        return ((w, Fraction(1)),)
    for p in parts:
        for q, c in _reg(p):
            acc[q] = acc.get(q, 0) + scale * c
    return tuple((q, c) for q, c in sorted(acc.items()) if c)


def regularize_word(word: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """Rewrite ``I(0; word; 1)`` over admissible words (start 1, end 0)."""
    return dict(_reg(_word01([to_fraction(x) for x in word])))


def regularize(s: IISymbol) -> FormalSum:
    if s.start != 0 or s.end != 1:
        raise NotBinaryWord("regularization needs endpoints 0 and 1")
    w = _word01(s.interior)
    return FormalSum({(s.with_interior(q),) if q else ONE: c for q, c in _reg(w)})


def regularize_sum(x: FormalSum, *, left: bool = True, right: bool = True) -> FormalSum:
    """Regularize every symbol with endpoints (0, 1) and binary interior inside ``x``."""

    def reg_symbol(s: IISymbol) -> FormalSum:
        if s.start == 0 and s.end == 1 and all(v in (0, 1) for v in s.interior):
            return regularize(s)
        return symbol_sum(s)

    def reg_monomial(m: Monomial) -> FormalSum:
        out = FormalSum.one()
        for s in m:
            out = multiply(out, reg_symbol(s))
        return out

    def reg_term(t: Term) -> FormalSum:
        if isinstance(t, TensorTerm):
            lft = reg_monomial(t.left) if left else FormalSum.of(t.left)
            rgt = reg_monomial(t.right) if right else FormalSum.of(t.right)
            return FormalSum({TensorTerm(a, b): c * d for a, c in lft.items() for b, d in rgt.items()})
        return reg_monomial(t)

    return normalize_sum(normalize_sum(x).map(reg_term))


# ------------------------------------------------------------ MZV encoding
def index_to_word(index: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """``zeta(k1..kd) = sign * I(0; word; 1)``; returns ``(sign, word)``."""
    index = tuple(index)
    if not index or any(k < 1 for k in index) or index[-1] < 2:
        raise NotAdmissibleIndex(f"{index} is not an admissible index")
    word: list[int] = []
    for k in index:
        word += [1] + [0] * (k - 1)
    return (-1) ** len(index), tuple(word)


def word_to_index(word: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    w = _word01([to_fraction(x) for x in word])
    if not w or w[0] != 1 or w[-1] != 0:
        raise NotAdmissible(f"{w} is not an admissible word")
    index = []
    for x in w:
        if x == 1:
            index.append(1)
        else:
            index[-1] += 1
    return (-1) ** len(index), tuple(index)


def zeta_symbol(index: Sequence[int], level: Level = Level.M, path: str | None = None) -> FormalSum:
    sign, word = index_to_word(index)
    s = IISymbol(0, word, 1, level, path if level is Level.M else None)
    return symbol_sum(s, sign)


# --------------------------------------------------------------- literals
_LIT = re.compile(r"^\s*I([mal]?)\(([^;()]*);([^;()]*)(?:;([^;()]*))?\)(?:@(\S+))?\s*$")


def parse_symbol(text: str) -> IISymbol:
    """Parse ``I(0;1,0;1)`` (path-free), ``I(0;1,0;1)@std`` (path-tagged) or ``Il(...)``."""
    m = _LIT.match(text)
    if not m:
        raise LiteralError(f"cannot parse symbol literal {text!r}")
    flag, a, mid, b, path = m.groups()
    try:
        if b is None:
            start, interior, end = to_fraction(a), (), to_fraction(mid)
        else:
            start, end = to_fraction(a), to_fraction(b)
            interior = tuple(to_fraction(v) for v in mid.split(",")) if mid.strip() else ()
    except (ValueError, ZeroDivisionError) as exc:
        raise LiteralError(f"bad rational in {text!r}: {exc}") from None
    if path is not None or flag == "m":
        level = Level.M
    elif flag == "l":
        level = Level.L
    else:
        level = Level.A
    return IISymbol(start, interior, end, level, (path or STD) if level is Level.M else None)


def format_symbol(s: IISymbol) -> str:
    head = {Level.A: "I", Level.L: "Il", Level.M: "I"}[s.level]
    inner = ",".join(fmt(v) for v in s.interior)
    body = f"{fmt(s.start)};{inner};{fmt(s.end)}" if s.interior else f"{fmt(s.start)};{fmt(s.end)}"
    tail = f"@{s.path}" if s.level is Level.M else ""
    return f"{head}({body}){tail}"


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(format_symbol(s) for s in m)


def binomial_zeta_word(a: int, b: int) -> FormalSum:
    """Closed form of the single-1 word ``I(0; 0^a, 1, 0^b; 1)`` in admissible words."""
    word = (1,) + (0,) * (a + b)
    s = IISymbol(0, word, 1, Level.M)
    return symbol_sum(s, (-1) ** a * comb(a + b, a))


# ------------------------------------------------------------------- JSON
def parse_monomial(text: str) -> Monomial:
    text = text.strip()
    if text == "1":
        return ONE
    return monomial(*(parse_symbol(part) for part in text.split("*")))


def sum_to_json(x: FormalSum) -> list[dict]:
    """Tensor terms as ``{left: [...], right, coeff}``, monomials as ``{term, coeff}``."""
    rows = []
    for t, c in x.items():
        if isinstance(t, TensorTerm):
            rows.append({"left": [format_symbol(s) for s in t.left], "right": format_monomial(t.right), "coeff": fmt(c)})
        else:
            rows.append({"term": format_monomial(t), "coeff": fmt(c)})
    return rows


def sum_from_json(rows: Iterable[Mapping]) -> FormalSum:
    out: dict = {}
    try:
        for row in rows:
            c = to_fraction(row["coeff"])
            if "term" in row:
                t: Term = parse_monomial(row["term"])
            else:
                t = TensorTerm(monomial(*(parse_symbol(s) for s in row["left"])), parse_monomial(row["right"]))
            out[t] = out.get(t, 0) + c
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise LiteralError(f"bad formal-sum JSON: {exc}") from None
    return FormalSum(out)
