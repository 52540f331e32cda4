"""Finite labeled posets and the combinatorial constructions used by the coaction formulas.

A :class:`LabeledPoset` stores its order as the reflexive transitive closure
(one bitmask of lower elements per element), so every query that quantifies over
``x <= y`` is a table lookup.  Element identifiers are strings; enumeration order
is always the order of ``elements``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from ._rational import RationalLike, to_fraction


class PosetError(ValueError):
    """Base class for malformed poset input or violated preconditions."""


class CycleDetected(PosetError):
    pass


class UnknownElement(PosetError):
    pass


class MissingLabel(PosetError):
    pass


class Comparable(PosetError):
    pass


class NotWindow(PosetError):
    pass


class NotArrow(PosetError):
    pass


class CarrierMismatch(PosetError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class LabeledPoset:
    """A finite poset with an exact rational label on every element."""

    __slots__ = ("elements", "_labels", "_index", "_down", "_up", "_hash")

    def __init__(
        self,
        elements: Sequence[str],
        labels: Mapping[str, RationalLike] | Sequence[RationalLike],
        relations: Iterable[tuple[str, str]] = (),
    ) -> None:
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise PosetError(f"duplicate element identifiers in {elements!r}")
        index = {x: i for i, x in enumerate(elements)}
        if isinstance(labels, Mapping):
            missing = [x for x in elements if x not in labels]
            if missing:
                raise MissingLabel(f"no label for {missing}")
            extra = [x for x in labels if x not in index]
            if extra:
                raise UnknownElement(f"labels for undeclared elements {extra}")
            lab = tuple(to_fraction(labels[x]) for x in elements)
        else:
            if len(labels) != len(elements):
                raise MissingLabel("label sequence length differs from element count")
            lab = tuple(to_fraction(v) for v in labels)

        n = len(elements)
        down = [1 << i for i in range(n)]
        for a, b in relations:
            if a not in index or b not in index:
                raise UnknownElement(f"relation ({a!r}, {b!r}) references an undeclared element")
            down[index[b]] |= 1 << index[a]
        # Warshall closure on bitmasks
        for k in range(n):
            bit = 1 << k
            dk = down[k]
            for i in range(n):
                if down[i] & bit:
                    down[i] |= dk
        for i in range(n):
            for j in _bits(down[i] & ~(1 << i)):
                if down[j] >> i & 1:
                    raise CycleDetected(f"{elements[i]!r} and {elements[j]!r} lie on a cycle")
        self._init(elements, lab, index, tuple(down))

    def _init(self, elements, lab, index, down) -> None:
        n = len(elements)
        up = [0] * n
        for i in range(n):
            for j in _bits(down[i]):
                up[j] |= 1 << i
        self.elements = elements
        self._labels = lab
        self._index = index
        self._down = down
        self._up = tuple(up)
        self._hash = None

    @classmethod
    def _from_masks(cls, elements, labels, down) -> "LabeledPoset":
        obj = cls.__new__(cls)
        obj._init(tuple(elements), tuple(labels), {x: i for i, x in enumerate(elements)}, tuple(down))
        return obj

    # ------------------------------------------------------------------ basics
    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        rel = ", ".join(f"{a}<{b}" for a, b in self.covers())
        lab = ", ".join(f"{x}:{self.label(x)}" for x in self.elements)
        return f"LabeledPoset([{lab}]; {rel})"

    def _key(self):
        lab = frozenset(zip(self.elements, self._labels))
        return (lab, self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledPoset):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not an element") from None

    def _mask(self, xs: Iterable[str]) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.index(x)
        return m

    def _names(self, mask: int) -> list[str]:
        return [self.elements[i] for i in _bits(mask)]

    def label(self, x: str) -> Fraction:
        return self._labels[self.index(x)]

    @property
    def labels(self) -> dict[str, Fraction]:
        return dict(zip(self.elements, self._labels))

    def leq(self, a: str, b: str) -> bool:
        return bool(self._down[self.index(b)] >> self.index(a) & 1)

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    @property
    def order(self) -> frozenset[tuple[str, str]]:
        """The reflexive order relation as a set of pairs."""
        return frozenset(
            (self.elements[j], self.elements[i]) for i in range(len(self)) for j in _bits(self._down[i])
        )

    def strict_pairs(self) -> list[tuple[str, str]]:
        return [
            (self.elements[j], self.elements[i])
            for i in range(len(self))
            for j in _bits(self._down[i] & ~(1 << i))
        ]

    def covers(self) -> list[tuple[str, str]]:
        out = []
        for i in range(len(self)):
            below = self._down[i] & ~(1 << i)
            for j in _bits(below):
                # j covered by i unless some k strictly between
                if not any(self._down[k] >> j & 1 for k in _bits(below & ~(1 << j))):
                    out.append((self.elements[j], self.elements[i]))
        out.sort(key=lambda p: (self._index[p[0]], self._index[p[1]]))
        return out

    def minimal(self) -> list[str]:
        return [x for i, x in enumerate(self.elements) if self._down[i] == 1 << i]

    def maximal(self) -> list[str]:
        return [x for i, x in enumerate(self.elements) if self._up[i] == 1 << i]

    def down(self, x: str, strict: bool = True) -> list[str]:
        i = self.index(x)
        m = self._down[i] & ~(1 << i) if strict else self._down[i]
        return self._names(m)

    def up(self, x: str, strict: bool = True) -> list[str]:
        i = self.index(x)
        m = self._up[i] & ~(1 << i) if strict else self._up[i]
        return self._names(m)

    def is_total(self) -> bool:
        n = len(self)
        return all(bin(self._down[i] | self._up[i]).count("1") == n for i in range(n))

    def rename(self, mapping: Mapping[str, str]) -> "LabeledPoset":
        names = [mapping.get(x, x) for x in self.elements]
        if len(set(names)) != len(names):
            raise PosetError("renaming is not injective")
        return LabeledPoset._from_masks(names, self._labels, self._down)

    # ----------------------------------------------------- basic constructions
    def subposet(self, subset: Iterable[str]) -> "LabeledPoset":
        keep = self._mask(subset)
        idx = list(_bits(keep))
        pos = {old: new for new, old in enumerate(idx)}
        down = []
        for old in idx:
            m = 0
            for j in _bits(self._down[old] & keep):
                m |= 1 << pos[j]
            down.append(m)
        return LabeledPoset._from_masks(
            [self.elements[i] for i in idx], [self._labels[i] for i in idx], down
        )

    def without(self, subset: Iterable[str]) -> "LabeledPoset":
        drop = set(subset)
        for x in drop:
            self.index(x)
        return self.subposet(x for x in self.elements if x not in drop)

    def direct_sum(self, other: "LabeledPoset") -> tuple["LabeledPoset", dict[str, str]]:
        """Disjoint union without cross relations.

        Colliding identifiers of ``other`` are renamed to ``"Y.<name>"`` (with
        further ``Y.`` prefixes until fresh); the renaming is returned.
        """
        taken = set(self.elements)
        renaming: dict[str, str] = {}
        names = []
        for x in other.elements:
            y = x
            while y in taken:
                y = "Y." + y
            taken.add(y)
            if y != x:
                renaming[x] = y
            names.append(y)
        n = len(self)
        down = list(self._down) + [m << n for m in other._down]
        out = LabeledPoset._from_masks(
            list(self.elements) + names, list(self._labels) + list(other._labels), down
        )
        return out, renaming

    def is_irreducible(self) -> bool:
        """Connectedness of the comparability graph; the empty poset is reducible."""
        n = len(self)
        if n == 0:
            return False
        comp = [self._down[i] | self._up[i] for i in range(n)]
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for i in _bits(frontier):
                nxt |= comp[i]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << n) - 1

    def connected_components(self) -> list[list[str]]:
        n = len(self)
        comp = [self._down[i] | self._up[i] for i in range(n)]
        left = (1 << n) - 1
        out = []
        while left:
            start = left & -left
            seen = frontier = start
            while frontier:
                nxt = 0
                for i in _bits(frontier):
                    nxt |= comp[i]
                frontier = nxt & ~seen
                seen |= nxt
            out.append(self._names(seen))
            left &= ~seen
        return out

    def saturate(self, a: str, b: str) -> "LabeledPoset":
        """Add ``x <= y`` for every ``x <= a`` and ``b <= y``."""
        ia, ib = self.index(a), self.index(b)
        if self.comparable(a, b):
            raise Comparable(f"{a!r} and {b!r} are comparable")
        below_a = self._down[ia]
        down = list(self._down)
        for y in _bits(self._up[ib]):
            down[y] |= below_a
        return LabeledPoset._from_masks(self.elements, self._labels, down)

    # ------------------------------------------------------ linear extensions
    def linear_extensions(self) -> list["TotalOrder"]:
        """All linear extensions, lexicographic by element index."""
        n = len(self)
        strict_down = [self._down[i] & ~(1 << i) for i in range(n)]
        out: list[TotalOrder] = []
        seq: list[int] = []
        full = (1 << n) - 1
        labels = self.labels

        def rec(placed: int) -> None:
            if placed == full:
                out.append(TotalOrder(tuple(self.elements[i] for i in seq), labels))
                return
            for i in range(n):
                if not placed >> i & 1 and strict_down[i] & ~placed == 0:
                    seq.append(i)
                    rec(placed | 1 << i)
                    seq.pop()

        rec(0)
        return out

    def count_linear_extensions(self) -> int:
        n = len(self)
        strict_down = [self._down[i] & ~(1 << i) for i in range(n)]
        memo = {(1 << n) - 1: 1}

        def rec(placed: int) -> int:
            if placed in memo:
                return memo[placed]
            total = 0
            for i in range(n):
                if not placed >> i & 1 and strict_down[i] & ~placed == 0:
                    total += rec(placed | 1 << i)
            memo[placed] = total
            return total

        return rec(0)

    def label_word_counts(self) -> dict[tuple[Fraction, ...], int]:
        """Multiset of label words read along all linear extensions."""
        n = len(self)
        strict_down = [self._down[i] & ~(1 << i) for i in range(n)]
        full = (1 << n) - 1
        memo: dict[int, dict] = {full: {(): 1}}

        def rec(placed: int) -> dict:
            hit = memo.get(placed)
            if hit is not None:
                return hit
            acc: dict = {}
            for i in range(n):
                if not placed >> i & 1 and strict_down[i] & ~placed == 0:
                    head = (self._labels[i],)
                    for w, c in rec(placed | 1 << i).items():
                        key = head + w
                        acc[key] = acc.get(key, 0) + c
            memo[placed] = acc
            return acc

        return dict(rec(0))

    # ---------------------------------------------------------- window sets
    def arrows(self, subset: Iterable[str]) -> "Arrows":
        """Strict closures of ``subset`` and their extremal elements."""
        y = self._mask(subset)
        below = 0
        above = 0
        for i in _bits(y):
            below |= self._down[i]
            above |= self._up[i]
        below &= ~y
        above &= ~y
        max_below = [i for i in _bits(below) if self._up[i] & below == 1 << i]
        min_above = [i for i in _bits(above) if self._down[i] & above == 1 << i]
        return Arrows(
            tuple(self._names(below)),
            tuple(self._names(above)),
            tuple(self.elements[i] for i in max_below),
            tuple(self.elements[i] for i in min_above),
        )

    def is_window(self, subset: Iterable[str]) -> bool:
        """No outside element lies between two members of ``subset``."""
        y = self._mask(subset)
        below = above = 0
        for i in _bits(y):
            below |= self._down[i]
            above |= self._up[i]
        return below & above & ~y == 0

    def window_subsets(self, r: int) -> list[frozenset[str]]:
        if r < 1:
            raise ValueError("r must be positive")
        out = []
        for combo in itertools.combinations(self.elements, r):
            if self.is_window(combo):
                out.append(frozenset(combo))
        return out

    def contract(self, subset: Iterable[str], p: str, q: str, *, literal: bool = False) -> "LabeledPoset":
        """Remove a window ``subset`` and reglue its neighbourhood through ``p`` and ``q``.

        Elements below the window are placed under everything above ``p``, elements
        above it over everything below ``q``.  Unless ``literal`` is set, ``p <= q``
        is also imposed, which keeps every element below the window under every
        element above it (as in any linear extension where the window sits
        between ``p`` and ``q``).
        """
        ys = list(subset)
        y = self._mask(ys)
        if not self.is_window(ys):
            raise NotWindow(f"{sorted(ys)} is not a window subset")
        arr = self.arrows(ys)
        if p not in arr.max_below:
            raise NotArrow(f"{p!r} is not a maximal element below {sorted(ys)}")
        if q not in arr.min_above:
            raise NotArrow(f"{q!r} is not a minimal element above {sorted(ys)}")
        ip, iq = self.index(p), self.index(q)
        below = self._mask(arr.below)
        above = self._mask(arr.above)
        rest = ((1 << len(self)) - 1) & ~y
        # pairs (a, b) encoded as down-masks over the full index set
        down = [self._down[i] & rest for i in range(len(self))]
        for b in _bits(self._up[ip] & rest):
            down[b] |= below
        up_q = self._down[iq] & rest
        for b in _bits(above):
            down[b] |= up_q
        if not literal:
            down[iq] |= 1 << ip
        idx = list(_bits(rest))
        pos = {old: new for new, old in enumerate(idx)}
        sub_down = []
        for old in idx:
            m = 0
            for j in _bits(down[old] & rest):
                m |= 1 << pos[j]
            sub_down.append(m)
        names = [self.elements[i] for i in idx]
        rels = [(names[j], names[i]) for i in range(len(idx)) for j in _bits(sub_down[i])]
        return LabeledPoset(names, [self._labels[i] for i in idx], rels)

    def components(self, subset: Iterable[str]) -> list[frozenset[str]]:
        """Partition ``subset`` by the cover-adjacency relation of this poset."""
        ys = self._mask(subset)
        lower_covers = {}
        for a, b in self.covers():
            lower_covers.setdefault(self._index[b], set()).add(self._index[a])
        parent = {i: i for i in _bits(ys)}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in _bits(ys):
            for j in lower_covers.get(i, ()):
                if ys >> j & 1:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for i in _bits(ys):
            groups.setdefault(find(i), []).append(i)
        return [frozenset(self.elements[i] for i in g) for _, g in sorted(groups.items())]

    def extend(self, start: RationalLike, end: RationalLike, bottom: str = "x_0", top: str = "x_1") -> "ExtendedPoset":
        return ExtendedPoset.of(self, start, end, bottom, top)

    def is_admissible(self, start: RationalLike, end: RationalLike) -> bool:
        s, e = to_fraction(start), to_fraction(end)
        return all(self.label(x) != s for x in self.minimal()) and all(
            self.label(x) != e for x in self.maximal()
        )


@dataclass(frozen=True)
class Arrows:
    """Strict lower/upper closures of a subset and their maximal/minimal members."""

    below: tuple[str, ...]
    above: tuple[str, ...]
    max_below: tuple[str, ...]
    min_above: tuple[str, ...]


def validate_poset(
    elements: Sequence[str],
    labels: Mapping[str, RationalLike],
    covers: Iterable[tuple[str, str]],
) -> LabeledPoset:
    """Build a poset from Hasse data, taking the reflexive transitive closure."""
    return LabeledPoset(elements, labels, covers)


def chain(labels: Sequence[RationalLike], prefix: str = "c") -> LabeledPoset:
    names = [f"{prefix}{i}" for i in range(1, len(labels) + 1)]
    return LabeledPoset(names, labels, zip(names, names[1:]))


def antichain(labels: Sequence[RationalLike], prefix: str = "a") -> LabeledPoset:
    names = [f"{prefix}{i}" for i in range(1, len(labels) + 1)]
    return LabeledPoset(names, labels)


class TotalOrder:
    """A linear order on a labeled carrier, stored as the element sequence."""

    __slots__ = ("sequence", "_labels", "_pos")

    def __init__(self, sequence: Sequence[str], labels: Mapping[str, RationalLike]) -> None:
        self.sequence = tuple(sequence)
        self._labels = {x: to_fraction(labels[x]) for x in self.sequence}
        self._pos = {x: i for i, x in enumerate(self.sequence)}
        if len(self._pos) != len(self.sequence):
            raise PosetError("repeated element in total order")

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self) -> Iterator[str]:
        return iter(self.sequence)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TotalOrder):
            return NotImplemented
        return self.sequence == other.sequence and self._labels == other._labels

    def __hash__(self) -> int:
        return hash(self.sequence)

    def __repr__(self) -> str:
        return "TotalOrder(" + " < ".join(self.sequence) + ")"

    @property
    def labels(self) -> dict[str, Fraction]:
        return dict(self._labels)

    @property
    def word(self) -> tuple[Fraction, ...]:
        return tuple(self._labels[x] for x in self.sequence)

    def position(self, x: str) -> int:
        try:
            return self._pos[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not in this total order") from None

    def leq(self, a: str, b: str) -> bool:
        return self.position(a) <= self.position(b)

    @property
    def order(self) -> frozenset[tuple[str, str]]:
        s = self.sequence
        return frozenset((s[i], s[j]) for i in range(len(s)) for j in range(i, len(s)))

    def poset(self) -> LabeledPoset:
        s = self.sequence
        return LabeledPoset(s, self._labels, zip(s, s[1:]))

    def contains_order_of(self, poset: LabeledPoset) -> bool:
        return all(self.position(a) <= self.position(b) for a, b in poset.strict_pairs())

    def restrict(self, keep: Iterable[str]) -> "TotalOrder":
        keep = set(keep)
        return TotalOrder([x for x in self.sequence if x in keep], self._labels)

    def is_block(self, block: "TotalOrder") -> bool:
        """``block`` occurs consecutively and in its own order."""
        if not block.sequence:
            return True
        try:
            i = self.position(block.sequence[0])
        except UnknownElement:
            return False
        return self.sequence[i : i + len(block)] == block.sequence

    def insert_after(self, block: Sequence[str], after: str | None, labels: Mapping[str, RationalLike]) -> "TotalOrder":
        """Insert ``block`` right after ``after`` (``None`` = at the front)."""
        i = 0 if after is None else self.position(after) + 1
        lab = dict(self._labels)
        lab.update({x: to_fraction(labels[x]) for x in block})
        return TotalOrder(self.sequence[:i] + tuple(block) + self.sequence[i:], lab)


def project_total(total: TotalOrder, subset: Iterable[str]) -> TotalOrder:
    """Restriction of ``total`` to the complement of ``subset``."""
    drop = set(subset)
    for x in drop:
        total.position(x)
    return total.restrict(x for x in total.sequence if x not in drop)


@dataclass(frozen=True)
class TransplantResult:
    relation: frozenset
    valid: bool
    order: TotalOrder | None


def transplant(total: TotalOrder, old: TotalOrder, new: TotalOrder) -> TransplantResult:
    """Replace the order ``old`` of a subset inside ``total`` by ``new``.

    The relation ``(total \\ old) | new`` need not be an order; ``valid`` says
    whether it is a total order, in which case ``order`` carries it.
    """
    if set(old.sequence) != set(new.sequence) or old.labels != new.labels:
        raise CarrierMismatch("the two orders live on different carriers")
    if not old.order <= total.order:
        raise CarrierMismatch("the replaced order is not contained in the total order")
    rel = (total.order - old.order) | new.order
    elems = total.sequence
    n = len(elems)
    pairs = set(rel)
    valid = all((x, x) in pairs for x in elems)
    if valid:
        for a, b in itertools.combinations(elems, 2):
            ab, ba = (a, b) in pairs, (b, a) in pairs
            if ab == ba:
                valid = False
                break
    if valid:
        succ = {x: {b for a, b in pairs if a == x} for x in elems}
        for a in elems:
            for b in succ[a]:
                if not succ[b] <= succ[a]:
                    valid = False
                    break
            if not valid:
                break
    order = None
    if valid:
        ranked = sorted(elems, key=lambda x: sum((y, x) in pairs for y in elems))
        order = TotalOrder(ranked, total.labels)
        assert len(ranked) == n
    return TransplantResult(frozenset(rel), valid, order)


@dataclass(frozen=True)
class ExtendedPoset:
    """A poset with a fresh bottom labeled ``start`` and a fresh top labeled ``end``."""

    base: LabeledPoset
    bottom: str
    top: str
    poset: LabeledPoset

    @classmethod
    def of(cls, base: LabeledPoset, start: RationalLike, end: RationalLike, bottom: str = "x_0", top: str = "x_1") -> "ExtendedPoset":
        if bottom in base or top in base or bottom == top:
            raise PosetError(f"extension names {bottom!r}/{top!r} collide with the carrier")
        names = (bottom,) + base.elements + (top,)
        labels = dict(base.labels)
        labels[bottom] = to_fraction(start)
        labels[top] = to_fraction(end)
        rels = list(base.strict_pairs())
        rels += [(bottom, x) for x in base.elements] + [(x, top) for x in base.elements]
        rels.append((bottom, top))
        return cls(base, bottom, top, LabeledPoset(names, labels, rels))

    @property
    def start(self) -> Fraction:
        return self.poset.label(self.bottom)

    @property
    def end(self) -> Fraction:
        return self.poset.label(self.top)

    def label(self, x: str) -> Fraction:
        return self.poset.label(x)

    def arrows(self, subset: Iterable[str]) -> Arrows:
        return self.poset.arrows(subset)

    def contract(self, subset: Iterable[str], p: str, q: str, *, literal: bool = False) -> LabeledPoset:
        """Contraction computed in the extension, returned on ``base \\ subset``."""
        c = self.poset.contract(subset, p, q, literal=literal)
        return c.without([self.bottom, self.top])

    def block_extensions(self, block: TotalOrder) -> list[TotalOrder]:
        """Linear extensions of the base in which ``block`` sits consecutively in its order."""
        return [t for t in self.base.linear_extensions() if t.is_block(block)]

    def block_extensions_pq(self, block: TotalOrder, p: str, q: str) -> list[TotalOrder]:
        """Block extensions that also contain the contracted order for ``(p, q)``."""
        contracted = self.contract(block.sequence, p, q)
        return [t for t in self.block_extensions(block) if t.restrict(contracted.elements).contains_order_of(contracted)]

    def neighbours(self, total: TotalOrder, block: Iterable[str]) -> tuple[str, str]:
        """Elements of the extension immediately before and after ``block`` in ``total``."""
        pos = sorted(total.position(x) for x in block)
        i, j = pos[0], pos[-1]
        before = total.sequence[i - 1] if i > 0 else self.bottom
        after = total.sequence[j + 1] if j + 1 < len(total) else self.top
        return before, after


# ----------------------------------------------------------------- enumeration
def _natural_posets(n: int) -> Iterator[list[int]]:
    """Down-masks of every poset on ``0..n-1`` for which ``0 < 1 < ... < n-1`` is a linear extension."""
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for bits in range(1 << len(pairs)):
        down = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(pairs):
            if bits >> k & 1:
                down[j] |= 1 << i
        if all(down[j] | down[i] == down[j] for j in range(n) for i in _bits(down[j])):
            yield down


def _canonical(down: Sequence[int], labels: Sequence) -> tuple:
    n = len(down)
    up = [0] * n
    for i in range(n):
        for j in _bits(down[i]):
            up[j] |= 1 << i
    inv = [(bin(down[i]).count("1"), bin(up[i]).count("1"), labels[i]) for i in range(n)]
    order = sorted(range(n), key=lambda i: inv[i])
    blocks = [list(g) for _, g in itertools.groupby(order, key=lambda i: inv[i])]
    best = None
    for choice in itertools.product(*[itertools.permutations(b) for b in blocks]):
        perm = [i for block in choice for i in block]  # new position -> old index
        newpos = {old: new for new, old in enumerate(perm)}
        key = tuple(
            sum(1 << newpos[j] for j in _bits(down[old])) for old in perm
        ) + tuple(labels[old] for old in perm)
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(n: int, labels: Sequence[RationalLike] | None = None, prefix: str = "x") -> list[LabeledPoset]:
    """All posets on ``n`` elements up to isomorphism.

    With ``labels`` given, every labeling drawn from that set is included, up to
    label-preserving isomorphism; otherwise every element is labeled 0.
    """
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    label_set = [to_fraction(v) for v in labels] if labels is not None else [Fraction(0)]
    seen = set()
    out = []
    for down in _natural_posets(n):
        for lab in itertools.product(label_set, repeat=n):
            key = _canonical(down, lab)
            if key in seen:
                continue
            seen.add(key)
            out.append(LabeledPoset._from_masks(names, lab, down))
    return out


@dataclass(frozen=True)
class PathSpec:
    """A path between two rational points; only the endpoints and a tag are kept."""

    start: Fraction
    end: Fraction
    tag: str = "std"

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", to_fraction(self.start))
        object.__setattr__(self, "end", to_fraction(self.end))

    def __str__(self) -> str:
        return f"{self.start}->{self.end}@{self.tag}"
