"""Skew Young diagrams, semi-standard tableaux and Schur multiple zeta values."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, Mapping

import numpy as np

from .fixtures import example1, example2
from .numeric import log_power_tail
from .poset import LabeledPoset, chain
from .words import NotAdmissibleIndex

Cell = tuple[int, int]


class NotSkewShape(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


class NotDiagonalConstant(ValueError):
    pass


class TableauError(ValueError):
    pass


def _down_closed(cells: frozenset[Cell]) -> bool:
    return all(
        (i - 1 < 1 or (i - 1, j) in cells) and (j - 1 < 1 or (i, j - 1) in cells) for i, j in cells
    )


@dataclass(frozen=True)
class SkewDiagram:
    """A finite set of 1-based cells of the form ``outer \\ inner`` for Young diagrams."""

    cells: frozenset

    def __post_init__(self) -> None:
        cells = frozenset((int(i), int(j)) for i, j in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise NotSkewShape("a diagram needs at least one cell")
        if any(i < 1 or j < 1 for i, j in cells):
            raise NotSkewShape("cells are 1-based (row, column) pairs")
        outer = frozenset((a, b) for i, j in cells for a in range(1, i + 1) for b in range(1, j + 1))
        if not _down_closed(outer - cells):
            raise NotSkewShape(f"{sorted(cells)} is not a difference of two Young diagrams")

    @property
    def ordered(self) -> list[Cell]:
        return sorted(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, c: object) -> bool:
        return c in self.cells

    def corners(self) -> list[Cell]:
        return [(i, j) for i, j in self.ordered if (i + 1, j) not in self.cells and (i, j + 1) not in self.cells]

    def columns(self) -> list[tuple[int, list[int]]]:
        cols: dict[int, list[int]] = {}
        for i, j in self.ordered:
            cols.setdefault(j, []).append(i)
        return sorted(cols.items())

    def longest_column(self) -> int:
        return max(len(rows) for _, rows in self.columns())


@dataclass(frozen=True)
class TableauIndex:
    diagram: SkewDiagram
    entries: Mapping[Cell, int]

    def __post_init__(self) -> None:
        ent = {(int(i), int(j)): int(v) for (i, j), v in self.entries.items()}
        if set(ent) != set(self.diagram.cells):
            raise TableauError("entries must cover exactly the cells of the diagram")
        if any(v < 1 for v in ent.values()):
            raise TableauError("entries must be positive integers")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: list[list[int | None]]) -> "TableauIndex":
        """Rows of entries, ``None`` marking skipped cells (the skew part)."""
        ent = {(i + 1, j + 1): v for i, row in enumerate(rows) for j, v in enumerate(row) if v is not None}
        return cls(SkewDiagram(frozenset(ent)), ent)

    @property
    def weight(self) -> int:
        return sum(self.entries.values())

    def is_admissible(self) -> bool:
        return all(self.entries[c] >= 2 for c in self.diagram.corners())

    def is_diagonal_constant(self) -> bool:
        e = self.entries
        return all(e[(i + 1, j + 1)] == v for (i, j), v in e.items() if (i + 1, j + 1) in e)

    def rows(self) -> list[list[int | None]]:
        n_rows = max(i for i, _ in self.diagram.cells)
        n_cols = max(j for _, j in self.diagram.cells)
        return [[self.entries.get((i, j)) for j in range(1, n_cols + 1)] for i in range(1, n_rows + 1)]

    def ascii(self) -> str:
        rows = self.rows()
        width = max(len(str(v)) for v in self.entries.values())
        return "\n".join(" ".join((str(v) if v is not None else ".").rjust(width) for v in r).rstrip() for r in rows)


def _check_admissible(k: TableauIndex) -> None:
    if not k.is_admissible():
        bad = [c for c in k.diagram.corners() if k.entries[c] < 2]
        raise NotAdmissibleIndex(f"corner cells {bad} need entries >= 2")


def ssyt_enumerate(diagram: SkewDiagram, bound: int) -> Iterator[dict[Cell, int]]:
    """Fillings with entries in 1..bound, rows weakly and columns strictly increasing."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    cells = diagram.ordered
    filling: dict[Cell, int] = {}

    def rec(pos: int) -> Iterator[dict[Cell, int]]:
        if pos == len(cells):
            yield dict(filling)
            return
        i, j = cells[pos]
        lo = 1
        if (i, j - 1) in filling:
            lo = max(lo, filling[(i, j - 1)])
        if (i - 1, j) in filling:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, bound + 1):
            filling[(i, j)] = v
            yield from rec(pos + 1)
        filling.pop((i, j), None)

    return rec(0)


def smzv_bruteforce(k: TableauIndex, bound: int) -> Fraction:
    """Direct sum over enumerated tableaux (small bounds only)."""
    _check_admissible(k)
    total = Fraction(0)
    for f in ssyt_enumerate(k.diagram, bound):
        den = 1
        for c, v in f.items():
            den *= v ** k.entries[c]
        total += Fraction(1, den)
    return total


# ------------------------------------------------------- column transfer
def _column_steps(k: TableauIndex):
    """Per column: rows, exponents, and the rows shared with the previous column."""
    prev: list[int] = []
    for j, rows in k.diagram.columns():
        exps = [k.entries[(i, j)] for i in rows]
        yield rows, exps, [i for i in rows if i in prev]
        prev = rows


def _transfer(k: TableauIndex, bound: int, *, exact: bool):
    """Column-by-column transfer: state = values in the current column (row order)."""
    state: dict = {(): Fraction(1) if exact else 1.0}
    prev_rows: list[int] = []
    for rows, exps, shared in _column_steps(k):
        # collapse to the shared rows, as cumulative "value <= v" masses
        keep = [prev_rows.index(i) for i in shared]
        marg: dict = {}
        for key, c in state.items():
            sub = tuple(key[t] for t in keep)
            marg[sub] = marg.get(sub, 0) + c
        new: dict = {}
        for vals in _column_values(len(rows), bound):
            sub = tuple(vals[rows.index(i)] for i in shared)
            mass = _dominated(marg, sub)
            if not mass:
                continue
            if exact:
                den = 1
                for v, e in zip(vals, exps):
                    den *= v**e
                new[vals] = mass * Fraction(1, den)
            else:
                w = 1.0
                for v, e in zip(vals, exps):
                    w *= float(v) ** (-e)
                new[vals] = mass * w
        state = new
        prev_rows = rows
    return sum(state.values(), Fraction(0) if exact else 0.0)


def _column_values(h: int, bound: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: tuple, lo: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == h:
            yield prefix
            return
        for v in range(lo, bound + 1):
            yield from rec(prefix + (v,), v + 1)

    return rec((), 1)


def _dominated(marg: dict, sub: tuple):
    return sum((c for key, c in marg.items() if all(a <= b for a, b in zip(key, sub))), 0)


def smzv_truncated(k: TableauIndex, bound: int) -> Fraction:
    """Exact partial Schur MZV over tableaux with entries <= bound."""
    _check_admissible(k)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    return _transfer(k, bound, exact=True)


# --------------------------------------------------------- float fast path
def smzv_numeric(k: TableauIndex, bound: int) -> tuple[float, float]:
    """Float partial sum (entries <= bound) and a bound on the omitted tail.

    Columns of height at most two are processed with cumulative sums over value
    grids; the tail bound places the maximal entry at a corner cell ``c`` above
    ``bound`` and bounds every other cell by its full one-variable sum.
    """
    _check_admissible(k)
    if k.diagram.longest_column() > 2:
        raise UnsupportedShape("the float path handles columns of height at most 2")
    n = np.arange(1, bound + 1, dtype=float)
    state = None  # array over the previous column's values
    prev_rows: list[int] = []
    for rows, exps, shared in _column_steps(k):
        # mass over the shared rows, as cumulative sums "previous <= current"
        if state is None:
            carried = np.array(1.0)
        else:
            axes = tuple(t for t, i in enumerate(prev_rows) if i not in shared)
            carried = state.sum(axis=axes) if axes else state
            for ax in range(carried.ndim):
                carried = np.cumsum(carried, axis=ax)
        if len(rows) == 1:
            w = n ** (-float(exps[0]))
            new = w * (carried if carried.ndim == 1 else float(carried))
        else:
            w = np.outer(n ** (-float(exps[0])), n ** (-float(exps[1])))
            w = np.triu(w, 1)  # top < bottom
            if carried.ndim == 0:
                new = w * float(carried)
            elif carried.ndim == 2:
                new = w * carried
            elif shared == [rows[0]]:
                new = w * carried[:, None]
            else:
                new = w * carried[None, :]
        state = new
        prev_rows = rows
    value = float(np.sum(state))
    return value, smzv_tail_bound(k, bound)


def _one_cell_total(e: int, v: float) -> float:
    if e >= 2:
        return 1.0 + 1.0 / (e - 1)  # zeta(e) <= 1 + 1/(e-1)
    return 1.0 + math.log(v)


def smzv_tail_bound(k: TableauIndex, bound: int) -> float:
    total = 0.0
    for c in k.diagram.corners():
        const = 1.0
        logs = 0
        for d, e in k.entries.items():
            if d == c:
                continue
            if e >= 2:
                const *= _one_cell_total(e, 0)
            else:
                logs += 1
        total += const * log_power_tail(logs, k.entries[c], bound)
    return total


# ------------------------------------------------------ poset conversion
def poset_sign(X: LabeledPoset) -> int:
    """``(-1)^(number of 1-labeled elements)``: the sign relating ``I(X)`` to the nested sum."""
    return (-1) ** sum(1 for x in X.elements if X.label(x) == 1)


def _block_chain(values: list[int]) -> LabeledPoset:
    labels: list[int] = []
    for v in values:
        labels += [1] + [0] * (v - 1)
    return chain(labels, prefix="x")


def smzv_to_poset(k: TableauIndex) -> LabeledPoset:
    """The labeled poset whose Yamamoto integral is ``poset_sign * zeta(k)``.

    Supported: a single column (an ordinary MZV, top cell innermost), the 2x2
    square ``[[a, 1], [1, a]]`` and the hook with bottom row ``1, ..., 1, t``
    under a single cell ``s``.
    """
    _check_admissible(k)
    if not k.is_diagonal_constant():
        raise NotDiagonalConstant("entries must be constant along diagonals")
    cols = k.diagram.columns()
    e = k.entries
    if len(cols) == 1:
        j, rows = cols[0]
        return _block_chain([e[(i, j)] for i in rows])
    cells = k.diagram.cells
    if cells == {(1, 1), (1, 2), (2, 1), (2, 2)} and e[(1, 2)] == 1 and e[(2, 1)] == 1:
        return example1(e[(1, 1)] + 1)
    rows_ = sorted({i for i, _ in cells})
    top = [c for c in cells if c[0] == rows_[0]]
    if rows_ == [1, 2] and len(top) == 1:
        (_, m) = top[0]
        bottom = sorted(c for c in cells if c[0] == 2)
        if bottom == [(2, j) for j in range(1, m + 1)] and all(e[(2, j)] == 1 for j in range(1, m)):
            return example2(e[(1, m)], e[(2, m)], m - 1)
    raise UnsupportedShape("only single columns, the square [[a,1],[1,a]] and the s/t hook are supported")


# ------------------------------------------------------------------- json
def tableau_from_json(data: Any) -> TableauIndex:
    if not isinstance(data, dict) or "cells" not in data or "entries" not in data:
        raise TableauError("tableau JSON needs 'cells' and 'entries'")
    try:
        cells = frozenset((int(i), int(j)) for i, j in data["cells"])
        entries = {}
        for key, v in data["entries"].items():
            i, j = (int(x) for x in str(key).split(","))
            entries[(i, j)] = int(v)
    except (TypeError, ValueError) as exc:
        raise TableauError(f"bad tableau JSON: {exc}") from None
    return TableauIndex(SkewDiagram(cells), entries)


def tableau_to_json(k: TableauIndex) -> dict:
    return {
        "cells": [list(c) for c in k.diagram.ordered],
        "entries": {f"{i},{j}": str(v) for (i, j), v in sorted(k.entries.items())},
    }


def load_tableau(spec: str) -> TableauIndex:
    """A tableau from a JSON file or inline rows such as ``[[2,1],[1,2]]`` (``null`` skips a cell)."""
    path = Path(spec)
    try:
        if spec.endswith(".json") or path.is_file():
            data = json.loads(path.read_text())
        else:
            data = json.loads(spec)
    except FileNotFoundError:
        raise TableauError(f"no such file: {spec}") from None
    except json.JSONDecodeError as exc:
        raise TableauError(f"invalid tableau {spec!r}: {exc}") from None
    if isinstance(data, list):
        return TableauIndex.from_rows(data)
    return tableau_from_json(data)
