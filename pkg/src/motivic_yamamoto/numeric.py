"""Truncated nested-series values of multiple zeta values, with explicit tail bounds.

``zeta(k_1..k_d)`` is summed over ``0 < n_1 < ... < n_d <= N``.  The inner sum
``S(m)`` over ``n_1 < ... < n_{d-1} <= m`` is bounded two ways, by
``(1 + ln m)^(d-1) / (d-1)!`` and by ``prod zeta(k_i)`` (with ``1 + ln m`` for
each ``k_i = 1``); the omitted tail is ``sum_{n > N} n^(-k_d) S(n - 1)`` and is
bounded by the corresponding log-power integral, taking the smaller of the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .poset import LabeledPoset
from .words import ONE, FormalSum, IISymbol, Level, NotAdmissible, NotAdmissibleIndex, word_to_index
from .yamamoto import STD_PATH, expand


class NonStdPath(ValueError):
    pass


@dataclass(frozen=True)
class NumericValue:
    value: float
    tail_bound: float
    truncation: int

    def __add__(self, other: "NumericValue") -> "NumericValue":
        return NumericValue(self.value + other.value, self.tail_bound + other.tail_bound, min(self.truncation, other.truncation))

    def scale(self, c: float) -> "NumericValue":
        return NumericValue(c * self.value, abs(c) * self.tail_bound, self.truncation)

    def times(self, other: "NumericValue") -> "NumericValue":
        """Product, with a tail bound from ``|ab - a'b'| <= |a|e_b + |b|e_a + e_a e_b``."""
        a, b = self.value, other.value
        ea, eb = self.tail_bound, other.tail_bound
        return NumericValue(a * b, abs(a) * eb + abs(b) * ea + ea * eb, min(self.truncation, other.truncation))


def _check_index(index: Sequence[int]) -> tuple[int, ...]:
    index = tuple(int(k) for k in index)
    if not index or any(k < 1 for k in index) or index[-1] < 2:
        raise NotAdmissibleIndex(f"{index} is not an admissible index")
    return index


def log_power_tail(j: int, k: int, N: int) -> float:
    """An upper bound for ``sum_{v > N} (1 + ln v)^j / v^k`` (``k >= 2``)."""
    if k < 2:
        raise ValueError("the tail needs exponent >= 2")
    start = max(N, math.ceil(math.exp(max(j / k - 1, 0))))
    head = sum((1 + math.log(v)) ** j / v**k for v in range(N + 1, start + 1))
    L = 1 + math.log(start)
    integral = sum(
        math.factorial(j) / math.factorial(j - i) * L ** (j - i) / ((k - 1) ** (i + 1) * start ** (k - 1))
        for i in range(j + 1)
    )
    return head + integral


def mzv_tail_bound(index: Sequence[int], N: int) -> float:
    index = _check_index(index)
    d = len(index)
    kd = index[-1]
    by_logs = log_power_tail(d - 1, kd, N) / math.factorial(d - 1)
    const = 1.0
    ones = 0
    for k in index[:-1]:
        if k >= 2:
            const *= 1.0 + 1.0 / (k - 1)
        else:
            ones += 1
    by_zetas = const * log_power_tail(ones, kd, N)
    return min(by_logs, by_zetas)


@lru_cache(maxsize=1024)
def _mzv(index: tuple[int, ...], N: int) -> float:
    n = np.arange(1, N + 1, dtype=float)
    acc = n ** (-float(index[0]))
    for k in index[1:]:
        lower = np.concatenate(([0.0], np.cumsum(acc)[:-1]))
        acc = lower * n ** (-float(k))
    return float(acc.sum())


def mzv_eval(index: Sequence[int], N: int) -> NumericValue:
    """``zeta(index)`` truncated at ``n_d <= N``."""
    index = _check_index(index)
    if N < len(index):
        raise ValueError(f"truncation {N} is below the depth {len(index)}")
    return NumericValue(_mzv(index, N), mzv_tail_bound(index, N), N)


def eval_word(s: IISymbol, N: int) -> NumericValue:
    """``I(0; word; 1)`` on the straight path, via ``zeta = (-1)^d I``."""
    if s.level is not Level.M or s.path != "std":
        raise NonStdPath(f"{s} is not on the straight path from 0 to 1")
    if s.start != 0 or s.end != 1:
        raise NotAdmissible(f"{s} does not run from 0 to 1")
    sign, index = word_to_index(s.interior)
    return mzv_eval(index, N).scale(sign)


def eval_formal(x: FormalSum, N: int) -> NumericValue:
    """A combination of straight-path words (and the unit) evaluated term by term."""
    total = NumericValue(0.0, 0.0, N)
    for m, c in x.items():
        if m == ONE:
            total = total + NumericValue(float(c), 0.0, N)
            continue
        if not isinstance(m, tuple):
            raise TypeError("eval_formal takes combinations of monomials, not tensors")
        value = NumericValue(1.0, 0.0, N)
        for s in m:
            value = value.times(eval_word(s, N))
        total = total + value.scale(float(c))
    return total


def eval_poset(X: LabeledPoset, N: int) -> NumericValue:
    """Yamamoto's integral of an admissible {0,1}-labeled poset along the straight path."""
    return eval_formal(expand(X, STD_PATH).words, N)


def compare(a: NumericValue, b: NumericValue, tol: float) -> bool:
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return abs(a.value - b.value) <= a.tail_bound + b.tail_bound + tol
