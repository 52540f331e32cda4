"""Yamamoto integrals of labeled posets as sums of iterated-integral words."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._rational import RationalLike, to_fraction
from .poset import LabeledPoset, PathSpec
from .words import ONE, FormalSum, IISymbol, Level, NotAdmissible, shuffle_sum

STD_PATH = PathSpec(Fraction(0), Fraction(1), "std")


def admissibility_violations(X: LabeledPoset, path: PathSpec) -> list[str]:
    bad = [x for x in X.minimal() if X.label(x) == path.start]
    bad += [x for x in X.maximal() if X.label(x) == path.end and x not in bad]
    return bad


def is_admissible(X: LabeledPoset, path: PathSpec = STD_PATH) -> bool:
    return not admissibility_violations(X, path)


def check_admissible(X: LabeledPoset, path: PathSpec = STD_PATH) -> None:
    bad = admissibility_violations(X, path)
    if bad:
        raise NotAdmissible(
            f"not admissible for the path {path.start}->{path.end}: offending elements {bad}"
        )


def integral_sum(
    X: LabeledPoset, start: RationalLike, end: RationalLike, level: Level = Level.M, path_tag: str | None = None
) -> FormalSum:
    """``sum over Tot(X)`` of the symbols ``I(start; word; end)`` (no admissibility check)."""
    start, end = to_fraction(start), to_fraction(end)
    if len(X) == 0:
        return FormalSum.one()
    tag = (path_tag or "std") if level is Level.M else None
    return FormalSum(
        {(IISymbol(start, w, end, level, tag),): c for w, c in X.label_word_counts().items()}
    )


@dataclass(frozen=True)
class YamamotoExpansion:
    source: LabeledPoset
    path: PathSpec
    words: FormalSum

    @property
    def extension_count(self) -> int:
        return int(sum(c for _, c in self.words.items()))


def expand(X: LabeledPoset, path: PathSpec = STD_PATH, *, check: bool = True) -> YamamotoExpansion:
    """The motivic Yamamoto integral as a combination of path-tagged words."""
    if check:
        check_admissible(X, path)
    return YamamotoExpansion(X, path, integral_sum(X, path.start, path.end, Level.M, path.tag))


def shuffle_words(x: FormalSum, y: FormalSum) -> FormalSum:
    """Product of two word combinations with common endpoints via the shuffle product."""
    out: dict = {}
    for s, a in x.items():
        for t, b in y.items():
            if s == ONE or t == ONE:
                m = t if s == ONE else s
                out[m] = out.get(m, 0) + a * b
                continue
            (u,), (v,) = s, t
            if (u.start, u.end, u.level, u.path) != (v.start, v.end, v.level, v.path):
                raise ValueError("shuffle needs equal endpoints and path")
            for w, c in shuffle_sum(u.interior, v.interior).items():
                key = (u.with_interior(w),)
                out[key] = out.get(key, 0) + a * b * c
    return FormalSum(out)


def product_identity(X: LabeledPoset, Y: LabeledPoset, path: PathSpec = STD_PATH) -> bool:
    """``I(X) I(Y) == I(X + Y)`` with the product expanded by shuffles."""
    lhs = shuffle_words(expand(X, path).words, expand(Y, path).words)
    total, _ = X.direct_sum(Y)
    return lhs == expand(total, path).words


def recursion_identity(X: LabeledPoset, a: str, b: str, path: PathSpec = STD_PATH) -> bool:
    """``I(X) == I(X_a^b) + I(X_b^a)`` for incomparable ``a``, ``b`` (a word-level identity,
    so admissibility is not required)."""
    lhs = expand(X, path, check=False).words
    rhs = expand(X.saturate(a, b), path, check=False).words + expand(X.saturate(b, a), path, check=False).words
    return lhs == rhs


def unfold(X: LabeledPoset, path: PathSpec = STD_PATH) -> FormalSum:
    """Apply the recursion until every summand is a chain; returns the resulting word sum."""
    for i, a in enumerate(X.elements):
        for b in X.elements[i + 1 :]:
            if not X.comparable(a, b):
                return unfold(X.saturate(a, b), path) + unfold(X.saturate(b, a), path)
    return integral_sum(X, path.start, path.end, Level.M, path.tag)
