"""LaTeX rendering of symbols, monomials, formal sums and coaction results."""

from __future__ import annotations

from fractions import Fraction

from .coaction import ClosedTerm, CoactionResult
from .words import STD, FormalSum, IISymbol, Level, Monomial, NotAdmissible, TensorTerm, word_to_index

_FRAK = {Level.M: r"\mathfrak{m}", Level.A: r"\mathfrak{a}", Level.L: r"\mathfrak{l}"}


def _num(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    sign = "-" if v < 0 else ""
    return rf"{sign}\frac{{{abs(v.numerator)}}}{{{v.denominator}}}"


def _path(s: IISymbol) -> str:
    if s.level is Level.M and s.path != STD:
        return rf"_{{\mathrm{{{s.path}}}}}"
    return ""


def symbol_latex(s: IISymbol) -> str:
    body = ",".join(_num(v) for v in s.interior)
    inner = f"{_num(s.start)};{body};{_num(s.end)}" if s.interior else f"{_num(s.start)};{_num(s.end)}"
    return rf"I^{{{_FRAK[s.level]}}}{_path(s)}({inner})"


def zeta_form(s: IISymbol) -> tuple[int, str] | None:
    """``(sign, text)`` with ``s = sign * zeta(...)`` when ``s`` is an admissible 0-to-1 word."""
    if s.start != 0 or s.end != 1 or (s.level is Level.M and s.path != STD):
        return None
    if any(v not in (0, 1) for v in s.interior):
        return None
    try:
        sign, index = word_to_index(s.interior)
    except NotAdmissible:
        return None
    args = ",".join(str(k) for k in index)
    return sign, rf"\zeta^{{{_FRAK[s.level]}}}({args})"


def monomial_latex(m: Monomial, zeta: bool = False) -> tuple[int, str]:
    """Sign pulled out of zeta conversions, and the product text."""
    if not m:
        return 1, "1"
    sign, parts = 1, []
    for s in m:
        z = zeta_form(s) if zeta else None
        if z is None:
            parts.append(symbol_latex(s))
        else:
            sign *= z[0]
            parts.append(z[1])
    # repeated factors as powers
    out: list[tuple[str, int]] = []
    for p in parts:
        if out and out[-1][0] == p:
            out[-1] = (p, out[-1][1] + 1)
        else:
            out.append((p, 1))
    return sign, r"\,".join(p if e == 1 else f"{p}^{{{e}}}" for p, e in out)


def term_latex(t, zeta: bool = False) -> tuple[int, str]:
    if isinstance(t, TensorTerm):
        a, left = monomial_latex(t.left, zeta)
        b, right = monomial_latex(t.right, zeta)
        return a * b, rf"{left}\otimes {right}"
    return monomial_latex(t, zeta)


def sum_latex(x: FormalSum, zeta: bool = False) -> str:
    if x.is_zero():
        return "0"
    pieces = []
    for t, c in x.items():
        sign, body = term_latex(t, zeta)
        c = c * sign
        mag = abs(c)
        coeff = "" if mag == 1 else _num(mag)
        pieces.append(("-" if c < 0 else "+", f"{coeff}{body}"))
    head_sign, head = pieces[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def closed_term_latex(term: ClosedTerm, zeta: bool = False) -> str:
    window = ",".join(sorted(term.window))
    right = sum_latex(term.right, zeta)
    return rf"I^{{\mathfrak{{l}}}}_{{({term.p};{term.q})}}(\{{{window}\}})\otimes \left({right}\right)"


def to_latex(obj, zeta: bool = False) -> str:
    """Deterministic LaTeX for a symbol, monomial, tensor term, formal sum or coaction result."""
    if isinstance(obj, IISymbol):
        if zeta:
            z = zeta_form(obj)
            if z is not None:
                return ("-" if z[0] < 0 else "") + z[1]
        return symbol_latex(obj)
    if isinstance(obj, CoactionResult):
        return sum_latex(obj.terms, zeta)
    if isinstance(obj, FormalSum):
        return sum_latex(obj, zeta)
    if isinstance(obj, ClosedTerm):
        return closed_term_latex(obj, zeta)
    if isinstance(obj, (TensorTerm, tuple)):
        sign, body = term_latex(obj, zeta)
        return ("-" if sign < 0 else "") + body
    raise TypeError(f"no LaTeX form for {type(obj).__name__}")
