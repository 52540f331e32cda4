"""Command-line front end.  Every subcommand prints one JSON report (or LaTeX).

Exit codes: 0 success or verified, 1 not certified / numeric mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from ._rational import fmt, to_fraction
from .coaction import (
    closed_terms,
    delta_poset,
    delta_word,
    delta_y_closed,
    delta_y_definition,
    dr_poset,
    dr_word,
    drprime_poset,
    drprime_poset_definition,
    drprime_word,
)
from .fixtures import load_poset, poset_to_json
from .latex import to_latex
from .numeric import NumericValue, compare, eval_formal, eval_poset, eval_word, mzv_eval
from .poset import LabeledPoset, PathSpec
from .schur import load_tableau, poset_sign, smzv_numeric, smzv_to_poset, tableau_to_json
from .verify import (
    SweepReport,
    verify_choice_independence,
    verify_d1,
    verify_delta_y,
    verify_dr_closed,
    verify_exp_identity,
    verify_numeric_products,
    verify_product_recursion,
    verify_word_projection,
)
from .words import IISymbol, Level, parse_symbol, sum_from_json, sum_to_json
from .yamamoto import admissibility_violations, expand

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class RunReport:
    command: list[str]
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    verdict: str = "ok"
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "verdict": self.verdict,
            "seconds": round(self.seconds, 3),
        }


# ---------------------------------------------------------------- inputs
_SYMBOL = re.compile(r"^\s*I[mal]?\(")
_ZETA = re.compile(r"^\s*(?:zeta|ζ)\(([\d,\s]+)\)\s*$")


def _path(args) -> PathSpec:
    return PathSpec(to_fraction(args.start), to_fraction(args.end), args.path_tag)


def _load(spec: str) -> IISymbol | LabeledPoset:
    if _SYMBOL.match(spec):
        s = parse_symbol(spec)
        return s if s.level is Level.M else s.at_level(Level.M)
    return load_poset(spec)


def _poset_input(X: LabeledPoset, path: PathSpec) -> dict:
    return {"poset": poset_to_json(X), "path": {"start": fmt(path.start), "end": fmt(path.end), "tag": path.tag}}


def _require_admissible(X: LabeledPoset, path: PathSpec) -> None:
    bad = admissibility_violations(X, path)
    if bad:
        raise InputError("poset is not admissible for the path: " + "; ".join(bad))


def _numeric(value: NumericValue) -> dict:
    return {"value": value.value, "tail_bound": value.tail_bound, "truncation": value.truncation}


def _display(x) -> str:
    return str(x).replace("@std", "").replace("*I", "·I").replace("*Il", "·Il")


# -------------------------------------------------------------- commands
def cmd_validate(args, rep: RunReport) -> int:
    if args.tableau:
        k = load_tableau(args.input)
        rep.inputs = {"tableau": tableau_to_json(k)}
        out: dict[str, Any] = {
            "weight": k.weight,
            "admissible": k.is_admissible(),
            "diagonal_constant": k.is_diagonal_constant(),
            "ascii": k.ascii(),
        }
        rep.outputs = out
        ok = out["admissible"]
    else:
        X = load_poset(args.input)
        path = _path(args)
        bad = admissibility_violations(X, path)
        rep.inputs = _poset_input(X, path)
        rep.outputs = {
            "elements": len(X),
            "covers": [list(c) for c in X.covers()],
            "minimal": X.minimal(),
            "maximal": X.maximal(),
            "admissible": not bad,
            "violations": bad,
            "linear_extensions": X.count_linear_extensions(),
        }
        ok = not bad
    rep.verdict = "valid" if ok else "not admissible"
    return EXIT_OK if ok else EXIT_INPUT


def cmd_tot(args, rep: RunReport) -> int:
    X = load_poset(args.input)
    rep.inputs = {"poset": poset_to_json(X)}
    exts = X.linear_extensions()
    rep.outputs = {
        "count": len(exts),
        "extensions": [{"order": list(t), "word": [fmt(v) for v in t.word]} for t in exts],
    }
    rep.verdict = f"{len(exts)} linear extensions"
    return EXIT_OK


def cmd_expand(args, rep: RunReport) -> int:
    X = load_poset(args.input)
    path = _path(args)
    _require_admissible(X, path)
    e = expand(X, path)
    rep.inputs = _poset_input(X, path)
    rep.outputs = {"result": sum_to_json(e.words), "extensions": e.extension_count, "display": _display(e.words)}
    if args.numeric:
        if path != PathSpec(0, 1, "std"):
            raise InputError("numeric evaluation needs the straight path from 0 to 1")
        v = eval_formal(e.words, args.trunc)
        rep.outputs["numeric"] = _numeric(v)
        rep.outputs["summary"] = f"{_display(e.words)} ≈ {v.value:.6g} ± {v.tail_bound:.2g} (N = {args.trunc})"
    return EXIT_OK


def _closed_rows(X: LabeledPoset, path: PathSpec, r: int, args) -> list[dict]:
    rows = []
    for t in closed_terms(X, path, r, bottom=args.bottom, top=args.top):
        rows.append(
            {
                "window": sorted(t.window),
                "p": t.p,
                "q": t.q,
                "left": sum_to_json(t.left),
                "right": sum_to_json(t.right),
                "contracted": poset_to_json(t.contracted),
            }
        )
    return rows


def cmd_dr(args, rep: RunReport) -> int:
    obj = _load(args.input)
    if isinstance(obj, IISymbol):
        rep.inputs = {"word": str(obj), "r": args.r}
        res = dr_word(obj, args.r)
    else:
        path = _path(args)
        rep.inputs = {**_poset_input(obj, path), "r": args.r, "mode": args.mode}
        res = dr_poset(obj, path, args.r, args.mode)
        if args.mode == "closed" and args.r <= len(obj):
            rep.outputs["closed_terms"] = _closed_rows(obj, path, args.r, args)
    rep.outputs["result"] = res.to_json()
    rep.outputs["level"] = res.level.value
    rep.outputs["weight"] = res.weight
    return EXIT_OK


def cmd_drprime(args, rep: RunReport) -> int:
    obj = _load(args.input)
    if isinstance(obj, IISymbol):
        rep.inputs = {"word": str(obj), "r": args.r}
        res = drprime_word(obj, args.r)
    else:
        path = _path(args)
        rep.inputs = {**_poset_input(obj, path), "r": args.r, "mode": args.mode, "choice": args.choice}
        if args.mode == "definition":
            res = drprime_poset_definition(obj, path, args.r)
        else:
            res = drprime_poset(obj, path, args.r, args.choice)
    rep.outputs = {"result": res.to_json(), "level": res.level.value, "weight": res.weight}
    return EXIT_OK


def cmd_coproduct(args, rep: RunReport) -> int:
    obj = _load(args.input)
    if isinstance(obj, IISymbol):
        rep.inputs = {"word": str(obj)}
        res = delta_word(obj)
    else:
        path = _path(args)
        rep.inputs = {**_poset_input(obj, path), "mode": args.mode}
        if args.subset:
            Y = [y.strip() for y in args.subset.split(",") if y.strip()]
            rep.inputs["subset"] = Y
            res = delta_y_closed(obj, Y, path) if args.mode == "via_thm2" else delta_y_definition(obj, Y, path)
        else:
            res = delta_poset(obj, path, args.mode)
    rep.outputs = {"result": res.to_json(), "level": res.level.value, "weight": res.weight}
    return EXIT_OK


def _sweeps_out(rep: RunReport, sweeps: list[SweepReport], figure: str | None, full: bool) -> int:
    rep.outputs = {"sweeps": [s.to_json(full) for s in sweeps]}
    ok = all(s.all_ok for s in sweeps)
    total = sum(len(s.instances) for s in sweeps)
    rep.verdict = f"all instances verified ({total})" if ok else "; ".join(s.verdict() for s in sweeps if not s.all_ok)
    if figure:
        from .plotting import sweep_figure

        sweep_figure(figure, [s.name for s in sweeps], [s.passed for s in sweeps], [len(s.failed) for s in sweeps], rep.command[0])
    return EXIT_OK if ok else EXIT_FAIL


def _labels(text: str) -> list:
    try:
        return [to_fraction(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad label list {text!r}: {exc}") from None


def cmd_verify_thm1(args, rep: RunReport) -> int:
    labels = _labels(args.labels)
    fixtures = [] if args.no_fixtures or args.labels != "0,1" else ["w5", "diamond", "example1(5)"]
    rep.inputs = {"max_size": args.max_size, "labels": [fmt(v) for v in labels], "fixtures": fixtures}
    sweeps = [verify_dr_closed(args.max_size, labels, fixtures), verify_d1(args.max_size, labels, fixtures)]
    return _sweeps_out(rep, sweeps, args.figure, args.full)


def cmd_verify_thm2(args, rep: RunReport) -> int:
    labels = _labels(args.labels)
    rep.inputs = {"max_size": args.max_size, "labels": [fmt(v) for v in labels], "weight": args.weight}
    return _sweeps_out(rep, [verify_delta_y(args.max_size, labels, args.weight)], args.figure, args.full)


def cmd_verify_props(args, rep: RunReport) -> int:
    rep.inputs = {
        "projection_weight": args.projection_weight,
        "exp_weight": args.exp_weight,
        "product_size": args.product_size,
        "trunc": args.trunc,
    }
    sweeps = [
        verify_choice_independence(),
        verify_word_projection(args.projection_weight),
        verify_exp_identity(args.exp_weight),
        verify_product_recursion(args.product_size),
        verify_numeric_products(args.trunc),
    ]
    return _sweeps_out(rep, sweeps, args.figure, args.full)


def cmd_schur_to_poset(args, rep: RunReport) -> int:
    k = load_tableau(args.input)
    X = smzv_to_poset(k)
    sign = poset_sign(X)
    rep.inputs = {"tableau": tableau_to_json(k)}
    words = expand(X).words
    rep.outputs = {"poset": poset_to_json(X), "sign": sign, "expansion": sum_to_json(words), "ascii": k.ascii()}
    if not args.numeric:
        return EXIT_OK
    value, tail = smzv_numeric(k, args.trunc)
    via = eval_formal(words, args.trunc).scale(sign)
    lhs = NumericValue(value, tail, args.trunc)
    ok = compare(lhs, via, args.tol)
    rep.outputs["numeric"] = {"schur": _numeric(lhs), "poset": _numeric(via), "tol": args.tol, "agree": ok}
    rep.verdict = "numeric agreement" if ok else "numeric mismatch"
    return EXIT_OK if ok else EXIT_FAIL


def _evaluate(spec: str, N: int) -> tuple[dict, NumericValue]:
    m = _ZETA.match(spec)
    if m:
        index = tuple(int(x) for x in m.group(1).split(",") if x.strip())
        return {"index": list(index)}, mzv_eval(index, N)
    obj = _load(spec)
    if isinstance(obj, IISymbol):
        return {"word": str(obj)}, eval_word(obj, N)
    _require_admissible(obj, PathSpec(0, 1))
    return {"poset": poset_to_json(obj)}, eval_poset(obj, N)


def cmd_numeric_eval(args, rep: RunReport) -> int:
    inputs, value = _evaluate(args.input, args.trunc)
    rep.inputs = {"a": inputs, "trunc": args.trunc}
    rep.outputs = {"a": _numeric(value)}
    code = EXIT_OK
    if args.compare:
        other_in, other = _evaluate(args.compare, args.trunc)
        rep.inputs["b"] = other_in
        rep.outputs["b"] = _numeric(other)
        ok = compare(value, other, args.tol)
        rep.outputs["difference"] = value.value - other.value
        rep.outputs["allowed"] = value.tail_bound + other.tail_bound + args.tol
        rep.verdict = "agree within tail bounds" if ok else "numeric mismatch"
        code = EXIT_OK if ok else EXIT_FAIL
    if args.figure:
        from .plotting import convergence_figure

        ns = sorted({max(args.trunc >> s, 4) for s in range(6)})
        vals = [_evaluate(args.input, n)[1] for n in ns]
        convergence_figure(args.figure, ns, [v.value for v in vals], [v.tail_bound for v in vals], args.input)
    return code


def _latex_source(args) -> tuple[dict, Any]:
    spec = args.input
    path = Path(spec)
    if path.suffix == ".json" and path.is_file():
        data = json.loads(path.read_text())
        if isinstance(data, dict) and "outputs" in data and "result" in data["outputs"]:
            return {"report": data.get("command")}, sum_from_json(data["outputs"]["result"])
        if isinstance(data, list):
            return {"sum": str(path)}, sum_from_json(data)
    obj = _load(spec)
    if isinstance(obj, IISymbol):
        return {"word": str(obj)}, obj
    return {"poset": poset_to_json(obj)}, expand(obj, _path(args)).words


def cmd_latex(args, rep: RunReport) -> int:
    src, obj = _latex_source(args)
    rep.inputs = src
    rep.outputs = {"latex": to_latex(obj, zeta=args.zeta_notation)}
    return EXIT_OK


# ---------------------------------------------------------------- parser
def _add_path(p: argparse.ArgumentParser) -> None:
    p.add_argument("--start", default="0", help="path start point (default 0)")
    p.add_argument("--end", default="1", help="path end point (default 1)")
    p.add_argument("--path-tag", default="std", help="path tag for path-tagged symbols")


def _add_sweep(p: argparse.ArgumentParser) -> None:
    p.add_argument("--figure", metavar="PATH", help="write a bar chart of verified instances")
    p.add_argument("--full", action="store_true", help="list every instance, not only failures")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="motivic-yamamoto", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", metavar="PATH", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = add("validate", help="check a poset (or tableau) and report admissibility")
    p.add_argument("input", help="poset JSON file or expression, e.g. 'chain(1,0)'")
    p.add_argument("--tableau", action="store_true", help="treat the input as a tableau")
    _add_path(p)
    p.set_defaults(func=cmd_validate)

    p = add("tot", help="list linear extensions")
    p.add_argument("input")
    p.set_defaults(func=cmd_tot)

    p = add("expand", help="Yamamoto integral as a sum of words")
    p.add_argument("input")
    _add_path(p)
    p.add_argument("--numeric", action="store_true", help="also evaluate numerically")
    p.add_argument("--trunc", type=int, default=2000, help="series truncation N")
    p.set_defaults(func=cmd_expand)

    for name, func, help_ in (("dr", cmd_dr, "infinitesimal coaction D_r"), ("drprime", cmd_drprime, "D_r' with level-A left factor")):
        p = add(name, help=help_)
        p.add_argument("input", help="poset, or a word literal such as 'I(0;1,0;1)@std'")
        p.add_argument("--r", type=int, required=True)
        _add_path(p)
        if name == "dr":
            p.add_argument("--mode", choices=("definition", "closed"), default="definition")
            p.add_argument("--bottom", help="name of the added bottom element")
            p.add_argument("--top", help="name of the added top element")
        else:
            p.add_argument("--mode", choices=("definition", "closed"), default="closed")
            p.add_argument("--choice", type=int, default=0, help="index of the fixed order per window")
        p.set_defaults(func=func)

    p = add("coproduct", help="full coaction of a word or poset")
    p.add_argument("input")
    _add_path(p)
    p.add_argument("--mode", choices=("definition", "via_thm2"), default="definition")
    p.add_argument("--subset", help="comma-separated subset Y: only its summand")
    p.set_defaults(func=cmd_coproduct)

    p = add("verify-thm1", help="closed D_r and D_1 formulas over all small posets")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--labels", default="0,1")
    p.add_argument("--no-fixtures", action="store_true", help="skip the named 5-10 element fixtures")
    _add_sweep(p)
    p.set_defaults(func=cmd_verify_thm1)

    p = add("verify-thm2", help="closed form of the subset coaction over all small posets")
    p.add_argument("--max-size", type=int, default=4)
    p.add_argument("--labels", default="0,1")
    p.add_argument("--weight", type=int, default=4, help="weight bound of the relation family")
    _add_sweep(p)
    p.set_defaults(func=cmd_verify_thm2)

    p = add("verify-props", help="choice independence, word identities, product and recursion")
    p.add_argument("--projection-weight", type=int, default=6)
    p.add_argument("--exp-weight", type=int, default=3)
    p.add_argument("--product-size", type=int, default=5)
    p.add_argument("--trunc", type=int, default=2000)
    _add_sweep(p)
    p.set_defaults(func=cmd_verify_props)

    p = add("schur-to-poset", help="poset for a diagonally constant tableau")
    p.add_argument("input", help="tableau JSON file or rows such as '[[2,1],[1,2]]'")
    p.add_argument("--numeric", action="store_true", help="compare truncated series")
    p.add_argument("--trunc", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_schur_to_poset)

    p = add("numeric-eval", help="truncated value with tail bound")
    p.add_argument("input", help="'zeta(1,2)', a word literal, or a poset")
    p.add_argument("--trunc", type=int, default=2000)
    p.add_argument("--compare", metavar="OTHER", help="second input to compare against")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--figure", metavar="PATH", help="write a convergence plot")
    p.set_defaults(func=cmd_numeric_eval)

    p = add("latex", help="LaTeX for a word, a poset's expansion, or a saved report")
    p.add_argument("input")
    _add_path(p)
    p.add_argument("--zeta-notation", action="store_true", help="write admissible 0-to-1 words as zeta values")
    p.set_defaults(func=cmd_latex)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = RunReport(command=argv)
    t0 = time.perf_counter()
    try:
        code = args.func(args, rep)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rep.seconds = time.perf_counter() - t0
    if args.command == "latex" and not args.output:
        text = rep.outputs["latex"]
    else:
        text = json.dumps(rep.to_json(), indent=2, ensure_ascii=False)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
