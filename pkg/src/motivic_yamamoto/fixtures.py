"""Named labeled posets, a one-line text DSL, and the poset JSON format."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from ._rational import fmt, to_fraction
from .poset import LabeledPoset, PosetError, antichain, chain, validate_poset


def w5() -> LabeledPoset:
    """x1 < x2 > x3 < x4 < x5 with labels 1,0,1,0,0."""
    return validate_poset(
        ["x1", "x2", "x3", "x4", "x5"],
        {"x1": 1, "x2": 0, "x3": 1, "x4": 0, "x5": 0},
        [("x1", "x2"), ("x3", "x2"), ("x3", "x4"), ("x4", "x5")],
    )


def wedge() -> LabeledPoset:
    """Two 1-labeled points under one 0-labeled point."""
    return validate_poset(["x1", "x2", "x3"], {"x1": 1, "x2": 0, "x3": 1}, [("x1", "x2"), ("x3", "x2")])


def diamond() -> LabeledPoset:
    """x1 < x2, x3 < x4 < x5 with labels 0,1,1,0,1 (admissible for the path 1 -> 0)."""
    return validate_poset(
        ["x1", "x2", "x3", "x4", "x5"],
        {"x1": 0, "x2": 1, "x3": 1, "x4": 0, "x5": 1},
        [("x1", "x2"), ("x1", "x3"), ("x2", "x4"), ("x3", "x4"), ("x4", "x5")],
    )


def hexagon() -> LabeledPoset:
    """A 0-labeled centre ``c`` with three lower and three upper neighbours."""
    labels = {"b1": 1, "b2": 1, "w0": 0, "c": 0, "t": 1, "u1": 0, "u2": 0}
    covers = [("b1", "c"), ("b2", "c"), ("w0", "c"), ("c", "t"), ("c", "u1"), ("c", "u2")]
    return validate_poset(list(labels), labels, covers)


def example1(n: int) -> LabeledPoset:
    """Chains x1..xn and x1'..xn' with x_a <= x_b' for a <= b; 1 on x1', x2', x1, xn."""
    if n < 2:
        raise PosetError("example1 needs n >= 2")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ps = [f"x{i}'" for i in range(1, n + 1)]
    ones = {"x1'", "x2'", "x1", f"x{n}"}
    labels = {x: (1 if x in ones else 0) for x in xs + ps}
    covers = list(zip(xs, xs[1:])) + list(zip(ps, ps[1:])) + list(zip(xs, ps))
    return validate_poset(xs + ps, labels, covers)


def example2(s: int, t: int, n: int) -> LabeledPoset:
    """Chain x1..x_{s+t} (1 on x1, x_{s+1}) and a 1-labeled chain x1'..xn' below x_{s+t}."""
    if s < 1 or t < 1 or n < 0:
        raise PosetError("example2 needs s, t >= 1 and n >= 0")
    xs = [f"x{i}" for i in range(1, s + t + 1)]
    ps = [f"x{i}'" for i in range(1, n + 1)]
    labels = {x: 0 for x in xs}
    labels["x1"] = 1
    labels[f"x{s + 1}"] = 1
    labels.update({p: 1 for p in ps})
    covers = list(zip(xs, xs[1:])) + list(zip(ps, ps[1:]))
    if ps:
        covers.append((ps[-1], xs[-1]))
    return validate_poset(xs + ps, labels, covers)


def example3(n: int, m: int) -> LabeledPoset:
    """Chains x1..x_{n+1} and x1'..xm' meeting at x_{n+1}; 1 on x1 and x1'."""
    if n < 1 or m < 1:
        raise PosetError("example3 needs n, m >= 1")
    xs = [f"x{i}" for i in range(1, n + 2)]
    ps = [f"x{i}'" for i in range(1, m + 1)]
    labels = {x: 0 for x in xs + ps}
    labels["x1"] = 1
    labels["x1'"] = 1
    covers = list(zip(xs, xs[1:])) + list(zip(ps, ps[1:])) + [(ps[-1], xs[-1])]
    return validate_poset(xs + ps, labels, covers)


def example1_ends(n: int) -> tuple[str, str]:
    """Names used for the extension's bottom and top in the first worked example."""
    return "x0", f"x{n + 1}'"


NAMED = {
    "w5": w5,
    "wedge": wedge,
    "diamond": diamond,
    "hexagon": hexagon,
}

_CALL = re.compile(r"^\s*([a-z0-9_]+)\s*(?:\(([^()]*)\))?\s*$")


def parse_dsl(text: str) -> LabeledPoset:
    """``chain(1,0,0)``, ``antichain(1,0)``, ``wedge``, ``w5``, ``diamond``, ``hexagon``,
    ``example1(n)``, ``example2(s,t,n)`` or ``example3(n,m)``."""
    m = _CALL.match(text)
    if not m:
        raise PosetError(f"cannot parse poset expression {text!r}")
    name, args = m.group(1), m.group(2)
    parts = [a.strip() for a in args.split(",")] if args and args.strip() else []
    try:
        if name == "chain":
            return chain([to_fraction(a) for a in parts], prefix="x")
        if name == "antichain":
            return antichain([to_fraction(a) for a in parts], prefix="x")
        if name in NAMED:
            if parts:
                raise PosetError(f"{name} takes no arguments")
            return NAMED[name]()
        ints = [int(a) for a in parts]
        if name == "example1" and len(ints) == 1:
            return example1(*ints)
        if name == "example2" and len(ints) == 3:
            return example2(*ints)
        if name == "example3" and len(ints) == 2:
            return example3(*ints)
    except (ValueError, ZeroDivisionError) as exc:
        raise PosetError(f"bad arguments in {text!r}: {exc}") from None
    raise PosetError(f"unknown poset expression {text!r}")


def poset_to_json(X: LabeledPoset) -> dict[str, Any]:
    return {
        "elements": list(X.elements),
        "labels": {x: fmt(X.label(x)) for x in X.elements},
        "covers": [list(p) for p in X.covers()],
    }


def poset_from_json(data: Any) -> LabeledPoset:
    if not isinstance(data, dict) or "elements" not in data:
        raise PosetError("poset JSON needs an object with 'elements', 'labels' and 'covers'")
    elements = data["elements"]
    labels = data.get("labels", {})
    covers = data.get("covers", [])
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise PosetError("'elements' must be a list of strings")
    if not isinstance(labels, dict):
        raise PosetError("'labels' must be an object")
    try:
        pairs = [(str(a), str(b)) for a, b in covers]
    except (TypeError, ValueError):
        raise PosetError("'covers' must be a list of pairs") from None
    try:
        lab = {k: to_fraction(v) for k, v in labels.items()}
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise PosetError(f"bad label: {exc}") from None
    return validate_poset(elements, lab, pairs)


def load_poset(spec: str) -> LabeledPoset:
    """A poset from a JSON file path or a DSL expression."""
    path = Path(spec)
    if spec.endswith(".json") or path.is_file():
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            raise PosetError(f"no such file: {spec}") from None
        except json.JSONDecodeError as exc:
            raise PosetError(f"invalid JSON in {spec}: {exc}") from None
        return poset_from_json(data)
    return parse_dsl(spec)
