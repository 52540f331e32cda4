"""Verification sweeps: closed formulas against definitions over families of posets.

Each sweep returns a :class:`SweepReport` with one :class:`Instance` per check;
failing instances carry the residual left after reduction by the relations.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from ._rational import RationalLike, fmt, to_fraction
from .coaction import (
    closed_hypothesis,
    d1_closed,
    delta_word,
    delta_y_closed,
    delta_y_definition,
    dr_poset,
    dr_word,
    drprime_poset,
    exp_drprime,
    project_L,
)
from .fixtures import diamond, example1, example2, example3, hexagon, poset_to_json, w5, wedge
from .poset import LabeledPoset, PathSpec, enumerate_posets
from .relations import MAX_WEIGHT, MembershipCertificate, RelationFamily, span_membership
from .words import ONE, FormalSum, IISymbol, Level, TensorTerm, normalize_sum, sum_to_json
from .numeric import eval_poset
from .yamamoto import STD_PATH, is_admissible, product_identity, recursion_identity


@dataclass
class Instance:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"instance": self.name, "ok": self.ok, **self.detail}


@dataclass
class SweepReport:
    name: str
    instances: list[Instance]
    elapsed: float = 0.0
    skipped: int = 0

    @property
    def passed(self) -> int:
        return sum(1 for i in self.instances if i.ok)

    @property
    def failed(self) -> list[Instance]:
        return [i for i in self.instances if not i.ok]

    @property
    def all_ok(self) -> bool:
        return bool(self.instances) and not self.failed

    def verdict(self) -> str:
        if not self.instances:
            return "no instances"
        if self.all_ok:
            return "all instances verified"
        return f"{len(self.failed)} of {len(self.instances)} instances not verified"

    def to_json(self, full: bool = False) -> dict:
        rows = self.instances if full else self.failed
        key = "results" if full else "failures"
        return {
            "sweep": self.name,
            "verdict": self.verdict(),
            "instances": len(self.instances),
            "verified": self.passed,
            "skipped": self.skipped,
            key: [i.to_json() for i in rows],
            "seconds": round(self.elapsed, 3),
        }


def fixture_posets() -> dict[str, LabeledPoset]:
    return {
        "w5": w5(),
        "wedge": wedge(),
        "diamond": diamond(),
        "hexagon": hexagon(),
        "example1(5)": example1(5),
        "example2(2,2,2)": example2(2, 2, 2),
        "example3(2,2)": example3(2, 2),
    }


def sweep_family(max_size: int, labels: Sequence[RationalLike], fixtures: Iterable[str] = ()) -> list[tuple[str, LabeledPoset]]:
    """All posets up to ``max_size`` elements (up to isomorphism) plus named fixtures."""
    out = []
    for n in range(1, max_size + 1):
        for i, X in enumerate(enumerate_posets(n, list(labels))):
            out.append((f"n{n}#{i}", X))
    named = fixture_posets()
    out += [(name, named[name]) for name in fixtures]
    return out


def admissible_paths(X: LabeledPoset, labels: Sequence[RationalLike]) -> Iterator[PathSpec]:
    for a in labels:
        for b in labels:
            path = PathSpec(to_fraction(a), to_fraction(b))
            if is_admissible(X, path):
                yield path


def _path_name(path: PathSpec) -> str:
    return f"{fmt(path.start)}->{fmt(path.end)}"


class _Families:
    """Relation families cached by (labels, weight, level)."""

    def __init__(self) -> None:
        self._cache: dict = {}

    def get(self, labels: Iterable[RationalLike], weight: int, level: Level) -> RelationFamily:
        labs = tuple(sorted({to_fraction(x) for x in labels}))
        weight = min(weight, MAX_WEIGHT[level])
        key = (labs, weight, level)
        if key not in self._cache:
            self._cache[key] = RelationFamily(labs, weight, level, 2)
        return self._cache[key]


def certify(diff: FormalSum, family: RelationFamily) -> Instance:
    """Membership of ``diff`` in the span; the detail records certificate size or residual."""
    if diff.is_zero():
        return Instance("", True, {"certificate": []})
    res = span_membership(diff, family)
    if isinstance(res, MembershipCertificate):
        return Instance("", True, {"certificate_size": len(res), "relation_kinds": res.kinds()})
    return Instance("", False, {"residual": sum_to_json(res.residual)})


def _named(inst: Instance, name: str) -> Instance:
    inst.name = name
    return inst


def _labels_of(X: LabeledPoset, path: PathSpec, labels: Sequence[RationalLike]) -> set:
    return set(to_fraction(v) for v in labels) | set(X.labels.values()) | {path.start, path.end}


def _run(name: str, gen: Callable[[], Iterator[Instance]]) -> SweepReport:
    t0 = time.perf_counter()
    rep = SweepReport(name, [])
    for inst in gen():
        if inst is None:
            rep.skipped += 1
        else:
            rep.instances.append(inst)
    rep.elapsed = time.perf_counter() - t0
    return rep


def verify_dr_closed(
    max_size: int = 4, labels: Sequence[RationalLike] = (0, 1), fixtures: Iterable[str] = ("w5", "diamond", "example1(5)")
) -> SweepReport:
    """``D_r`` by definition minus the closed window formula, modulo level-L relations, for every r."""
    fams = _Families()
    family = sweep_family(max_size, labels, fixtures)

    def gen():
        for name, X in family:
            for path in admissible_paths(X, labels):
                fam = fams.get(_labels_of(X, path, labels), len(X), Level.L)
                for r in range(1, len(X) + 1):
                    diff = (dr_poset(X, path, r, "definition") - dr_poset(X, path, r, "closed")).terms
                    yield _named(certify(diff, fam), f"{name} {_path_name(path)} r={r}")

    return _run("D_r closed formula", gen)


def verify_d1(
    max_size: int = 4, labels: Sequence[RationalLike] = (0, 1), fixtures: Iterable[str] = ("w5", "diamond", "example1(5)")
) -> SweepReport:
    """``D_1`` by definition minus the single-element closed formula."""
    fams = _Families()
    family = sweep_family(max_size, labels, fixtures)

    def gen():
        for name, X in family:
            for path in admissible_paths(X, labels):
                fam = fams.get(_labels_of(X, path, labels), len(X), Level.L)
                diff = (dr_poset(X, path, 1) - d1_closed(X, path)).terms
                yield _named(certify(diff, fam), f"{name} {_path_name(path)}")

    return _run("D_1 closed formula", gen)


def verify_choice_independence(
    names: Iterable[str] | None = None, labels: Sequence[RationalLike] = (0, 1), choices: int = 3
) -> SweepReport:
    """``D_r'`` computed with ``choices`` different fixed orders per window agree exactly."""
    named = fixture_posets()
    names = list(named) if names is None else list(names)

    def gen():
        for name in names:
            X = named[name]
            for path in admissible_paths(X, labels):
                for r in range(1, len(X) + 1):
                    results = [drprime_poset(X, path, r, k) for k in range(choices)]
                    ok = all(res == results[0] for res in results)
                    detail = {} if ok else {"differences": [sum_to_json((res - results[0]).terms) for res in results[1:]]}
                    yield Instance(f"{name} {_path_name(path)} r={r}", ok, detail)

    return _run("D_r' choice independence", gen)


def verify_delta_y(max_size: int = 4, labels: Sequence[RationalLike] = (0, 1), weight: int = 4) -> SweepReport:
    """Subset coaction ``Delta_Y`` by runs against the product closed form, modulo level-A relations."""
    fams = _Families()
    family = sweep_family(max_size, labels)

    def gen():
        for name, X in family:
            for path in admissible_paths(X, labels):
                fam = fams.get(_labels_of(X, path, labels), weight, Level.A)
                for s in range(len(X) + 1):
                    for Y in itertools.combinations(X.elements, s):
                        if not closed_hypothesis(X, Y, path):
                            yield None
                            continue
                        diff = (delta_y_definition(X, Y, path) - delta_y_closed(X, Y, path)).terms
                        yield _named(certify(diff, fam), f"{name} {_path_name(path)} Y={{{','.join(Y)}}}")

    return _run("Delta_Y closed form", gen)


def binary_words(max_weight: int, min_weight: int = 0) -> Iterator[IISymbol]:
    for k in range(min_weight, max_weight + 1):
        for w in itertools.product((0, 1), repeat=k):
            yield IISymbol(0, w, 1, Level.M, "std")


def verify_word_projection(max_weight: int = 6) -> SweepReport:
    """Projecting the left factor of the coaction to level L gives ``1 (x) w + sum_r D_r(w)``."""

    def gen():
        for s in binary_words(max_weight):
            lhs = project_L(delta_word(s)).terms
            rhs = normalize_sum(FormalSum.of(TensorTerm(ONE, (s,))))
            for r in range(1, s.weight + 1):
                rhs = rhs + dr_word(s, r).terms
            diff = lhs - rhs
            yield Instance(str(s), diff.is_zero(), {} if diff.is_zero() else {"residual": sum_to_json(diff)})

    return _run("word coaction projection", gen)


def verify_exp_identity(max_weight: int = 3) -> SweepReport:
    """``exp(sum_r D_r')(1 (x) w)`` against the full coaction, modulo level-A relations."""
    fams = _Families()

    def gen():
        for s in binary_words(max_weight):
            diff = (exp_drprime(s) - delta_word(s)).terms
            fam = fams.get((0, 1), max(s.weight, 1), Level.A)
            yield _named(certify(diff, fam), str(s))

    return _run("exponential of D_r'", gen)


def report_inputs(family: list[tuple[str, LabeledPoset]]) -> list[dict]:
    return [{"name": name, "poset": poset_to_json(X)} for name, X in family]


def admissible_posets(max_size: int, labels: Sequence[RationalLike] = (0, 1), path: PathSpec = STD_PATH) -> list[tuple[str, LabeledPoset]]:
    return [(name, X) for name, X in sweep_family(max_size, labels) if is_admissible(X, path)]


def verify_product_recursion(max_size: int = 6) -> SweepReport:
    """Shuffle product of expansions equals the expansion of the disjoint union (total size <= max_size),
    and splitting over an incomparable pair reproduces the expansion, on admissible {0,1}-posets."""
    family = admissible_posets(max_size)

    def gen():
        for i, (na, X) in enumerate(family):
            for nb, Y in family[i:]:
                if len(X) + len(Y) <= max_size:
                    yield Instance(f"product {na} {nb}", product_identity(X, Y))
        for name, X in family:
            for i, a in enumerate(X.elements):
                for b in X.elements[i + 1 :]:
                    if not X.comparable(a, b):
                        yield Instance(f"recursion {name} ({a},{b})", recursion_identity(X, a, b))

    return _run("product and recursion identities", gen)


def verify_numeric_products(truncation: int = 2000, pairs: int = 24, tol: float = 1e-6, max_size: int = 4) -> SweepReport:
    """``|num I(X) * num I(Y) - num I(X + Y)|`` within ``tol`` plus the combined tail bounds."""
    family = admissible_posets(max_size)
    chosen = [(a, b) for i, a in enumerate(family) for b in family[i:]][:pairs]

    def gen():
        for (na, X), (nb, Y) in chosen:
            prod = eval_poset(X, truncation).times(eval_poset(Y, truncation))
            union = eval_poset(X.direct_sum(Y)[0], truncation)
            gap = abs(prod.value - union.value)
            allowed = tol + prod.tail_bound + union.tail_bound
            yield Instance(
                f"{na} x {nb}",
                gap < allowed,
                {"product": prod.value, "union": union.value, "gap": gap, "allowed": allowed},
            )

    return _run("numeric product check", gen)
