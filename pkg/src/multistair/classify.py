"""Representation type of staircase algebras from their Tits forms."""

from __future__ import annotations

import enum
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .diagram import Diagram, DiagramError, enumerate_diagrams
from .search import (DEFAULT_NODE_CAP, InconclusiveError, low_vectors, root_search,
                     very_negative_vector)
from .tits import (UnitForm, Vector, evaluate, is_nonnegative, minimal_nullroots,
                   restrict_form, tits_form)


class RepType(enum.Enum):
    FINITE = "Finite"
    TAME_CONCEALED = "TameConcealed"
    TAME_NON_CONCEALED = "TameNonConcealed"
    WILD = "Wild"

    @property
    def rank(self) -> int:
        return {"Finite": 0, "TameConcealed": 1, "TameNonConcealed": 1, "Wild": 2}[self.value]

    @property
    def is_tame(self) -> bool:
        return self.rank == 1


@dataclass(frozen=True)
class SearchBudget:
    entry_bound_wp: int = 6
    entry_bound_wnn: int = 12
    node_cap: int = DEFAULT_NODE_CAP

    def __post_init__(self):
        if self.entry_bound_wp < 1 or self.entry_bound_wnn < 1 or self.node_cap < 1:
            raise ValueError("search bounds must be at least 1")

    @classmethod
    def from_env(cls, **overrides) -> SearchBudget:
        vals = {}
        for name, var in (("entry_bound_wp", "MULTISTAIR_WP_BOUND"),
                          ("entry_bound_wnn", "MULTISTAIR_WNN_BOUND"),
                          ("node_cap", "MULTISTAIR_NODE_CAP")):
            if os.environ.get(var):
                vals[name] = int(os.environ[var])
        vals.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**vals)

    def bounds_json(self) -> dict:
        return {"wp": self.entry_bound_wp, "wnn": self.entry_bound_wnn}


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class Decision:
    value: bool
    witness: Vector | None = None
    exact: bool = True          # False: "true within bound"
    bound: int | None = None

    def __bool__(self) -> bool:
        return self.value


# ------------------------------------------------------------ decision procedures


def is_weakly_positive(f: UnitForm, b: SearchBudget = DEFAULT_BUDGET) -> Decision:
    """Exact: the root search terminates for weakly positive forms, and otherwise
    stops at the first level holding a vector with q <= 0 (always with q = 0)."""
    res = root_search(f, node_cap=b.node_cap)
    if res.witness is None:
        return Decision(True, bound=b.entry_bound_wp)
    return Decision(False, res.witness, bound=b.entry_bound_wp)


def positive_roots(f: UnitForm, b: SearchBudget = DEFAULT_BUDGET) -> frozenset:
    res = root_search(f, node_cap=b.node_cap)
    if res.witness is not None:
        raise ValueError(f"form is not weakly positive (q{res.witness} = {res.witness_value})")
    big = [r for r in res.roots if max(r) > b.entry_bound_wp]
    assert not big, f"root with entry above {b.entry_bound_wp}: {big[0]}"
    return res.roots


def is_critical(f: UnitForm, b: SearchBudget = DEFAULT_BUDGET) -> bool:
    if is_weakly_positive(f, b):
        return False
    # restrictions of weakly positive forms stay weakly positive
    return all(is_weakly_positive(restrict_form(f, [i for i in range(f.n) if i != j]), b)
               for j in range(f.n))


def critical_restriction(f: UnitForm, b: SearchBudget = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Variables of a critical restriction of a form that is not weakly positive."""
    keep = list(range(f.n))
    if is_weakly_positive(f, b):
        raise ValueError("weakly positive forms have no critical restriction")
    shrinking = True
    while shrinking:
        shrinking = False
        for j in list(keep):
            rest = [i for i in keep if i != j]
            if rest and not is_weakly_positive(restrict_form(f, rest), b):
                keep = rest
                shrinking = True
                break
    return tuple(keep)


def is_weakly_nonnegative(f: UnitForm, b: SearchBudget = DEFAULT_BUDGET) -> Decision:
    if is_nonnegative(f):
        return Decision(True, exact=True)
    v = very_negative_vector(f)
    if v is not None:
        return Decision(False, v, bound=b.entry_bound_wnn)
    res = low_vectors(f, b.entry_bound_wnn, node_cap=b.node_cap)
    if res.witness is not None:
        return Decision(False, res.witness, bound=b.entry_bound_wnn)
    return Decision(True, exact=not res.hit_bound, bound=b.entry_bound_wnn)


# ------------------------------------------------------------ verdicts


def _vec_json(f: UnitForm, v: Sequence[int]) -> list:
    return [[list(f.labels[i]) if f.labels else i, int(a)] for i, a in enumerate(v) if a]


@dataclass(frozen=True)
class RepTypeVerdict:
    kind: RepType
    certificate: dict = field(default_factory=dict, compare=False)
    bounds: dict = field(default_factory=lambda: DEFAULT_BUDGET.bounds_json(), compare=False)
    source: str = field(default="form", compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "certificate": self.certificate, "bounds": self.bounds}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def verify_certificate(d: Diagram, v: RepTypeVerdict) -> bool:
    """Re-check a form verdict's certificate by direct evaluation."""
    if not d.boxes:
        return v.kind is RepType.FINITE
    f = tits_form(d)
    c = v.certificate
    at = {tuple(lab): i for i, lab in enumerate(f.labels)}

    def vector(pairs) -> Vector:
        out = [0] * f.n
        for lab, a in pairs:
            out[at[tuple(lab)]] = a
        return tuple(out)

    if v.kind is RepType.FINITE:
        if not is_weakly_positive(f):
            return False
        return (c.get("positive_roots") == len(positive_roots(f))
                and all(evaluate(f, vector(p)) == 1 for p in c.get("roots", [])))
    if v.kind is RepType.TAME_CONCEALED:
        z = vector(c["nullroot"])
        return evaluate(f, z) == 0 and all(a >= 1 for a in z)
    if v.kind is RepType.TAME_NON_CONCEALED:
        z = vector(c["nullroot"])
        support = {tuple(lab) for lab in c["restriction"]}
        return (evaluate(f, z) == 0 and len(support) < f.n
                and all(f.labels[i] in support for i, a in enumerate(z) if a))
    w = vector(c["witness"])
    return any(w) and min(w) >= 0 and evaluate(f, w) <= -1 and evaluate(f, w) == c["value"]


def classify_form(f: UnitForm, b: SearchBudget = DEFAULT_BUDGET) -> RepTypeVerdict:
    bounds = b.bounds_json()
    wp = is_weakly_positive(f, b)
    if wp:
        return RepTypeVerdict(RepType.FINITE, {"positive_roots": len(positive_roots(f, b))}, bounds)
    if all(is_weakly_positive(restrict_form(f, [i for i in range(f.n) if i != j]), b)
           for j in range(f.n)):
        found = minimal_nullroots(f, b.entry_bound_wp, node_cap=b.node_cap)
        z = found.minimal[0] if len(found.minimal) == 1 else wp.witness
        cert = {"nullroot": _vec_json(f, z), "unique_in_box": len(found.minimal) == 1,
                "caveat": "critical form taken as tame concealed"}
        return RepTypeVerdict(RepType.TAME_CONCEALED, cert, bounds)
    wnn = is_weakly_nonnegative(f, b)
    if wnn:
        keep = critical_restriction(f, b)
        sub = restrict_form(f, keep)
        z = is_weakly_positive(sub, b).witness
        full = [0] * f.n
        for i, a in zip(keep, z):
            full[i] = a
        cert = {"restriction": [list(f.labels[i]) if f.labels else i for i in keep],
                "nullroot": _vec_json(f, full),
                "weakly_nonnegative": {"exact": wnn.exact, "bound": wnn.bound}}
        return RepTypeVerdict(RepType.TAME_NON_CONCEALED, cert, bounds)
    return RepTypeVerdict(RepType.WILD, {"witness": _vec_json(f, wnn.witness),
                                         "value": evaluate(f, wnn.witness)}, bounds)


@lru_cache(maxsize=50_000)
def classify_by_form(d: Diagram, b: SearchBudget = DEFAULT_BUDGET) -> RepTypeVerdict:
    if not d.boxes:
        raise DiagramError("classification needs a nonempty diagram")
    return classify_form(tits_form(d), b)


# ------------------------------------------------------------ cross validation


@dataclass(frozen=True)
class Comparison:
    diagram: Diagram
    form: RepTypeVerdict | None
    table: RepTypeVerdict
    error: str | None = None

    @property
    def agrees(self) -> bool:
        return self.form is not None and self.form.kind is self.table.kind


@dataclass
class CrossReport:
    k: int
    n_max: int
    checked: int = 0
    disagreements: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_json(self) -> dict:
        return {
            "k": self.k, "n_max": self.n_max, "checked": self.checked,
            "disagreements": [{"diagram": c.diagram.to_json(), "form": c.form.to_json(),
                               "table": c.table.to_json()} for c in self.disagreements],
            "inconclusive": [{"diagram": c.diagram.to_json(), "error": c.error}
                             for c in self.inconclusive],
        }


def compare(d: Diagram, b: SearchBudget = DEFAULT_BUDGET) -> Comparison:
    from .tables import classify_by_table

    table = classify_by_table(d)
    try:
        form = classify_by_form(d, b)
    except InconclusiveError as exc:
        return Comparison(d, None, table, str(exc))
    return Comparison(d, form, table)


def _compare_many(args):
    diagrams, b = args
    return [compare(d, b) for d in diagrams]


def run_comparisons(diagrams: Sequence[Diagram], b: SearchBudget = DEFAULT_BUDGET,
                    jobs: int = 1) -> list[Comparison]:
    """Compare both classifiers on each diagram; output order follows the input."""
    diagrams = list(diagrams)
    if jobs <= 1 or len(diagrams) < 2 * jobs:
        return [compare(d, b) for d in diagrams]
    size = max(1, len(diagrams) // (jobs * 8))
    chunks = [diagrams[i:i + size] for i in range(0, len(diagrams), size)]
    out: list[Comparison] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_compare_many, [(c, b) for c in chunks]):
            out.extend(part)
    return out


def cross_validate(k: int, n_max: int, b: SearchBudget = DEFAULT_BUDGET, jobs: int = 1,
                   diagrams: Sequence[Diagram] | None = None) -> CrossReport:
    if diagrams is None:
        diagrams = [d for n in range(1, n_max + 1)
                    for d in enumerate_diagrams(k, n, up_to_symmetry=True)]
    report = CrossReport(k, n_max)
    for c in run_comparisons(diagrams, b, jobs):
        report.checked += 1
        if c.form is None:
            report.inconclusive.append(c)
        elif not c.agrees:
            report.disagreements.append(c)
    return report
