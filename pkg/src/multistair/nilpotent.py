"""Multi-graded vector spaces, graded nilpotent tuples and finiteness tests."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .classify import DEFAULT_BUDGET, RepType, SearchBudget, classify_by_form
from .diagram import Box, Diagram, DiagramError, from_boxes
from .quiver import build_quiver
from .search import root_search
from .tits import evaluate, restrict_form, tits_form


@dataclass(frozen=True)
class GradedDims:
    k: int
    dims: Mapping[Box, int]

    def __post_init__(self):
        clean = {}
        for x, d in self.dims.items():
            x = tuple(int(c) for c in x)
            if len(x) != self.k or any(c < 1 for c in x):
                raise DiagramError(f"grading {x} is not a point of Z^{self.k}_(>=1)")
            if int(d) < 0:
                raise ValueError(f"negative dimension at {x}")
            if int(d):
                clean[x] = int(d)
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.k, tuple(self.dims.items())))

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def __getitem__(self, x) -> int:
        return self.dims.get(tuple(x), 0)

    def to_json(self) -> dict:
        return {"k": self.k, "dims": [[list(x), d] for x, d in self.dims.items()]}


def parse_graded_dims(text: str | dict) -> GradedDims:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        return GradedDims(int(data["k"]), {tuple(x): int(d) for x, d in data["dims"]})
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"graded dims need 'k' and 'dims' pairs: {exc}") from None


def shape_of(g: GradedDims) -> Diagram:
    """Order ideal generated by the support."""
    if not g.dims:
        raise DiagramError("shape of the zero space is undefined")
    boxes = set()
    todo = list(g.dims)
    while todo:
        x = todo.pop()
        if x in boxes:
            continue
        boxes.add(x)
        for i in range(g.k):
            if x[i] >= 2:
                todo.append(x[:i] + (x[i] - 1,) + x[i + 1:])
    return from_boxes(g.k, boxes)


def worked_example_dims() -> GradedDims:
    return GradedDims(3, {(1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 1): 2, (1, 2, 1): 2,
                          (1, 1, 2): 2, (2, 1, 2): 2, (2, 2, 1): 3})


# ------------------------------------------------------------ graded tuples


def _down(x: Box, i: int) -> Box:
    return x[:i - 1] + (x[i - 1] - 1,) + x[i:]


@dataclass(frozen=True)
class GradedTuple:
    """Blocks maps[(i, x)] : V_x -> V_{x - e_i}, stored as dims(x - e_i) x dims(x) matrices over F_p."""

    dims: GradedDims
    maps: Mapping[tuple[int, Box], np.ndarray] = field(compare=False)
    p: int = 101

    def block(self, i: int, x: Box) -> np.ndarray:
        x = tuple(x)
        if (i, x) in self.maps:
            return np.asarray(self.maps[(i, x)], dtype=np.int64) % self.p
        return np.zeros((self.dims[_down(x, i)], self.dims[x]), dtype=np.int64)


@dataclass(frozen=True)
class SquareViolation:
    apex: Box
    axes: tuple[int, int]

    def __str__(self):
        return f"square at {self.apex} on axes {self.axes}"


def block_shape_errors(t: GradedTuple) -> list[str]:
    errs = []
    for (i, x), m in sorted(t.maps.items()):
        if not 1 <= i <= t.dims.k or len(x) != t.dims.k or x[i - 1] < 2:
            errs.append(f"block ({i}, {x}) has no arrow")
            continue
        want = (t.dims[_down(x, i)], t.dims[x])
        got = np.asarray(m).shape
        if got != want:
            errs.append(f"block ({i}, {x}) has shape {got}, expected {want}")
    return errs


def validate_tuple(t: GradedTuple) -> tuple[bool, SquareViolation | None]:
    """True iff every commutativity square of the shape commutes."""
    errs = block_shape_errors(t)
    if errs:
        raise ValueError("; ".join(errs))
    if not t.dims.dims:
        return True, None
    q = build_quiver(shape_of(t.dims))
    for r in q.relations:
        i, j = r.axes
        x = r.apex
        lhs = t.block(i, _down(x, j)) @ t.block(j, x)
        rhs = t.block(j, _down(x, i)) @ t.block(i, x)
        if not np.array_equal(lhs % t.p, rhs % t.p):
            return False, SquareViolation(x, (i, j))
    return True, None


def zero_tuple(g: GradedDims, p: int = 101) -> GradedTuple:
    return GradedTuple(g, {}, p)


def worked_example_tuple(p: int = 101) -> GradedTuple:
    m = {
        (2, (2, 2, 1)): [[1, 0, 0], [0, 1, 0]],
        (1, (2, 1, 1)): [[1, 0]],
        (3, (2, 1, 2)): [[1, 0], [0, 1]],
        (1, (2, 2, 1)): [[1, 0, 1], [1, 0, 0]],
        (2, (1, 2, 1)): [[0, 1]],
        (1, (2, 1, 2)): [[1, 0], [0, 1]],
        (3, (1, 1, 2)): [[1, 0]],
        (3, (1, 2, 2)): [[0], [1]],
        (2, (1, 2, 2)): [[1], [0]],
    }
    return GradedTuple(worked_example_dims(), {k: np.array(v, dtype=np.int64) for k, v in m.items()}, p)


def projective_tuple(d: Diagram, top: Box, p: int = 101) -> GradedTuple:
    """The indecomposable projective at `top`: K on its down-set, identity maps."""
    top = tuple(top)
    if top not in d.boxes:
        raise KeyError(f"{top} is not a box")
    down = {x for x in d.boxes if all(a <= b for a, b in zip(x, top))}
    g = GradedDims(d.k, {x: 1 for x in down})
    maps = {(a.axis, a.source): np.ones((1, 1), dtype=np.int64)
            for a in build_quiver(d).arrows if a.source in down}
    return GradedTuple(g, maps, p)


# ------------------------------------------------------------ finiteness


def shape_level_finiteness(d: Diagram, b: SearchBudget = DEFAULT_BUDGET) -> bool:
    return classify_by_form(d, b).kind is RepType.FINITE


@dataclass(frozen=True)
class FinitenessVerdict:
    kind: str                      # "Finite", "Infinite" or "Unknown"
    rule: str
    certificate: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "rule": self.rule, "certificate": self.certificate}


def fixed_space_finiteness(g: GradedDims, b: SearchBudget = DEFAULT_BUDGET) -> FinitenessVerdict:
    """Finiteness of graded nilpotent tuples on V with the given graded dimensions.

    A vector 0 < u <= dim V with q(u) <= 0 forces infinitely many orbits: the
    representation variety in dimension u has dimension at least
    dim GL_u - q(u), orbits have dimension at most dim GL_u - 1, and adding
    simples up to dim V keeps the resulting classes distinct.
    """
    shape = shape_of(g)
    verdict = classify_by_form(shape, b)
    if verdict.kind is RepType.FINITE:
        return FinitenessVerdict("Finite", "shape is representation-finite")
    f = tits_form(shape)
    box = [g[x] for x in f.labels]
    res = root_search(f, box=box, node_cap=b.node_cap)
    if res.witness is not None:
        u = res.witness
        support = [i for i, a in enumerate(u) if a]
        sub = restrict_form(f, support)
        cert = {"vector": [[list(f.labels[i]), u[i]] for i in support],
                "value": evaluate(f, u),
                "restriction_value": evaluate(sub, [u[i] for i in support])}
        return FinitenessVerdict("Infinite", "dimension vector dominates a vector with q <= 0", cert)
    if verdict.kind is RepType.TAME_CONCEALED:
        return FinitenessVerdict("Finite", "tame concealed shape, minimal nullroot not dominated",
                                 {"nullroot": verdict.certificate["nullroot"]})
    return FinitenessVerdict("Unknown", f"{verdict.kind.value} shape without dominated nullroot")


def verify_finiteness(g: GradedDims, v: FinitenessVerdict) -> bool:
    if v.kind != "Infinite":
        return True
    f = tits_form(shape_of(g))
    at = {lab: i for i, lab in enumerate(f.labels)}
    u = [0] * f.n
    for lab, a in v.certificate["vector"]:
        u[at[tuple(lab)]] = a
    return (any(u) and evaluate(f, u) <= 0
            and all(0 <= a <= g[lab] for a, lab in zip(u, f.labels)))
