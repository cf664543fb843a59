"""Integral unit forms q(v) = sum v_i^2 + sum_{i<j} c_ij v_i v_j.

For a staircase quiver c_ij is -1 for an arrow between i and j and +1 for a
commutativity square with apex i and far corner j (or vice versa).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .diagram import Box, Diagram, corner7, q4_diagram
from .quiver import BoundQuiver, build_quiver

Vector = tuple[int, ...]


@dataclass(frozen=True)
class UnitForm:
    n: int
    coeff: Mapping[tuple[int, int], int]
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        clean = {}
        for (i, j), c in self.coeff.items():
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad coefficient index ({i}, {j}) for n = {self.n}")
            if i > j:
                i, j = j, i
            if c:
                clean[(i, j)] = clean.get((i, j), 0) + int(c)
        object.__setattr__(self, "coeff", {p: c for p, c in sorted(clean.items()) if c})
        if self.labels and len(self.labels) != self.n:
            raise ValueError("labels must name every variable")

    def __hash__(self):
        return hash((self.n, tuple(self.coeff.items())))

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """Symmetric integer matrix G with 2 q(v) = v^T G v."""
        g = [[0] * self.n for _ in range(self.n)]
        for i in range(self.n):
            g[i][i] = 2
        for (i, j), c in self.coeff.items():
            g[i][j] = g[j][i] = c
        return tuple(tuple(r) for r in g)

    def matrix(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> int:
        """(u, v) = q(u+v) - q(u) - q(v)."""
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(self.n) if u[i]
                   for j in range(self.n) if v[j])

    def __call__(self, v: Sequence[int]) -> int:
        return evaluate(self, v)

    def label_of(self, i: int):
        return self.labels[i] if self.labels else i

    def to_json(self) -> dict:
        return {"n": self.n, "coeff": [[i, j, c] for (i, j), c in sorted(self.coeff.items())]}


def evaluate(f: UnitForm, v: Sequence[int]) -> int:
    if len(v) != f.n:
        raise ValueError(f"vector of length {len(v)} for a form in {f.n} variables")
    v = [int(a) for a in v]
    total = sum(a * a for a in v)
    for (i, j), c in f.coeff.items():
        total += c * v[i] * v[j]
    return total


def tits_of(q: BoundQuiver, check_unit: bool = True) -> UnitForm:
    idx = q.index
    coeff: dict[tuple[int, int], int] = {}

    def bump(a: Box, b: Box, delta: int):
        i, j = sorted((idx[a], idx[b]))
        coeff[(i, j)] = coeff.get((i, j), 0) + delta

    for a in q.arrows:
        bump(a.source, a.target, -1)
    for r in q.relations:
        bump(r.apex, r.far, +1)
    if check_unit:
        bad = {p: c for p, c in coeff.items() if c not in (-1, 0, 1)}
        assert not bad, f"staircase form with coefficient outside [-1, 1]: {bad}"
    return UnitForm(len(q.vertices), coeff, labels=q.vertices)


def tits_form(d: Diagram) -> UnitForm:
    return tits_of(build_quiver(d))


def restrict_form(f: UnitForm, s: Iterable[int]) -> UnitForm:
    """Form on the variables in s (sorted), with induced coefficients."""
    keep = sorted(set(s))
    if not keep:
        raise ValueError("restriction to an empty variable set")
    pos = {v: i for i, v in enumerate(keep)}
    coeff = {(pos[i], pos[j]): c for (i, j), c in f.coeff.items() if i in pos and j in pos}
    labels = tuple(f.labels[i] for i in keep) if f.labels else ()
    return UnitForm(len(keep), coeff, labels=labels)


def restrict_to_labels(f: UnitForm, labels: Iterable) -> UnitForm:
    where = {lab: i for i, lab in enumerate(f.labels)}
    return restrict_form(f, [where[tuple(lab) if isinstance(lab, list) else lab] for lab in labels])


def extend_by_zeros(f: UnitForm, s: Sequence[int], v: Sequence[int]) -> Vector:
    out = [0] * f.n
    for i, a in zip(sorted(set(s)), v):
        out[i] = a
    return tuple(out)


def vector_from_dims(f: UnitForm, dims: Mapping) -> Vector:
    """Vector in label order from a label -> value mapping (missing labels are 0)."""
    return tuple(int(dims.get(lab, 0)) for lab in f.labels)


def dims_from_vector(f: UnitForm, v: Sequence[int]) -> dict:
    return {f.labels[i]: int(a) for i, a in enumerate(v)}


def star_form(arms: int) -> UnitForm:
    """Star quiver: centre is variable `arms`, each arm joined by one arrow."""
    return UnitForm(arms + 1, {(i, arms): -1 for i in range(arms)})


def cycle_form(n: int) -> UnitForm:
    return UnitForm(n, {(i, (i + 1) % n): -1 for i in range(n)})


# ------------------------------------------------------------ exact definiteness


def is_nonnegative(f: UnitForm) -> bool:
    """Exact positive semidefiniteness of the Gram matrix (Fraction LDL^T)."""
    a = [[Fraction(x) for x in row] for row in f.gram]
    n = f.n
    for k in range(n):
        p = a[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            r = a[i][k] / p
            for j in range(k, n):
                a[i][j] -= r * a[k][j]
    return True


def corank(f: UnitForm) -> int:
    """Dimension of the real radical of the Gram matrix."""
    m = f.matrix().astype(float)
    if f.n == 0:
        return 0
    return int(f.n - np.linalg.matrix_rank(m))


# ------------------------------------------------------------ nullroots


@dataclass(frozen=True)
class NullrootSearch:
    minimal: tuple[Vector, ...]
    bound: int
    complete: bool   # False when the box held a vector with q <= -1
    explored: int


class NonUniqueNullroot(ValueError):
    def __init__(self, minimal: Sequence[Vector]):
        self.minimal = tuple(minimal)
        super().__init__(f"{len(self.minimal)} incomparable minimal nullroots")


def minimal_nullroots(f: UnitForm, entry_bound: int = 6, node_cap: int = 2_000_000) -> NullrootSearch:
    """All componentwise-minimal positive nullroots with entries <= entry_bound.

    Vectors with q in {0, 1} are grown from the unit vectors one unit at a time.
    Every positive vector v with q(v) in {0, 1}, all of whose nonzero
    predecessors satisfy q >= 0, is reached this way, so the result is
    complete on the box for weakly non-negative forms; otherwise it is
    flagged incomplete.
    """
    from .search import low_vectors

    found = low_vectors(f, entry_bound, node_cap=node_cap)
    zeros = sorted(v for v, val in found.values.items() if val == 0)
    minimal = [v for v in zeros
               if not any(w != v and all(a <= b for a, b in zip(w, v)) for w in zeros)]
    return NullrootSearch(tuple(minimal), entry_bound, found.witness is None, len(found.values))


def minimal_nullroot(f: UnitForm, entry_bound: int = 6) -> Vector | None:
    res = minimal_nullroots(f, entry_bound)
    if not res.minimal:
        return None
    if len(res.minimal) > 1:
        raise NonUniqueNullroot(res.minimal)
    return res.minimal[0]


# ------------------------------------------------------------ sum-of-squares identities

# Each entry is an integer linear form L; 4 q = sum (L . v)^2 over the list.
_A3_VARS = "abcdefg"
_A3_BOXES = {"a": (1, 1, 1), "b": (2, 1, 1), "c": (1, 2, 1), "d": (1, 1, 2),
             "e": (2, 2, 1), "f": (1, 2, 2), "g": (2, 1, 2)}
_A3_SQUARES = [
    {"a": 1, "b": -2, "e": 1, "g": 1},
    {"a": 1, "c": -2, "e": 1, "f": 1},
    {"a": 1, "d": -2, "f": 1, "g": 1},
    {"a": 1},
    {"e": 1, "f": -1},
    {"e": 1, "g": -1},
    {"f": 1, "g": -1},
]

_A4_VARS = "abcdefghi"
_A4_BOXES = {"a": (1, 1, 1, 1), "b": (2, 1, 1, 1), "c": (1, 2, 1, 1), "d": (1, 1, 2, 1),
             "e": (1, 1, 1, 2), "f": (2, 2, 1, 1), "g": (1, 2, 2, 1), "h": (1, 1, 2, 2),
             "i": (2, 1, 1, 2)}
_A4_SQUARES = [
    {"a": 1, "b": -2, "f": 1, "i": 1},
    {"a": 1, "e": -2, "h": 1, "i": 1},
    {"a": 1, "c": -2, "f": 1, "g": 1},
    {"a": 1, "d": -2, "h": 1, "g": 1},
    {"f": 1, "i": -1},
    {"f": 1, "g": -1},
    {"h": 1, "i": -1},
    {"h": 1, "g": -1},
]

SOS_IDENTITIES = {
    "A3": (corner7, _A3_BOXES, _A3_SQUARES),
    "A4": (q4_diagram, _A4_BOXES, _A4_SQUARES),
}


def sos_labels(which: str) -> dict[str, Box]:
    return dict(SOS_IDENTITIES[which][1])


def sos_identity_check(which: str, trials: int = 100, form: UnitForm | None = None,
                       seed: int = 0) -> bool:
    """Compare a Tits form with the stored sum-of-squares identity, exactly and on random vectors."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    make, boxes, squares = SOS_IDENTITIES[which]
    f = form if form is not None else tits_form(make())
    if f.n != len(boxes) or not all(box in f.labels for box in boxes.values()):
        return False
    pos = {lab: f.labels.index(box) for lab, box in boxes.items()}
    rows = []
    for sq in squares:
        row = [0] * f.n
        for lab, c in sq.items():
            row[pos[lab]] = c
        rows.append(row)
    lmat = np.array(rows, dtype=np.int64)
    # 4 q(v) = v^T (2G) v must equal sum (L v)^2 = v^T (L^T L) v
    if not np.array_equal(lmat.T @ lmat, 2 * f.matrix()):
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        v = [rng.randint(-20, 20) for _ in range(f.n)]
        if 4 * evaluate(f, v) != int(sum(int(x) ** 2 for x in lmat @ np.array(v))):
            return False
    return True


def dumps_form(f: UnitForm) -> str:
    return json.dumps(f.to_json(), sort_keys=True)
