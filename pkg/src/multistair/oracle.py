"""Brute-force ground truth over small finite fields.

Points of R_d A(L) are enumerated as integer codes (base q digits of all
matrix entries), filtered by the commutativity squares, and orbits of
GL_d(F_q) are the connected components of the graph joining each point to
its images under elementary generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .classify import DEFAULT_BUDGET, SearchBudget, positive_roots
from .diagram import Box, Diagram, ResourceCapError
from .quiver import build_quiver
from .tits import tits_form

_PRIMITIVE = {2: 1, 3: 2, 5: 2}


@dataclass(frozen=True)
class FiniteFieldConfig:
    q: int = 2
    point_cap: int = 2_000_000
    apply_cap: int = 10_000_000

    def __post_init__(self):
        if self.q not in _PRIMITIVE:
            raise ValueError(f"field size must be 2, 3 or 5, got {self.q}")


def dim_vector(d: Diagram, dv) -> tuple[int, ...]:
    """Dimension vector in sorted-box order from a mapping or a sequence."""
    boxes = d.sorted_boxes()
    if isinstance(dv, Mapping):
        unknown = set(map(tuple, dv)) - set(boxes)
        if unknown:
            raise KeyError(f"not boxes of the diagram: {sorted(unknown)}")
        return tuple(int(dv.get(b, 0)) for b in boxes)
    dv = tuple(int(a) for a in dv)
    if len(dv) != len(boxes):
        raise ValueError(f"dimension vector of length {len(dv)} for {len(boxes)} boxes")
    if any(a < 0 for a in dv):
        raise ValueError("dimensions must be nonnegative")
    return dv


class _Layout:
    """Positions of every arrow block inside the flat digit vector."""

    def __init__(self, d: Diagram, dv: Sequence[int], q: int):
        self.quiver = build_quiver(d)
        self.dim = dict(zip(self.quiver.vertices, dv))
        self.q = q
        self.blocks: dict[tuple[int, Box], tuple[int, int, int]] = {}
        pos = 0
        for a in self.quiver.arrows:
            r, c = self.dim[a.target], self.dim[a.source]
            self.blocks[(a.axis, a.source)] = (pos, r, c)
            pos += r * c
        self.n_entries = pos

    def raw_size(self) -> int:
        return self.q ** self.n_entries

    def block(self, digits: np.ndarray, axis: int, source: Box) -> np.ndarray:
        pos, r, c = self.blocks[(axis, source)]
        return digits[:, pos:pos + r * c].reshape(len(digits), r, c)

    def set_block(self, digits: np.ndarray, axis: int, source: Box, m: np.ndarray) -> None:
        pos, r, c = self.blocks[(axis, source)]
        digits[:, pos:pos + r * c] = m.reshape(len(digits), r * c)

    def encode(self, digits: np.ndarray) -> np.ndarray:
        weights = self.q ** np.arange(self.n_entries, dtype=np.int64)
        return digits.astype(np.int64) @ weights


def _step(x: Box, i: int) -> Box:
    return x[:i - 1] + (x[i - 1] - 1,) + x[i:]


def _points(layout: _Layout, c: FiniteFieldConfig) -> np.ndarray:
    raw = layout.raw_size()
    if raw > c.point_cap:
        raise ResourceCapError("representation variety enumeration", raw, c.point_cap)
    q, n = layout.q, layout.n_entries
    codes = np.arange(raw, dtype=np.int64)
    digits = np.empty((raw, n), dtype=np.int64)
    for j in range(n):
        digits[:, j] = codes % q
        codes //= q
    keep = np.ones(raw, dtype=bool)
    for r in layout.quiver.relations:
        i, j = r.axes
        x = r.apex
        lhs = layout.block(digits, i, _step(x, j)) @ layout.block(digits, j, x)
        rhs = layout.block(digits, j, _step(x, i)) @ layout.block(digits, i, x)
        keep &= ((lhs - rhs) % q == 0).all(axis=(1, 2))
    return digits[keep]


def count_points(d: Diagram, dv, c: FiniteFieldConfig = FiniteFieldConfig()) -> int:
    dv = dim_vector(d, dv)
    return int(len(_points(_Layout(d, dv, c.q), c)))


def _generators(n: int, q: int):
    """Pairs (g, g^-1) generating GL_n(F_q): transvections and one scaling."""
    out = []
    for a in range(n):
        for b in range(n):
            if a != b:
                g = np.eye(n, dtype=np.int64)
                g[a, b] = 1
                h = np.eye(n, dtype=np.int64)
                h[a, b] = q - 1
                out.append((g, h))
    w = _PRIMITIVE[q]
    if w != 1:
        g = np.eye(n, dtype=np.int64)
        g[0, 0] = w
        h = np.eye(n, dtype=np.int64)
        h[0, 0] = pow(w, -1, q)
        out.append((g, h))
    return out


@dataclass(frozen=True)
class OrbitCount:
    points: int
    classes: int
    orbit_sizes: tuple[int, ...]   # sorted descending


def orbit_count(d: Diagram, dv, c: FiniteFieldConfig = FiniteFieldConfig()) -> OrbitCount:
    dv = dim_vector(d, dv)
    layout = _Layout(d, dv, c.q)
    pts = _points(layout, c)
    m = len(pts)
    if m == 0:
        return OrbitCount(0, 0, ())
    codes = layout.encode(pts)
    order = np.argsort(codes)
    pts, codes = pts[order], codes[order]
    gens = []
    for v in layout.quiver.vertices:
        if layout.dim[v]:
            gens.extend((v, g, h) for g, h in _generators(layout.dim[v], c.q))
    applications = len(gens) * m
    if applications > c.apply_cap:
        raise ResourceCapError("orbit generator applications", applications, c.apply_cap)
    rows, cols = [], []
    src = np.arange(m)
    for v, g, h in gens:
        img = pts.copy()
        for a in layout.quiver.arrows:
            if a.target == v:
                blk = layout.block(img, a.axis, a.source)
                layout.set_block(img, a.axis, a.source, (g @ blk) % c.q)
            if a.source == v:
                blk = layout.block(img, a.axis, a.source)
                layout.set_block(img, a.axis, a.source, (blk @ h) % c.q)
        where = np.searchsorted(codes, layout.encode(img))
        assert np.array_equal(codes[where], layout.encode(img)), "group action left the variety"
        rows.append(src)
        cols.append(where)
    if rows:
        r = np.concatenate(rows)
        k = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, k)), shape=(m, m))
        n_comp, labels = connected_components(graph, directed=True, connection="weak")
    else:
        n_comp, labels = m, np.arange(m)
    sizes = np.bincount(labels, minlength=n_comp)
    return OrbitCount(m, int(n_comp), tuple(sorted((int(s) for s in sizes), reverse=True)))


def count_iso_classes(d: Diagram, dv, c: FiniteFieldConfig = FiniteFieldConfig()) -> int:
    return orbit_count(d, dv, c).classes


def krull_schmidt_count(d: Diagram, dv, b: SearchBudget = DEFAULT_BUDGET) -> int:
    """Number of multisets of positive roots summing to dv (finite-type shapes only)."""
    dv = dim_vector(d, dv)
    roots = sorted(r for r in positive_roots(tits_form(d), b)
                   if all(a <= m for a, m in zip(r, dv)))
    shape = tuple(m + 1 for m in dv)
    ways = np.zeros(shape, dtype=object)
    ways[(0,) * len(dv)] = 1
    cells = sorted(np.ndindex(*shape), key=sum)
    for r in roots:
        for v in cells:
            w = tuple(a - b for a, b in zip(v, r))
            if min(w) >= 0:
                ways[v] += ways[w]
    return int(ways[dv])


def oracle_row(d: Diagram, dv, c: FiniteFieldConfig = FiniteFieldConfig()) -> dict:
    dv = dim_vector(d, dv)
    oc = orbit_count(d, dv, c)
    return {"diagram": d.to_json(), "dv": list(dv), "q": c.q,
            "points": oc.points, "iso_classes": oc.classes}
