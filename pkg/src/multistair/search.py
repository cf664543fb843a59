"""Breadth-first lattice searches for unit forms.

All searches grow vectors one unit at a time and use the update
q(v + e_j) = q(v) + (G v)_j + 1, storing G v next to each vector.

Two facts make the searches exact:

* If every nonzero w <= v has q(w) >= 1 and q(v) = 1, then v - e_j is again
  a root for some j (sum_j v_j (Gv)_j = 2q(v) = 2 forces some (Gv)_j >= 1).
  Hence the roots reachable from the unit vectors are exactly these vectors,
  and a componentwise-minimal v with q(v) <= 0 sits directly above them.
* The same argument with q in {0, 1} covers vectors below which the form is
  non-negative; a minimal v with q(v) = -1 sits directly above such vectors,
  and a minimal v with q(v) <= -2 has |v| <= 4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .tits import UnitForm, Vector, evaluate

DEFAULT_NODE_CAP = 2_000_000


class InconclusiveError(RuntimeError):
    """A search exhausted its node budget before reaching a decision."""

    def __init__(self, what: str, explored: int, cap: int):
        self.what, self.explored, self.cap = what, explored, cap
        super().__init__(f"{what}: node cap {cap} exhausted after {explored} vectors")


def _columns(f: UnitForm) -> list[tuple[int, ...]]:
    return [tuple(col) for col in f.gram]


def _units(f: UnitForm):
    cols = _columns(f)
    for j in range(f.n):
        v = [0] * f.n
        v[j] = 1
        yield tuple(v), cols[j]


def _add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class RootSearch:
    roots: frozenset
    witness: Vector | None     # minimal-level vector with q <= 0
    witness_value: int | None
    explored: int


def root_search(f: UnitForm, box: Sequence[int] | None = None,
                node_cap: int = DEFAULT_NODE_CAP, stop_at_witness: bool = True) -> RootSearch:
    """Roots reachable from unit vectors (inside `box` if given).

    With stop_at_witness the search ends on the first level that contains a
    vector with q <= 0 and reports the smallest such vector of that level.
    """
    cols = _columns(f)
    n = f.n
    if box is not None:
        box = tuple(int(b) for b in box)
        if len(box) != n:
            raise ValueError("box must have one bound per variable")
    level: dict[Vector, tuple[int, ...]] = {}
    for v, g in _units(f):
        if box is None or box[v.index(1)] >= 1:
            level[v] = g
    roots: set[Vector] = set(level)
    witnesses: list[tuple[Vector, int]] = []
    while level:
        nxt: dict[Vector, tuple[int, ...]] = {}
        for u in sorted(level):
            gu = level[u]
            for j in range(n):
                if box is not None and u[j] >= box[j]:
                    continue
                val = 2 + gu[j]
                w = u[:j] + (u[j] + 1,) + u[j + 1:]
                if val <= 0:
                    witnesses.append((w, val))
                elif val == 1 and w not in nxt:
                    nxt[w] = _add(gu, cols[j])
        if witnesses and stop_at_witness:
            w, val = min(witnesses)
            return RootSearch(frozenset(roots), w, val, len(roots))
        roots.update(nxt)
        if len(roots) > node_cap:
            raise InconclusiveError("root search", len(roots), node_cap)
        level = nxt
    if witnesses:
        w, val = min(witnesses)
        return RootSearch(frozenset(roots), w, val, len(roots))
    return RootSearch(frozenset(roots), None, None, len(roots))


@dataclass(frozen=True)
class LowSearch:
    values: dict            # vector -> q in {0, 1}
    witness: Vector | None  # minimal-level vector with q <= -1
    witness_value: int | None
    hit_bound: bool         # some extension was cut by the entry bound


def low_vectors(f: UnitForm, entry_bound: int, node_cap: int = DEFAULT_NODE_CAP,
                stop_at_witness: bool = True) -> LowSearch:
    """All vectors with q in {0, 1} and entries <= entry_bound reachable from unit vectors."""
    if entry_bound < 1:
        raise ValueError("entry bound must be at least 1")
    cols = _columns(f)
    n = f.n
    level = {v: (1, g) for v, g in _units(f)}
    values: dict[Vector, int] = {v: 1 for v in level}
    witnesses: list[tuple[Vector, int]] = []
    hit = False
    while level:
        nxt: dict[Vector, tuple[int, tuple[int, ...]]] = {}
        for u in sorted(level):
            qu, gu = level[u]
            for j in range(n):
                val = qu + gu[j] + 1
                if val > 1:
                    continue
                if u[j] >= entry_bound:
                    hit = True
                    continue
                w = u[:j] + (u[j] + 1,) + u[j + 1:]
                if val <= -1:
                    witnesses.append((w, val))
                elif w not in nxt:
                    nxt[w] = (val, _add(gu, cols[j]))
        if witnesses and stop_at_witness:
            w, val = min(witnesses)
            return LowSearch(values, w, val, hit)
        for w, (val, _) in nxt.items():
            values[w] = val
        if len(values) > node_cap:
            raise InconclusiveError("non-negativity search", len(values), node_cap)
        level = nxt
    if witnesses:
        w, val = min(witnesses)
        return LowSearch(values, w, val, hit)
    return LowSearch(values, None, None, hit)


def small_vectors(n: int, max_total: int):
    """All nonzero nonnegative vectors of length n with coordinate sum <= max_total."""
    for total in range(1, max_total + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            v = [0] * n
            for i in combo:
                v[i] += 1
            yield tuple(v)


def very_negative_vector(f: UnitForm) -> Vector | None:
    """Smallest vector with |v| <= 4 and q(v) <= -2, if any."""
    best = None
    for v in small_vectors(f.n, 4):
        if evaluate(f, v) <= -2:
            best = v if best is None else min(best, v)
    return best


def box_scan(f: UnitForm, bound: int, values=(1,), max_points: int = 5_000_000):
    """Brute force over {0..bound}^n; returns vectors v != 0 with q(v) in `values`.

    Independent of the searches above; used as a test oracle.
    """
    import numpy as np

    n = f.n
    if (bound + 1) ** n > max_points:
        raise ValueError(f"box of {(bound + 1) ** n} points exceeds {max_points}")
    grid = np.indices((bound + 1,) * n).reshape(n, -1).T.astype(np.int64)
    g = f.matrix()
    q = np.einsum("ij,jk,ik->i", grid, g, grid) // 2
    mask = np.isin(q, list(values)) & (grid.sum(axis=1) > 0)
    return {tuple(int(x) for x in row) for row in grid[mask]}
