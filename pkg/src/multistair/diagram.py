"""Generalized Young diagrams: finite order ideals in Z^k_{>=1}.

Boxes are stored 1-based. A k=2 diagram is an ordinary partition whose
parts are column heights: the partition (3,3,2,1,1) has boxes (x, y) with
y <= parts[x-1].
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Box = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 1_000_000


class DiagramError(ValueError):
    """Malformed or inconsistent diagram input."""


class ClosureError(DiagramError):
    """A box set that is not an order ideal."""

    def __init__(self, box: Box, missing: Box):
        self.box = box
        self.missing = missing
        super().__init__(f"box {box} present but {missing} missing")


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


def _closure_violation(boxes: frozenset[Box]) -> tuple[Box, Box] | None:
    # closure under x -> x - e_i for single steps implies full down-closure
    for x in sorted(boxes):
        for i, xi in enumerate(x):
            if xi >= 2:
                y = x[:i] + (xi - 1,) + x[i + 1:]
                if y not in boxes:
                    return x, y
    return None


def is_order_ideal(boxes: Iterable[Sequence[int]]) -> bool:
    bs = frozenset(tuple(b) for b in boxes)
    if any(c < 1 for b in bs for c in b):
        return False
    return _closure_violation(bs) is None


@dataclass(frozen=True)
class Diagram:
    k: int
    boxes: frozenset[Box]

    def __post_init__(self):
        if self.k < 1:
            raise DiagramError(f"ambient dimension must be positive, got {self.k}")
        for b in self.boxes:
            if len(b) != self.k:
                raise DiagramError(f"box {b} has arity {len(b)}, expected {self.k}")
            if any(c < 1 for c in b):
                raise DiagramError(f"box {b} has a coordinate below 1")
        bad = _closure_violation(self.boxes)
        if bad is not None:
            raise ClosureError(*bad)

    @property
    def n(self) -> int:
        return len(self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    def __contains__(self, box) -> bool:
        return tuple(box) in self.boxes

    def sorted_boxes(self) -> list[Box]:
        return sorted(self.boxes)

    def partition(self) -> tuple[int, ...]:
        """Column heights of a k=2 diagram, weakly decreasing."""
        if self.k != 2:
            raise DiagramError("partition() needs k = 2")
        heights: dict[int, int] = {}
        for x, y in self.boxes:
            heights[x] = max(heights.get(x, 0), y)
        return tuple(heights[x] for x in sorted(heights))

    def to_json(self) -> dict:
        return {"k": self.k, "boxes": [list(b) for b in self.sorted_boxes()]}

    def __repr__(self) -> str:
        if self.k == 2 and self.boxes:
            return f"Diagram(partition={format_partition(self.partition())})"
        return f"Diagram(k={self.k}, n={self.n})"


def from_boxes(k: int, boxes: Iterable[Sequence[int]]) -> Diagram:
    return Diagram(k, frozenset(tuple(int(c) for c in b) for b in boxes))


def empty(k: int = 1) -> Diagram:
    return Diagram(k, frozenset())


def single_box(k: int = 1) -> Diagram:
    return Diagram(k, frozenset({(1,) * k}))


def from_partition(parts: Sequence[int]) -> Diagram:
    parts = sorted((int(p) for p in parts), reverse=True)
    if any(p < 1 for p in parts):
        raise DiagramError("partition parts must be positive")
    return Diagram(2, frozenset((x + 1, y) for x, h in enumerate(parts)
                                for y in range(1, h + 1)))


def from_plane_partition(rows: Sequence[Sequence[int]]) -> Diagram:
    """3D diagram from a matrix of stack heights: h[i][j] boxes above (i+1, j+1)."""
    boxes = set()
    for i, row in enumerate(rows):
        for j, h in enumerate(row):
            for z in range(1, h + 1):
                boxes.add((i + 1, j + 1, z))
    return Diagram(3, frozenset(boxes))


def star(k: int) -> Diagram:
    """Origin together with its k first neighbours."""
    boxes = {(1,) * k}
    for i in range(k):
        boxes.add(tuple(2 if j == i else 1 for j in range(k)))
    return Diagram(k, frozenset(boxes))


def downset(k: int, tops: Iterable[Sequence[int]]) -> Diagram:
    """Order ideal generated by the given boxes."""
    boxes = set()
    for t in tops:
        t = tuple(t)
        if len(t) != k:
            raise DiagramError(f"box {t} has arity {len(t)}, expected {k}")
        boxes.update(itertools.product(*(range(1, c + 1) for c in t)))
    return Diagram(k, frozenset(boxes))


# ---------------------------------------------------------------- text forms

_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def _parse_terms(body: str, text: str) -> list[int]:
    parts: list[int] = []
    for term in body.split(","):
        m = _TERM.match(term)
        if not m:
            raise DiagramError(f"malformed term {term.strip()!r} in {text!r}")
        value = int(m.group(1))
        times = int(m.group(2)) if m.group(2) is not None else 1
        if value < 1:
            raise DiagramError(f"parts must be positive, got {value} in {text!r}")
        if times < 1:
            raise DiagramError(f"exponent must be positive in {text!r}")
        parts.extend([value] * times)
    return parts


def _strip_parens(text: str) -> str:
    s = text.strip()
    if len(s) < 2 or s[0] != "(" or s[-1] != ")":
        raise DiagramError(f"expected '(' ... ')' around {text!r}")
    body = s[1:-1]
    if not body.strip():
        raise DiagramError(f"empty partition {text!r}")
    return body


def parse_partition(text: str) -> Diagram:
    """Parse "(1^2,2^3,6,8^2)"-style text; parts are sorted decreasingly."""
    return from_partition(_parse_terms(_strip_parens(text), text))


def format_partition(parts: Sequence[int], increasing: bool = True) -> str:
    ps = sorted(parts) if increasing else sorted(parts, reverse=True)
    out = []
    for value, grp in itertools.groupby(ps):
        c = len(list(grp))
        out.append(f"{value}^{c}" if c > 1 else str(value))
    return "(" + ",".join(out) + ")"


def _fmt_run(values: Sequence[int]) -> list[str]:
    out = []
    for value, grp in itertools.groupby(values):
        c = len(list(grp))
        out.append(f"{value}^{c}" if c > 1 else str(value))
    return out


@dataclass(frozen=True)
class DoublePartition:
    """Two partitions glued along a shared column of height x = lam[0] = mu[0].

    Written (lam_k, ..., lam_2, |x|, mu_2, ..., mu_l).
    """

    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        for name, p in (("lam", self.lam), ("mu", self.mu)):
            if not p or any(a < 1 for a in p):
                raise DiagramError(f"{name} must be a nonempty positive partition")
            if any(a < b for a, b in zip(p, p[1:])):
                raise DiagramError(f"{name} = {p} is not weakly decreasing")
        if self.lam[0] != self.mu[0]:
            raise DiagramError(f"wall heights differ: {self.lam[0]} vs {self.mu[0]}")

    @property
    def x(self) -> int:
        return self.lam[0]

    @property
    def ground_length(self) -> int:
        return len(self.lam) + len(self.mu) - 1

    @property
    def wall(self) -> int:
        return len(self.lam)

    @property
    def n(self) -> int:
        return sum(self.lam) + sum(self.mu) - self.x

    def swapped(self) -> DoublePartition:
        return DoublePartition(self.mu, self.lam)

    def to_diagram(self) -> Diagram:
        # shared column on axis 3; lam spreads along axis 1, mu along axis 2
        boxes = set()
        for i, h in enumerate(self.lam):
            boxes.update((i + 1, 1, z) for z in range(1, h + 1))
        for j, h in enumerate(self.mu):
            boxes.update((1, j + 1, z) for z in range(1, h + 1))
        return Diagram(3, frozenset(boxes))

    def __str__(self) -> str:
        left = _fmt_run(list(reversed(self.lam[1:])))
        right = _fmt_run(list(self.mu[1:]))
        return "(" + ",".join(left + [f"|{self.x}|"] + right) + ")"


def parse_double_partition(text: str) -> DoublePartition:
    """Parse "(a_k,...,a_2,|x|,b_2,...,b_l)"; powers like 1^3 are allowed."""
    body = _strip_parens(text)
    m = re.search(r"\|\s*(\d+)\s*\|", body)
    if not m or body.count("|") != 2:
        raise DiagramError(f"expected exactly one |x| wall entry in {text!r}")
    x = int(m.group(1))
    if x < 1:
        raise DiagramError(f"wall height must be positive in {text!r}")
    before, after = body[:m.start()], body[m.end():]
    before = before.strip()
    after = after.strip()
    if before and not before.endswith(","):
        raise DiagramError(f"missing ',' before wall entry in {text!r}")
    if after and not after.startswith(","):
        raise DiagramError(f"missing ',' after wall entry in {text!r}")
    left = _parse_terms(before[:-1], text) if before else []
    right = _parse_terms(after[1:], text) if after else []
    return DoublePartition((x,) + tuple(reversed(left)), (x,) + tuple(right))


def parse_json_diagram(text: str | dict) -> Diagram:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        k = int(data["k"])
        boxes = data["boxes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"JSON diagram needs 'k' and 'boxes': {exc}") from None
    return from_boxes(k, boxes)


# ------------------------------------------------------------ flatness

_NONFLAT_WITNESSES = ((2, 2, 1), (2, 1, 2), (1, 2, 2))


def _wall_encoding(d: Diagram, common: int) -> DoublePartition:
    a, b = [i for i in range(3) if i != common]
    lam: dict[int, int] = {}
    mu: dict[int, int] = {}
    for box in d.boxes:
        if box[b] == 1:
            lam[box[a]] = max(lam.get(box[a], 0), box[common])
        if box[a] == 1:
            mu[box[b]] = max(mu.get(box[b], 0), box[common])
    return DoublePartition(tuple(lam[i] for i in sorted(lam)),
                           tuple(mu[j] for j in sorted(mu)))


def in_wall_pair(d: Diagram, common: int) -> bool:
    """Literal wall-pair test: every box lies on one of the two walls through axis `common`."""
    a, b = [i for i in range(3) if i != common]
    return all(box[a] == 1 or box[b] == 1 for box in d.boxes)


def is_flat(d: Diagram) -> DoublePartition | None:
    """Double-partition encoding of a flat 3D diagram, or None if non-flat."""
    if d.k != 3:
        raise DiagramError(f"flatness is defined for k = 3, got k = {d.k}")
    if not d.boxes:
        return None
    # the three missing-witness cases correspond to common axes 3, 2, 1
    for witness, common in zip(_NONFLAT_WITNESSES, (2, 1, 0)):
        if witness not in d.boxes:
            return _wall_encoding(d, common)
    return None


# ------------------------------------------------------------ symmetries


@dataclass(frozen=True)
class AxisMap:
    """Axis permutation: the image box has coordinate i equal to old coordinate perm[i]."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DiagramError(f"{self.perm} is not a permutation of 0..{len(self.perm) - 1}")

    @classmethod
    def identity(cls, k: int) -> AxisMap:
        return cls(tuple(range(k)))

    @classmethod
    def transpose(cls) -> AxisMap:
        return cls((1, 0))

    @classmethod
    def swap(cls, k: int, i: int, j: int) -> AxisMap:
        p = list(range(k))
        p[i], p[j] = p[j], p[i]
        return cls(tuple(p))

    @property
    def k(self) -> int:
        return len(self.perm)

    def apply_box(self, box: Box) -> Box:
        return tuple(box[p] for p in self.perm)

    def then(self, other: AxisMap) -> AxisMap:
        """Map equal to applying self first, then other."""
        return AxisMap(tuple(self.perm[p] for p in other.perm))

    def inverse(self) -> AxisMap:
        inv = [0] * self.k
        for i, p in enumerate(self.perm):
            inv[p] = i
        return AxisMap(tuple(inv))


def apply_axis_map(d: Diagram, m: AxisMap) -> Diagram:
    if m.k != d.k:
        raise DiagramError(f"axis map acts on {m.k} axes, diagram has {d.k}")
    return Diagram(d.k, frozenset(m.apply_box(b) for b in d.boxes))


def transpose(d: Diagram) -> Diagram:
    return apply_axis_map(d, AxisMap.transpose())


def used_axes(d: Diagram) -> list[int]:
    return [i for i in range(d.k) if any(b[i] >= 2 for b in d.boxes)]


def effective_dimension(d: Diagram) -> int:
    return len(used_axes(d))


def is_proper(d: Diagram) -> bool:
    return effective_dimension(d) == d.k


def _slice_profile(d: Diagram, axis: int) -> tuple[int, ...]:
    top = max((b[axis] for b in d.boxes), default=0)
    counts = [0] * top
    for b in d.boxes:
        counts[b[axis] - 1] += 1
    return tuple(counts)


def _canonical_perm(d: Diagram, axes: list[int]) -> tuple[int, ...]:
    profiles = {i: _slice_profile(d, i) for i in axes}
    # larger slices first; unresolved ties are settled by the smallest box list
    ordered = sorted(axes, key=lambda i: tuple(-c for c in profiles[i]))
    groups = [list(g) for _, g in itertools.groupby(ordered, key=lambda i: profiles[i])]
    best_perm = tuple(ordered)
    best_boxes = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        perm = tuple(i for g in choice for i in g)
        boxes = sorted(tuple(b[p] for p in perm) for b in d.boxes)
        if best_boxes is None or boxes < best_boxes:
            best_boxes, best_perm = boxes, perm
    return best_perm


def canonicalize(d: Diagram) -> Diagram:
    """Unique representative of the axis-permutation class with unused axes dropped."""
    axes = used_axes(d)
    if not axes:
        return Diagram(1, frozenset({(1,)})) if d.boxes else empty(1)
    perm = _canonical_perm(d, axes)
    return Diagram(len(perm), frozenset(tuple(b[p] for p in perm) for b in d.boxes))


def canonical_in_dimension(d: Diagram) -> Diagram:
    """Canonical representative that keeps all d.k axes (unused axes last)."""
    axes = used_axes(d)
    rest = [i for i in range(d.k) if i not in axes]
    perm = (_canonical_perm(d, axes) if axes else ()) + tuple(rest)
    return Diagram(d.k, frozenset(tuple(b[p] for p in perm) for b in d.boxes))


def embed(d: Diagram, k: int) -> Diagram:
    """Pad boxes with trailing coordinates 1 to live in Z^k."""
    if k < d.k:
        raise DiagramError(f"cannot embed a k={d.k} diagram into k={k}")
    pad = (1,) * (k - d.k)
    return Diagram(k, frozenset(b + pad for b in d.boxes))


# ------------------------------------------------------------ order relations


def contains(outer: Diagram, inner: Diagram) -> bool:
    """True iff inner's boxes are a subset of outer's."""
    if outer.k != inner.k:
        raise DiagramError(f"dimension mismatch: {outer.k} vs {inner.k}")
    return inner.boxes <= outer.boxes


def _subpartition(p: Sequence[int], q: Sequence[int]) -> bool:
    return len(p) <= len(q) and all(a <= b for a, b in zip(p, q))


def leq_c(p1: DoublePartition, p2: DoublePartition) -> bool:
    """Componentwise subpartition order on double partitions."""
    return _subpartition(p1.lam, p2.lam) and _subpartition(p1.mu, p2.mu)


# ------------------------------------------------------------ enumeration


def addable_boxes(d: Diagram) -> list[Box]:
    """Boxes whose addition keeps d an order ideal."""
    if not d.boxes:
        return [(1,) * d.k]
    cands = set()
    for b in d.boxes:
        for i in range(d.k):
            c = b[:i] + (b[i] + 1,) + b[i + 1:]
            if c not in d.boxes:
                cands.add(c)
    out = []
    for c in cands:
        if all(c[:i] + (c[i] - 1,) + c[i + 1:] in d.boxes
               for i in range(d.k) if c[i] >= 2):
            out.append(c)
    return sorted(out)


def removable_boxes(d: Diagram) -> list[Box]:
    """Maximal boxes: removing one keeps d an order ideal."""
    out = []
    for b in d.boxes:
        if all(b[:i] + (b[i] + 1,) + b[i + 1:] not in d.boxes for i in range(d.k)):
            out.append(b)
    return sorted(out)


def _box_key(d: Diagram) -> tuple[Box, ...]:
    return tuple(d.sorted_boxes())


def enumerate_diagrams(k: int, n_boxes: int, up_to_symmetry: bool = False,
                       cap: int = DEFAULT_ENUMERATION_CAP) -> list[Diagram]:
    """All order ideals in Z^k_{>=1} with exactly n_boxes boxes, sorted by box list.

    With up_to_symmetry, one representative (canonical_in_dimension) per
    axis-permutation class is kept.
    """
    if k < 1 or n_boxes < 0:
        raise DiagramError("need k >= 1 and n_boxes >= 0")
    level: dict[tuple, Diagram] = {(): empty(k)}
    for _ in range(n_boxes):
        nxt: dict[tuple, Diagram] = {}
        for d in level.values():
            for c in addable_boxes(d):
                e = Diagram(k, d.boxes | {c})
                if up_to_symmetry:
                    e = canonical_in_dimension(e)
                key = _box_key(e)
                if key not in nxt:
                    nxt[key] = e
                    if len(nxt) > cap:
                        raise ResourceCapError("diagram enumeration", len(nxt), cap)
        level = nxt
    return [level[key] for key in sorted(level)]


def iter_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in decreasing part order, reverse-lexicographic."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in iter_partitions(n - first, first):
            yield (first,) + rest


def iter_double_partitions(max_boxes: int, max_ground: int | None = None) -> Iterator[DoublePartition]:
    """All double partitions with at most max_boxes boxes (and ground length bound)."""
    for x in range(1, max_boxes + 1):
        # partitions with first part x, grouped by size
        sides: list[tuple[int, ...]] = []
        for size in range(x, max_boxes + 1):
            for rest in iter_partitions(size - x, x):
                sides.append((x,) + rest)
        for lam in sides:
            for mu in sides:
                if sum(lam) + sum(mu) - x > max_boxes:
                    continue
                if max_ground is not None and len(lam) + len(mu) - 1 > max_ground:
                    continue
                yield DoublePartition(lam, mu)


# ------------------------------------------------------------ named diagrams


def corner7() -> Diagram:
    """The 7-box non-flat corner {0,1}^3 minus the top box, written {2,2},{2,1}."""
    return from_plane_partition([[2, 2], [2, 1]])


def q4_diagram() -> Diagram:
    """Origin, the four first neighbours and the diagonal boxes over axis pairs 12, 23, 34, 14."""
    return downset(4, [(2, 2, 1, 1), (1, 2, 2, 1), (1, 1, 2, 2), (2, 1, 1, 2)])
