"""Bound quiver (Q(L), I(L)) of a diagram.

Vertices are boxes. There is an arrow x -> x - e_i (axis i, 1-based) whenever
both boxes exist, and a commutativity relation for every square, recorded by
its apex x and axis pair (i, j); the far corner is x - e_i - e_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .diagram import Box, Diagram, DiagramError

DimVector = dict  # box -> nonnegative int


def _step(x: Box, axis: int, delta: int = -1) -> Box:
    return x[:axis - 1] + (x[axis - 1] + delta,) + x[axis:]


@dataclass(frozen=True)
class Arrow:
    source: Box
    target: Box
    axis: int


@dataclass(frozen=True)
class Relation:
    apex: Box
    axes: tuple[int, int]

    @property
    def far(self) -> Box:
        i, j = self.axes
        return _step(_step(self.apex, i), j)

    def corners(self) -> tuple[Box, Box, Box, Box]:
        i, j = self.axes
        return (self.apex, _step(self.apex, i), _step(self.apex, j), self.far)

    def paths(self) -> tuple[tuple[Arrow, Arrow], tuple[Arrow, Arrow]]:
        """The two paths apex -> far: first along i then j, and first j then i."""
        i, j = self.axes
        x = self.apex
        xi, xj = _step(x, i), _step(x, j)
        return ((Arrow(x, xi, i), Arrow(xi, self.far, j)),
                (Arrow(x, xj, j), Arrow(xj, self.far, i)))


@dataclass(frozen=True)
class BoundQuiver:
    vertices: tuple[Box, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...]
    convex: bool = True

    @cached_property
    def index(self) -> dict[Box, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def k(self) -> int:
        return len(self.vertices[0]) if self.vertices else 0

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "arrows": [{"from": list(a.source), "to": list(a.target), "axis": a.axis}
                       for a in self.arrows],
            "relations": [{"apex": list(r.apex), "axes": list(r.axes)} for r in self.relations],
        }

    def is_acyclic(self) -> bool:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((a.source, a.target) for a in self.arrows)
        return nx.is_directed_acyclic_graph(g)


def build_quiver(d: Diagram) -> BoundQuiver:
    if not d.boxes:
        raise DiagramError("the empty diagram has no quiver")
    boxes = d.boxes
    vertices = tuple(sorted(boxes))
    arrows = []
    relations = []
    for x in vertices:
        big = [i for i in range(1, d.k + 1) if x[i - 1] >= 2]
        for i in big:
            arrows.append(Arrow(x, _step(x, i), i))
        for a in range(len(big)):
            for b in range(a + 1, len(big)):
                relations.append(Relation(x, (big[a], big[b])))
    return BoundQuiver(vertices, tuple(arrows), tuple(relations))


def projective_dim_vector(q: BoundQuiver, v: Box) -> DimVector:
    """Dimension vector of the indecomposable projective at v: indicator of the down-set."""
    v = tuple(v)
    if v not in q.index:
        raise KeyError(f"{v} is not a vertex")
    return {w: int(all(a <= b for a, b in zip(w, v))) for w in q.vertices}


def is_convex(q: BoundQuiver, s) -> bool:
    """Path-closed test: no vertex outside s lies between two vertices of s."""
    s = set(map(tuple, s))
    for z in q.vertices:
        if z in s:
            continue
        above = any(all(a >= b for a, b in zip(x, z)) for x in s)
        below = any(all(a <= b for a, b in zip(y, z)) for y in s)
        if above and below:
            return False
    return True


def restrict(q: BoundQuiver, s) -> BoundQuiver:
    """Induced subquiver on s; relations kept only when all four corners lie in s."""
    s = set(map(tuple, s))
    if not s:
        raise DiagramError("restriction to an empty vertex set")
    unknown = s - set(q.vertices)
    if unknown:
        raise KeyError(f"not vertices: {sorted(unknown)}")
    vertices = tuple(v for v in q.vertices if v in s)
    arrows = tuple(a for a in q.arrows if a.source in s and a.target in s)
    relations = tuple(r for r in q.relations if all(c in s for c in r.corners()))
    return BoundQuiver(vertices, arrows, relations, convex=is_convex(q, s))


def export_dot(q: BoundQuiver, name: str = "Q") -> str:
    def label(v: Box) -> str:
        return "(" + ",".join(map(str, v)) + ")"

    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in q.vertices:
        lines.append(f'  "{label(v)}";')
    for a in q.arrows:
        lines.append(f'  "{label(a.source)}" -> "{label(a.target)}" [label="{a.axis}"];')
    for r in q.relations:
        lines.append(f'  "{label(r.apex)}" -> "{label(r.far)}" '
                     f'[style=dotted, dir=none, constraint=false];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(q: BoundQuiver) -> str:
    return json.dumps(q.to_json(), sort_keys=True)


# ------------------------------------------------------------ correlation


def form_graph(q: BoundQuiver) -> nx.Graph:
    """Undirected graph with 'arrow' and 'rel' edges (apex to far corner).

    Two diagrams correlate exactly when these graphs are isomorphic; the
    Tits form is a function of this graph.
    """
    g = nx.Graph()
    g.add_nodes_from(q.vertices)
    for a in q.arrows:
        g.add_edge(a.source, a.target, kind="arrow")
    for r in q.relations:
        g.add_edge(r.apex, r.far, kind="rel")
    return g


def graph_hash(g: nx.Graph) -> str:
    return nx.weisfeiler_lehman_graph_hash(g, edge_attr="kind", iterations=4)


def _kind_match(e1, e2) -> bool:
    return e1["kind"] == e2["kind"]


def graphs_isomorphic(g1: nx.Graph, g2: nx.Graph) -> bool:
    return nx.is_isomorphic(g1, g2, edge_match=_kind_match)


def correlate(d1: Diagram, d2: Diagram) -> bool:
    """True iff the bound quivers agree after turning arrows around."""
    if d1.n != d2.n:
        return False
    if d1.n == 0:
        return True
    g1, g2 = form_graph(build_quiver(d1)), form_graph(build_quiver(d2))
    return graph_hash(g1) == graph_hash(g2) and graphs_isomorphic(g1, g2)


class CorrelationIndex:
    """Buckets diagrams by correlation class; lookups confirm with VF2."""

    def __init__(self):
        self._buckets: dict[tuple[int, str], list[tuple[nx.Graph, object]]] = {}

    def add(self, d: Diagram, payload=None) -> None:
        if self.find(d) is not None:
            return
        g = form_graph(build_quiver(d))
        self._buckets.setdefault((d.n, graph_hash(g)), []).append((g, payload))

    def find(self, d: Diagram):
        """Payload of a correlating diagram, or None."""
        if not d.boxes:
            return None
        g = form_graph(build_quiver(d))
        for other, payload in self._buckets.get((d.n, graph_hash(g)), []):
            if graphs_isomorphic(g, other):
                return payload if payload is not None else True
        return None

    def __contains__(self, d: Diagram) -> bool:
        return self.find(d) is not None
