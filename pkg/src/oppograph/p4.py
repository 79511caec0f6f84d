"""Induced P4 enumeration, oriented-P4 typing, and BFS-layer classification.

The four orientation types of a chordless path a-b-c-d:

  type 0: both end-edges point toward the middle  (a->b and d->c)
  type 1: both end-edges point away from it       (b->a and c->d)
  type 2: end-edges aligned with the path and the mid-edge agrees
  type 3: end-edges aligned with the path, mid-edge opposed

Types are invariant under reading the path from the other end.  An acyclic
orientation is an opposition orientation when every induced P4 has type 0
or 1, and a coalition orientation when every type is 2 or 3; dropping the
acyclicity requirement from the former gives generalized opposition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import Graph, Orientation, topo_order_or_cycle

OPPOSITION = "opposition"
GENERALIZED_OPPOSITION = "generalized-opposition"
COALITION = "coalition"

GRAPH_CLASSES = (OPPOSITION, GENERALIZED_OPPOSITION, COALITION)


@dataclass(frozen=True)
class P4:
    """A chordless path a-b-c-d stored once, canonically with a < d."""

    a: int
    b: int
    c: int
    d: int

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def end_edges(self) -> tuple[tuple[int, int], tuple[int, int]]:
        ab = (self.a, self.b) if self.a < self.b else (self.b, self.a)
        cd = (self.c, self.d) if self.c < self.d else (self.d, self.c)
        return ab, cd

    def mid_edge(self) -> tuple[int, int]:
        return (self.b, self.c) if self.b < self.c else (self.c, self.b)

    def reversed(self) -> "P4":
        return P4(self.d, self.c, self.b, self.a)


def _canonical(a: int, b: int, c: int, d: int) -> P4:
    return P4(a, b, c, d) if a < d else P4(d, c, b, a)


def induced_p4s(g: Graph) -> list[P4]:
    """All induced P4s, one canonical copy each, sorted.

    Iterates over mid-edges {b, c} and scans a in N(b)\\N[c],
    d in N(c)\\N[b] with {a, d} a non-edge.
    """
    out = []
    for b, c in g.edges:
        nb, nc = g.adj[b], g.adj[c]
        left = nb - nc - {c}
        right = nc - nb - {b}
        if not left or not right:
            continue
        for a in left:
            na = g.adj[a]
            for d in right:
                if d != a and d not in na:
                    out.append(_canonical(a, b, c, d))
    out.sort(key=lambda p: p.vertices)
    return out


def is_induced_p4(g: Graph, a: int, b: int, c: int, d: int) -> bool:
    if len({a, b, c, d}) != 4:
        return False
    return (
        g.has_edge(a, b)
        and g.has_edge(b, c)
        and g.has_edge(c, d)
        and not g.has_edge(a, c)
        and not g.has_edge(a, d)
        and not g.has_edge(b, d)
    )


def end_edges(g: Graph, p4s: list[P4] | None = None) -> list[tuple[int, int]]:
    """Edges occurring as first or last edge of some induced P4, sorted."""
    if p4s is None:
        p4s = induced_p4s(g)
    seen = set()
    for p in p4s:
        seen.update(p.end_edges())
    return sorted(seen)


def p4_type(p: P4, o: Orientation) -> int:
    """Classify an oriented P4 into types 0..3 (see module docstring)."""
    if not is_induced_p4(o.base, *p.vertices):
        raise ValueError(f"{p} is not an induced P4 of the base graph")
    ab = o.forward(p.a, p.b)
    cd = o.forward(p.c, p.d)
    if ab and not cd:
        return 0
    if not ab and cd:
        return 1
    bc = o.forward(p.b, p.c)
    return 2 if bc == ab else 3


def _end_edges_opposed(p: P4, o) -> bool:
    return o.forward(p.a, p.b) != o.forward(p.c, p.d)


def orientation_good_for(p: P4, o, graph_class: str) -> bool:
    """Does this (possibly partial) orientation treat the P4 correctly?

    Requires both end-edges of the P4 to be directed.
    """
    opposed = _end_edges_opposed(p, o)
    if graph_class in (OPPOSITION, GENERALIZED_OPPOSITION):
        return opposed
    if graph_class == COALITION:
        return not opposed
    raise ValueError(f"unknown graph class {graph_class!r}")


def verify_orientation(
    o: Orientation, graph_class: str, p4s: list[P4] | None = None
) -> bool:
    """The universal membership verifier.

    opposition: acyclic and every induced P4 of type 0 or 1.
    coalition: acyclic and every type in {2, 3}.
    generalized-opposition: types only, cycles allowed.
    """
    if p4s is None:
        p4s = induced_p4s(o.base)
    if not all(orientation_good_for(p, o, graph_class) for p in p4s):
        return False
    if graph_class == GENERALIZED_OPPOSITION:
        return True
    order, _ = topo_order_or_cycle(o.base.n, o.arcs())
    return order is not None


# ---------------------------------------------------------------------------
# BFS layers and the five layer types


@dataclass(frozen=True)
class LayerDecomposition:
    """BFS distance layers from a root vertex."""

    root: int
    layer: tuple[int, ...]

    def of(self, v: int) -> int:
        return self.layer[v]


class DisconnectedRootError(ValueError):
    pass


def layer_decompose(g: Graph, w: int) -> LayerDecomposition:
    dist = [-1] * g.n
    dist[w] = 0
    queue = deque([w])
    while queue:
        v = queue.popleft()
        for u in g.sorted_neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    if any(d < 0 for d in dist):
        raise DisconnectedRootError(f"graph is not connected from root {w}")
    return LayerDecomposition(w, tuple(dist))


LAYER_TYPES = "ABCDE"


class LayerTypeError(ValueError):
    """No layer type matches: the ptolemaic structural assumptions fail."""


def classify_layer_type(p: P4, layers: LayerDecomposition) -> tuple[str, tuple[int, int, int, int]]:
    """Match a P4 against the five layer patterns.

    Returns the type letter and the relabeled path (a, b, c, d) realizing
    the pattern; exactly one type matches on ptolemaic graphs.

      A: a@i, b@i+1, c@i+2, d@i+3      B: b,c@i and a,d@i+1
      C: b@i, a,c@i+1, d@i+2           D: a,b@i, c@i+1, d@i+2
      E: a,b,c@i, d@i+1
    """
    lv = layers.layer
    for order in (p.vertices, p.reversed().vertices):
        la, lb, lc, ld = (lv[v] for v in order)
        if (lb, lc, ld) == (la + 1, la + 2, la + 3):
            return "A", order
        if lb == lc and la == ld == lb + 1:
            return "B", order
        if la == lc == lb + 1 and ld == lb + 2:
            return "C", order
        if la == lb and lc == lb + 1 and ld == lb + 2:
            return "D", order
        if la == lb == lc and ld == lc + 1:
            return "E", order
    raise LayerTypeError(f"P4 {p.vertices} fits no layer pattern from root {layers.root}")
