"""Immutable simple undirected graphs, orientations, parsing, and DOT output.

Vertices are dense ids 0..n-1. Parsers keep the original vertex tokens as
labels; everything downstream works on ids.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Malformed graph input: bad token counts, self-loops, bad graph6."""


class Graph:
    """Simple undirected graph with set-based adjacency.

    Immutable after construction (duplicate edges collapse silently,
    self-loops are rejected) and safe to share across threads.
    """

    __slots__ = ("n", "adj", "labels", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GraphError("label count does not match vertex count")
        self.labels: tuple[str, ...] | None = labels
        self.edges: tuple[tuple[int, int], ...] = tuple(
            sorted((u, v) for u in range(n) for v in adj[u] if u < v)
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def sorted_neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other) -> bool:
        # structural equality; labels intentionally ignored
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def complement(g: Graph) -> Graph:
    edges = [
        (u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)
    ]
    return Graph(g.n, edges, labels=g.labels)


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted, by least member."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by the vertex set ``s``.

    Returns the new graph together with the id remapping: entry i of the
    second component is the original id of new vertex i.
    """
    new_to_old = tuple(sorted(set(s)))
    for v in new_to_old:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range")
    old_to_new = {v: i for i, v in enumerate(new_to_old)}
    edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges
        if u in old_to_new and v in old_to_new
    ]
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[v] for v in new_to_old)
    return Graph(len(new_to_old), edges, labels=labels), new_to_old


# ---------------------------------------------------------------------------
# orientations


class Orientation:
    """A full orientation of a graph: every edge gets exactly one direction."""

    __slots__ = ("base", "_head")

    def __init__(self, base: Graph, arcs: Iterable[tuple[int, int]]):
        head: dict[tuple[int, int], int] = {}
        for t, h in arcs:
            if not base.has_edge(t, h):
                raise GraphError(f"arc ({t}, {h}) is not an edge of the base graph")
            key = (t, h) if t < h else (h, t)
            if key in head and head[key] != h:
                raise GraphError(f"edge {key} directed both ways")
            head[key] = h
        missing = [e for e in base.edges if e not in head]
        if missing:
            raise GraphError(f"{len(missing)} edges left undirected, e.g. {missing[0]}")
        self.base = base
        self._head = head

    def forward(self, a: int, b: int) -> bool:
        """True iff the edge {a, b} is directed a -> b."""
        key = (a, b) if a < b else (b, a)
        return self._head[key] == b

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for (u, v), h in self._head.items():
            out.append((u, v) if h == v else (v, u))
        out.sort()
        return out

    def reverse(self) -> "Orientation":
        return Orientation(self.base, [(h, t) for t, h in self.arcs()])


class PartialOrientation:
    """Directions for a subset of the edges of a graph."""

    __slots__ = ("base", "_head")

    def __init__(self, base: Graph, arcs: Iterable[tuple[int, int]] = ()):
        head: dict[tuple[int, int], int] = {}
        for t, h in arcs:
            if not base.has_edge(t, h):
                raise GraphError(f"arc ({t}, {h}) is not an edge of the base graph")
            key = (t, h) if t < h else (h, t)
            if key in head and head[key] != h:
                raise GraphError(f"edge {key} directed both ways")
            head[key] = h
        self.base = base
        self._head = head

    def domain(self) -> list[tuple[int, int]]:
        return sorted(self._head)

    def directs(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._head

    def forward(self, a: int, b: int) -> bool:
        key = (a, b) if a < b else (b, a)
        return self._head[key] == b

    def arcs(self) -> list[tuple[int, int]]:
        out = []
        for (u, v), h in self._head.items():
            out.append((u, v) if h == v else (v, u))
        out.sort()
        return out

    def __len__(self) -> int:
        return len(self._head)


@dataclass(frozen=True)
class DirectedCycleCertificate:
    """Vertices v1..vk with every vi -> vi+1 directed, and vk -> v1."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def topo_order_or_cycle(
    n: int, arcs: Iterable[tuple[int, int]]
) -> tuple[list[int] | None, DirectedCycleCertificate | None]:
    """Kahn's algorithm over all n vertices, smallest id first.

    Returns (order, None) when the arc set is acyclic, else (None, cycle).
    """
    out: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for t, h in arcs:
        out[t].append(h)
        indeg[h] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) == n:
        return order, None
    # walk predecessors inside the leftover set until a vertex repeats
    left = {v for v in range(n) if indeg[v] > 0}
    pred: dict[int, list[int]] = {v: [] for v in left}
    for t, h in arcs:
        if t in left and h in left:
            pred[h].append(t)
    v = min(left)
    seen: dict[int, int] = {}
    trail: list[int] = []
    while v not in seen:
        seen[v] = len(trail)
        trail.append(v)
        v = min(pred[v])
    cyc = trail[seen[v]:]
    cyc.reverse()  # pred-walk reversed = arc direction
    return None, DirectedCycleCertificate(tuple(cyc))


# ---------------------------------------------------------------------------
# parsing


def parse_edge_list(text) -> Graph:
    """Parse lines of "u v" tokens into a graph.

    '#' starts a comment, blank lines are skipped, vertex tokens are
    arbitrary strings mapped to dense ids in first-seen order.  Duplicate
    edges collapse; self-loops and wrong token counts are errors carrying
    the line number.
    """
    if isinstance(text, str):
        lines: Iterator[str] = iter(text.splitlines())
    else:
        lines = iter(text)
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        a, b = tokens
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at '{a}'")
        for tok in (a, b):
            if tok not in ids:
                ids[tok] = len(ids)
        edges.append((ids[a], ids[b]))
    labels = tuple(sorted(ids, key=ids.get))
    return Graph(len(ids), edges, labels=labels)


_G6_MAX_SHORT = 62


def encode_graph6(g: Graph) -> str:
    """Encode as a standard graph6 line (labels are not preserved)."""
    n = g.n
    if n <= _G6_MAX_SHORT:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        raise GraphError("graph too large for this graph6 encoder")
    bits: list[int] = []
    for j in range(1, n):
        aj = g.adj[j]
        for i in range(j):
            bits.append(1 if i in aj else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = [head]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 line; labels default to the decimal ids."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 line")
    for off, ch in enumerate(s):
        if not (63 <= ord(ch) <= 126):
            raise GraphError(f"invalid graph6 character at offset {off}")
    if s[0] != "~":
        n = ord(s[0]) - 63
        body = s[1:]
    elif len(s) >= 4 and s[1] != "~":
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        raise GraphError("unsupported graph6 size header")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphError(
            f"graph6 body length {len(body)} does not match n={n} (expected {need})"
        )
    bits: list[int] = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> s6) & 1 for s6 in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise GraphError(f"nonzero padding bits at offset {len(s) - 1}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges, labels=[str(v) for v in range(n)])


# ---------------------------------------------------------------------------
# DOT output


def _dot_name(g: Graph, v: int) -> str:
    name = g.label(v)
    return '"' + name.replace('"', '\\"') + '"'


def emit_dot(
    g: Graph,
    orientation: Orientation | None = None,
    highlight: Iterable[int] | None = None,
) -> str:
    """Deterministic DOT text: digraph when oriented, graph otherwise.

    Highlighted vertices get a filled style.
    """
    if orientation is not None and orientation.base is not g:
        if orientation.base != g:
            raise GraphError("orientation does not belong to this graph")
    marked = set(highlight) if highlight is not None else set()
    lines = ["digraph {" if orientation is not None else "graph {"]
    for v in range(g.n):
        attrs = ""
        if v in marked:
            attrs = ' [style=filled, fillcolor=gray]'
        lines.append(f"  {_dot_name(g, v)}{attrs};")
    if orientation is not None:
        for t, h in orientation.arcs():
            lines.append(f"  {_dot_name(g, t)} -> {_dot_name(g, h)};")
    else:
        for u, v in g.edges:
            lines.append(f"  {_dot_name(g, u)} -- {_dot_name(g, v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
