"""Forbidden-pattern catalog and structural graph-class detectors.

Covers backtracking induced-subgraph search, hole finding, chordality with
certificates, ptolemaic and distance-hereditary recognition by pruning,
the T_k and H_k obstruction families, and twin/pendant queries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import Graph
from .p4 import P4, induced_p4s


@dataclass(frozen=True)
class Pattern:
    """A small named graph with optional role labels for special vertices."""

    name: str
    n: int
    edges: tuple[tuple[int, int], ...]
    roles: tuple[tuple[str, int], ...] = ()

    def role(self, label: str) -> int:
        for key, v in self.roles:
            if key == label:
                return v
        raise KeyError(label)

    def as_graph(self) -> Graph:
        return Graph(self.n, self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)


@dataclass(frozen=True)
class PatternMatch:
    """An injective embedding inducing exactly the pattern's edges."""

    pattern: Pattern
    mapping: tuple[int, ...]


def _pat(name, n, edges, roles=()):
    return Pattern(name, n, tuple(sorted(tuple(sorted(e)) for e in edges)), tuple(roles))


GEM = _pat("gem", 5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)])
# complement of the path 0-1-2-3-4
HOUSE = _pat("house", 5, [(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4)], [("roof-apex", 2)])
DOMINO = _pat("domino", 6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
GRAPH_A = _pat("A", 6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (2, 5)])
GRAPH_G1 = _pat(
    "G1", 9,
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 6), (6, 7), (7, 8)],
)
GRAPH_G2 = _pat(
    "G2", 9,
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6), (3, 6), (2, 7), (3, 7), (7, 8)],
)
GRAPH_N = _pat(
    "N", 6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 4), (4, 5)], [("tail", 5)]
)


def cycle_pattern(k: int) -> Pattern:
    return _pat(f"C{k}", k, [(i, (i + 1) % k) for i in range(k)])


def path_pattern(k: int) -> Pattern:
    return _pat(f"P{k}", k, [(i, i + 1) for i in range(k - 1)])


CATALOG = {p.name: p for p in (GEM, HOUSE, DOMINO, GRAPH_A, GRAPH_G1, GRAPH_G2, GRAPH_N)}
CATALOG["C4"] = cycle_pattern(4)
CATALOG["C5"] = cycle_pattern(5)


def make_Tk(k: int) -> Pattern:
    """The tree obstruction: a 2k+4 spine with pendants on the 3rd and
    (2k+2)-th spine vertices (labeled "1" and "2k")."""
    if k < 1:
        raise ValueError("k must be at least 1")
    spine = 2 * k + 4
    edges = [(i, i + 1) for i in range(spine - 1)]
    edges.append((2, spine))
    edges.append((2 * k + 1, spine + 1))
    return _pat(f"T{k}", spine + 2, edges, [("1", 2), ("2k", 2 * k + 1)])


def make_Hk(k: int, variant: str = "full") -> Pattern:
    """The rooted gadget H_k or H_k^- (H_1^- is H_1 itself).

    Built inductively: H_{j+1} joins a new vertex v_{j+1} to all of
    N[v_j] (the minus variant to N[v_j] minus v_0), then hangs the tail
    v_{j+1}' - v_{j+1}''.  Vertex ids start at the root: v_k, v_k',
    v_k'' are 0, 1, 2, then v_0, v_0', v_0'', v_1, ...
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if variant not in ("full", "minus"):
        raise ValueError(f"variant must be 'full' or 'minus', got {variant!r}")
    minus = variant == "minus" and k >= 2
    adj: dict[tuple[str, int], set[tuple[str, int]]] = {}

    def add(u, v):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    v = lambda i: ("v", i)
    vp = lambda i: ("vp", i)
    vpp = lambda i: ("vpp", i)
    for name in (v(0), vp(0), vpp(0), v(1), vp(1), vpp(1)):
        adj.setdefault(name, set())
    add(vpp(0), vp(0))
    add(vp(0), v(1))
    add(v(1), vp(1))
    add(vp(1), vpp(1))
    add(v(1), v(0))
    for j in range(2, k + 1):
        closed = adj[v(j - 1)] | {v(j - 1)}
        if minus:
            closed.discard(v(0))
        for u in closed:
            add(v(j), u)
        add(v(j), vp(j))
        add(vp(j), vpp(j))
    ids: dict[tuple[str, int], int] = {v(k): 0, vp(k): 1, vpp(k): 2}
    nxt = 3
    for i in range(k):
        for name in (v(i), vp(i), vpp(i)):
            ids[name] = nxt
            nxt += 1
    edges = set()
    for u, nbrs in adj.items():
        for w in nbrs:
            edges.add(tuple(sorted((ids[u], ids[w]))))
    roles = []
    prime = {"v": "v{}", "vp": "v{}'", "vpp": "v{}''"}
    for name, i in sorted(ids.items(), key=lambda kv: kv[1]):
        roles.append((prime[name[0]].format(name[1]), i))
    suffix = "-" if variant == "minus" else ""
    return _pat(f"H{k}{suffix}", 3 * k + 3, edges, roles)


# ---------------------------------------------------------------------------
# induced-subgraph search


def find_induced(g: Graph, p: Pattern) -> PatternMatch | None:
    """Backtracking induced-subgraph isomorphism, deterministic order.

    Pattern vertices are matched in id order with host candidates tried
    ascending, so a hit is the lexicographically least embedding.
    """
    if p.n > g.n:
        return None
    padj: list[set[int]] = [set() for _ in range(p.n)]
    for u, v in p.edges:
        padj[u].add(v)
        padj[v].add(u)
    pdeg = [len(s) for s in padj]
    mapping = [-1] * p.n
    used = [False] * g.n

    def candidates(i: int):
        anchors = [j for j in sorted(padj[i]) if j < i]
        if anchors:
            return g.sorted_neighbors(mapping[anchors[0]])
        return range(g.n)

    def extend(i: int) -> bool:
        if i == p.n:
            return True
        for cand in candidates(i):
            if used[cand] or g.degree(cand) < pdeg[i]:
                continue
            cadj = g.adj[cand]
            ok = True
            for j in range(i):
                if (j in padj[i]) != (mapping[j] in cadj):
                    ok = False
                    break
            if ok:
                mapping[i] = cand
                used[cand] = True
                if extend(i + 1):
                    return True
                used[cand] = False
        mapping[i] = -1
        return False

    if extend(0):
        return PatternMatch(p, tuple(mapping))
    return None


def find_Tk_free_violation(g: Graph) -> tuple[int, PatternMatch] | None:
    """Smallest k with an induced T_k, or None."""
    k = 1
    while 2 * k + 6 <= g.n:
        match = find_induced(g, make_Tk(k))
        if match is not None:
            return k, match
        k += 1
    return None


def find_max_Hk(g: Graph) -> tuple[int, str, PatternMatch] | None:
    """Largest k such that H_k or H_k^- embeds, with the embedding.

    Containment is monotone in k, so the scan walks upward and stops at
    the first k where both variants fail.
    """
    maxdeg = max((g.degree(v) for v in range(g.n)), default=0)
    best = None
    k = 1
    # the root v_k has degree 2k+1 in H_k and 2k in H_k^-
    while 3 * k + 3 <= g.n and 2 * k <= maxdeg:
        hit = None
        match = find_induced(g, make_Hk(k, "full"))
        if match is not None:
            hit = (k, "full", match)
        elif k >= 2:
            match = find_induced(g, make_Hk(k, "minus"))
            if match is not None:
                hit = (k, "minus", match)
        if hit is None:
            break
        best = hit
        k += 1
    return best


# ---------------------------------------------------------------------------
# holes and chordality


def has_hole(g: Graph, p4s: list[P4] | None = None) -> PatternMatch | None:
    """Find an induced cycle of length >= 5, or None.

    For each induced P4 a-b-c-d, searches a shortest a-d path avoiding
    (N[b] u N[c]) minus {a, d}; such a path closes an induced cycle
    through the seed.
    """
    if p4s is None:
        p4s = induced_p4s(g)
    for p in p4s:
        a, b, c, d = p.vertices
        blocked = (g.adj[b] | g.adj[c] | {b, c}) - {a, d}
        prev = {a: -1}
        queue = deque([a])
        found = False
        while queue and not found:
            v = queue.popleft()
            for w in g.sorted_neighbors(v):
                if w in blocked or w in prev:
                    continue
                prev[w] = v
                if w == d:
                    found = True
                    break
                queue.append(w)
        if found:
            path = [d]
            while path[-1] != a:
                path.append(prev[path[-1]])
            path.reverse()  # a .. d
            cycle = path + [c, b]
            return PatternMatch(cycle_pattern(len(cycle)), tuple(cycle))
    return None


def _mcs_elimination_order(g: Graph) -> list[int]:
    weight = [0] * g.n
    visited = [False] * g.n
    visit_order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        visit_order.append(best)
        for u in g.adj[best]:
            if not visited[u]:
                weight[u] += 1
    visit_order.reverse()
    return visit_order


def is_chordal(g: Graph) -> tuple[int, ...] | PatternMatch:
    """Perfect elimination order, or an induced C_k (k >= 4) witness."""
    order = _mcs_elimination_order(g)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if not later:
            continue
        parent = min(later, key=lambda u: pos[u])
        for u in later:
            if u != parent and u not in g.adj[parent]:
                witness = find_induced(g, cycle_pattern(4))
                if witness is None:
                    witness = has_hole(g)
                assert witness is not None, "PEO test failed but no induced cycle found"
                return witness
    return tuple(order)


def is_ptolemaic(g: Graph) -> tuple[bool, PatternMatch | None]:
    """Chordal and gem-free; the witness explains a failure."""
    res = is_chordal(g)
    if isinstance(res, PatternMatch):
        return False, res
    gem = find_induced(g, GEM)
    if gem is not None:
        return False, gem
    return True, None


# ---------------------------------------------------------------------------
# distance-hereditary pruning


@dataclass(frozen=True)
class PruneStep:
    kind: str  # pendant | true-twin | false-twin
    removed: int
    anchor: int  # the neighbor (pendant) or the kept twin


@dataclass(frozen=True)
class PruningSequence:
    steps: tuple[PruneStep, ...]


def _twin_or_pendant(adj: dict[int, set[int]]) -> PruneStep | None:
    for v in sorted(adj):
        if len(adj[v]) == 1:
            return PruneStep("pendant", v, next(iter(adj[v])))
    open_groups: dict[frozenset[int], int] = {}
    closed_groups: dict[frozenset[int], int] = {}
    best: PruneStep | None = None
    for v in sorted(adj):
        nb = frozenset(adj[v])
        if nb in open_groups:
            cand = PruneStep("false-twin", v, open_groups[nb])
            if best is None or (cand.anchor, cand.removed) < (best.anchor, best.removed):
                best = cand
        else:
            open_groups[nb] = v
        cnb = nb | {v}
        if cnb in closed_groups:
            cand = PruneStep("true-twin", v, closed_groups[cnb])
            if best is None or (cand.anchor, cand.removed) < (best.anchor, best.removed):
                best = cand
        else:
            closed_groups[cnb] = v
    return best


def is_distance_hereditary(
    g: Graph,
) -> tuple[bool, PruningSequence | None, PatternMatch | None]:
    """Prune pendants and twins down to an edgeless graph.

    Success returns the pruning sequence; failure returns one of the
    forbidden patterns (gem, house, domino, or a hole) as witness.
    """
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    steps: list[PruneStep] = []
    while any(adj.values()):
        step = _twin_or_pendant(adj)
        if step is None:
            for p in (GEM, HOUSE, DOMINO):
                witness = find_induced(g, p)
                if witness is not None:
                    return False, None, witness
            witness = has_hole(g)
            assert witness is not None, "pruning stuck but no forbidden pattern found"
            return False, None, witness
        v = step.removed
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
        steps.append(step)
    return True, PruningSequence(tuple(steps)), None


def twins_and_pendants(g: Graph) -> list[tuple[str, tuple[int, ...]]]:
    """All current pendants and twin pairs, sorted."""
    out: list[tuple[str, tuple[int, ...]]] = []
    for v in range(g.n):
        if g.degree(v) == 1:
            out.append(("pendant", (v,)))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] - {v} == g.adj[v] - {u}:
                kind = "true-twin" if g.has_edge(u, v) else "false-twin"
                out.append((kind, (u, v)))
    out.sort()
    return out
