"""Independent certificate checkers.

These deliberately avoid the production code paths: P4s come from a
4-subset scan instead of the mid-edge enumerator, auxiliary adjacency is
rebuilt from the quadratic pairwise definition, 2-coloring uses DFS, and
acyclicity uses DFS back-edge detection.  Certificates emitted by the
recognizers must re-verify here.
"""

from __future__ import annotations

from itertools import combinations

from .constraints import OddWalkCertificate
from .graphs import Graph, Orientation
from .p4 import COALITION, GENERALIZED_OPPOSITION, OPPOSITION
from .patterns import PatternMatch
from .recognize import MEMBER, NON_MEMBER, UNDECIDED, FlipExhaustion, Verdict


def brute_force_p4s(g: Graph) -> list[tuple[int, int, int, int]]:
    """Induced P4s via exhaustive 4-subset enumeration (canonical a < d)."""
    out = []
    for quad in combinations(range(g.n), 4):
        inside = [
            (u, v) for u, v in combinations(quad, 2) if g.has_edge(u, v)
        ]
        if len(inside) != 3:
            continue
        deg = {v: 0 for v in quad}
        for u, v in inside:
            deg[u] += 1
            deg[v] += 1
        if sorted(deg.values()) != [1, 1, 2, 2]:
            continue
        ends = sorted(v for v in quad if deg[v] == 1)
        a = ends[0]
        b = next(v for v in quad if g.has_edge(a, v))
        c = next(v for v in quad if v != a and g.has_edge(b, v))
        d = ends[1]
        out.append((a, b, c, d) if a < d else (d, c, b, a))
    out.sort()
    return out


def _dfs_acyclic(n: int, arcs) -> bool:
    out = [[] for _ in range(n)]
    for t, h in arcs:
        out[t].append(h)
    color = [0] * n  # 0 white, 1 gray, 2 black
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 1:
                    return False
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, iter(out[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return True


def check_orientation(g: Graph, o: Orientation, graph_class: str) -> tuple[bool, str]:
    if o.base != g:
        return False, "orientation refers to a different graph"
    opposed_wanted = graph_class in (OPPOSITION, GENERALIZED_OPPOSITION)
    for a, b, c, d in brute_force_p4s(g):
        opposed = o.forward(a, b) != o.forward(c, d)
        if opposed != opposed_wanted:
            return False, f"P4 {(a, b, c, d)} violates the {graph_class} condition"
    if graph_class != GENERALIZED_OPPOSITION and not _dfs_acyclic(g.n, o.arcs()):
        return False, "orientation contains a directed cycle"
    return True, "ok"


def _ip4(g: Graph, a, b, c, d) -> bool:
    return (
        len({a, b, c, d}) == 4
        and g.has_edge(a, b)
        and g.has_edge(b, c)
        and g.has_edge(c, d)
        and not g.has_edge(a, c)
        and not g.has_edge(a, d)
        and not g.has_edge(b, d)
    )


def aux_adjacent(g: Graph, kind: str, p, q) -> bool:
    """The defining adjacency predicate of the auxiliary graphs."""
    (x, y), (u, v) = p, q
    if (x, y) == (v, u):
        return True
    if kind == OPPOSITION:
        return _ip4(g, x, y, u, v) or _ip4(g, u, v, x, y)
    return _ip4(g, x, y, v, u) or _ip4(g, v, u, x, y)


def check_odd_walk(g: Graph, kind: str, cert: OddWalkCertificate) -> tuple[bool, str]:
    walk = cert.walk
    if len(walk) < 4:
        return False, "walk too short"
    if walk[0] != walk[-1]:
        return False, "walk is not closed"
    if (len(walk) - 1) % 2 == 0:
        return False, "walk has even length"
    for x, y in walk:
        if not g.has_edge(x, y):
            return False, f"variable ({x}, {y}) is not an edge of the graph"
    for i in range(len(walk) - 1):
        if not aux_adjacent(g, kind, walk[i], walk[i + 1]):
            return False, f"hop {i} fails the auxiliary adjacency predicate"
    return True, "ok"


def check_pattern_match(g: Graph, match: PatternMatch) -> tuple[bool, str]:
    pat = match.pattern
    m = match.mapping
    if len(m) != pat.n or len(set(m)) != pat.n:
        return False, "embedding is not injective"
    if any(not (0 <= v < g.n) for v in m):
        return False, "embedding leaves the host"
    want = set(pat.edges)
    for i in range(pat.n):
        for j in range(i + 1, pat.n):
            if ((i, j) in want) != g.has_edge(m[i], m[j]):
                return False, f"pattern pair ({i}, {j}) not induced correctly"
    return True, "ok"


def _rebuild_aux(g: Graph, kind: str):
    ends = set()
    for a, b, c, d in brute_force_p4s(g):
        ends.add((a, b) if a < b else (b, a))
        ends.add((c, d) if c < d else (d, c))
    vars_ = []
    for x, y in sorted(ends):
        vars_.append((x, y))
        vars_.append((y, x))
    adj = [
        [j for j in range(len(vars_)) if j != i and aux_adjacent(g, kind, vars_[i], vars_[j])]
        for i in range(len(vars_))
    ]
    return vars_, adj


def _dfs_two_color(nvars: int, adj) -> tuple[list[int], list[int], int] | None:
    side = [-1] * nvars
    comp = [-1] * nvars
    comps = 0
    for root in range(nvars):
        if side[root] >= 0:
            continue
        side[root] = 0
        comp[root] = comps
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    comp[w] = comps
                    stack.append(w)
                elif side[w] == side[v]:
                    return None
        comps += 1
    return side, comp, comps


def check_flip_exhaustion(g: Graph, kind: str, cert: FlipExhaustion) -> tuple[bool, str]:
    """Re-derive the bipartition independently and confirm that every flip
    vector in the reversal quotient is listed with a genuine cycle."""
    vars_, adj = _rebuild_aux(g, kind)
    colored = _dfs_two_color(len(vars_), adj)
    if colored is None:
        return False, "auxiliary graph is not even bipartite"
    side, comp, comps = colored
    if comps == 0:
        return False, "no variables, nothing to exhaust"
    expected = 1 << (comps - 1)
    if len(cert.entries) != expected:
        return False, f"expected {expected} flip vectors, got {len(cert.entries)}"
    seen = set()
    index = {v: i for i, v in enumerate(vars_)}
    for flips, cycle in cert.entries:
        if len(flips) != comps or flips[0] != 0 or flips in seen:
            return False, "malformed or duplicate flip vector"
        seen.add(flips)
        vs = cycle.vertices
        if len(vs) < 2:
            return False, "degenerate cycle"
        for i in range(len(vs)):
            x, y = vs[i], vs[(i + 1) % len(vs)]
            if (x, y) not in index:
                return False, f"cycle arc ({x}, {y}) is not an end-edge variable"
            k = index[(x, y)]
            if side[k] != flips[comp[k]]:
                return False, f"cycle arc ({x}, {y}) is not selected by flips {flips}"
    return True, "ok"


def check_verdict(g: Graph, v: Verdict) -> tuple[bool, str]:
    """Dispatch a full verdict to the independent checkers."""
    aux_kind = COALITION if v.graph_class == COALITION else OPPOSITION
    if v.witness is not None:
        ok, msg = check_pattern_match(g, v.witness)
        if not ok:
            return False, f"witness: {msg}"
    if v.decision == MEMBER:
        if not isinstance(v.certificate, Orientation):
            return False, "member verdict without an orientation"
        return check_orientation(g, v.certificate, v.graph_class)
    if v.decision == NON_MEMBER:
        cert = v.certificate
        if isinstance(cert, OddWalkCertificate):
            return check_odd_walk(g, aux_kind, cert)
        if isinstance(cert, FlipExhaustion):
            return check_flip_exhaustion(g, aux_kind, cert)
        if isinstance(cert, PatternMatch):
            if v.graph_class == COALITION and cert.pattern.name != "N":
                return False, "only N embeddings refute coalition membership"
            return check_pattern_match(g, cert)
        return False, "non-member verdict without a certificate"
    if v.decision == UNDECIDED:
        if v.certificate is not None:
            return False, "undecided verdicts carry no certificate"
        return True, "ok (undecided)"
    return False, f"unknown decision {v.decision!r}"
