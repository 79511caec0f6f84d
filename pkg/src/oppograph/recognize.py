"""Decision procedures with machine-checkable certificates.

Every recognizer returns a Verdict.  Members carry an orientation that is
re-checked by the universal P4 verifier before being returned; rejections
carry an odd closed walk in the auxiliary graph, an exhausted flip search
with one directed cycle per flip vector, or a forbidden-pattern embedding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constraints import (
    Bipartition,
    ConstraintGraph,
    OddWalkCertificate,
    bipartition_or_odd_walk,
    extend_acyclic,
    forced_orientation,
    is_acyclic,
)
from .graphs import (
    DirectedCycleCertificate,
    Graph,
    Orientation,
    PartialOrientation,
    connected_components,
    induced_subgraph,
    topo_order_or_cycle,
)
from .p4 import (
    COALITION,
    GENERALIZED_OPPOSITION,
    OPPOSITION,
    P4,
    classify_layer_type,
    induced_p4s,
    layer_decompose,
    orientation_good_for,
    verify_orientation,
)
from .patterns import (
    GEM,
    GRAPH_A,
    GRAPH_G1,
    GRAPH_G2,
    GRAPH_N,
    HOUSE,
    PatternMatch,
    find_induced,
    find_max_Hk,
    find_Tk_free_violation,
    has_hole,
    is_distance_hereditary,
    is_ptolemaic,
)

DEFAULT_FLIP_CAP = 1 << 20

MEMBER = "member"
NON_MEMBER = "non-member"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class FlipExhaustion:
    """Every flip vector in the reversal quotient forced a directed cycle."""

    entries: tuple[tuple[tuple[int, ...], DirectedCycleCertificate], ...]


@dataclass(frozen=True)
class Verdict:
    graph_class: str
    decision: str
    method: str
    certificate: object
    stats: dict = field(default_factory=dict)
    witness: PatternMatch | None = None

    @property
    def is_member(self) -> bool:
        return self.decision == MEMBER


class CertificateError(RuntimeError):
    """A certificate failed its own re-verification: an internal bug."""


class PtolemaicOrientationError(RuntimeError):
    """Step-3 conflict or failed final verification in the layer
    construction; carries the offending P4(s)."""

    def __init__(self, message, p4s=()):
        super().__init__(message)
        self.p4s = tuple(p4s)


def _stats(p4s=None, cg=None, b=None, flips_tried=None):
    return {
        "p4_count": len(p4s) if p4s is not None else None,
        "aux_vertices": cg.var_count if cg is not None else None,
        "aux_components": b.component_count if b is not None else None,
        "flips_tried": flips_tried,
    }


def _complete_with_id_order(partial: PartialOrientation) -> Orientation:
    """Fill in undirected edges low -> high (no acyclicity guarantee)."""
    arcs = partial.arcs()
    for u, v in partial.base.edges:
        if not partial.directs(u, v):
            arcs.append((u, v))
    return Orientation(partial.base, arcs)


def _checked_member(graph_class, method, orientation, p4s, stats, witness=None) -> Verdict:
    if not verify_orientation(orientation, graph_class, p4s):
        raise CertificateError(
            f"{method} produced an orientation failing the {graph_class} verifier"
        )
    return Verdict(graph_class, MEMBER, method, orientation, stats, witness)


def _checked_pattern(g: Graph, match: PatternMatch) -> PatternMatch:
    pat = match.pattern
    m = match.mapping
    if len(set(m)) != pat.n:
        raise CertificateError(f"{pat.name} embedding is not injective")
    want = {tuple(sorted(e)) for e in pat.edges}
    for i in range(pat.n):
        for j in range(i + 1, pat.n):
            if ((i, j) in want) != g.has_edge(m[i], m[j]):
                raise CertificateError(f"{pat.name} embedding does not induce the pattern")
    return match


@dataclass
class _FlipOutcome:
    orientation: Orientation | None
    entries: list
    undecided: bool
    tried: int


def _flip_search(cg: ConstraintGraph, b: Bipartition, flip_cap: int | None) -> _FlipOutcome:
    """Enumerate per-component side choices by rank, component 0 pinned
    (global reversal quotient); first acyclic forced orientation wins."""
    cap = DEFAULT_FLIP_CAP if flip_cap is None else flip_cap
    if cap < 1:
        raise ValueError("flip cap must be at least 1")
    c = b.component_count
    total = 1 << (c - 1) if c > 0 else 1
    entries = []
    rank = 0
    while rank < total:
        if rank >= cap:
            return _FlipOutcome(None, entries, True, rank)
        if c > 0:
            flips = (0,) + tuple((rank >> i) & 1 for i in range(c - 1))
        else:
            flips = ()
        partial = forced_orientation(cg, b, flips)
        res = is_acyclic(partial)
        if isinstance(res, DirectedCycleCertificate):
            entries.append((flips, res))
            rank += 1
        else:
            return _FlipOutcome(extend_acyclic(partial), entries, False, rank + 1)
    return _FlipOutcome(None, entries, False, total)


# ---------------------------------------------------------------------------
# generalized opposition (bipartiteness alone decides)


def recognize_generalized_opposition(g: Graph) -> Verdict:
    p4s = induced_p4s(g)
    cg = ConstraintGraph(OPPOSITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        return Verdict(
            GENERALIZED_OPPOSITION, NON_MEMBER, "aux-odd-walk", res, _stats(p4s, cg)
        )
    partial = forced_orientation(cg, res, (0,) * res.component_count)
    o = _complete_with_id_order(partial)
    return _checked_member(
        GENERALIZED_OPPOSITION, "aux-bipartite", o, p4s, _stats(p4s, cg, res, 0)
    )


# ---------------------------------------------------------------------------
# opposition


def _gem_house_free(g: Graph) -> bool:
    return find_induced(g, GEM) is None and find_induced(g, HOUSE) is None


def _dh_opposition_order(g: Graph, flip_cap: int | None) -> list[int]:
    """Linear order realizing an opposition orientation of a
    distance-hereditary graph with bipartite O(G).

    Ptolemaic inputs go through the layer constructor per component;
    otherwise one twin is removed and re-inserted next to its partner,
    which preserves membership.
    """
    ok, _ = is_ptolemaic(g)
    if ok:
        order: list[int] = []
        for comp in connected_components(g):
            sub, new_to_old = induced_subgraph(g, comp)
            o = ptolemaic_opposition_orient(sub, flip_cap=flip_cap)
            topo, _ = topo_order_or_cycle(sub.n, o.arcs())
            order.extend(new_to_old[v] for v in topo)
        return order
    twin = None
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u] - {v} == g.adj[v] - {u}:
                twin = (u, v)
                break
        if twin:
            break
    if twin is None:
        return _fallback_opposition_order(g, flip_cap)
    keep, drop = twin
    sub, new_to_old = induced_subgraph(g, [v for v in range(g.n) if v != drop])
    suborder = _dh_opposition_order(sub, flip_cap)
    order = [new_to_old[v] for v in suborder]
    order.insert(order.index(keep) + 1, drop)
    return order


def _fallback_opposition_order(g: Graph, flip_cap: int | None) -> list[int]:
    p4s = induced_p4s(g)
    cg = ConstraintGraph(OPPOSITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        raise CertificateError("fallback order requested for a non-member")
    outcome = _flip_search(cg, res, flip_cap)
    if outcome.orientation is None:
        raise CertificateError("fallback flip search found no acyclic choice")
    topo, _ = topo_order_or_cycle(g.n, outcome.orientation.arcs())
    return topo


def _orient_along(g: Graph, order: list[int]) -> Orientation:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return Orientation(g, [(u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges])


def opposition_obstruction(g: Graph) -> tuple[str, PatternMatch] | None:
    """A human-readable obstruction for distance-hereditary rejections:
    an induced A, G1, G2, or T_k."""
    for pat in (GRAPH_A, GRAPH_G1, GRAPH_G2):
        match = find_induced(g, pat)
        if match is not None:
            return pat.name, match
    hit = find_Tk_free_violation(g)
    if hit is not None:
        k, match = hit
        return f"T{k}", match
    return None


def recognize_opposition(
    g: Graph, flip_cap: int | None = None, want_witness: bool = False
) -> Verdict:
    """Structural fast paths (distance-hereditary, then (gem,house)-free)
    before the exact flip search over components of O(G)."""
    p4s = induced_p4s(g)
    cg = ConstraintGraph(OPPOSITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        witness = None
        if want_witness and is_distance_hereditary(g)[0]:
            hit = opposition_obstruction(g)
            if hit is not None:
                witness = _checked_pattern(g, hit[1])
        return Verdict(
            OPPOSITION, NON_MEMBER, "aux-odd-walk", res, _stats(p4s, cg), witness
        )
    if is_distance_hereditary(g)[0]:
        order = _dh_opposition_order(g, flip_cap)
        o = _orient_along(g, order)
        return _checked_member(
            OPPOSITION, "dh-ptolemaic", o, p4s, _stats(p4s, cg, res, None)
        )
    if _gem_house_free(g):
        partial = forced_orientation(cg, res, (0,) * res.component_count)
        acyc = is_acyclic(partial)
        if isinstance(acyc, DirectedCycleCertificate):
            raise CertificateError(
                "gem/house-free bipartite O(G) must give an acyclic forced part"
            )
        o = extend_acyclic(partial)
        return _checked_member(
            OPPOSITION, "gem-house-free", o, p4s, _stats(p4s, cg, res, 1)
        )
    outcome = _flip_search(cg, res, flip_cap)
    stats = _stats(p4s, cg, res, outcome.tried)
    if outcome.orientation is not None:
        return _checked_member(OPPOSITION, "flip-search", outcome.orientation, p4s, stats)
    if outcome.undecided:
        return Verdict(OPPOSITION, UNDECIDED, "flip-search", None, stats)
    return Verdict(OPPOSITION, NON_MEMBER, "flip-search", FlipExhaustion(tuple(outcome.entries)), stats)


def recognize_opposition_gem_house_free(g: Graph) -> Verdict:
    """Bipartiteness of O(G) alone decides for (gem, house)-free inputs;
    any bipartition side extends acyclically."""
    if not _gem_house_free(g):
        return recognize_opposition(g)
    p4s = induced_p4s(g)
    cg = ConstraintGraph(OPPOSITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        return Verdict(OPPOSITION, NON_MEMBER, "aux-odd-walk", res, _stats(p4s, cg))
    partial = forced_orientation(cg, res, (0,) * res.component_count)
    acyc = is_acyclic(partial)
    if isinstance(acyc, DirectedCycleCertificate):
        raise CertificateError("gem/house-free bipartite O(G) must give an acyclic forced part")
    o = extend_acyclic(partial)
    return _checked_member(OPPOSITION, "gem-house-free", o, p4s, _stats(p4s, cg, res, 1))


def recognize_opposition_distance_hereditary(
    g: Graph, flip_cap: int | None = None, want_witness: bool = False
) -> Verdict:
    """O(G) bipartiteness decides for distance-hereditary inputs; the
    membership orientation comes from the ptolemaic constructor (after
    twin reduction if needed)."""
    if not is_distance_hereditary(g)[0]:
        return recognize_opposition(g, flip_cap=flip_cap, want_witness=want_witness)
    p4s = induced_p4s(g)
    cg = ConstraintGraph(OPPOSITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        witness = None
        if want_witness:
            hit = opposition_obstruction(g)
            if hit is not None:
                witness = _checked_pattern(g, hit[1])
        return Verdict(OPPOSITION, NON_MEMBER, "aux-odd-walk", res, _stats(p4s, cg), witness)
    order = _dh_opposition_order(g, flip_cap)
    o = _orient_along(g, order)
    return _checked_member(OPPOSITION, "dh-ptolemaic", o, p4s, _stats(p4s, cg, res, None))


# ---------------------------------------------------------------------------
# the ptolemaic layer constructor


def _find_p5(g: Graph, p4s: list[P4]) -> tuple[int, int, int, int, int] | None:
    for p in p4s:
        a, b, c, d = p.vertices
        closed = g.adj[a] | g.adj[b] | g.adj[c] | {a, b, c}
        for w in sorted(g.adj[d] - closed):
            return (a, b, c, d, w)
        closed = g.adj[b] | g.adj[c] | g.adj[d] | {b, c, d}
        for w in sorted(g.adj[a] - closed):
            return (w, a, b, c, d)
    return None


def ptolemaic_opposition_orient(g: Graph, flip_cap: int | None = None) -> Orientation:
    """The constructive orientation for connected ptolemaic graphs that
    are T_k-free and (G1, G2)-free.

    Root choice: P5-free graphs fall back to the exact flip search (the
    underlying result for that case is non-constructive); otherwise the
    midpoint of an induced P5, or the role vertex v_k of a maximum
    H_k/H_k^- when one embeds.  Inter-layer edges alternate in blocks of
    two layers; intra-layer end-edges take the direction opposing the
    other end-edge of their P4; the rest completes topologically.
    """
    if g.n == 0:
        return Orientation(g, [])
    if len(connected_components(g)) != 1:
        raise ValueError("the layer constructor needs a connected graph")
    ok, wit = is_ptolemaic(g)
    if not ok:
        raise ValueError(f"not ptolemaic: contains {wit.pattern.name}")
    p4s = induced_p4s(g)
    p5 = _find_p5(g, p4s)
    if p5 is None:
        o = _p5_free_orient(g, p4s, flip_cap)
        if not verify_orientation(o, OPPOSITION, p4s):
            raise PtolemaicOrientationError("flip-search completion failed verification")
        return o
    hk = find_max_Hk(g)
    w = hk[2].mapping[0] if hk is not None else p5[2]
    layers = layer_decompose(g, w)
    heads: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        lu, lv = layers.of(u), layers.of(v)
        if lu == lv:
            continue
        lo, hi = (u, v) if lu < lv else (v, u)
        heads[(u, v)] = hi if min(lu, lv) % 4 in (0, 1) else lo
    forced: dict[tuple[int, int], tuple[int, P4]] = {}
    for p in p4s:
        letter, (a, b, c, d) = classify_layer_type(p, layers)
        if letter not in ("D", "E"):
            continue
        e_cd = (c, d) if c < d else (d, c)
        cd_forward = heads[e_cd] == d
        e_ab = (a, b) if a < b else (b, a)
        head = a if cd_forward else b  # opposition: c->d forces b->a
        if e_ab in forced and forced[e_ab][0] != head:
            raise PtolemaicOrientationError(
                f"conflicting forced directions on edge {e_ab}",
                (forced[e_ab][1], p),
            )
        forced.setdefault(e_ab, (head, p))
    for e, (head, _) in forced.items():
        heads[e] = head
    arcs = [(u if h == v else v, h) for (u, v), h in heads.items()]
    partial = PartialOrientation(g, arcs)
    res = is_acyclic(partial)
    if isinstance(res, DirectedCycleCertificate):
        raise PtolemaicOrientationError(
            f"forced partial orientation is cyclic: {res.vertices}"
        )
    o = extend_acyclic(partial)
    bad = [p for p in p4s if not orientation_good_for(p, o, OPPOSITION)]
    if bad:
        raise PtolemaicOrientationError(
            f"constructed orientation leaves {len(bad)} bad P4(s)", bad[:2]
        )
    return o


def _p5_free_orient(g: Graph, p4s: list[P4], flip_cap: int | None) -> Orientation:
    cg = ConstraintGraph(OPPOSITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        raise ValueError("O(G) is not bipartite: not an opposition graph")
    outcome = _flip_search(cg, res, flip_cap)
    if outcome.orientation is None:
        raise ValueError("no acyclic flip choice; not an opposition graph")
    return outcome.orientation


# ---------------------------------------------------------------------------
# coalition


def _gem_house_hole_free(g: Graph, p4s) -> bool:
    return (
        find_induced(g, GEM) is None
        and find_induced(g, HOUSE) is None
        and has_hole(g, p4s) is None
    )


def transitive_orient(g: Graph) -> Orientation | None:
    """Edge-forcing closure (shared tail with non-adjacent heads, shared
    head with non-adjacent tails), one implication class at a time, then a
    global transitivity check."""
    head: dict[tuple[int, int], int] = {}
    remaining = set(g.edges)
    for seed in g.edges:
        if seed not in remaining:
            continue
        stage: dict[tuple[int, int], int] = {seed: seed[1]}
        stack = [(seed[0], seed[1])]
        while stack:
            a, b = stack.pop()
            for c in g.sorted_neighbors(a):
                if c == b or g.has_edge(b, c):
                    continue
                e = (a, c) if a < c else (c, a)
                if e not in remaining:
                    continue
                if e in stage:
                    if stage[e] != c:
                        return None
                else:
                    stage[e] = c
                    stack.append((a, c))
            for c in g.sorted_neighbors(b):
                if c == a or g.has_edge(a, c):
                    continue
                e = (b, c) if b < c else (c, b)
                if e not in remaining:
                    continue
                if e in stage:
                    if stage[e] != b:
                        return None
                else:
                    stage[e] = b
                    stack.append((c, b))
        for e, h in stage.items():
            head[e] = h
            remaining.discard(e)
    out: list[set[int]] = [set() for _ in range(g.n)]
    inn: list[set[int]] = [set() for _ in range(g.n)]
    for (u, v), h in head.items():
        t = u if h == v else v
        out[t].add(h)
        inn[h].add(t)
    for b in range(g.n):
        for a in inn[b]:
            for c in out[b]:
                if c not in out[a]:
                    return None
    return Orientation(g, [(u if h == v else v, h) for (u, v), h in head.items()])


def recognize_coalition(
    g: Graph, flip_cap: int | None = None, want_witness: bool = False
) -> Verdict:
    """Fast paths: distance-hereditary (comparability), then
    (gem, house, hole)-free bipartiteness; the generic flip search over
    C(G) mirrors the opposition one and is marked as an extension."""
    p4s = induced_p4s(g)
    cg = ConstraintGraph(COALITION, g, p4s)
    res = bipartition_or_odd_walk(cg)
    if isinstance(res, OddWalkCertificate):
        witness = None
        if want_witness and is_distance_hereditary(g)[0]:
            nmatch = find_induced(g, GRAPH_N)
            if nmatch is not None:
                witness = _checked_pattern(g, nmatch)
        return Verdict(COALITION, NON_MEMBER, "aux-odd-walk", res, _stats(p4s, cg), witness)
    if is_distance_hereditary(g)[0]:
        o = transitive_orient(g)
        if o is None:
            raise CertificateError(
                "distance-hereditary graph with bipartite C(G) must be a comparability graph"
            )
        return _checked_member(
            COALITION, "dh-transitive", o, p4s, _stats(p4s, cg, res, None)
        )
    if _gem_house_hole_free(g, p4s):
        partial = forced_orientation(cg, res, (0,) * res.component_count)
        acyc = is_acyclic(partial)
        if isinstance(acyc, DirectedCycleCertificate):
            raise CertificateError(
                "gem/house/hole-free bipartite C(G) must give an acyclic forced part"
            )
        o = extend_acyclic(partial)
        return _checked_member(
            COALITION, "gem-house-hole-free", o, p4s, _stats(p4s, cg, res, 1)
        )
    outcome = _flip_search(cg, res, flip_cap)
    stats = _stats(p4s, cg, res, outcome.tried)
    if outcome.orientation is not None:
        return _checked_member(
            COALITION, "flip-search-extension", outcome.orientation, p4s, stats
        )
    if outcome.undecided:
        return Verdict(COALITION, UNDECIDED, "flip-search-extension", None, stats)
    return Verdict(
        COALITION,
        NON_MEMBER,
        "flip-search-extension",
        FlipExhaustion(tuple(outcome.entries)),
        stats,
    )


def recognize_coalition_distance_hereditary(g: Graph, flip_cap: int | None = None) -> Verdict:
    """For distance-hereditary inputs, membership is exactly N-freeness
    and members are comparability graphs."""
    if not is_distance_hereditary(g)[0]:
        return recognize_coalition(g, flip_cap=flip_cap)
    nmatch = find_induced(g, GRAPH_N)
    if nmatch is not None:
        return Verdict(
            COALITION, NON_MEMBER, "dh-n-witness", _checked_pattern(g, nmatch), _stats()
        )
    o = transitive_orient(g)
    if o is None:
        raise CertificateError("N-free distance-hereditary graph must be a comparability graph")
    return _checked_member(COALITION, "dh-transitive", o, induced_p4s(g), _stats())


# ---------------------------------------------------------------------------
# serialization


def _labels(g: Graph, vs) -> list[str]:
    return [g.label(v) for v in vs]


def certificate_payload(cert, g: Graph) -> dict:
    if cert is None:
        return {"kind": "none"}
    if isinstance(cert, Orientation):
        return {
            "kind": "orientation",
            "arcs": [[g.label(t), g.label(h)] for t, h in cert.arcs()],
        }
    if isinstance(cert, OddWalkCertificate):
        return {
            "kind": "odd-closed-walk",
            "walk": [[g.label(x), g.label(y)] for x, y in cert.walk],
        }
    if isinstance(cert, FlipExhaustion):
        return {
            "kind": "flip-exhaustion",
            "reversal_quotient": True,
            "entries": [
                {"flips": list(flips), "cycle": _labels(g, cyc.vertices)}
                for flips, cyc in cert.entries
            ],
        }
    if isinstance(cert, PatternMatch):
        return {
            "kind": "pattern-embedding",
            "pattern": cert.pattern.name,
            "map": {str(i): g.label(v) for i, v in enumerate(cert.mapping)},
        }
    raise TypeError(f"cannot serialize certificate of type {type(cert)!r}")


def verdict_payload(v: Verdict, g: Graph) -> dict:
    payload = {
        "schema": "oppograph.verdict/1",
        "class": v.graph_class,
        "decision": v.decision,
        "method": v.method,
        "certificate": certificate_payload(v.certificate, g),
        "stats": v.stats,
    }
    if v.witness is not None:
        payload["witness"] = certificate_payload(v.witness, g)
    return payload
