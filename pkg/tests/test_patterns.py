import itertools

import pytest

from conftest import isomorphic, random_graph
from oppograph.graphs import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    path_graph,
)
from oppograph.patterns import (
    CATALOG,
    DOMINO,
    GEM,
    GRAPH_A,
    GRAPH_G1,
    GRAPH_G2,
    GRAPH_N,
    HOUSE,
    PatternMatch,
    PruningSequence,
    cycle_pattern,
    find_induced,
    find_max_Hk,
    find_Tk_free_violation,
    has_hole,
    is_chordal,
    is_distance_hereditary,
    is_ptolemaic,
    make_Hk,
    make_Tk,
    twins_and_pendants,
)
from oppograph.verify import check_pattern_match


def brute_embeds(g, pattern) -> bool:
    pg = pattern.as_graph()
    for subset in itertools.combinations(range(g.n), pattern.n):
        for perm in itertools.permutations(subset):
            if all(
                pg.has_edge(i, j) == g.has_edge(perm[i], perm[j])
                for i in range(pattern.n)
                for j in range(i + 1, pattern.n)
            ):
                return True
    return False


def test_house_is_complement_of_p5():
    assert isomorphic(HOUSE.as_graph(), complement(path_graph(5)))


def test_domino_is_c6_plus_long_chord():
    g = DOMINO.as_graph()
    assert g.n == 6 and g.m == 7
    # dropping the distance-3 chord leaves a 6-cycle
    without_chord = Graph(6, [e for e in g.edges if e != (0, 3)])
    assert isomorphic(without_chord, cycle_graph(6))
    assert find_induced(g, cycle_pattern(4)) is not None
    assert has_hole(g) is None


def test_n_is_net():
    g = GRAPH_N.as_graph()
    degs = sorted(g.degree(v) for v in range(6))
    assert degs == [1, 1, 1, 3, 3, 3] and g.m == 6


def test_find_induced_identity_on_self():
    for pat in (HOUSE, GEM, GRAPH_N, GRAPH_A, GRAPH_G1, GRAPH_G2):
        match = find_induced(pat.as_graph(), pat)
        assert match is not None and match.mapping == tuple(range(pat.n))


def test_c6_contains_no_domino():
    assert find_induced(cycle_graph(6), DOMINO) is None


def test_co_c6_labeled_is_gem_free(co_c6_labeled):
    assert find_induced(co_c6_labeled, GEM) is None
    # every one-vertex deletion of co-C6 is a house, so houses must be found
    assert find_induced(co_c6_labeled, HOUSE) is not None


def test_find_induced_agrees_with_bruteforce():
    pats = [GEM, HOUSE, GRAPH_N, GRAPH_A, CATALOG["C4"], CATALOG["C5"]]
    for seed in range(30):
        g = random_graph(8, 0.45, seed)
        for pat in pats:
            got = find_induced(g, pat)
            assert (got is not None) == brute_embeds(g, pat), (seed, pat.name)
            if got is not None:
                assert check_pattern_match(g, got) == (True, "ok")


def brute_has_hole(g) -> bool:
    for k in range(5, g.n + 1):
        for subset in itertools.combinations(range(g.n), k):
            sub_edges = [
                (u, v) for u, v in itertools.combinations(subset, 2) if g.has_edge(u, v)
            ]
            if len(sub_edges) != k:
                continue
            deg = {v: 0 for v in subset}
            for u, v in sub_edges:
                deg[u] += 1
                deg[v] += 1
            if all(d == 2 for d in deg.values()):
                # connected 2-regular on k vertices with k edges is a k-cycle
                seen = {subset[0]}
                frontier = [subset[0]]
                adj = {v: [] for v in subset}
                for u, v in sub_edges:
                    adj[u].append(v)
                    adj[v].append(u)
                while frontier:
                    x = frontier.pop()
                    for y in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            frontier.append(y)
                if len(seen) == k:
                    return True
    return False


def test_has_hole_examples():
    assert has_hole(cycle_graph(5)).pattern.n == 5
    assert has_hole(cycle_graph(6)).pattern.n == 6
    assert has_hole(GEM.as_graph()) is None


def test_has_hole_matches_bruteforce():
    for seed in range(40):
        g = random_graph(8, 0.35, seed + 7)
        got = has_hole(g)
        assert (got is not None) == brute_has_hole(g), seed
        if got is not None:
            assert check_pattern_match(g, got) == (True, "ok")


def test_is_chordal_examples(h1):
    assert isinstance(is_chordal(h1), tuple)  # trees are chordal
    witness = is_chordal(cycle_graph(4))
    assert isinstance(witness, PatternMatch) and witness.pattern.n == 4
    h3 = make_Hk(3).as_graph()
    assert isinstance(is_chordal(h3), tuple)


def brute_chordal(g) -> bool:
    if find_induced(g, cycle_pattern(4)) is not None:
        return False
    return not brute_has_hole(g)


def test_is_chordal_matches_bruteforce():
    nx = pytest.importorskip("networkx")
    for seed in range(40):
        g = random_graph(8, 0.5, seed + 3)
        res = is_chordal(g)
        ours = isinstance(res, tuple)
        assert ours == brute_chordal(g), seed
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(g.edges)
        assert ours == nx.is_chordal(G), seed
        if not ours:
            assert check_pattern_match(g, res) == (True, "ok")


def test_peo_is_verified_order():
    g = make_Hk(2).as_graph()
    order = is_chordal(g)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.adj[v] if pos[u] > pos[v]]
        if later:
            parent = min(later, key=lambda u: pos[u])
            assert all(u == parent or g.has_edge(parent, u) for u in later)


def test_is_ptolemaic_examples():
    ok, wit = is_ptolemaic(GEM.as_graph())
    assert not ok and wit.pattern.name == "gem"
    ok, wit = is_ptolemaic(cycle_graph(5))
    assert not ok and wit.pattern.n >= 4
    ok, wit = is_ptolemaic(make_Hk(2, "minus").as_graph())
    assert ok and wit is None


def test_is_distance_hereditary_examples():
    from oppograph.generate import random_tree

    ok, seq, wit = is_distance_hereditary(random_tree(9, 5))
    assert ok and all(s.kind == "pendant" for s in seq.steps[:1])
    ok, seq, wit = is_distance_hereditary(HOUSE.as_graph())
    assert not ok and wit.pattern.name == "house"
    ok, seq, wit = is_distance_hereditary(GRAPH_N.as_graph())
    assert ok and isinstance(seq, PruningSequence)


def brute_distance_hereditary(g) -> bool:
    return (
        find_induced(g, GEM) is None
        and find_induced(g, HOUSE) is None
        and find_induced(g, DOMINO) is None
        and not brute_has_hole(g)
    )


def test_is_distance_hereditary_matches_definition():
    for seed in range(40):
        g = random_graph(8, 0.4, seed + 31)
        ok, seq, wit = is_distance_hereditary(g)
        assert ok == brute_distance_hereditary(g), seed
        if not ok:
            assert check_pattern_match(g, wit) == (True, "ok")


def test_pruning_sequence_replays():
    g = GRAPH_N.as_graph()
    ok, seq, _ = is_distance_hereditary(g)
    assert ok
    alive = set(range(g.n))
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    for step in seq.steps:
        v = step.removed
        assert v in alive and step.anchor in alive
        if step.kind == "pendant":
            assert adj[v] == {step.anchor}
        elif step.kind == "true-twin":
            assert adj[v] - {step.anchor} == adj[step.anchor] - {v} and step.anchor in adj[v]
        else:
            assert adj[v] == adj[step.anchor] and step.anchor not in adj[v]
        for u in adj[v]:
            adj[u].discard(v)
        del adj[v]
        alive.discard(v)
    assert all(not adj[v] for v in alive)


def test_make_tk_structure():
    t1 = make_Tk(1)
    assert t1.n == 8 and len(t1.edges) == 7
    t2 = make_Tk(2)
    assert t2.n == 10 and len(t2.edges) == 9
    for k in (1, 2, 3, 4):
        tk = make_Tk(k)
        g = tk.as_graph()
        assert g.n == 2 * k + 6 and g.m == g.n - 1
        # the two pendants hang off the role vertices
        assert g.has_edge(tk.role("1"), 2 * k + 4)
        assert g.has_edge(tk.role("2k"), 2 * k + 5)
        assert g.degree(tk.role("1")) == 3 and g.degree(tk.role("2k")) == 3
    with pytest.raises(ValueError):
        make_Tk(0)


def test_find_tk_violation():
    t1 = make_Tk(1).as_graph()
    hit = find_Tk_free_violation(t1)
    assert hit is not None and hit[0] == 1 and hit[1].mapping == tuple(range(8))
    assert find_Tk_free_violation(path_graph(10)) is None
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert find_Tk_free_violation(star) is None
    t2 = make_Tk(2).as_graph()
    hit = find_Tk_free_violation(t2)
    assert hit is not None and hit[0] == 2


def test_make_hk_role_adjacency(h1, h2):
    # H1: the 6-vertex tree; roles at fixed ids
    assert h1.n == 6 and h1.m == 5
    pat = make_Hk(1)
    assert pat.role("v1") == 0 and pat.role("v0") == 3
    # H2: v2 adjacent to v0, v0', v1, v1' and its tail v2'
    pat2 = make_Hk(2)
    v2 = pat2.role("v2")
    nbrs = {u for e in pat2.edges for u in e if v2 in e} - {v2}
    names = {name for name, vid in pat2.roles if vid in nbrs}
    assert names == {"v0", "v0'", "v1", "v1'", "v2'"}
    # H2^-: same minus v0
    pat2m = make_Hk(2, "minus")
    v2 = pat2m.role("v2")
    nbrs = {u for e in pat2m.edges for u in e if v2 in e} - {v2}
    names = {name for name, vid in pat2m.roles if vid in nbrs}
    assert names == {"v0'", "v1", "v1'", "v2'"}


def test_hk_minus_differs_exactly_by_v0_edges():
    for k in (2, 3, 4):
        full = make_Hk(k, "full")
        minus = make_Hk(k, "minus")
        v0 = full.role("v0")
        gone = set(full.edges) - set(minus.edges)
        assert set(minus.edges) <= set(full.edges)
        expect = {tuple(sorted((full.role(f"v{i}"), v0))) for i in range(2, k + 1)}
        assert gone == expect


def test_hk_counts_and_chordality():
    for k in (1, 2, 3):
        for variant in ("full", "minus"):
            g = make_Hk(k, variant).as_graph()
            assert g.n == 3 * k + 3
            assert isinstance(is_chordal(g), tuple)
            assert is_ptolemaic(g)[0]


def test_find_max_hk():
    assert find_max_Hk(make_Hk(1).as_graph())[:2] == (1, "full")
    assert find_max_Hk(make_Hk(1).as_graph())[2].mapping == tuple(range(6))
    k, variant, match = find_max_Hk(make_Hk(3, "minus").as_graph())
    assert (k, variant) == (3, "minus") and match.mapping == tuple(range(12))
    assert find_max_Hk(path_graph(6)) is None
    k, variant, _ = find_max_Hk(make_Hk(2).as_graph())
    assert (k, variant) == (2, "full")


def test_twins_and_pendants_examples():
    assert twins_and_pendants(complete_graph(2)) == [
        ("pendant", (0,)),
        ("pendant", (1,)),
        ("true-twin", (0, 1)),
    ]
    c4 = twins_and_pendants(cycle_graph(4))
    assert c4 == [("false-twin", (0, 2)), ("false-twin", (1, 3))]
    assert twins_and_pendants(GEM.as_graph()) == []


def test_twin_deletion_preserves_opposition_membership():
    from oppograph.oracle import oracle_opposition

    for seed in range(15):
        base = random_graph(6, 0.45, seed + 77)
        for kind in ("true", "false"):
            anchor = seed % base.n
            edges = list(base.edges)
            new = base.n
            nbrs = set(base.adj[anchor]) | ({anchor} if kind == "true" else set())
            edges += [(min(new, u), max(new, u)) for u in nbrs]
            g = Graph(base.n + 1, edges)
            assert oracle_opposition(g).is_member == oracle_opposition(base).is_member
