import itertools

import pytest
from hypothesis import given, strategies as st

from orientcount.graph import (
    GraphFormatError,
    Multigraph,
    check_odd_closed_walk,
    degree_sequence,
    generate,
    is_bipartite,
    is_connected,
    is_eulerian,
    is_regular,
    parse_edge_list,
    parse_graph6,
    serialize,
)


def test_parse_triangle():
    g = parse_edge_list("3 3\n0 1\n1 2\n2 0")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2), (2, 0))


def test_parse_loop_counts_two():
    g = parse_edge_list("1 1\n0 0")
    assert degree_sequence(g) == (2,)


def test_parse_parallel_edges():
    g = parse_edge_list("2 2\n0 1\n0 1")
    assert degree_sequence(g) == (2, 2)


def test_two_loops_degree_four():
    assert degree_sequence(Multigraph(1, ((0, 0), (0, 0)))) == (4,)


@pytest.mark.parametrize("text,line", [
    ("3 2\n0 1\n1 x", 3),
    ("3 2\n0 1\n1 5", 3),
    ("3 3\n0 1\n1 2", 3),
    ("3\n0 1", 1),
    ("", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_edge_list(text)
    assert info.value.line == line


edge_lists = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10)))


@given(edge_lists)
def test_serialize_roundtrip(data):
    n, edges = data
    g = Multigraph(n, tuple(edges))
    assert parse_edge_list(serialize(g)) == g


@given(edge_lists)
def test_handshake(data):
    n, edges = data
    g = Multigraph(n, tuple(edges))
    assert sum(degree_sequence(g)) == 2 * g.m


@pytest.mark.parametrize("spec,n,m,d", [
    ("K4", 4, 6, 3), ("C5", 5, 5, 2), ("K3,3", 6, 9, 3), ("K4,4", 8, 16, 4),
    ("petersen", 10, 15, 3), ("octahedron", 6, 12, 4), ("K7", 7, 21, 6), ("K:5", 5, 10, 4),
])
def test_families(spec, n, m, d):
    g = generate(spec)
    assert (g.n, g.m, is_regular(g)) == (n, m, d)
    assert degree_sequence(g) == (d,) * n


def test_family_errors():
    for bad in ("Q5", "C2", "Kx", "C3,4"):
        with pytest.raises(ValueError):
            generate(bad)


def test_disjoint_union():
    g = generate("C3+C3")
    assert g.n == 6 and g.m == 6 and not is_connected(g)


def test_petersen_structure_by_search():
    g = generate("petersen")
    adj = {frozenset(e) for e in g.edges}
    assert len(adj) == 15
    # no triangles or 4-cycles, but a 5-cycle exists: girth 5, hence non-bipartite
    def cycle(vs):
        return all(frozenset((vs[i], vs[(i + 1) % len(vs)])) in adj for i in range(len(vs)))
    assert not any(cycle(c) for c in itertools.permutations(range(10), 3))
    assert not any(cycle(c) for c in itertools.permutations(range(10), 4))
    assert any(cycle(c) for c in itertools.permutations(range(10), 5))
    bip, walk = is_bipartite(g)
    assert not bip and len(walk) % 2 == 1 and check_odd_closed_walk(g, walk)


def test_predicates_c4_c3_k4():
    c4, c3, k4 = generate("C4"), generate("C3"), generate("K4")
    assert is_bipartite(c4) == (True, None) and is_connected(c4) and is_eulerian(c4) and is_regular(c4) == 2
    bip, walk = is_bipartite(c3)
    assert not bip and sorted(walk) == [0, 1, 2] and is_eulerian(c3)
    assert is_regular(k4) == 3 and not is_eulerian(k4)


def test_loop_is_odd_walk():
    g = Multigraph(2, ((0, 1), (1, 1)))
    bip, walk = is_bipartite(g)
    assert not bip and walk == [1] and check_odd_closed_walk(g, walk)


def test_parallel_edges_stay_bipartite():
    assert is_bipartite(Multigraph(2, ((0, 1), (0, 1))))[0]


@given(edge_lists)
def test_bipartite_witness_is_odd_closed_walk(data):
    n, edges = data
    g = Multigraph(n, tuple(edges))
    bip, walk = is_bipartite(g)
    # oracle: try every 2-colouring
    brute = any(all(c[u] != c[v] for u, v in edges) for c in itertools.product((0, 1), repeat=n))
    assert bip == brute
    if not bip:
        assert check_odd_closed_walk(g, walk)


def test_graph6():
    g = parse_graph6(">>graph6<<C~")
    assert g.n == 4 and g.m == 6
    assert parse_graph6("Bw").edges == ((0, 1), (0, 2), (1, 2))
    with pytest.raises(GraphFormatError):
        parse_graph6(">>sparse6<<:Bw")
    with pytest.raises(GraphFormatError):
        parse_graph6("C")


def test_isolated_vertices_allowed():
    g = Multigraph(3, ((0, 1), (0, 1)))
    assert degree_sequence(g) == (2, 2, 0)
