import itertools
import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from orientcount import counting as ct
from orientcount.gaussian import GaussianRational as G, I
from orientcount.graph import Multigraph, generate
from orientcount.signatures import s_vector

from conftest import naive_orientation_sum, naive_orientations, naive_subgraph_poly, random_gaussian


def const(g, vec):
    return [vec] * g.n


# subgraph polynomial

def test_k4_perfect_matchings():
    g = generate("K4")
    assert ct.subgraph_poly_eval(g, const(g, [0, 1, 0, 0])) == 3


def test_k4_all_ones():
    g = generate("K4")
    assert ct.subgraph_poly_eval(g, const(g, [1, 1, 1, 1])) == 64


def test_two_loops():
    g = Multigraph(1, ((0, 0), (0, 0)))
    assert ct.subgraph_poly_eval(g, [[1, 0, 1, 0, 1]]) == 4
    # x_0 + 2 x_2 + x_4 in general
    assert ct.subgraph_poly_eval(g, [[3, 0, 5, 0, 7]]) == 3 + 2 * 5 + 7


def test_k4_polynomial_expansion():
    # the known expansion of F_{K4}, evaluated at an arbitrary exact point
    x0, x1, x2, x3 = G(2), G(F(-1, 3)), G(0, 1), G(F(5, 2), -1)
    expected = (x0**4 + 6 * x0**2 * x1**2 + 3 * x1**4 + 12 * x0 * x1**2 * x2 + 12 * x1**2 * x2**2
                + 4 * x0 * x2**3 + 3 * x2**4 + 4 * x1**3 * x3 + 12 * x1 * x2**2 * x3
                + 6 * x2**2 * x3**2 + x3**4)
    g = generate("K4")
    assert ct.subgraph_poly_eval(g, const(g, [x0, x1, x2, x3])) == expected


multigraphs = st.integers(1, 5).flatmap(lambda n: st.builds(
    lambda es: Multigraph(n, tuple(es)),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8)))


@settings(max_examples=40, deadline=None)
@given(multigraphs, st.randoms(use_true_random=False))
def test_subgraph_eval_matches_naive(g, r):
    w = [[random_gaussian(r) for _ in range(d + 1)] for d in g.degrees()]
    assert ct.subgraph_poly_eval(g, w) == naive_subgraph_poly(g, w)


def test_weight_length_checked():
    g = generate("C3")
    with pytest.raises(ct.PreconditionError):
        ct.subgraph_poly_eval(g, const(g, [1, 1]))


def test_float_weights_take_float_path():
    g = generate("C4")
    val = ct.subgraph_poly_eval(g, const(g, [0.5, 0.0, 1.5]))
    exact = ct.subgraph_poly_eval(g, const(g, [F(1, 2), 0, F(3, 2)]))
    assert isinstance(val, complex) and val == pytest.approx(complex(exact))


# orientation sums

def test_c3_cyclic_orientations():
    g = generate("C3")
    assert ct.orientation_sum(g, [{0: 1}] * 3) == 2


def test_k4_orientations_all_ones():
    g = generate("K4")
    assert ct.orientation_sum(g, [{-3: 1, -1: 1, 1: 1, 3: 1}] * 4) == 64


def test_k4_no_source_no_sink():
    g = generate("K4")
    brute = sum(1 for od in naive_orientations(g) if all(abs(k) != 3 for k in od))
    assert ct.orientation_sum(g, [{-1: 1, 1: 1}] * 4) == brute == 24


def test_orientation_sum_sequence_form():
    g = generate("K4")
    seq = [G(1), G(2), G(3), G(4)]  # oriented degree -3, -1, 1, 3
    as_map = {-3: 1, -1: 2, 1: 3, 3: 4}
    assert ct.orientation_sum(g, [seq] * 4) == ct.orientation_sum(g, [as_map] * 4)


@settings(max_examples=30, deadline=None)
@given(multigraphs.filter(lambda g: not g.has_loops()), st.randoms(use_true_random=False))
def test_orientation_sum_matches_naive(g, r):
    y = [{k: random_gaussian(r) for k in range(-d, d + 1, 2)} for d in g.degrees()]
    assert ct.orientation_sum(g, y) == naive_orientation_sum(g, y)


def test_orientation_sum_rejects_loops_and_bad_keys():
    with pytest.raises(ValueError):
        ct.orientation_sum(Multigraph(1, ((0, 0),)), [{0: 1}])
    with pytest.raises(ct.PreconditionError):
        ct.orientation_sum(generate("C3"), [{1: 1}] * 3)


# Eulerian orientations

@pytest.mark.parametrize("name,count", [("C3", 2), ("C4", 2), ("C3+C3", 4)])
def test_eulerian_small(name, count):
    g = generate(name)
    assert ct.count_eulerian_bruteforce(g) == ct.count_eulerian_eval(g) == count


def test_eulerian_k5_oracle():
    g = generate("K5")
    brute = sum(1 for od in naive_orientations(g) if not any(od))
    assert ct.count_eulerian_bruteforce(g) == brute
    assert ct.count_eulerian_eval(g) == brute


def test_eulerian_nonregular():
    # bowtie: each triangle must be a directed cycle, 2 * 2 ways
    g = Multigraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)))
    assert ct.count_eulerian_eval(g) == ct.count_eulerian_bruteforce(g) == 4


def test_eulerian_with_isolated_vertex():
    g = Multigraph(4, ((0, 1), (1, 2), (2, 0)))
    assert ct.count_eulerian_eval(g) == 2


@pytest.mark.parametrize("mult,d", [(3, 6), (4, 8)])
def test_high_degree_s_vectors_count_correctly(mult, d):
    # triangle with every edge repeated: d-regular multigraph
    g = Multigraph(3, tuple(e for e in ((0, 1), (1, 2), (2, 0)) for _ in range(mult)))
    assert ct.count_eulerian_eval(g) == ct.count_eulerian_bruteforce(g)
    assert ct.count_half_graphs_eval(g) == ct.count_half_graphs_bruteforce(g) == ct.count_half_graphs_krawtchouk(g)


def test_eulerian_preconditions():
    with pytest.raises(ct.PreconditionError):
        ct.count_eulerian_eval(generate("K4"))
    with pytest.raises(ct.PreconditionError):
        ct.count_eulerian_bruteforce(Multigraph(1, ((0, 0),)))


# half-graphs

@pytest.mark.parametrize("name,count", [("C4", 2), ("C3", 0), ("K5", 12)])
def test_half_graphs(name, count):
    g = generate(name)
    assert ct.count_half_graphs_bruteforce(g) == count
    assert ct.count_half_graphs_eval(g) == count
    assert ct.count_half_graphs_krawtchouk(g) == count


def test_k5_two_factors_are_hamilton_cycles():
    # a 2-factor of K5 cannot split into a triangle and a 2-cycle, so it is a 5-cycle
    cycles = {frozenset(frozenset((p[i], p[(i + 1) % 5])) for i in range(5))
              for p in itertools.permutations(range(5))}
    assert len(cycles) == math.factorial(4) // 2 == ct.count_half_graphs_bruteforce(generate("K5"))


def test_half_graphs_with_loops():
    g = Multigraph(1, ((0, 0), (0, 0)))
    assert ct.count_half_graphs_eval(g) == ct.count_half_graphs_bruteforce(g) == 2


# duality

def test_duality_c3():
    g = generate("C3")
    res = ct.duality_check(g, const(g, [1, 0, 1]))
    assert res.left == 2 and res.right == 2 and res.equal


def test_duality_zero_weights():
    g = generate("K4")
    res = ct.duality_check(g, const(g, [0, 0, 0, 0]))
    assert res.left == res.right == 0


def test_duality_k4_random(rng):
    g = generate("K4")
    for _ in range(5):
        w = [[random_gaussian(rng) for _ in range(4)] for _ in range(4)]
        res = ct.duality_check(g, w)
        assert res.equal and res.left == naive_subgraph_poly(g, w)


def test_duality_nonregular(rng):
    g = Multigraph(4, ((0, 1), (1, 2), (1, 2), (2, 3)))
    w = [[random_gaussian(rng) for _ in range(d + 1)] for d in g.degrees()]
    assert ct.duality_check(g, w).equal


def test_duality_rejects_loops():
    with pytest.raises(ct.PreconditionError):
        ct.duality_check(Multigraph(1, ((0, 0),)), [[1, 1, 1]])


# Schrijver and the bipartite comparison

def test_schrijver_c4_equality():
    rep = ct.schrijver_report(generate("C4"))
    assert rep.values["eulerian_orientations"] == 2
    assert rep.bounds["schrijver"] == 1 and rep.bounds["twice_schrijver"] == 2
    assert rep.bounds["equality_at_twice"] and rep.ok


def test_schrijver_k5():
    rep = ct.schrijver_report(generate("K5"))
    assert rep.bounds["twice_schrijver"] == F(243, 16)
    assert rep.values["eulerian_orientations"] >= F(243, 16) and rep.ok


def test_schrijver_disjoint_triangles():
    rep = ct.schrijver_report(generate("C3+C3"))
    assert rep.values["eulerian_orientations"] == 4 and rep.bounds["twice_schrijver"] == 2 and rep.ok


@pytest.mark.parametrize("name,eps,h,rel", [("C4", 2, 2, "equal"), ("C3", 2, 0, "strict"), ("K5", 24, 12, "strict")])
def test_eulerian_vs_halfgraphs(name, eps, h, rel):
    rep = ct.eulerian_vs_halfgraphs(generate(name))
    assert rep.values == {"eulerian_orientations": eps, "half_graphs": h, "relation": rel}
    assert rep.ok


# rotation invariance

def test_four_regular_paper_instance():
    for name in ("octahedron", "K4,4", "K5"):
        g = generate(name)
        left = ct.subgraph_poly_eval(g, const(g, [0, 0, 1, 0, 0]))
        right = ct.subgraph_poly_eval(g, const(g, [F(3, 2), 0, F(-1, 2), 0, F(3, 2)]))
        assert left == right


@pytest.mark.parametrize("name", ["K4", "K3,3", "C5", "octahedron"])
def test_rotation_invariance_exact_quarter_turns(name, rng):
    g = generate(name)
    d = g.degrees()[0]
    for j in range(1, 8):
        x = [random_gaussian(rng) for _ in range(d + 1)]
        res = ct.rotation_invariance(g, x, quarter_turns=j)
        assert res.exact and res.equal


def test_rotation_invariance_float(rng):
    g = generate("K4")
    for t in (0.3, 1.7, -2.2):
        x = [rng.uniform(-1, 1) for _ in range(4)]
        assert ct.rotation_invariance(g, x, t=t).equal


# cubic graphs

def test_cubic_k4():
    dist = ct.cubic_distribution(generate("K4"))
    assert dist.enumerated == {-1: F(1, 8), 0: F(3, 4), 1: F(1, 8)}
    assert dist.match


def test_cubic_k33():
    dist = ct.cubic_distribution(generate("K3,3"))
    assert dist.enumerated[0] == F(20, 32) and dist.enumerated[1] == dist.enumerated[-1] == F(6, 32)
    assert dist.match


def test_cubic_closed_form_support():
    assert ct.cubic_closed_form(10, 3) == 0
    assert sum(ct.cubic_closed_form(10, k) for k in range(-5, 6)) == 1


def test_cubic_preconditions():
    with pytest.raises(ct.PreconditionError):
        ct.cubic_distribution(generate("C4"))
    with pytest.raises(ct.PreconditionError):
        ct.cubic_distribution(generate("K4+K4"))


@pytest.mark.parametrize("tau", [1, 2, 3, F(1, 2), -2])
def test_cubic_identity_k4(tau):
    res = ct.cubic_hg_identity_check(generate("K4"), tau)
    assert res.equal and res.closed_form_holds


def test_cubic_identity_tau_one():
    res = ct.cubic_hg_identity_check(generate("K4"), 1)
    assert res.a == 1 and res.b == 0 and res.orientation_side == 64


def test_cubic_identity_rejects_zero():
    with pytest.raises(ct.PreconditionError):
        ct.cubic_hg_identity_check(generate("K4"), 0)
