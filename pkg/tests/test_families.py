import random

import pytest

from dirforest.complex import build_delta, c_complex, l_complex
from dirforest.families import (
    HomotopyType,
    c_homotopy,
    delta_cycle_homotopy,
    delta_string_homotopy,
    is_essentially_tree,
    l_homotopy,
    reduce_essential_tree,
)
from dirforest.graph import DirectedGraph, complete_double_graph, double_cycle_graph, double_string_graph, string_with_tail
from dirforest.homology import reduced_nonzero, simplicial_homology


def free_betti(K):
    groups = reduced_nonzero(simplicial_homology(K))
    assert all(not g.torsion for g in groups.values())
    return {d: g.betti for d, g in groups.items()}


def test_homotopy_type_basics():
    assert str(HomotopyType.point()) == "point"
    assert HomotopyType.wedge(3, 1, 3).betti() == {1: 1, 3: 2}
    assert str(HomotopyType.wedge(2, 1)) == "S^1 v S^2"
    with pytest.raises(ValueError):
        HomotopyType.wedge(-1)


def test_path_independence_formula_examples():
    # generators are 0-based: (1, 4) is the 1-based (2, 5)
    assert l_homotopy(6) == (HomotopyType.wedge(1), (1, 4))
    assert l_homotopy(7) == (HomotopyType.point(), None)
    assert l_homotopy(8) == (HomotopyType.wedge(2), (1, 4, 7))


def test_closed_form_examples():
    assert delta_string_homotopy(3) == HomotopyType.wedge(1)
    assert delta_string_homotopy(4) == HomotopyType.wedge(2)
    assert delta_string_homotopy(5).is_point
    assert c_homotopy(6) == HomotopyType.wedge(1, 1)
    assert delta_cycle_homotopy(5) == HomotopyType.wedge(2, 3, 3)
    assert delta_cycle_homotopy(6) == HomotopyType.wedge(3, 3, 4, 4)
    with pytest.raises(ValueError):
        c_homotopy(2)


@pytest.mark.parametrize("n", range(1, 10))
def test_path_independence_homology(n):
    assert free_betti(l_complex(n)) == l_homotopy(n)[0].betti()


@pytest.mark.parametrize("n", range(1, 9))
def test_string_complex_homology(n):
    assert free_betti(build_delta(double_string_graph(n))) == delta_string_homotopy(n).betti()


@pytest.mark.parametrize("n", range(3, 10))
def test_cycle_independence_homology(n):
    assert free_betti(c_complex(n)) == c_homotopy(n).betti()


@pytest.mark.parametrize("n", range(3, 8))
def test_cycle_complex_homology(n):
    assert free_betti(build_delta(double_cycle_graph(n))) == delta_cycle_homotopy(n).betti()


@pytest.mark.parametrize("n", [3, 5, 6, 8, 9])
def test_removing_generator_kills_homology(n):
    _, gen = l_homotopy(n)
    K = l_complex(n)
    assert gen in K.facets()
    assert free_betti(K.delete_faces([gen])) == {}


def test_essential_tree_recognition():
    assert is_essentially_tree(double_string_graph(4))
    assert is_essentially_tree(string_with_tail(2))
    assert not is_essentially_tree(double_cycle_graph(4))
    assert not is_essentially_tree(complete_double_graph(3))


def test_two_leaves_on_one_vertex_give_a_point():
    # centre 0 with doubled leaves 1 and 2, plus a doubled branch 0 - 3 - 4
    edges = [(0, 1), (1, 0), (0, 2), (2, 0), (0, 3), (3, 0), (3, 4), (4, 3)]
    G = DirectedGraph(5, tuple(edges))
    red = reduce_essential_tree(G)
    assert red.betti == {}
    assert free_betti(build_delta(G)) == {}


@pytest.mark.parametrize("n", range(1, 9))
def test_reduction_reproduces_string_formula(n):
    red = reduce_essential_tree(double_string_graph(n))
    assert not red.irreducible
    assert red.betti == delta_string_homotopy(n).betti()


def test_reduction_on_string_with_tail():
    for n in range(1, 6):
        G = string_with_tail(n)
        red = reduce_essential_tree(G)
        assert red.betti == free_betti(build_delta(G)), n


def test_reduction_rejects_non_trees():
    with pytest.raises(ValueError):
        reduce_essential_tree(double_cycle_graph(4))


def _random_essential_tree(rng, n):
    edges = []
    for v in range(1, n):
        u = rng.randrange(v)
        kind = rng.choice(["both", "down", "up"])
        if kind in ("both", "down"):
            edges.append((u, v))
        if kind in ("both", "up"):
            edges.append((v, u))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[a], perm[b]) for a, b in edges]
    rng.shuffle(edges)
    return DirectedGraph(n, tuple(edges))


def test_reduction_agrees_with_direct_homology_on_random_trees():
    rng = random.Random(11)
    rules = set()
    irreducible = 0
    for _ in range(300):
        G = _random_essential_tree(rng, rng.randint(2, 6))
        red = reduce_essential_tree(G)
        rules.update(step.split("(")[0] for step in red.steps)
        if red.irreducible:
            irreducible += 1
            continue
        assert red.betti == free_betti(build_delta(G)), (G.edges, red.steps)
    assert {"t1", "t2", "t3a", "t3b", "t3c"} <= rules
    assert irreducible < 30
