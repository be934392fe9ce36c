from collections import Counter

import pytest

from dirforest.complex import (
    SimplicialComplex,
    build_delta,
    c_complex,
    euler_characteristic,
    is_pure,
    join,
    l_complex,
    point,
    purity_criterion,
    sphere0,
)
from dirforest.families import l_homotopy
from dirforest.graph import DirectedGraph, complete_double_graph, double_cycle_graph, double_string_graph
from dirforest.homology import reduced_nonzero, simplicial_homology
from oracles import isomorphic_by_relabeling


def betti(K):
    return {d: g.betti for d, g in reduced_nonzero(simplicial_homology(K)).items()}


def test_delta_g3():
    K = build_delta(complete_double_graph(3))
    assert K.n_vertices == 6
    assert len(K.facets()) == 9 and all(len(f) == 2 for f in K.facets())
    assert euler_characteristic(K) == -4


def test_delta_g1_is_the_empty_face_only():
    K = build_delta(complete_double_graph(1))
    assert K.f_vector() == [] and K.dim == -1
    assert euler_characteristic(K) == -1
    assert betti(K) == {-1: 1}


def test_delta_c5_pure_of_dimension_3():
    K = build_delta(double_cycle_graph(5))
    assert K.dim == 3 and is_pure(K)
    # every maximal forest of C_5 has 4 edges
    assert len(K.facets()) == 25


@pytest.mark.parametrize("n, chi", [(2, 1), (3, -4), (4, 27), (5, -256)])
def test_euler_characteristic_of_complete_case(n, chi):
    assert euler_characteristic(build_delta(complete_double_graph(n))) == chi


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_case_is_pure_of_top_dimension(n):
    K = build_delta(complete_double_graph(n))
    assert is_pure(K, n - 2)


def test_path_independence_small():
    assert l_complex(2).face_set() == sphere0().face_set()
    L3 = l_complex(3)
    assert (0, 2) in L3 and (0, 1) not in L3 and (1, 2) not in L3
    assert L3.facets() == [(1,), (0, 2)]


def _string_map(n):
    # edge 2i is i -> i+1 (a_i), edge 2i+1 is i+1 -> i (b_i); path order b0 a0 b1 a1 ...
    return {2 * i: 2 * i + 1 for i in range(n)} | {2 * i + 1: 2 * i for i in range(n)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_path_independence_equals_string_complex(n):
    assert isomorphic_by_relabeling(build_delta(double_string_graph(n)), l_complex(2 * n), _string_map(n))


def test_cycle_independence_small():
    assert c_complex(4).facets() == [(0, 2), (1, 3)]
    assert c_complex(3).facets() == [(0,), (1,), (2,)]
    with pytest.raises(ValueError):
        c_complex(2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cycle_complex_is_cycle_independence_minus_two_facets(n):
    K = build_delta(double_cycle_graph(n))
    C = c_complex(2 * n)
    odd = tuple(range(1, 2 * n, 2))
    even = tuple(range(0, 2 * n, 2))
    assert odd in C and even in C
    reduced = C.delete_faces([odd, even])
    assert isomorphic_by_relabeling(K, reduced, _string_map(n))


def test_purity_criterion_on_complete_graphs():
    for n in (3, 4):
        G = complete_double_graph(n)
        assert purity_criterion(G)
        assert is_pure(build_delta(G), n - 2)
    assert purity_criterion(DirectedGraph(1, ()))


def _all_graphs(n):
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield DirectedGraph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def test_purity_criterion_exhaustive_on_four_vertices():
    witnesses = []
    for G in _all_graphs(4):
        direct = is_pure(build_delta(G), G.n_vertices - 2)
        assert purity_criterion(G) == direct, G.edges
        if not direct and G.n_edges >= 6 and not witnesses:
            witnesses.append(G)
    # an impure example with many edges exists (two in-neighbourhoods in disjoint subtrees)
    assert witnesses


def test_purity_criterion_smaller_graphs():
    for n in (1, 2, 3):
        for G in _all_graphs(n):
            assert purity_criterion(G) == is_pure(build_delta(G), n - 2)


def test_join_matches_disjoint_union():
    G2 = complete_double_graph(2)
    assert join(build_delta(G2), build_delta(G2)).face_set() == build_delta(G2.disjoint_union(G2)).face_set()


def test_join_with_point_is_contractible():
    K = build_delta(complete_double_graph(3))
    assert betti(join(point(), K)) == {}


def test_suspension_of_s0():
    assert betti(join(sphere0(), sphere0())) == {1: 1}


@pytest.mark.parametrize("a, b", [(2, 2), (3, 5), (5, 6), (6, 6), (4, 5)])
def test_join_relation_on_path_independence(a, b):
    ha, hb = l_homotopy(a)[0].betti(), l_homotopy(b)[0].betti()
    expected = Counter()
    for i, r in ha.items():
        for j, s in hb.items():
            expected[i + j + 1] += r * s
    assert betti(join(l_complex(a), l_complex(b))) == dict(expected)


def test_every_constructed_complex_is_downward_closed():
    for K in [
        build_delta(complete_double_graph(4)),
        build_delta(double_cycle_graph(5)),
        build_delta(double_string_graph(4)),
        l_complex(7),
        c_complex(8),
        join(l_complex(3), c_complex(4)),
    ]:
        assert K.is_downward_closed()


def test_dump_format():
    K = SimplicialComplex.from_facets(3, [(0, 1), (2,)])
    assert K.dump() == "0\n1\n2\n0,1\n"


def test_from_faces_rejects_bad_faces():
    with pytest.raises(ValueError):
        SimplicialComplex.from_faces(2, [(0, 0)])
    with pytest.raises(ValueError):
        SimplicialComplex.from_faces(2, [(0, 2)])
