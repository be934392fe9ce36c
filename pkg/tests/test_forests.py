import random
from itertools import permutations

import pytest

from dirforest.complex import build_delta
from dirforest.graph import complete_double_graph
from dirforest.quotient.forests import (
    LabeledForest,
    NotAForest,
    UnlabeledForest,
    canonical_form,
    canonical_layout,
    forest_codes,
    realize,
    rooted_tree_codes,
    unlabeled_forests,
)


def test_rooted_tree_counts():
    assert [len(rooted_tree_codes(m)) for m in range(1, 9)] == [1, 1, 2, 4, 9, 20, 48, 115]
    # a forest on n vertices is a rooted tree on n + 1 vertices with the root removed
    assert [len(forest_codes(n)) for n in range(0, 8)] == [len(rooted_tree_codes(n + 1)) for n in range(0, 8)]


def test_labels_break_symmetry_on_a_path():
    a = canonical_form(3, [(0, 1), (1, 2)], [1, 2])
    b = canonical_form(3, [(0, 1), (1, 2)], [2, 1])
    assert a != b


def test_star_with_equal_labels_is_one_class():
    a = canonical_form(3, [(0, 1), (0, 2)], [1, 1])
    b = canonical_form(3, [(2, 0), (2, 1)], [1, 1])
    assert a == b and isinstance(a, LabeledForest)
    assert canonical_form(3, [(0, 1), (0, 2)], [1, 2]) == canonical_form(3, [(0, 2), (0, 1)], [1, 2])


def test_label_values_are_normalized():
    assert canonical_form(3, [(0, 1), (1, 2)], [5, 9]) == canonical_form(3, [(0, 1), (1, 2)], [1, 2])


def test_not_a_forest():
    with pytest.raises(NotAForest):
        canonical_form(3, [(0, 1), (2, 1)])
    with pytest.raises(NotAForest):
        canonical_form(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NotAForest):
        canonical_form(2, [(0, 0)])


def test_realize_round_trip():
    for n in range(1, 8):
        for T in unlabeled_forests(n):
            R = T.realize()
            assert canonical_form(n, R.edges) == T
            code, preorder, order = canonical_layout(n, R.edges)
            assert preorder == list(range(n)) and order == list(range(T.k))


def test_canonical_form_separates_exactly_the_isomorphism_classes():
    # all forests inside G_4, compared against brute-force vertex isomorphism
    G = complete_double_graph(4)
    subsets = [f for f in build_delta(G).faces()] + [()]
    edge_sets = [frozenset(G.edges[e] for e in s) for s in subsets]
    forms = [canonical_form(4, sorted(es)) for es in edge_sets]
    perms = list(permutations(range(4)))
    for i in range(len(edge_sets)):
        for j in range(i + 1, len(edge_sets)):
            iso = any(frozenset((p[u], p[v]) for u, v in edge_sets[i]) == edge_sets[j] for p in perms)
            assert (forms[i] == forms[j]) == iso
    assert len(set(forms)) == len(forest_codes(4))


def _random_labeled_forest(rng, n):
    edges = []
    for v in range(1, n):
        if rng.random() < 0.8:
            edges.append((rng.randrange(v), v))
    labels = [rng.randint(1, 3) for _ in edges]
    return edges, labels


@pytest.mark.parametrize("seed", range(8))
def test_canonical_form_invariant_under_100_relabelings(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    edges, labels = _random_labeled_forest(rng, n)
    base_l = canonical_form(n, edges, labels)
    base_u = canonical_form(n, edges)
    for _ in range(100):
        p = list(range(n))
        rng.shuffle(p)
        moved = [(p[u], p[v]) for u, v in edges]
        order = list(range(len(edges)))
        rng.shuffle(order)
        assert canonical_form(n, [moved[i] for i in order], [labels[i] for i in order]) == base_l
        assert canonical_form(n, [moved[i] for i in order]) == base_u


def test_strings_and_properties():
    T = canonical_form(4, [(0, 1), (1, 2)])
    assert isinstance(T, UnlabeledForest)
    assert T.k == 2 and T.string == "()((()))"
    L = canonical_form(4, [(0, 1), (1, 2)], [2, 1])
    assert L.string == "()(2(1()))" and L.dim == 1 and L.base == T
    assert realize(4, T.code).edges == ((1, 2), (2, 3))


def test_unlabeled_forest_listing():
    fs = unlabeled_forests(4)
    assert len(fs) == 9
    assert [f.k for f in fs] == sorted(f.k for f in fs)
    assert len(unlabeled_forests(4, 3)) == 4
