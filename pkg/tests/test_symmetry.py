from itertools import combinations

import pytest

from dirforest.quotient.forests import ConcreteForest, canonical_form, unlabeled_forests
from dirforest.quotient.spectral import two_path_forest
from dirforest.quotient.symmetry import (
    GuardExceeded,
    brute_force_symmetry_group,
    compose,
    cycles,
    f_table,
    forest_symmetry_group,
    format_f_table,
    inverse,
    is_admissible,
    perm_sign,
)

EXPECTED_ROWS = {
    1: [0, 1, 1, 1, 1, 1],
    2: [0, 0, 1, 1, 1, 1],
    3: [0, 0, 0, 2, 3, 3],
    4: [0, 0, 0, 0, 4, 7],
    5: [0, 0, 0, 0, 0, 8],
}


def test_perm_sign_matches_inversions():
    from itertools import permutations

    for p in permutations(range(5)):
        inv = sum(1 for i, j in combinations(range(5), 2) if p[i] > p[j])
        assert perm_sign(p) == (-1) ** inv


def test_compose_and_inverse():
    p, q = (1, 2, 0), (0, 2, 1)
    assert compose(p, inverse(p)) == (0, 1, 2)
    assert compose(p, q) == (1, 0, 2)


def test_path_is_rigid():
    T = canonical_form(4, [(0, 1), (1, 2), (2, 3)])
    assert forest_symmetry_group(T).order == 1


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_star_gives_full_symmetric_group(k):
    T = canonical_form(k + 1, [(0, i) for i in range(1, k + 1)])
    G = forest_symmetry_group(T)
    assert G.order == [1, 1, 2, 6, 24, 120][k]
    assert G.is_group()


def test_groups_match_brute_force_for_all_small_forests():
    for n in range(1, 7):
        for T in unlabeled_forests(n):
            G = forest_symmetry_group(T)
            assert G.elements == brute_force_symmetry_group(T.realize()).elements
            assert G.is_group()


def test_torsion_forest_group():
    T = two_path_forest()
    assert (T.n, T.k) == (8, 6)
    G = forest_symmetry_group(T)
    assert G.order == 2
    (inv,) = [s for s in G.elements if s != tuple(range(6))]
    cyc = cycles(inv)
    assert len(cyc) == 3 and all(len(c) == 2 for c in cyc)
    # three disjoint transpositions form an odd permutation
    assert perm_sign(inv) == -1 and not is_admissible(T)


def test_torsion_forest_group_on_another_edge_order():
    edges = ((4, 5), (0, 1), (5, 6), (1, 2), (6, 7), (2, 3))
    G = brute_force_symmetry_group(ConcreteForest(8, edges, (0,) * 6))
    (inv,) = [s for s in G.elements if s != tuple(range(6))]
    assert sorted(cycles(inv)) == [(0, 1), (2, 3), (4, 5)]


def test_admissibility_examples():
    assert is_admissible(canonical_form(2, [(0, 1)]))
    assert not is_admissible(canonical_form(3, [(0, 1), (0, 2)]))
    assert is_admissible(canonical_form(4, [(0, 1), (0, 2), (0, 3)])) is False
    # two swapped pairs give an even involution
    assert is_admissible(canonical_form(5, [(0, 1), (1, 2), (0, 3), (3, 4)]))


def test_table_reproduced():
    table = f_table(6)
    for k, row in EXPECTED_ROWS.items():
        assert [table[(k, n)] for n in range(1, 7)] == row
    assert table[(3, 5)] == 3 and table[(4, 6)] == 7 and table[(5, 6)] == 8
    assert all(table[(k, n)] == 0 for (k, n) in table if k >= n)


def test_rows_stabilize():
    table = f_table(8)
    for k in (2, 3):
        stable = table[(k, 2 * k - 1)]
        assert all(table[(k, n)] == stable for n in range(2 * k - 1, 9))
    assert table[(3, 4)] == 2


def test_guards():
    with pytest.raises(GuardExceeded):
        f_table(9)
    big = canonical_form(10, [(0, i) for i in range(1, 10)])
    with pytest.raises(GuardExceeded):
        forest_symmetry_group(big)
    assert forest_symmetry_group(canonical_form(10, [(i, i + 1) for i in range(9)]), override=True).order == 1


def test_table_formatting():
    text = format_f_table(f_table(3))
    assert text.splitlines()[0].split()[1:] == ["1", "2", "3"]
