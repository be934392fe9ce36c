"""Shelling orders of forest complexes of graphs with a complete source.

A spanning tree is labelled by the weakly increasing sequence of its edge
sources; ordering trees lexicographically by label (after moving the
complete source to the front of the vertex order) gives a shelling.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .complex import SimplicialComplex, build_delta, is_pure
from .graph import DirectedGraph, complete_double_graph, is_directed_forest

DEFAULT_MAX_FACETS = 10_000


class NoCompleteSource(ValueError):
    pass


class ShellingSizeError(ValueError):
    pass


def has_complete_source(G: DirectedGraph) -> Optional[int]:
    """Smallest vertex with an out-edge to every other vertex, else ``None``."""
    for x in range(G.n_vertices):
        if all(G.has_edge(x, y) for y in range(G.n_vertices) if y != x):
            return x
    return None


def _vertex_rank(G: DirectedGraph, source: Optional[int]) -> list[int]:
    if source is None or source == 0:
        return list(range(G.n_vertices))
    # source first, all other vertices keep their relative order
    rank = [v + 1 if v < source else v for v in range(G.n_vertices)]
    rank[source] = 0
    return rank


def facet_label(G: DirectedGraph, facet: Sequence[int], source: Optional[int] = None) -> tuple[int, ...]:
    """Sorted multiset of edge sources of a spanning tree.

    With ``source`` given, vertices are ranked with ``source`` first; for
    the complete double graph (source 0) the label is plain vertex ids.
    """
    if len(facet) != G.n_vertices - 1 or not is_directed_forest(G, facet):
        raise ValueError(f"{tuple(facet)} is not a spanning directed tree of the graph")
    rank = _vertex_rank(G, source)
    return tuple(sorted(rank[G.edges[e][0]] for e in facet))


def shelling_order(G: DirectedGraph, tie_break=None) -> list[tuple[int, ...]]:
    """Spanning trees of ``G`` ordered by label, ties broken by edge indices.

    ``tie_break`` (a key function on facets) replaces the default
    lexicographic tie-break inside equal labels.
    """
    source = has_complete_source(G)
    if source is None:
        raise NoCompleteSource("graph has no complete source")
    K = build_delta(G)
    facets = [f for f in K.facets() if len(f) == G.n_vertices - 1]
    key2 = tie_break or (lambda f: f)
    return sorted(facets, key=lambda f: (facet_label(G, f, source), key2(f)))


def _as_masks(order: Sequence[Sequence[int]]) -> list[int]:
    masks = []
    for f in order:
        m = 0
        for v in f:
            m |= 1 << v
        masks.append(m)
    return masks


def restriction_faces(order: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """For each facet F_k, the vertices x with F_k - {x} inside an earlier facet."""
    seen_ridges: set[tuple[int, ...]] = set()
    out = []
    for f in order:
        f = tuple(sorted(f))
        out.append(tuple(x for i, x in enumerate(f) if f[:i] + f[i + 1:] in seen_ridges))
        for i in range(len(f)):
            seen_ridges.add(f[:i] + f[i + 1:])
    return out


def verify_shelling(K: SimplicialComplex, order: Sequence[Sequence[int]], max_facets: int = DEFAULT_MAX_FACETS) -> bool:
    """Check the pairwise shelling condition for a facet order of a pure complex.

    For all ``i < k`` there must be ``j < k`` and ``x`` in ``F_k`` with
    ``F_i & F_k <= F_j & F_k == F_k - {x}``. With ``R_k`` the set of such
    ``x`` available from earlier facets, this holds for every ``i`` exactly
    when no earlier facet contains all of ``R_k``.
    """
    order = [tuple(sorted(f)) for f in order]
    if len(order) > max_facets:
        raise ShellingSizeError(f"{len(order)} facets exceed the guard of {max_facets}")
    if sorted(order) != sorted(K.facets()) or len(set(order)) != len(order):
        raise ValueError("order is not a permutation of the facets")
    if not is_pure(K):
        return False
    if K.n_vertices <= 62:
        masks = np.array(_as_masks(order), dtype=np.int64)
    else:
        masks = np.array(_as_masks(order), dtype=object)
    restr = _as_masks(restriction_faces(order))
    for k in range(1, len(order)):
        r = restr[k]
        if r == 0:
            return False
        if np.any((masks[:k] & r) == r):
            return False
    return True


def verify_shelling_pairwise(order: Sequence[Sequence[int]]) -> bool:
    """Literal pairwise check of the shelling condition (quadratic-times-j)."""
    F = [frozenset(f) for f in order]
    for k in range(1, len(F)):
        codim1 = [F[j] & F[k] for j in range(k) if len(F[j] & F[k]) == len(F[k]) - 1]
        for i in range(k):
            if not any(F[i] & F[k] <= c for c in codim1):
                return False
    return True


def homology_facets(n: int) -> list[tuple[int, ...]]:
    """Spanning trees of G_n in which vertex 0 is a leaf (no edge leaves 0)."""
    if n < 2:
        raise ValueError("homology_facets needs n >= 2")
    G = complete_double_graph(n)
    return [f for f in shelling_order(G) if 0 not in facet_label(G, f, 0)]


def spanning_facets_count(order: Sequence[Sequence[int]]) -> int:
    """Facets whose whole boundary is already covered by earlier facets."""
    return sum(1 for f, r in zip(order, restriction_faces(order)) if len(r) == len(f))


def exists_shelling(K: SimplicialComplex, limit: int = 30) -> bool:
    """Exhaustive search for any shelling order (small complexes only).

    Whether a facet may come next depends only on the set already placed,
    so the search is memoised over subsets of facets.
    """
    facets = K.facets()
    t = len(facets)
    if t > limit:
        raise ShellingSizeError(f"{t} facets exceed the search limit {limit}")
    if not is_pure(K):
        return False
    if t <= 1:
        return True
    masks = _as_masks(facets)
    ridge_ids: dict[tuple[int, ...], int] = {}
    ridges = []
    for f in facets:
        ridges.append([ridge_ids.setdefault(f[:i] + f[i + 1:], len(ridge_ids)) for i in range(len(f))])
    ridge_masks = [sum(1 << r for r in rs) for rs in ridges]
    full = (1 << t) - 1
    dead: set[int] = set()

    def can_add(chosen: int, covered: int, k: int) -> bool:
        r = 0
        for v, rid in zip(facets[k], ridges[k]):
            if covered >> rid & 1:
                r |= 1 << v
        if r == 0:
            return False
        rest = chosen
        while rest:
            low = rest & -rest
            if masks[low.bit_length() - 1] & r == r:
                return False
            rest ^= low
        return True

    def search(chosen: int, covered: int) -> bool:
        if chosen == full:
            return True
        if chosen in dead:
            return False
        for k in range(t):
            if not chosen >> k & 1 and can_add(chosen, covered, k):
                if search(chosen | 1 << k, covered | ridge_masks[k]):
                    return True
        dead.add(chosen)
        return False

    return any(search(1 << k, ridge_masks[k]) for k in range(t))
