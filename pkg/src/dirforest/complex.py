"""Finite simplicial complexes on integer vertices, and the forest complexes.

A complex stores its nonempty faces per dimension as sorted tuples; the
empty face is always implicitly present (so an edgeless graph yields the
complex ``{emptyset}``, whose reduced Euler characteristic is -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .graph import DirectedGraph, _forest_levels


@dataclass(frozen=True)
class SimplicialComplex:
    n_vertices: int
    faces_by_dim: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_faces(cls, n_vertices: int, faces: Iterable[Sequence[int]], close: bool = True) -> "SimplicialComplex":
        """Build from any collection of faces; ``close`` adds all subfaces."""
        found: set[tuple[int, ...]] = set()
        for f in faces:
            f = tuple(sorted(f))
            if not f:
                continue
            if len(set(f)) != len(f):
                raise ValueError(f"repeated vertex in face {f}")
            if f[0] < 0 or f[-1] >= n_vertices:
                raise ValueError(f"face {f} uses a vertex outside 0..{n_vertices - 1}")
            if close:
                if f in found:
                    continue
                for r in range(1, len(f) + 1):
                    found.update(combinations(f, r))
            else:
                found.add(f)
        return cls._from_set(n_vertices, found)

    @classmethod
    def from_facets(cls, n_vertices: int, facets: Iterable[Sequence[int]]) -> "SimplicialComplex":
        return cls.from_faces(n_vertices, facets, close=True)

    @classmethod
    def _from_set(cls, n_vertices: int, faces: set) -> "SimplicialComplex":
        top = max((len(f) for f in faces), default=0)
        levels = [[] for _ in range(top)]
        for f in faces:
            levels[len(f) - 1].append(f)
        return cls(n_vertices, tuple(tuple(sorted(level)) for level in levels))

    @property
    def dim(self) -> int:
        return len(self.faces_by_dim) - 1

    def faces(self) -> Iterator[tuple[int, ...]]:
        for level in self.faces_by_dim:
            yield from level

    def face_set(self) -> set[tuple[int, ...]]:
        return set(self.faces())

    def f_vector(self) -> list[int]:
        return [len(level) for level in self.faces_by_dim]

    def __contains__(self, face) -> bool:
        f = tuple(sorted(face))
        if not f:
            return True
        d = len(f) - 1
        return d < len(self.faces_by_dim) and f in self._lookup()[d]

    def _lookup(self):
        cache = self.__dict__.get("_cached_lookup")
        if cache is None:
            cache = [set(level) for level in self.faces_by_dim]
            object.__setattr__(self, "_cached_lookup", cache)
        return cache

    def facets(self) -> list[tuple[int, ...]]:
        """Maximal faces, ordered by dimension then lexicographically."""
        covered: set[tuple[int, ...]] = set()
        out = []
        for level in reversed(self.faces_by_dim):
            for f in level:
                if f not in covered:
                    out.append(f)
            for f in level:
                for i in range(len(f)):
                    covered.add(f[:i] + f[i + 1:])
        out.sort(key=lambda f: (len(f), f))
        return out

    def is_downward_closed(self) -> bool:
        lookup = self._lookup()
        for d in range(1, len(self.faces_by_dim)):
            for f in self.faces_by_dim[d]:
                for i in range(len(f)):
                    if f[:i] + f[i + 1:] not in lookup[d - 1]:
                        return False
        return all(list(level) == sorted(set(level)) for level in self.faces_by_dim)

    def relabel(self, mapping: Mapping[int, int] | Sequence[int], n_vertices: Optional[int] = None) -> "SimplicialComplex":
        n = self.n_vertices if n_vertices is None else n_vertices
        return SimplicialComplex.from_faces(n, (tuple(mapping[v] for v in f) for f in self.faces()), close=False)

    def delete_faces(self, removed: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Remove the given faces (caller keeps the result downward closed)."""
        gone = {tuple(sorted(f)) for f in removed}
        return SimplicialComplex._from_set(self.n_vertices, self.face_set() - gone)

    def induced(self, vertices: Iterable[int]) -> "SimplicialComplex":
        keep = set(vertices)
        return SimplicialComplex._from_set(self.n_vertices, {f for f in self.faces() if keep.issuperset(f)})

    def dump(self) -> str:
        """One face per line, comma separated, dimensions ascending."""
        return "".join(",".join(map(str, f)) + "\n" for f in self.faces())


def build_delta(G: DirectedGraph, max_size: Optional[int] = None) -> SimplicialComplex:
    """The complex of directed forests of ``G``; vertex ``i`` is edge ``i``."""
    levels = _forest_levels(G, max_size)
    return SimplicialComplex(G.n_edges, tuple(tuple(level) for level in levels[1:] if level))


def independence_complex(n: int, conflicts: Iterable[tuple[int, int]]) -> SimplicialComplex:
    """Faces are the vertex sets of ``0..n-1`` containing no conflicting pair."""
    bad = [0] * n
    for a, b in conflicts:
        bad[a] |= 1 << b
        bad[b] |= 1 << a
    found = set()

    def grow(face: list[int], forbidden: int):
        if face:
            found.add(tuple(face))
        start = face[-1] + 1 if face else 0
        for v in range(start, n):
            if not forbidden >> v & 1:
                face.append(v)
                grow(face, forbidden | bad[v])
                face.pop()

    grow([], 0)
    return SimplicialComplex._from_set(n, found)


def l_complex(n: int) -> SimplicialComplex:
    """Independence complex of the path on ``n`` vertices (0-based)."""
    if n < 1:
        raise ValueError("l_complex needs n >= 1")
    return independence_complex(n, [(i, i + 1) for i in range(n - 1)])


def c_complex(n: int) -> SimplicialComplex:
    """Independence complex of the ``n``-cycle (0-based)."""
    if n < 3:
        raise ValueError("c_complex needs n >= 3")
    return independence_complex(n, [(i, (i + 1) % n) for i in range(n)])


def is_pure(K: SimplicialComplex, dim: Optional[int] = None) -> bool:
    """All facets share one dimension (``dim`` if given)."""
    sizes = {len(f) for f in K.facets()}
    if dim is not None:
        return sizes <= {dim + 1} if sizes else dim == -1
    return len(sizes) <= 1


def _spans_tree(G: DirectedGraph, root: int, vertices: frozenset) -> bool:
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in G.out_neighbors(u):
            if w in vertices and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def purity_criterion(G: DirectedGraph) -> bool:
    """True iff the forest complex of ``G`` is pure of full dimension.

    Searches for two vertex-disjoint directed subtrees rooted at ``x1``,
    ``x2`` whose vertex sets contain all in-neighbours of their roots; such
    a pair exists exactly when some maximal forest misses a spanning tree.
    """
    n = G.n_vertices
    if n < 1:
        raise ValueError("purity_criterion needs at least one vertex")
    S = [G.in_neighbors(x) for x in range(n)]
    # candidates[x]: vertex sets of subtrees rooted at x with S(x) inside
    candidates: list[list[frozenset]] = [[] for _ in range(n)]
    for mask in range(1, 1 << n):
        verts = frozenset(v for v in range(n) if mask >> v & 1)
        for x in verts:
            if S[x] <= verts and _spans_tree(G, x, verts):
                candidates[x].append(verts)
    for x1 in range(n):
        for x2 in range(x1 + 1, n):
            for V1 in candidates[x1]:
                if x2 in V1:
                    continue
                for V2 in candidates[x2]:
                    if not V1 & V2:
                        return False
    return True


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join on the disjoint union of vertex sets (``K2`` shifted up)."""
    shift = K1.n_vertices
    A = [()] + list(K1.faces())
    B = [()] + [tuple(v + shift for v in f) for f in K2.faces()]
    faces = {a + b for a, b in product(A, B)}
    faces.discard(())
    return SimplicialComplex._from_set(K1.n_vertices + K2.n_vertices, faces)


def euler_characteristic(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic: ``-1 + sum_d (-1)^d f_d``."""
    return -1 + sum((-1) ** d * c for d, c in enumerate(K.f_vector()))


def point() -> SimplicialComplex:
    return SimplicialComplex(1, (((0,),),))


def sphere0() -> SimplicialComplex:
    return SimplicialComplex(2, (((0,), (1,)),))
