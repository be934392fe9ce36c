"""Directed graphs and their directed-forest edge subsets.

Edges are identified by their position in ``DirectedGraph.edges``; every
face of a forest complex is a sorted tuple of such indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence


class GraphFormatError(ValueError):
    """Malformed graph text or an edge list violating the graph invariants."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class DirectedGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        index = {}
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphFormatError(f"edge ({u}, {v}) has a vertex out of range")
            if (u, v) in index:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            index[(u, v)] = i
        object.__setattr__(self, "_index", index)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        return self._index[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._index

    def in_neighbors(self, x: int) -> set[int]:
        """S(x): the sources of all edges pointing into ``x``."""
        return {u for u, v in self.edges if v == x}

    def out_neighbors(self, x: int) -> set[int]:
        return {v for u, v in self.edges if u == x}

    def same_edges(self, other: "DirectedGraph") -> bool:
        return self.n_vertices == other.n_vertices and set(self.edges) == set(other.edges)

    def disjoint_union(self, other: "DirectedGraph") -> "DirectedGraph":
        shift = self.n_vertices
        edges = self.edges + tuple((u + shift, v + shift) for u, v in other.edges)
        return DirectedGraph(self.n_vertices + other.n_vertices, edges)


def parse_graph(text: str) -> DirectedGraph:
    """Parse the plain-text graph format.

    The first meaningful line holds the vertex count, every further line
    ``u v`` a directed edge ``u -> v``. Blank lines and lines starting with
    ``#`` are skipped. Edge indices follow line order.
    """
    n_vertices = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n_vertices is None:
            if len(parts) != 1:
                raise GraphFormatError("expected the vertex count", lineno)
            try:
                n_vertices = int(parts[0])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {parts[0]!r}", lineno) from None
            if n_vertices < 0:
                raise GraphFormatError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {line!r}", lineno) from None
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise GraphFormatError(f"vertex out of range in {line!r}", lineno)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
    if n_vertices is None:
        raise GraphFormatError("empty graph file")
    return DirectedGraph(n_vertices, tuple(edges))


def format_graph(G: DirectedGraph) -> str:
    return "\n".join([str(G.n_vertices)] + [f"{u} {v}" for u, v in G.edges]) + "\n"


def complete_double_graph(n: int) -> DirectedGraph:
    """G_n: one edge in each direction between every pair, lexicographic order."""
    if n < 1:
        raise ValueError("complete_double_graph needs n >= 1")
    edges = [(i, j) for i in range(n) for j in range(n) if i != j]
    return DirectedGraph(n, tuple(edges))


def double_cycle_graph(n: int) -> DirectedGraph:
    if n < 3:
        raise ValueError("double_cycle_graph needs n >= 3")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append(((i + 1) % n, i))
    return DirectedGraph(n, tuple(edges))


def double_string_graph(n: int) -> DirectedGraph:
    """L_n on vertices 0..n with both orientations of every path edge."""
    if n < 1:
        raise ValueError("double_string_graph needs n >= 1")
    edges = []
    for i in range(n):
        edges.append((i, i + 1))
        edges.append((i + 1, i))
    return DirectedGraph(n + 1, tuple(edges))


def string_with_tail(n: int) -> DirectedGraph:
    """L_n plus one extra vertex n+1 with a single edge n+1 -> n."""
    if n < 1:
        raise ValueError("string_with_tail needs n >= 1")
    base = double_string_graph(n)
    return DirectedGraph(n + 2, base.edges + ((n + 1, n),))


def is_directed_forest(G: DirectedGraph, subset: Sequence[int]) -> bool:
    """In-degree at most one everywhere and no undirected cycle."""
    has_parent = [False] * G.n_vertices
    parent = list(range(G.n_vertices))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in subset:
        u, v = G.edges[e]
        if has_parent[v]:
            return False
        has_parent[v] = True
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def enumerate_forest_subsets(G: DirectedGraph, max_size: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Yield every directed-forest edge subset of ``G``, including the empty one.

    Subsets come grouped by size; within a size they are in lexicographic
    order of the sorted index tuples.
    """
    levels = _forest_levels(G, max_size)
    for level in levels:
        yield from level


def _forest_levels(G: DirectedGraph, max_size: Optional[int]) -> list[list[tuple[int, ...]]]:
    # Depth-first extension in increasing index order; a subset is only
    # extended while it is still a forest, which is exact because the
    # forest property is closed under taking subsets.
    limit = max(G.n_vertices - 1, 0)
    if max_size is not None:
        limit = min(limit, max_size)
    levels: list[list[tuple[int, ...]]] = [[] for _ in range(limit + 1)]
    m = G.n_edges
    heads = [v for _, v in G.edges]
    tails = [u for u, _ in G.edges]

    def extend(current: list[int], has_parent: int, comp: list[int]):
        levels[len(current)].append(tuple(current))
        if len(current) == limit:
            return
        start = current[-1] + 1 if current else 0
        for e in range(start, m):
            u, v = tails[e], heads[e]
            if has_parent >> v & 1:
                continue
            cu, cv = comp[u], comp[v]
            if cu == cv:
                continue
            merged = [cv if c == cu else c for c in comp]
            current.append(e)
            extend(current, has_parent | (1 << v), merged)
            current.pop()

    extend([], 0, list(range(G.n_vertices)))
    for level in levels:
        level.sort()
    return levels
