"""Closed-form homotopy types for path/cycle families and the reduction
engine for graphs that are essentially trees.

All predictions are wedges of spheres, so homology is free; a prediction
is a ``{degree: rank}`` map of reduced Betti numbers.  Degree -1 appears
only for the complex ``{emptyset}`` of an edgeless graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .graph import DirectedGraph


@dataclass(frozen=True)
class HomotopyType:
    """A point (``spheres == ()``) or a wedge of spheres of the given dimensions."""

    spheres: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 0 for d in self.spheres):
            raise ValueError("sphere dimensions must be nonnegative")
        object.__setattr__(self, "spheres", tuple(sorted(self.spheres)))

    @classmethod
    def point(cls) -> "HomotopyType":
        return cls(())

    @classmethod
    def wedge(cls, *dims: int) -> "HomotopyType":
        return cls(tuple(dims))

    @property
    def is_point(self) -> bool:
        return not self.spheres

    def betti(self) -> dict[int, int]:
        return dict(Counter(self.spheres))

    def __str__(self) -> str:
        if self.is_point:
            return "point"
        return " v ".join(f"S^{d}" for d in self.spheres)


def l_homotopy(n: int) -> tuple[HomotopyType, Optional[tuple[int, ...]]]:
    """Homotopy type of the path independence complex and its generating simplex.

    The generator uses the 0-based vertices of ``l_complex(n)`` (so the
    1-based ``2, 5, 8, ...`` becomes ``1, 4, 7, ...``); it is ``None`` when
    the complex is contractible.
    """
    if n < 1:
        raise ValueError("l_homotopy needs n >= 1")
    k, r = divmod(n, 3)
    if r == 1:
        return HomotopyType.point(), None
    if r == 0:
        return HomotopyType.wedge(k - 1), tuple(3 * i + 1 for i in range(k))
    return HomotopyType.wedge(k), tuple(3 * i + 1 for i in range(k + 1))


def delta_string_homotopy(n: int) -> HomotopyType:
    if n < 1:
        raise ValueError("delta_string_homotopy needs n >= 1")
    k, r = divmod(n, 3)
    if r == 0:
        return HomotopyType.wedge(2 * k - 1)
    if r == 1:
        return HomotopyType.wedge(2 * k)
    return HomotopyType.point()


def c_homotopy(n: int) -> HomotopyType:
    if n < 3:
        raise ValueError("c_homotopy needs n >= 3")
    k, r = divmod(n, 3)
    if r == 0:
        return HomotopyType.wedge(k - 1, k - 1)
    if r == 1:
        return HomotopyType.wedge(k - 1)
    return HomotopyType.wedge(k)


def delta_cycle_homotopy(n: int) -> HomotopyType:
    if n < 3:
        raise ValueError("delta_cycle_homotopy needs n >= 3")
    k, r = divmod(n, 3)
    if r == 0:
        return HomotopyType.wedge(2 * k - 1, 2 * k - 1, 3 * k - 2, 3 * k - 2)
    if r == 1:
        return HomotopyType.wedge(2 * k, 3 * k - 1, 3 * k - 1)
    return HomotopyType.wedge(2 * k, 3 * k, 3 * k)


def _undirected_components(vertices, edges) -> list[set]:
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, comps = set(), []
    for v in sorted(vertices):
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def is_essentially_tree(G: DirectedGraph) -> bool:
    """Collapsing antiparallel pairs leaves an undirected tree."""
    pairs = {frozenset(e) for e in G.edges}
    if G.n_vertices == 0:
        return False
    if len(pairs) != G.n_vertices - 1:
        return False
    return len(_undirected_components(range(G.n_vertices), G.edges)) == 1


@dataclass
class Reduction:
    """Outcome of the recursive reduction.

    ``betti`` is ``None`` when some subgraph matched no rule; ``steps``
    records the rules applied, outermost first.
    """

    betti: Optional[dict[int, int]]
    steps: list[str] = field(default_factory=list)

    @property
    def irreducible(self) -> bool:
        return self.betti is None


def _shift(h: dict[int, int], by: int = 1, times: int = 1) -> dict[int, int]:
    return {d + by: r * times for d, r in h.items() if r * times}


def _add(*hs: dict[int, int]) -> dict[int, int]:
    out: Counter = Counter()
    for h in hs:
        out.update(h)
    return {d: r for d, r in out.items() if r}


def _join(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    # free reduced homology of a join: degrees add, plus one
    out: Counter = Counter()
    for i, r in a.items():
        for j, s in b.items():
            out[i + j + 1] += r * s
    return {d: r for d, r in out.items() if r}


def _reduce(vertices: frozenset, edges: frozenset, steps: list[str]) -> Optional[dict[int, int]]:
    touched = {v for e in edges for v in e}
    vertices = frozenset(touched)
    if not edges:
        steps.append("empty")
        return {-1: 1}
    comps = _undirected_components(vertices, edges)
    if len(comps) > 1:
        steps.append(f"join({len(comps)})")
        result = {-1: 1}
        for comp in comps:
            h = _reduce(frozenset(comp), frozenset(e for e in edges if e[0] in comp), steps)
            if h is None:
                return None
            result = _join(result, h)
        return result

    ins = {v: {u for u, w in edges if w == v} for v in vertices}
    outs = {v: {w for u, w in edges if u == v} for v in vertices}
    order = sorted(vertices)

    # contractible cone over the edge y -> x
    for x in order:
        if len(ins[x]) == 1 and not outs[x]:
            steps.append(f"t1(x={x})")
            return {}

    # suspension over a doubled leaf
    for x in order:
        if len(ins[x]) == 1 and outs[x] == ins[x]:
            (y,) = ins[x]
            steps.append(f"t2(x={x}, y={y})")
            rest = frozenset(e for e in edges if e != (y, x) and e[1] != y and x not in e)
            h = _reduce(vertices - {x}, rest, steps)
            return None if h is None else _shift(h)

    # leaves x_i -> y, plus one more neighbour z of y
    def leaf_into(x, y):
        return outs[x] == {y} and not ins[x]

    candidates = []
    for y in order:
        nbrs = ins[y] | outs[y]
        X = sorted(x for x in nbrs if leaf_into(x, y))
        others = sorted(nbrs - set(X))
        if not X:
            continue
        if len(others) == 1:
            z = others[0]
        elif not others and len(X) >= 2:
            z = X.pop()
        else:
            continue
        down, up = z in outs[y], z in ins[y]
        case = "c" if down and up else ("a" if down else "b")
        candidates.append((case, y, X, z))

    for wanted in "abc":
        for case, y, X, z in candidates:
            if case != wanted:
                continue
            k = len(X)
            Xs = set(X)
            tilde_V = vertices - Xs
            tilde_E = frozenset(e for e in edges if e[0] not in Xs and e != (z, y))
            prime_V = vertices - Xs - {y}
            prime_E = frozenset(e for e in edges if e[0] in prime_V and e[1] in prime_V)
            steps.append(f"t3{case}(y={y}, z={z}, k={k})")
            if case == "a":
                h = _reduce(tilde_V, tilde_E, steps)
                return None if h is None else _shift(h, times=k - 1)
            if case == "b":
                h = _reduce(prime_V, prime_E, steps)
                return None if h is None else _shift(h, times=k)
            h1 = _reduce(prime_V, prime_E, steps)
            if h1 is None:
                return None
            if k == 1:
                return _shift(h1)
            h2 = _reduce(tilde_V, tilde_E, steps)
            if h2 is None:
                return None
            return _add(_shift(h1), _shift(h2, times=k - 1))

    steps.append("irreducible")
    return None


def reduce_essential_tree(G: DirectedGraph) -> Reduction:
    """Reduced Betti numbers of the forest complex of an essentially-tree graph."""
    if not is_essentially_tree(G):
        raise ValueError("graph is not essentially a tree")
    steps: list[str] = []
    if G.n_vertices == 1:
        return Reduction({-1: 1}, ["empty"])
    h = _reduce(frozenset(range(G.n_vertices)), frozenset(G.edges), steps)
    return Reduction(h, steps)
