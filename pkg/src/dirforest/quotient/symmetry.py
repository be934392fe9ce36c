"""Edge symmetry groups of forests, admissibility and the counts f_{k,n}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Optional

from .forests import ConcreteForest, UnlabeledForest, unlabeled_forests

MAX_SYMMETRY_EDGES = 8
MAX_FTABLE_N = 8


class GuardExceeded(ValueError):
    """A combinatorial size guard was hit; pass ``override=True`` to go on."""


def perm_sign(p: Iterable[int]) -> int:
    p = list(p)
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """``(p o q)(i) = p[q[i]]``."""
    return tuple(p[i] for i in q)


def inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Nontrivial cycles of a permutation."""
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class EdgeSymmetryGroup:
    """Permutations of edge positions ``0..k-1`` induced by forest automorphisms.

    Element ``s`` sends the edge at position ``i`` to position ``s[i]``.
    """

    k: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_group(self) -> bool:
        ident = tuple(range(self.k))
        if ident not in self.elements:
            return False
        return all(compose(a, b) in self.elements for a in self.elements for b in self.elements) and all(
            inverse(a) in self.elements for a in self.elements
        )

    def all_even(self) -> bool:
        return all(perm_sign(s) == 1 for s in self.elements)

    def stabilizer(self, i: int) -> list[tuple[int, ...]]:
        return [s for s in self.elements if s[i] == i]

    def orbits(self) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for i in range(self.k):
            if i in seen:
                continue
            orb = tuple(sorted({s[i] for s in self.elements}))
            seen.update(orb)
            out.append(orb)
        return out


def _automorphisms(forest: ConcreteForest) -> list[dict[int, int]]:
    """Vertex automorphisms of a realised canonical forest.

    Children of every vertex (and the roots) are grouped by subtree code;
    subtrees in a group have identical preorder layouts, so the canonical
    isomorphism between two of them matches preorder positions.  The group
    is the product of per-subtree automorphisms and of permutations inside
    each group of isomorphic siblings.
    """
    n = forest.n
    kids: list[list[int]] = [[] for _ in range(n)]
    has_parent = [False] * n
    for u, v in forest.edges:
        kids[u].append(v)
        has_parent[v] = True
    roots = [v for v in range(n) if not has_parent[v]]
    pre: dict[int, list[int]] = {}
    code: dict[int, tuple] = {}

    def layout(v):
        order = [v]
        for c in kids[v]:
            layout(c)
            order.extend(pre[c])
        pre[v] = order
        code[v] = tuple(sorted(code[c] for c in kids[v]))

    for r in roots:
        layout(r)

    def sibling_auts(siblings: list[int]) -> list[dict[int, int]]:
        groups: dict[tuple, list[int]] = {}
        for c in siblings:
            groups.setdefault(code[c], []).append(c)
        per_child = {c: auts(c) for c in siblings}
        options = []
        for members in groups.values():
            choices = []
            for target in permutations(members):
                for alphas in product(*(per_child[c] for c in members)):
                    m = {}
                    for src, dst, alpha in zip(members, target, alphas):
                        pos = {x: i for i, x in enumerate(pre[src])}
                        for x in pre[src]:
                            m[x] = pre[dst][pos[alpha[x]]]
                    choices.append(m)
            options.append(choices)
        out = []
        for combo in product(*options):
            m = {}
            for part in combo:
                m.update(part)
            out.append(m)
        return out

    @lru_cache(maxsize=None)
    def _auts_cached(v):
        return tuple(tuple(sorted(m.items())) for m in [{v: v, **m} for m in sibling_auts(kids[v])])

    def auts(v) -> list[dict[int, int]]:
        return [dict(items) for items in _auts_cached(v)]

    return sibling_auts(roots)


def forest_symmetry_group(T: UnlabeledForest | ConcreteForest, override: bool = False) -> EdgeSymmetryGroup:
    """Image of the automorphism group on edges, relative to the realised edge order."""
    forest = T.realize() if isinstance(T, UnlabeledForest) else T
    if forest.k > MAX_SYMMETRY_EDGES and not override:
        raise GuardExceeded(f"{forest.k} edges exceed the symmetry guard of {MAX_SYMMETRY_EDGES}")
    pos_of_child = {v: i for i, (_, v) in enumerate(forest.edges)}
    elements = set()
    for m in _automorphisms(forest):
        elements.add(tuple(pos_of_child[m[v]] for _, v in forest.edges))
    return EdgeSymmetryGroup(forest.k, frozenset(elements))


def brute_force_symmetry_group(forest: ConcreteForest) -> EdgeSymmetryGroup:
    """Same group by trying every vertex permutation (tiny forests only)."""
    edges = set(forest.edges)
    pos = {e: i for i, e in enumerate(forest.edges)}
    elements = set()
    for sigma in permutations(range(forest.n)):
        image = [(sigma[u], sigma[v]) for u, v in forest.edges]
        if set(image) == edges:
            elements.add(tuple(pos[e] for e in image))
    return EdgeSymmetryGroup(forest.k, frozenset(elements))


@lru_cache(maxsize=None)
def _admissible_code(n: int, code: tuple, override: bool) -> bool:
    return forest_symmetry_group(UnlabeledForest(n, code), override).all_even()


def is_admissible(T: UnlabeledForest, override: bool = False) -> bool:
    """Every edge symmetry of ``T`` is an even permutation."""
    return _admissible_code(T.n, T.code, override)


def f_table(n_max: int, override: bool = False) -> dict[tuple[int, int], int]:
    """``{(k, n): number of admissible forests with k edges on n vertices}``.

    Covers ``1 <= n <= n_max`` and ``1 <= k <= n_max - 1``; entries with
    ``k >= n`` are zero.
    """
    if n_max > MAX_FTABLE_N and not override:
        raise GuardExceeded(f"n_max={n_max} exceeds the guard of {MAX_FTABLE_N}")
    table = {}
    for n in range(1, n_max + 1):
        for k in range(1, max(n_max, 2)):
            if k >= n:
                table[(k, n)] = 0
            else:
                table[(k, n)] = sum(1 for T in unlabeled_forests(n, k) if is_admissible(T, override))
    return table


def format_f_table(table: dict[tuple[int, int], int]) -> str:
    ks = sorted({k for k, _ in table})
    ns = sorted({n for _, n in table})
    lines = ["k\\n " + " ".join(f"{n:>4}" for n in ns)]
    for k in ks:
        lines.append(f"{k:>3} " + " ".join(f"{table[(k, n)]:>4}" for n in ns))
    return "\n".join(lines)
