"""Isomorphism classes of (edge-labelled) directed forests on unlabelled vertices.

A rooted tree is encoded recursively as the sorted tuple of
``(edge_label, child_code)`` pairs; a forest is the sorted tuple of its
tree codes.  Unlabelled forests use edge label 0.  Two forests get the
same code exactly when they are isomorphic (with labels matched after
normalising them to ``1..p+1`` in order).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence


class NotAForest(ValueError):
    pass


def _code_size(code) -> int:
    return 1 + sum(_code_size(child) for _, child in code)


def _code_string(code, labelled: bool) -> str:
    inner = "".join((str(lab) if labelled else "") + _code_string(child, labelled) for lab, child in code)
    return "(" + inner + ")"


@dataclass(frozen=True, order=True)
class UnlabeledForest:
    n: int
    code: tuple

    @property
    def k(self) -> int:
        return self.n - len(self.code)

    @property
    def string(self) -> str:
        return "".join(_code_string(t, False) for t in self.code)

    def realize(self) -> "ConcreteForest":
        return realize(self.n, self.code)


@dataclass(frozen=True, order=True)
class LabeledForest:
    n: int
    code: tuple

    @property
    def k(self) -> int:
        return self.n - len(self.code)

    @property
    def n_labels(self) -> int:
        return len(_labels_in(self.code))

    @property
    def dim(self) -> int:
        """Cell dimension: number of distinct labels minus one."""
        return self.n_labels - 1

    @property
    def string(self) -> str:
        return "".join(_code_string(t, True) for t in self.code)

    @property
    def base(self) -> UnlabeledForest:
        return UnlabeledForest(self.n, _strip(self.code))

    def realize(self) -> "ConcreteForest":
        return realize(self.n, self.code)


def _labels_in(code) -> set:
    out = set()
    for tree in code:
        stack = [tree]
        while stack:
            node = stack.pop()
            for lab, child in node:
                out.add(lab)
                stack.append(child)
    return out


def _strip_tree(node):
    return tuple(sorted((0, _strip_tree(child)) for _, child in node))


def _strip(code):
    return tuple(sorted(_strip_tree(t) for t in code))


@dataclass(frozen=True)
class ConcreteForest:
    """A forest on vertices ``0..n-1``; edge ``i`` is ``edges[i]`` with label ``labels[i]``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.edges)

    def without_edges(self, drop: Sequence[int]) -> "ConcreteForest":
        drop = set(drop)
        keep = [i for i in range(self.k) if i not in drop]
        return ConcreteForest(self.n, tuple(self.edges[i] for i in keep), tuple(self.labels[i] for i in keep))


def _children(n: int, edges, labels):
    parent = [-1] * n
    kids: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), lab in zip(edges, labels):
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise NotAForest(f"bad edge ({u}, {v})")
        if parent[v] != -1:
            raise NotAForest(f"vertex {v} has two incoming edges")
        parent[v] = u
        kids[u].append((lab, v))
    roots = [v for v in range(n) if parent[v] == -1]
    # every vertex must hang below a root, otherwise there is a cycle
    reached = 0
    stack = list(roots)
    while stack:
        v = stack.pop()
        reached += 1
        stack.extend(c for _, c in kids[v])
    if reached != n:
        raise NotAForest("edges contain a cycle")
    return roots, kids


def _normalize(labels: Sequence[int]) -> tuple[int, ...]:
    rank = {v: i + 1 for i, v in enumerate(sorted(set(labels)))}
    return tuple(rank[x] for x in labels)


def canonical_layout(n: int, edges, labels: Optional[Sequence[int]] = None):
    """Canonical code together with a canonical vertex order.

    Returns ``(code, preorder, edge_order)``: ``preorder`` lists the
    vertices in the order a realisation of ``code`` would number them, and
    ``edge_order`` lists the indices of ``edges`` in realisation order.
    """
    labels = _normalize(labels) if labels is not None else (0,) * len(edges)
    roots, kids = _children(n, edges, labels)
    eidx = {v: i for i, (_, v) in enumerate(edges)}
    enc: dict[int, tuple] = {}

    def encode(v):
        order = []
        stack = [(v, False)]
        while stack:
            x, done = stack.pop()
            if done:
                enc[x] = tuple(sorted((lab, enc[c]) for lab, c in kids[x]))
            else:
                stack.append((x, True))
                stack.extend((c, False) for _, c in kids[x])
        return enc[v]

    for r in roots:
        encode(r)
    ordered_roots = sorted(roots, key=lambda r: enc[r])
    code = tuple(enc[r] for r in ordered_roots)
    preorder: list[int] = []
    edge_order: list[int] = []

    def walk(v):
        preorder.append(v)
        for lab, c in sorted(kids[v], key=lambda lc: (lc[0], enc[lc[1]])):
            edge_order.append(eidx[c])
            walk(c)

    for r in ordered_roots:
        walk(r)
    return code, preorder, edge_order


def canonical_form(n: int, edges, labels: Optional[Sequence[int]] = None):
    """Canonical ``UnlabeledForest`` (no labels) or ``LabeledForest``."""
    code, _, _ = canonical_layout(n, edges, labels)
    if labels is None:
        return UnlabeledForest(n, code)
    return LabeledForest(n, code)


def realize(n: int, code) -> ConcreteForest:
    """The canonical representative: vertices in preorder, edges in discovery order."""
    edges: list[tuple[int, int]] = []
    labels: list[int] = []
    counter = [0]

    def build(node):
        v = counter[0]
        counter[0] += 1
        for lab, child in node:
            c = counter[0]
            edges.append((v, c))
            labels.append(lab)
            build(child)
        return v

    for tree in code:
        build(tree)
    if counter[0] != n:
        raise ValueError(f"code describes {counter[0]} vertices, expected {n}")
    return ConcreteForest(n, tuple(edges), tuple(labels))


@lru_cache(maxsize=None)
def rooted_tree_codes(m: int) -> tuple:
    """Codes of all unlabelled rooted trees with ``m`` vertices."""
    if m < 1:
        return ()
    return tuple(sorted({tuple(sorted((0, t) for t in f)) for f in forest_codes(m - 1)}))


@lru_cache(maxsize=None)
def forest_codes(n: int) -> tuple:
    """Codes of all unlabelled rooted forests with ``n`` vertices."""
    if n == 0:
        return ((),)
    trees = [(t, s) for s in range(1, n + 1) for t in rooted_tree_codes(s)]
    trees.sort()
    out = []

    def rec(start: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(trees)):
            t, s = trees[i]
            if s <= remaining:
                acc.append(t)
                rec(i, remaining - s, acc)
                acc.pop()

    rec(0, n, [])
    return tuple(sorted(out))


def unlabeled_forests(n: int, k: Optional[int] = None) -> list[UnlabeledForest]:
    """All forests on ``n`` unlabelled vertices (with exactly ``k`` edges if given)."""
    out = [UnlabeledForest(n, c) for c in forest_codes(n)]
    if k is not None:
        out = [f for f in out if f.k == k]
    return sorted(out, key=lambda f: (f.k, f.code))
