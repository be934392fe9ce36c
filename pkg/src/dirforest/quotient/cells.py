"""Cell structure and integer homology of the quotient of the forest complex of G_n by S_n.

A cell is an edge-labelled forest on ``n`` unlabelled vertices, labels
onto ``1..p+1`` (a ``p``-cell), up to isomorphism.  Reading the labels as
the flag ``{label <= 1} < {label <= 2} < ...`` of forests, the boundary
drops one member of the flag:

* merging labels ``i`` and ``i+1`` (``1 <= i <= p``) has sign ``(-1)^(p+i+1)``;
* deleting the edges with the top label ``p+1`` has sign ``+1``.

The empty forest is the single cell of degree -1, so homology is reduced.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from ..homology import ChainComplexZ, HomologyGroup, homology
from .forests import LabeledForest, canonical_form, unlabeled_forests
from .symmetry import GuardExceeded

MAX_QUOTIENT_N = 7


def _set_partitions(k: int):
    """Restricted growth strings of length ``k``."""
    if k == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()

    yield from rec([0], 0)


@lru_cache(maxsize=None)
def surjective_labelings(k: int) -> tuple[tuple[int, ...], ...]:
    """All maps ``{0..k-1} -> {1..m}`` onto an initial segment (ordered set partitions)."""
    out = []
    for rgs in _set_partitions(k):
        m = max(rgs) + 1 if rgs else 0
        for perm in permutations(range(1, m + 1)):
            out.append(tuple(perm[b] for b in rgs))
    return tuple(sorted(out))


def empty_cell(n: int) -> LabeledForest:
    return LabeledForest(n, ((),) * n)


def enumerate_cells(n: int) -> dict[int, list[LabeledForest]]:
    """``{p: sorted p-cells}`` for ``p >= 0``."""
    if n < 2:
        raise ValueError("enumerate_cells needs n >= 2")
    found: dict[int, set] = defaultdict(set)
    for T in unlabeled_forests(n):
        if T.k == 0:
            continue
        R = T.realize()
        for lab in surjective_labelings(T.k):
            found[max(lab) - 1].add(canonical_form(n, R.edges, lab))
    return {p: sorted(found[p]) for p in sorted(found)}


def boundary_terms(n: int, edges: Sequence[tuple[int, int]], labels: Sequence[int]) -> dict[LabeledForest, int]:
    """Signed faces of the cell represented by a concrete labelled forest."""
    levels = sorted(set(labels))
    rank = {v: i + 1 for i, v in enumerate(levels)}
    labels = [rank[x] for x in labels]
    p = len(levels) - 1
    out: dict[LabeledForest, int] = defaultdict(int)
    for i in range(1, p + 1):
        merged = [x if x <= i else x - 1 for x in labels]
        out[canonical_form(n, edges, merged)] += (-1) ** (p + i + 1)
    keep = [j for j, x in enumerate(labels) if x <= p]
    out[canonical_form(n, [edges[j] for j in keep], [labels[j] for j in keep])] += 1
    return {c: v for c, v in out.items() if v}


def boundary_cell(c: LabeledForest) -> dict[LabeledForest, int]:
    if c.dim < 0:
        return {}
    R = c.realize()
    return boundary_terms(c.n, R.edges, R.labels)


def x_chain_complex(n: int, override: bool = False, max_cells: Optional[int] = None) -> ChainComplexZ:
    """Cellular chain complex in degrees ``-1 .. n-2``; ``basis`` lists the cells."""
    if n > MAX_QUOTIENT_N and not override:
        raise GuardExceeded(f"n={n} exceeds the quotient guard of {MAX_QUOTIENT_N}")
    cells = enumerate_cells(n)
    total = 1 + sum(len(v) for v in cells.values())
    if max_cells is not None and total > max_cells:
        raise GuardExceeded(f"{total} cells exceed the limit of {max_cells}")
    levels = [[empty_cell(n)]] + [cells.get(p, []) for p in range(n - 1)]
    index = [{c: i for i, c in enumerate(level)} for level in levels]
    mats = []
    for d in range(1, len(levels)):
        rows, cols, vals = [], [], []
        for j, c in enumerate(levels[d]):
            for face, coeff in boundary_cell(c).items():
                rows.append(index[d - 1][face])
                cols.append(j)
                vals.append(coeff)
        mats.append(sp.csc_array((vals, (rows, cols)), shape=(len(levels[d - 1]), len(levels[d])), dtype=np.int64))
    return ChainComplexZ([len(level) for level in levels], mats, -1, levels)


def x_homology(n: int, override: bool = False) -> list[HomologyGroup]:
    """Reduced integer homology of the quotient, from its cells directly."""
    return homology(x_chain_complex(n, override))


def dump_cells(n: int) -> str:
    """One line ``dim | canonical_string`` per cell, the empty cell first."""
    lines = [f"-1 | {empty_cell(n).string}"]
    for p, level in enumerate_cells(n).items():
        lines.extend(f"{p} | {c.string}" for c in level)
    return "\n".join(lines) + "\n"
