"""First page of the spectral sequence of the edge-count filtration of the quotient.

``F_k`` is spanned by the cells whose forest has at most ``k`` edges.  The
first page splits over forests ``T`` as the homology of ``E_T``: the
labellings of ``T`` up to its edge symmetries, with the boundary that only
merges labels.  When every ``E_T`` is concentrated in degree ``|E(T)|-1``
(free of rank one for admissible ``T``, zero otherwise) the whole homology
of the quotient is the homology of the single complex ``(E^1, d^1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
import scipy.sparse as sp

from ..homology import ChainComplexZ, HomologyGroup, direct_sum, homology
from .cells import MAX_QUOTIENT_N, surjective_labelings, x_chain_complex
from .forests import UnlabeledForest, canonical_layout, canonical_form, unlabeled_forests
from .symmetry import GuardExceeded, forest_symmetry_group, is_admissible, perm_sign


class DiagonalHypothesisError(RuntimeError):
    """Some ``E_T`` has integer homology off its top degree, so d^1 alone does not decide the answer."""


def orbit_representative(labels: tuple[int, ...], elements) -> tuple[int, ...]:
    return min(tuple(labels[s[i]] for i in range(len(labels))) for s in elements)


def e_t_complex(T: UnlabeledForest, override: bool = False) -> ChainComplexZ:
    """Chain complex of symmetry classes of labellings of ``T`` under label merging.

    Degree ``p`` is spanned by classes of labellings onto ``1..p+1``,
    named by their lexicographically least member (positions follow the
    realised edge order).  The edgeless forest gives one generator in
    degree -1.
    """
    k = T.k
    if k == 0:
        return ChainComplexZ([1], [], -1, [[()]])
    G = forest_symmetry_group(T, override)
    reps: list[set] = [set() for _ in range(k)]
    for lab in surjective_labelings(k):
        reps[max(lab) - 1].add(orbit_representative(lab, G.elements))
    levels = [sorted(r) for r in reps]
    index = [{c: i for i, c in enumerate(level)} for level in levels]
    mats = []
    for p in range(1, k):
        rows, cols, vals = [], [], []
        for j, lab in enumerate(levels[p]):
            for i in range(1, p + 1):
                merged = tuple(x if x <= i else x - 1 for x in lab)
                rows.append(index[p - 1][orbit_representative(merged, G.elements)])
                cols.append(j)
                vals.append((-1) ** (p + i + 1))
        mats.append(sp.csc_array((vals, (rows, cols)), shape=(len(levels[p - 1]), len(levels[p])), dtype=np.int64))
    return ChainComplexZ([len(level) for level in levels], mats, 0, levels)


def e_t_homology(T: UnlabeledForest, override: bool = False) -> list[HomologyGroup]:
    """Unreduced homology of ``E_T`` in degrees ``0 .. k-1``."""
    return list(_e_t_homology(T, override))


@lru_cache(maxsize=None)
def _e_t_homology(T: UnlabeledForest, override: bool) -> tuple[HomologyGroup, ...]:
    return tuple(homology(e_t_complex(T, override)))


def two_path_forest() -> UnlabeledForest:
    """Two disjoint directed paths with three edges each (8 vertices, 6 edges)."""
    edges = [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]
    return canonical_form(8, edges)


def _concentrated(T: UnlabeledForest, groups: list[HomologyGroup]) -> bool:
    top = T.k - 1
    for g in groups:
        if g.degree == top and is_admissible(T):
            if g.betti != 1 or g.torsion:
                return False
        elif not g.is_zero:
            return False
    return True


@dataclass
class E1Page:
    """Generators ``e_T`` (admissible forests with ``k`` edges, degree ``k-1``) and the matrices of d^1.

    ``d1[k]`` maps the generators of ``basis[k]`` to those of ``basis[k-1]``.
    ``offending`` lists forests whose ``E_T`` is not concentrated (``None``
    when that was not checked).
    """

    n: int
    basis: dict[int, list[UnlabeledForest]]
    d1: dict[int, sp.csc_array]
    offending: Optional[list[UnlabeledForest]]

    @property
    def diagonal(self) -> bool:
        return self.offending == []

    def complex(self) -> ChainComplexZ:
        ks = range(0, self.n)
        return ChainComplexZ(
            [len(self.basis[k]) for k in ks], [self.d1[k] for k in ks if k >= 1], -1, [self.basis[k] for k in ks]
        )

    def dump(self) -> str:
        """Sparse triplets ``row_forest col_forest value``, one block per ``k``."""
        lines = []
        for k in range(1, self.n):
            coo = sp.coo_array(self.d1[k])
            lines.append(f"# d1: k={k} -> k={k - 1}, shape {coo.shape[0]}x{coo.shape[1]}")
            for i, j, v in sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())):
                lines.append(f"{self.basis[k - 1][i].string or '.'} {self.basis[k][j].string} {v}")
        return "\n".join(lines) + "\n"


def d1_terms(T: UnlabeledForest, override: bool = False) -> dict[UnlabeledForest, int]:
    """``d^1(e_T)`` as a combination of ``e_U`` for admissible ``T``.

    One term per symmetry orbit of edges ``a`` with ``U = T - a``
    admissible.  The sign compares the edge order of ``T`` with the order
    "edges of ``U`` in its own realised order, then ``a``"; the multiplicity
    is ``|S(U)|`` over the order of the subgroup of ``S(T)`` fixing ``a``.
    """
    if not is_admissible(T, override):
        raise ValueError("d1 is only defined on admissible forests")
    R = T.realize()
    k = T.k
    G = forest_symmetry_group(T, override)
    out: dict[UnlabeledForest, int] = {}
    for orbit in G.orbits():
        a = orbit[0]
        rest = [j for j in range(k) if j != a]
        code, _, order = canonical_layout(T.n, [R.edges[j] for j in rest])
        U = UnlabeledForest(T.n, code)
        if not is_admissible(U, override):
            continue
        new_pos = [0] * k
        for j, idx in enumerate(order):
            new_pos[rest[idx]] = j
        new_pos[a] = k - 1
        sign = perm_sign(new_pos)
        su = forest_symmetry_group(U, override).order
        fix = len(G.stabilizer(a))
        if su % fix:
            raise AssertionError(f"stabiliser order {fix} does not divide |S(U)|={su}")
        out[U] = out.get(U, 0) + sign * (su // fix)
    return {U: c for U, c in out.items() if c}


def d1_page(n: int, override: bool = False, check_diagonal: bool = True) -> E1Page:
    if n > MAX_QUOTIENT_N and not override:
        raise GuardExceeded(f"n={n} exceeds the quotient guard of {MAX_QUOTIENT_N}")
    if n < 2:
        raise ValueError("d1_page needs n >= 2")
    forests = unlabeled_forests(n)
    offending = None
    if check_diagonal:
        offending = [T for T in forests if T.k >= 1 and not _concentrated(T, e_t_homology(T, override))]
    basis = {k: [T for T in forests if T.k == k and is_admissible(T, override)] for k in range(n)}
    d1 = {}
    for k in range(1, n):
        index = {U: i for i, U in enumerate(basis[k - 1])}
        rows, cols, vals = [], [], []
        for j, T in enumerate(basis[k]):
            for U, c in d1_terms(T, override).items():
                rows.append(index[U])
                cols.append(j)
                vals.append(c)
        d1[k] = sp.csc_array((vals, (rows, cols)), shape=(len(basis[k - 1]), len(basis[k])), dtype=np.int64)
    return E1Page(n, basis, d1, offending)


def e1_homology(n: int, override: bool = False, page: Optional[E1Page] = None) -> list[HomologyGroup]:
    """Reduced homology of the quotient read off the first page (degrees ``-1 .. n-2``)."""
    page = page or d1_page(n, override)
    if page.offending is None:
        raise DiagonalHypothesisError("the page was built without checking that every E_T is concentrated")
    if not page.diagonal:
        names = ", ".join(T.string for T in page.offending[:5])
        raise DiagonalHypothesisError(f"E_T not concentrated in top degree for: {names}")
    return homology(page.complex())


def e1_entry_oracle(n: int, p: int, k: int, X: Optional[ChainComplexZ] = None) -> tuple[HomologyGroup, HomologyGroup]:
    """``H_p(F_k, F_{k-1})`` from the filtered cell complex, and ``sum_T H_p(E_T)`` over forests with ``k`` edges.

    ``X`` may be a prebuilt ``x_chain_complex(n)`` to share across calls.
    """
    if n > 6:
        raise GuardExceeded("the first-page oracle is limited to n <= 6")
    X = X if X is not None else x_chain_complex(n)
    lo = X.min_degree
    upto = {d: [i for i, c in enumerate(X.basis[d - lo]) if c.k <= k] for d in range(lo, X.max_degree + 1)}
    exact = {d: [i for i, c in enumerate(X.basis[d - lo]) if c.k == k] for d in range(lo, X.max_degree + 1)}
    F = X.restrict(upto)
    # indices into the restricted basis
    pos = {d: {old: new for new, old in enumerate(upto[d])} for d in upto}
    rel = F.subquotient({d: [pos[d][i] for i in exact[d]] for d in exact})
    filtered = homology(rel, [p])[0]
    parts = []
    for T in unlabeled_forests(n, k):
        parts.extend(g for g in e_t_homology(T) if g.degree == p)
    return filtered, direct_sum(p, parts)
