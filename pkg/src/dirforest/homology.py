"""Exact integer chain complexes, Smith normal form and homology.

Boundary matrices are kept as ``scipy.sparse`` integer arrays; all
elimination happens on Python integers so nothing can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
import scipy.sparse as sp


class BoundaryError(ValueError):
    """A chain complex whose consecutive boundaries do not compose to zero."""


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def to_json(self) -> dict:
        return {"degree": self.degree, "betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z_{c}" for c in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SnfResult:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular (object arrays of ints)."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]


def _dense_snf(A: list[list[int]], m: int, n: int, track: bool):
    """In-place Smith reduction of an ``m x n`` list-of-lists matrix.

    Returns ``(diag, U, V)``; ``U`` and ``V`` are ``None`` unless ``track``.
    """
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        rs, rd = A[src], A[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if track:
            us, ud = U[src], U[dst]
            for c in range(m):
                if us[c]:
                    ud[c] += q * us[c]

    def add_col(dst, src, q):
        for row in A:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    diag = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        clean = False
            if not clean:
                # a smaller remainder appeared in row or column t; move it to the pivot
                best = (abs(A[t][t]), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
    return diag, U, V


def smith_normal_form(A) -> SnfResult:
    """Smith normal form with unimodular transforms, exact over Python ints."""
    arr = np.asarray(A.toarray() if sp.issparse(A) else A, dtype=object)
    if arr.ndim != 2:
        raise ValueError("smith_normal_form expects a 2-d matrix")
    m, n = arr.shape
    work = [[int(x) for x in arr[i]] for i in range(m)]
    _, U, V = _dense_snf(work, m, n, track=True)
    D = np.array(work, dtype=object).reshape(m, n)
    return SnfResult(np.array(U, dtype=object).reshape(m, m), D, np.array(V, dtype=object).reshape(n, n))


def _chain_normalize(entries: Iterable[int]) -> list[int]:
    """Turn arbitrary nonzero diagonal entries into a divisibility chain."""
    entries = [abs(x) for x in entries if x]
    ones = [x for x in entries if x == 1]
    d = sorted(x for x in entries if x != 1)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            if b % a:
                g = gcd(a, b)
                d[i], d[j] = g, a // g * b
    return ones + sorted(d)


def smith_invariants(A) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    Sparse elimination first: any entry dividing its whole row and column is
    split off unimodularly (units preferred, short rows/columns preferred).
    Whatever survives is finished by the dense algorithm.
    """
    if sp.issparse(A):
        coo = sp.coo_array(A)
        triples = zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())
    else:
        arr = np.asarray(A, dtype=object)
        if arr.size == 0:
            return []
        nz = np.nonzero(arr)
        triples = ((int(i), int(j), int(arr[i, j])) for i, j in zip(*nz))
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, dict[int, int]] = {}
    for i, j, a in triples:
        a = int(a)
        if not a:
            continue
        col = cols.setdefault(j, {})
        col[i] = col.get(i, 0) + a
        rows.setdefault(i, {})[j] = col[i]
    for j in list(cols):
        for i in [i for i, a in cols[j].items() if a == 0]:
            del cols[j][i]
            del rows[i][j]
        if not cols[j]:
            del cols[j]

    diag: list[int] = []

    def pivot(r: int, c: int):
        a = cols[c][r]
        pr = cols.pop(c)
        for j in list(rows[r]):
            if j == c:
                continue
            colj = cols[j]
            q = colj[r] // a
            for i, v in pr.items():
                w = colj.get(i, 0) - q * v
                if w:
                    colj[i] = w
                    rows[i][j] = w
                else:
                    colj.pop(i, None)
                    rows[i].pop(j, None)
            if not colj:
                del cols[j]
        for i in pr:
            rows[i].pop(c, None)
            if not rows[i]:
                del rows[i]
        rows.pop(r, None)
        diag.append(a)

    progress = True
    while progress and cols:
        progress = False
        for c in sorted(cols, key=lambda j: len(cols[j])):
            col = cols.get(c)
            if not col:
                continue
            best = None
            for r, a in col.items():
                if abs(a) == 1:
                    key = (0, len(rows[r]))
                elif all(v % a == 0 for v in col.values()) and all(v % a == 0 for v in rows[r].values()):
                    key = (abs(a), len(rows[r]))
                else:
                    continue
                if best is None or key < best[0]:
                    best = (key, r)
            if best is not None:
                pivot(best[1], c)
                progress = True

    if cols:
        row_ids = sorted(rows)
        col_ids = sorted(cols)
        rpos = {r: k for k, r in enumerate(row_ids)}
        dense = [[0] * len(col_ids) for _ in row_ids]
        for k, c in enumerate(col_ids):
            for r, a in cols[c].items():
                dense[rpos[r]][k] = a
        rest, _, _ = _dense_snf(dense, len(row_ids), len(col_ids), track=False)
        diag.extend(rest)
    return _chain_normalize(diag)


def rank_over_q(A) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    arr = np.asarray(A.toarray() if sp.issparse(A) else A, dtype=object)
    if arr.size == 0:
        return 0
    M = [[int(x) for x in row] for row in arr]
    m, n = len(M), len(M[0])
    rank = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(rank, m) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, m):
            f = M[i][c]
            row_i, row_p = M[i], M[rank]
            for j in range(c, n):
                row_i[j] = (p * row_i[j] - f * row_p[j]) // prev
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


@dataclass
class ChainComplexZ:
    """Free chain complex over Z.

    ``ranks[i]`` is the rank in degree ``min_degree + i`` and
    ``boundaries[i]`` maps degree ``min_degree + i + 1`` to
    ``min_degree + i``. ``basis`` optionally names the generators.
    """

    ranks: list[int]
    boundaries: list
    min_degree: int = 0
    basis: Optional[list[list]] = field(default=None, repr=False)
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.ranks = [int(r) for r in self.ranks]
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise BoundaryError("need exactly one boundary matrix between consecutive degrees")
        mats = []
        for i, B in enumerate(self.boundaries):
            B = sp.csc_array(B, dtype=np.int64) if not sp.issparse(B) else sp.csc_array(B).astype(np.int64)
            if B.shape != (self.ranks[i], self.ranks[i + 1]):
                raise BoundaryError(
                    f"boundary into degree {self.min_degree + i} has shape {B.shape}, "
                    f"expected {(self.ranks[i], self.ranks[i + 1])}"
                )
            mats.append(B)
        self.boundaries = mats
        if self.check:
            bad = self.square_defect()
            if bad is not None:
                raise BoundaryError(f"boundary composed with boundary is nonzero at degree {bad}")

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.ranks) - 1

    def rank(self, d: int) -> int:
        i = d - self.min_degree
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    def boundary(self, d: int):
        """The matrix of the boundary from degree ``d`` to ``d - 1`` (or ``None``)."""
        i = d - self.min_degree - 1
        return self.boundaries[i] if 0 <= i < len(self.boundaries) else None

    def square_defect(self) -> Optional[int]:
        """First degree ``d`` with ``boundary(d) @ boundary(d+1) != 0``, else ``None``."""
        for i in range(len(self.boundaries) - 1):
            P = self.boundaries[i] @ self.boundaries[i + 1]
            if P.count_nonzero():
                return self.min_degree + i + 1
        return None

    def restrict(self, keep: Mapping[int, Sequence[int]]) -> "ChainComplexZ":
        """The subcomplex spanned by the listed basis elements (which must be closed under the boundary)."""
        lo, hi = self.min_degree, self.max_degree
        kept = [np.asarray(sorted(keep.get(d, ())), dtype=np.int64) for d in range(lo, hi + 1)]
        mats = []
        for d in range(lo + 1, hi + 1):
            i = d - lo
            B = self.boundary(d)[:, kept[i]]
            outside = np.setdiff1d(np.arange(self.rank(d - 1)), kept[i - 1])
            if len(outside) and B[outside, :].count_nonzero():
                raise ValueError(f"kept generators in degree {d} have boundary outside the selection")
            mats.append(B[kept[i - 1], :])
        basis = None
        if self.basis is not None:
            basis = [[self.basis[i][k] for k in kept[i]] for i in range(len(kept))]
        return ChainComplexZ([len(k) for k in kept], mats, lo, basis, check=False)

    def subquotient(self, keep: Mapping[int, Sequence[int]]) -> "ChainComplexZ":
        """The quotient by the span of all basis elements NOT listed in ``keep``.

        ``keep[d]`` lists the surviving basis indices in degree ``d``; the
        discarded generators must span a subcomplex.
        """
        lo, hi = self.min_degree, self.max_degree
        kept = [np.asarray(sorted(keep.get(d, ())), dtype=np.int64) for d in range(lo, hi + 1)]
        for d in range(lo + 1, hi + 1):
            B = self.boundary(d)
            i = d - lo
            dropped = np.setdiff1d(np.arange(self.rank(d)), kept[i])
            if len(dropped) and len(kept[i - 1]):
                leak = B[kept[i - 1], :][:, dropped]
                if leak.count_nonzero():
                    raise ValueError(f"discarded generators in degree {d} are not a subcomplex")
        mats = []
        for d in range(lo + 1, hi + 1):
            i = d - lo
            mats.append(self.boundary(d)[kept[i - 1], :][:, kept[i]])
        basis = None
        if self.basis is not None:
            basis = [[self.basis[i][k] for k in kept[i]] for i in range(len(kept))]
        return ChainComplexZ([len(k) for k in kept], mats, lo, basis, check=False)


def homology(C: ChainComplexZ, degrees: Optional[Iterable[int]] = None) -> list[HomologyGroup]:
    """Integer homology of ``C`` in every degree (or the requested ones)."""
    if degrees is None:
        degrees = range(C.min_degree, C.max_degree + 1)
    degrees = list(degrees)
    invariants: dict[int, list[int]] = {}

    def inv(d):
        if d not in invariants:
            B = C.boundary(d)
            invariants[d] = [] if B is None or B.nnz == 0 else smith_invariants(B)
        return invariants[d]

    out = []
    for d in degrees:
        rank_out = len(inv(d))
        into = inv(d + 1)
        betti = C.rank(d) - rank_out - len(into)
        out.append(HomologyGroup(d, betti, tuple(x for x in into if x > 1)))
    return out


def rational_betti(C: ChainComplexZ) -> dict[int, int]:
    """Betti numbers via rank-nullity over Q (independent of the SNF path)."""
    ranks = {}
    for d in range(C.min_degree, C.max_degree + 2):
        B = C.boundary(d)
        ranks[d] = 0 if B is None or B.nnz == 0 else rank_over_q(B)
    return {d: C.rank(d) - ranks[d] - ranks[d + 1] for d in range(C.min_degree, C.max_degree + 1)}


def chain_complex_of(K) -> ChainComplexZ:
    """Augmented simplicial chain complex; degree -1 holds the empty face.

    Faces are oriented by increasing vertex order, so the boundary of a
    face is ``sum_i (-1)^i (face minus its i-th smallest vertex)``.
    """
    faces = [[()]] + [list(level) for level in K.faces_by_dim]
    index = [{f: i for i, f in enumerate(level)} for level in faces]
    mats = []
    for d in range(1, len(faces)):
        rows, cols, vals = [], [], []
        lower = index[d - 1]
        for j, f in enumerate(faces[d]):
            for i in range(len(f)):
                rows.append(lower[f[:i] + f[i + 1:]])
                cols.append(j)
                vals.append(-1 if i % 2 else 1)
        mats.append(sp.csc_array((vals, (rows, cols)), shape=(len(faces[d - 1]), len(faces[d])), dtype=np.int64))
    return ChainComplexZ([len(level) for level in faces], mats, -1, faces)


def simplicial_homology(K) -> list[HomologyGroup]:
    """Reduced integer homology of a simplicial complex (degrees -1 .. dim)."""
    return homology(chain_complex_of(K))


def relative_homology(K, L) -> list[HomologyGroup]:
    """Homology of ``C(K)/C(L)`` for a subcomplex ``L`` of ``K``.

    ``L`` may be a ``SimplicialComplex`` or any iterable of faces; the empty
    face belongs to ``L`` whenever ``L`` has a face.
    """
    faces_L = set(L.faces()) if hasattr(L, "faces") else {tuple(sorted(f)) for f in L}
    faces_L.discard(())
    faces_K = set(K.faces())
    if not faces_L <= faces_K:
        raise ValueError("L is not contained in K")
    for f in faces_L:
        for i in range(len(f)):
            g = f[:i] + f[i + 1:]
            if g and g not in faces_L:
                raise ValueError(f"L is not a subcomplex: {g} missing below {f}")
    C = chain_complex_of(K)
    keep = {-1: [] if faces_L else [0]}
    for d, level in enumerate(K.faces_by_dim):
        keep[d] = [i for i, f in enumerate(level) if f not in faces_L]
    return homology(C.subquotient(keep))


def reduced_nonzero(groups: Iterable[HomologyGroup]) -> dict[int, HomologyGroup]:
    """Only the nonzero groups, keyed by degree."""
    return {g.degree: g for g in groups if not g.is_zero}


def homology_to_json(groups: Iterable[HomologyGroup], **metadata) -> dict:
    return {**metadata, "homology": [g.to_json() for g in groups]}


def direct_sum(degree: int, groups: Iterable[HomologyGroup]) -> HomologyGroup:
    """Direct sum of groups, with torsion rewritten as a divisibility chain."""
    groups = list(groups)
    torsion = _chain_normalize(c for g in groups for c in g.torsion)
    return HomologyGroup(degree, sum(g.betti for g in groups), tuple(c for c in torsion if c > 1))
