"""Exact integer/rational linear algebra for 0/1 point sets.

Everything here is arbitrary precision: matrices are Python ints (optionally
held in numpy ``object`` arrays for vectorised row updates) and rationals are
:class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

IntVector = Sequence[int]
RationalVector = tuple  # tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    """Points (or target and points) do not share one dimension."""


def _common_dim(points: Sequence[IntVector]) -> int:
    dims = {len(p) for p in points}
    if len(dims) > 1:
        raise DimensionMismatch(f"points have mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else 0


def as_rational_vector(values: Iterable) -> RationalVector:
    return tuple(Fraction(v) for v in values)


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Full pivoting: the pivot is the largest-magnitude entry of the remaining
    submatrix, ties going to the lowest row and then the lowest column.
    """
    if len(rows) == 0 or len(rows[0]) == 0:
        return 0
    m = np.array([list(r) for r in rows], dtype=object)
    nrows, ncols = m.shape
    prev = 1
    rank = 0
    while rank < min(nrows, ncols):
        sub = np.abs(m[rank:])
        flat = int(np.argmax(sub))
        i, j = divmod(flat, ncols)
        if sub[i, j] == 0:
            break
        i += rank
        if i != rank:
            m[[rank, i]] = m[[i, rank]]
        piv = m[rank, j]
        below = m[rank + 1:]
        if below.shape[0]:
            # exact division is the Bareiss invariant (Sylvester identity)
            m[rank + 1:] = (piv * below - np.outer(below[:, j], m[rank])) // prev
        prev = piv
        rank += 1
    return rank


def affine_rank(points: Sequence[IntVector]) -> int:
    """Size of the largest affinely independent subset of ``points``."""
    _common_dim(points)
    if not points:
        return 0
    uniq = list(dict.fromkeys(tuple(p) for p in points))
    return bareiss_rank([p + (1,) for p in uniq])


class IncrementalBasis:
    """Row-echelon basis over the integers, grown one vector at a time.

    Used for greedy rank-growing scans: :meth:`add` reports whether the new
    vector increased the rank. Rows are kept primitive (content 1) so the
    entries stay small on 0/1 inputs.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, dict[int, int]] = {}  # pivot column -> sparse row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: IntVector) -> dict[int, int]:
        # each row is zero on the pivots of rows inserted before it, so one
        # sweep in insertion order clears every pivot column
        v = {i: x for i, x in enumerate(vec) if x}
        for col, row in self._rows.items():
            q = v.get(col)
            if not q:
                continue
            p = row[col]
            g = gcd(p, q)
            p, q = p // g, q // g
            out: dict[int, int] = {}
            for c in v.keys() | row.keys():
                x = p * v.get(c, 0) - q * row.get(c, 0)
                if x:
                    out[c] = x
            v = out
        if v:
            g = 0
            for x in v.values():
                g = gcd(g, x)
            if g > 1:
                v = {c: x // g for c, x in v.items()}
        return v

    def add(self, vec: IntVector) -> bool:
        if len(vec) != self.dim:
            raise DimensionMismatch(f"expected dimension {self.dim}, got {len(vec)}")
        v = self.reduce(vec)
        if not v:
            return False
        self._rows[min(v)] = v
        return True


def _choose_entering(point_scores: np.ndarray, art_scores: list, bland: bool) -> Optional[int]:
    """Entering column: first positive score under Bland, else the largest."""
    npts = len(point_scores)
    pos = np.flatnonzero(point_scores > 0)
    if bland:
        if len(pos):
            return int(pos[0])
        return next((npts + i for i, sc in enumerate(art_scores) if sc > 0), None)
    best_j, best = None, 0
    if len(pos):
        j = int(np.argmax(point_scores))
        best_j, best = j, point_scores[j]
    for i, sc in enumerate(art_scores):
        if sc > best:
            best_j, best = npts + i, sc
    return best_j


def convex_weights(target: Sequence, points: Sequence[IntVector]) -> Optional[list[Fraction]]:
    """Exact convex-combination weights expressing ``target`` from ``points``.

    Phase-one revised simplex over the rationals. Pricing is steepest
    reduced cost, falling back to Bland's rule during degenerate stretches so
    the method cannot cycle. Returns ``None`` when ``target`` is outside the
    convex hull.
    """
    target = as_rational_vector(target)
    d = len(target)
    npts = len(points)
    if npts and _common_dim(points) != d:
        raise DimensionMismatch(f"target has dimension {d}, points {len(points[0])}")
    if npts == 0:
        return None

    m = d + 1
    # constraint matrix rows: coordinates then the sum-to-one row
    A = np.ones((npts, m), dtype=object)
    A[:, :d] = np.array([list(p) for p in points], dtype=object).reshape(npts, d)
    rhs = list(target) + [Fraction(1)]
    sign = [(-1 if r < 0 else 1) for r in rhs]
    A = A * np.array(sign, dtype=object)
    rhs = [abs(r) for r in rhs]

    try:
        A_fast = A.astype(np.int64)
        amax = int(np.abs(A_fast).max(initial=0))
    except OverflowError:
        A_fast, amax = None, None

    # artificial variable i has index npts + i
    basis = [npts + i for i in range(m)]
    binv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    xb = list(rhs)

    def column(j: int) -> list:
        if j >= npts:
            return [int(i == j - npts) for i in range(m)]
        return list(A[j])

    bland = False
    while True:
        cb = [1 if b >= npts else 0 for b in basis]
        y = [sum((binv[i][r] for i in range(m) if cb[i]), Fraction(0)) for r in range(m)]
        den = 1
        for v in y:
            den = den * v.denominator // gcd(den, v.denominator)
        Y = [int(v * den) for v in y]
        # reduced cost of point column j is -(Y . A_j)/den, of artificial i it
        # is (den - Y_i)/den; "score" is the negated, den-scaled reduced cost
        if amax is not None and max(abs(v) for v in Y) * max(amax, 1) * m < 2**62:
            scores = A_fast @ np.array(Y, dtype=np.int64)
        else:
            scores = A.dot(np.array(Y, dtype=object))
        art_scores = [0 if npts + i in basis else Y[i] - den for i in range(m)]
        entering = _choose_entering(scores, art_scores, bland)
        if entering is None:
            break
        col = column(entering)
        dvec = [sum((binv[i][r] * col[r] for r in range(m) if col[r]), Fraction(0)) for i in range(m)]
        leave = None
        best = None
        for i in range(m):
            if dvec[i] > 0:
                ratio = xb[i] / dvec[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # cannot happen in a bounded phase-one problem
            raise RuntimeError("phase-one LP reported unbounded")
        piv = dvec[leave]
        # Bland's rule for as long as pivots stay degenerate (anti-cycling);
        # steepest reduced cost otherwise
        bland = best == 0
        binv[leave] = [v / piv for v in binv[leave]]
        xb[leave] = xb[leave] / piv
        for i in range(m):
            if i != leave and dvec[i]:
                f = dvec[i]
                binv[i] = [a - f * b for a, b in zip(binv[i], binv[leave])]
                xb[i] = xb[i] - f * xb[leave]
        basis[leave] = entering

    infeasibility = sum((xb[i] for i in range(m) if basis[i] >= npts), Fraction(0))
    if infeasibility != 0:
        return None
    weights = [Fraction(0)] * npts
    for i, b in enumerate(basis):
        if b < npts:
            weights[b] = xb[i]
    return weights
