"""Exact lower-hull primitives for finite lifted point configurations.

Two independent tools live here:

* LP-based queries (convex-closure value at a point, hull membership, vertex
  test), solved by an exact rational simplex;
* brute-force lower-facet enumeration through affinely independent tuples,
  merged by exact tight sets.  It is cubic-to-quartic in the number of points
  and is meant as an oracle for configurations of a few dozen points.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence


class InfeasibleLP(ValueError):
    pass


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, col: int) -> None:
    piv = T[r][col]
    T[r] = [v / piv for v in T[r]]
    for k, row in enumerate(T):
        if k != r and row[col] != 0:
            m = row[col]
            T[k] = [a - m * b for a, b in zip(row, T[r])]
    basis[r] = col


def _run(T, basis, cost, allowed) -> None:
    """Minimize ``cost`` over the tableau with Bland's rule (no cycling)."""
    while True:
        enter = None
        for j in allowed:
            if j in basis:
                continue
            red = cost[j] - sum(cost[b] * T[r][j] for r, b in enumerate(basis))
            if red < 0:
                enter = j
                break
        if enter is None:
            return
        best = None
        for r, row in enumerate(T):
            if row[enter] > 0:
                key = (row[-1] / row[enter], basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            raise ValueError("unbounded linear program")
        _pivot(T, basis, best[1], enter)


def _lp(cost: Sequence, columns: Sequence[Sequence[int]], rhs: Sequence) -> Fraction:
    """Exact ``min cost.lam`` subject to ``sum_k lam_k * columns[k] = rhs``, ``lam >= 0``.

    Dense two-phase tableau simplex over ``Fraction``; Bland's rule keeps
    it finite on the heavily degenerate problems met here.
    """
    m, N = len(rhs), len(columns)
    T = []
    for r in range(m):
        row = [Fraction(col[r]) for col in columns] + [Fraction(0)] * m + [Fraction(rhs[r])]
        if row[-1] < 0:
            row = [-v for v in row]
        row[N + r] = Fraction(1)
        T.append(row)
    basis = [N + r for r in range(m)]
    phase1 = [Fraction(0)] * N + [Fraction(1)] * m
    _run(T, basis, phase1, range(N + m))
    if sum(T[r][-1] for r, b in enumerate(basis) if b >= N) != 0:
        raise InfeasibleLP("no nonnegative solution")
    for r in reversed(range(len(T))):
        if basis[r] < N:
            continue
        col = next((j for j in range(N) if T[r][j] != 0), None)
        if col is None:
            del T[r], basis[r]
        else:
            _pivot(T, basis, r, col)
    cost = [Fraction(c) for c in cost] + [Fraction(0)] * m
    _run(T, basis, cost, range(N))
    return sum((cost[b] * T[r][-1] for r, b in enumerate(basis)), Fraction(0))


def lower_hull_value(points: Sequence[Sequence[int]], heights: Sequence[int],
                     x: Sequence[int]) -> Fraction:
    """Value at ``x`` of the lower convex hull of ``{(p, h)}``.

    Raises ``ValueError`` when ``x`` lies outside ``conv(points)``.
    """
    cols = [tuple(p) + (1,) for p in points]
    try:
        return _lp(heights, cols, tuple(x) + (1,))
    except InfeasibleLP:
        raise ValueError(f"{tuple(x)} is outside the convex hull") from None


def in_convex_hull(points: Sequence[Sequence[int]], x: Sequence[int]) -> bool:
    if not points:
        return False
    cols = [tuple(p) + (1,) for p in points]
    try:
        _lp([0] * len(cols), cols, tuple(x) + (1,))
    except InfeasibleLP:
        return False
    return True


def hull_vertices(points: Sequence[Sequence[int]]) -> set[tuple[int, ...]]:
    """Vertices of ``conv(points)``: points not in the hull of the others."""
    pts = sorted({tuple(p) for p in points})
    return {p for p in pts if not in_convex_hull([q for q in pts if q != p], p)}


# -- brute-force lower facets -------------------------------------------------------

def _det(M: list[list[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    M = [row[:] for row in M]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _normal(rows: list[list[int]]) -> list[int]:
    """Integer normal of the hyperplane spanned by ``d`` vectors in ``Z^(d+1)``."""
    d1 = len(rows[0])
    out = []
    for c in range(d1):
        minor = [[r[k] for k in range(d1) if k != c] for r in rows]
        out.append((-1) ** c * _det(minor) if minor else 1)
    return out


def chart(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Drop the last coordinate of constant-sum points (a lattice-preserving chart)."""
    sums = {sum(p) for p in points}
    if len(sums) != 1:
        raise ValueError("chart() needs points on a single hyperplane x(E) = const")
    return [tuple(p[:-1]) for p in points]


def lower_facets_bruteforce(points: Sequence[Sequence[int]],
                            heights: Sequence[int]) -> list[frozenset[int]]:
    """Index sets of the lower facets of ``{(p, h)}`` for full-dimensional ``points``.

    Every tuple of ``d + 1`` lifted points spans a candidate hyperplane; it
    is kept when its normal points upward and every lifted point lies on or
    above it.  Facets are returned as their exact tight index sets.
    """
    lifted = [tuple(p) + (h,) for p, h in zip(points, heights)]
    N = len(lifted)
    d = len(points[0])
    found: set[frozenset[int]] = set()
    for tup in combinations(range(N), d + 1):
        q0 = lifted[tup[0]]
        rows = [[a - b for a, b in zip(lifted[t], q0)] for t in tup[1:]]
        nv = _normal(rows) if rows else [1]
        if nv[-1] == 0:
            continue
        if nv[-1] < 0:
            nv = [-c for c in nv]
        tight = []
        ok = True
        for k, q in enumerate(lifted):
            s = sum(c * (a - b) for c, a, b in zip(nv, q, q0))
            if s < 0:
                ok = False
                break
            if s == 0:
                tight.append(k)
        if ok:
            found.add(frozenset(tight))
    return sorted(found, key=lambda s: sorted(s))
