"""Maximal cells of a compression and the strips and sweeps read off them.

Maximal cells are enumerated in the dual.  For an M-convex ``fhat``, a point
``x`` minimizes ``fhat - <w, .>`` iff no single exchange ``x - chi_i + chi_j``
improves it, so the covectors for which ``x`` is optimal form the polyhedron

    R_x = { w : w(j) - w(i) <= fhat(x - chi_i + chi_j) - fhat(x) }.

With ``w(n) = 0`` fixed, ``R_x`` is pointed, and its vertices are exactly the
witnesses of maximal cells that contain ``x``.  Each vertex is cut out by a
spanning tree of tight difference constraints, so vertices are integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .compression import CompressionResult, DomainError, compress, minkowski_sum
from .discrete import DiscreteFn, affine_rank, alpha_range, section
from .setcore import Covector, IntVector, covector, scale_to_integers, unit, vadd, vsub
from .submodular import ConsistencyError


def _argmin_scaled(entries, w):
    a, d = scale_to_integers(w)
    vals = {x: d * v - sum(ai * xi for ai, xi in zip(a, x)) for x, v in entries.items()}
    m = min(vals.values())
    return frozenset(x for x, v in vals.items() if v == m), Fraction(m, d)


def linearity_domain(F: DiscreteFn, w: Sequence[Fraction]) -> frozenset[IntVector]:
    """``argmin { f(x) - <w, x> }`` over the domain."""
    return _argmin_scaled(F.entries, covector(w))[0]


def canonical_witness(w: Sequence[Fraction]) -> Covector:
    """Shift ``w`` along the all-ones vector so that its last coordinate is 0."""
    w = covector(w)
    return tuple(c - w[-1] for c in w)


@dataclass(frozen=True)
class Cell:
    points: frozenset[IntVector]
    witness: Covector
    offset: Fraction

    def __len__(self) -> int:
        return len(self.points)


def _tree_solutions(edges, n):
    """Vertices of ``{w : w[j] - w[i] <= c}`` with ``w[n-1] = 0``."""
    found = set()
    for combo in combinations(edges, n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        acyclic = True
        for i, j, _ in combo:
            ri, rj = find(i), find(j)
            if ri == rj:
                acyclic = False
                break
            parent[ri] = rj
        if not acyclic:
            continue
        adj = [[] for _ in range(n)]
        for i, j, c in combo:
            adj[i].append((j, c))
            adj[j].append((i, -c))
        w = [None] * n
        w[n - 1] = 0
        stack = [n - 1]
        while stack:
            u = stack.pop()
            for v, c in adj[u]:
                if w[v] is None:
                    w[v] = w[u] + c
                    stack.append(v)
        if all(w[j] - w[i] <= c for i, j, c in edges):
            found.add(tuple(w))
    return found


def _exchange_edges(fhat: DiscreteFn, x: IntVector):
    n = fhat.n
    f = fhat.entries
    fx = f[x]
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            y = vadd(vsub(x, unit(i, n)), unit(j, n))
            if y in f:
                edges.append((i, j, f[y] - fx))
    return edges


def maximal_cells(fhat: DiscreteFn) -> list[Cell]:
    """Maximal linearity domains of an M-convex function, sorted by witness.

    These are the cells of the regular subdivision of ``dom(fhat)`` lifted by
    ``fhat``; each witness is the canonical gradient of its lower facet.
    """
    n = fhat.n
    if len({sum(x) for x in fhat.entries}) != 1:
        raise DomainError("maximal_cells needs an M-convex function (constant coordinate sum)")
    if affine_rank(fhat.entries) != n - 1:
        raise DomainError("maximal_cells needs a domain of dimension n - 1")
    if n == 1:
        return [Cell(frozenset(fhat.entries), (Fraction(0),), Fraction(fhat(fhat.dom[0])))]
    witnesses: set[tuple[int, ...]] = set()
    for x in fhat.dom:
        witnesses |= _tree_solutions(_exchange_edges(fhat, x), n)
    cells = []
    for w in sorted(witnesses):
        wq = covector(w)
        pts, offset = _argmin_scaled(fhat.entries, wq)
        if affine_rank(pts) != n - 1:
            raise ConsistencyError(f"witness {w} yields a lower-dimensional cell")
        cells.append(Cell(pts, wq, offset))
    covered = set().union(*(c.points for c in cells))
    if covered != set(fhat.entries):
        raise ConsistencyError("cells do not cover the domain")
    return cells


@dataclass(frozen=True)
class Strip:
    cell: Cell
    levels: dict[int, frozenset[IntVector]]
    values: DiscreteFn

    @property
    def union(self) -> frozenset[IntVector]:
        return frozenset().union(*self.levels.values())


def strip_levels(F: DiscreteFn, w: Sequence[Fraction]) -> dict[int, frozenset[IntVector]]:
    """``D(alpha, S)`` for every level, computed at covector ``w``."""
    return {a: linearity_domain(section(F, a), w) for a in alpha_range(F)}


def strip_decomposition(F: DiscreteFn, result: CompressionResult | None = None) -> list[Strip]:
    result = result or compress(F)
    strips = []
    for cell in maximal_cells(result.fhat):
        levels = strip_levels(F, cell.witness)
        if minkowski_sum(levels[a] for a in result.levels) != set(cell.points):
            raise ConsistencyError(
                f"level sets at witness {cell.witness} do not sum to the cell"
            )
        union = frozenset().union(*levels.values())
        strips.append(Strip(cell, levels, F.restricted(union)))
    return strips


# -- parametric sweep ----------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    witness: Covector
    minima: dict[int, Fraction]
    breakpoints: tuple[Fraction, ...]
    ranks: tuple[int, ...]
    domains: dict[int, frozenset[IntVector]]

    def optimal_levels(self, lam: Fraction) -> range:
        lam = Fraction(lam)
        k, bp = self.ranks, self.breakpoints
        for ell, b in enumerate(bp, start=1):
            if lam == b:
                return range(k[ell - 1], k[ell] + 1)
            if lam < b:
                return range(k[ell - 1], k[ell - 1] + 1)
        return range(k[-1], k[-1] + 1)

    def optimal_set(self, lam: Fraction) -> frozenset[IntVector]:
        """Minimizers of ``f - <w + lam * 1, .>`` assembled from the level sets."""
        return frozenset().union(*(self.domains[a] for a in self.optimal_levels(lam)))

    def probe_points(self) -> list[Fraction]:
        """Every breakpoint, every finite-interval midpoint and one point past each end."""
        bp = list(self.breakpoints)
        if not bp:
            return [Fraction(0)]
        mids = [(a + b) / 2 for a, b in zip(bp, bp[1:])]
        return sorted(bp + mids + [bp[0] - 1, bp[-1] + 1])


def parametric_sweep(F: DiscreteFn, w: Sequence[Fraction]) -> SweepResult:
    w = covector(w)
    levels = list(alpha_range(F))
    domains, minima = {}, {}
    for a in levels:
        domains[a], minima[a] = _argmin_scaled(section(F, a).entries, w)
    slopes = [minima[a + 1] - minima[a] for a in levels[:-1]]
    for s, t, a in zip(slopes, slopes[1:], levels[1:]):
        if t < s:
            raise ConsistencyError(
                f"level minima are not convex at alpha={a} for w={w}: slopes {s} then {t}"
            )
    ranks = [levels[0]]
    breakpoints = []
    for idx, s in enumerate(slopes):
        if idx + 1 == len(slopes) or slopes[idx + 1] != s:
            breakpoints.append(s)
            ranks.append(levels[idx + 1])
    return SweepResult(w, minima, tuple(breakpoints), tuple(ranks), domains)


def sweep_bruteforce(F: DiscreteFn, w: Sequence[Fraction], lam: Fraction) -> frozenset[IntVector]:
    """Exhaustive argmin of ``f(x) - <w + lam * 1, x>``."""
    lam = Fraction(lam)
    return linearity_domain(F, tuple(c + lam for c in covector(w)))
