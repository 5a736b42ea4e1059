"""Finite-domain functions on the integer lattice and their M-natural convexity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .setcore import (
    INF,
    IntVector,
    char_vector,
    check_ground,
    mask_of_vector,
    scale_to_integers,
    subsets,
    unit,
    vadd,
    vsub,
)
from .submodular import ConsistencyError, SetFunction


@dataclass(frozen=True)
class DiscreteFn:
    """Integer-valued function with a finite effective domain; ``+inf`` elsewhere."""

    n: int
    entries: Mapping[IntVector, int] = field(repr=False)

    def __post_init__(self):
        check_ground(self.n)
        if not self.entries:
            raise ValueError("a discrete function needs a nonempty domain")
        clean = {}
        for x, v in self.entries.items():
            x = tuple(int(c) for c in x)
            if len(x) != self.n:
                raise ValueError(f"point {x} does not have {self.n} coordinates")
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"value at {x} must be an integer, got {v!r}")
            clean[x] = v
        object.__setattr__(self, "entries", clean)

    def __call__(self, x: Sequence[int]):
        return self.entries.get(tuple(x), INF)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def dom(self) -> list[IntVector]:
        return sorted(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def restricted(self, points: Iterable[Sequence[int]]) -> "DiscreteFn":
        return DiscreteFn(self.n, {tuple(x): self.entries[tuple(x)] for x in points})

    def shifted(self, w: Sequence[Fraction]) -> dict[IntVector, Fraction]:
        """Values of ``f - <w, .>`` on the domain."""
        return {x: v - sum(Fraction(a) * b for a, b in zip(w, x)) for x, v in self.entries.items()}

    def __repr__(self) -> str:
        return f"DiscreteFn(n={self.n}, |dom|={len(self.entries)})"


@dataclass(frozen=True, repr=False)
class Section(DiscreteFn):
    """An ``alpha``-section: every domain point has coordinate sum ``level``."""

    level: int = 0

    def __post_init__(self):
        super().__post_init__()
        bad = [x for x in self.entries if sum(x) != self.level]
        if bad:
            raise ValueError(f"point {bad[0]} is off the hyperplane x(E)={self.level}")


def vgm_from_setfunction(f: SetFunction) -> DiscreteFn:
    """A function on ``2^E`` read as a function on ``{0,1}^E``."""
    return DiscreteFn(f.n, {char_vector(X, f.n): f(X) for X in subsets(f.n)})


def setfunction_of_vgm(F: DiscreteFn) -> SetFunction:
    if not is_cube_domain(F):
        raise ValueError("domain is not the full 0/1 cube")
    table = [0] * (1 << F.n)
    for x, v in F.entries.items():
        table[mask_of_vector(x)] = v
    return SetFunction(F.n, tuple(table))


def is_cube_domain(F: DiscreteFn) -> bool:
    return len(F) == 1 << F.n and all(c in (0, 1) for x in F.entries for c in x)


# -- exchange axiom --------------------------------------------------------------

@dataclass(frozen=True)
class ExchangeViolation:
    """A witness ``(x, y, i)`` against the exchange axiom.

    ``clause`` is ``"domain"`` when no exchange partner exists inside the
    domain at all, ``"value"`` when partners exist but are all too expensive.
    ``i`` is 1-based.
    """

    clause: str
    x: IntVector
    y: IntVector
    i: int

    def describe(self) -> str:
        return f"{self.clause} exchange fails for x={self.x}, y={self.y}, i={self.i}"


def mnat_violation(F: DiscreteFn) -> ExchangeViolation | None:
    """First violation of the M-natural exchange axiom in sorted order, or None."""
    n = F.n
    f = F.entries
    dom = F.dom
    chi = [unit(i, n) for i in range(n)]
    for x in dom:
        fx = f[x]
        for y in dom:
            if x == y:
                continue
            fy = f[y]
            neg = [j for j in range(n) if x[j] < y[j]]
            for i in range(n):
                if x[i] <= y[i]:
                    continue
                xi = vsub(x, chi[i])
                yi = vadd(y, chi[i])
                best = INF
                reachable = False
                if xi in f and yi in f:
                    reachable = True
                    best = f[xi] + f[yi]
                for j in neg:
                    a = vadd(xi, chi[j])
                    b = vsub(yi, chi[j])
                    if a in f and b in f:
                        reachable = True
                        best = min(best, f[a] + f[b])
                if not reachable:
                    return ExchangeViolation("domain", x, y, i + 1)
                if fx + fy < best:
                    return ExchangeViolation("value", x, y, i + 1)
    return None


def is_mnat_convex(F: DiscreteFn) -> bool:
    return mnat_violation(F) is None


def is_m_convex(F: DiscreteFn) -> bool:
    sums = {sum(x) for x in F.entries}
    return len(sums) == 1 and is_mnat_convex(F)


class NotMNatConvexError(ValueError):
    def __init__(self, violation: ExchangeViolation):
        super().__init__(f"not M-natural convex: {violation.describe()}")
        self.violation = violation


def require_mnat(F: DiscreteFn) -> None:
    v = mnat_violation(F)
    if v is not None:
        raise NotMNatConvexError(v)


# -- conjugacy -------------------------------------------------------------------

def _scaled_max(F: DiscreteFn, w: Sequence[Fraction]) -> tuple[int, int]:
    a, d = scale_to_integers(w)
    best = max(sum(ai * xi for ai, xi in zip(a, x)) - d * v for x, v in F.entries.items())
    return best, d


def conjugate(F: DiscreteFn, w: Sequence[Fraction]) -> Fraction:
    """``max_x <w, x> - f(x)`` over the (finite) domain."""
    best, d = _scaled_max(F, w)
    return Fraction(best, d)


def subdifferential_contains(F: DiscreteFn, x: Sequence[int], w: Sequence[Fraction]) -> bool:
    """Whether ``f(z) >= f(x) + <w, z - x>`` for every ``z`` in the domain."""
    x = tuple(x)
    if x not in F:
        raise ValueError(f"{x} is not in the domain")
    a, d = scale_to_integers(w)
    base = d * F.entries[x] - sum(ai * xi for ai, xi in zip(a, x))
    return all(
        d * v - sum(ai * zi for ai, zi in zip(a, z)) >= base for z, v in F.entries.items()
    )


def sbd_duality_check(F: DiscreteFn, x: Sequence[int], w: Sequence[Fraction]) -> bool:
    """Subgradient membership decided two ways; they must agree."""
    x = tuple(x)
    lhs = subdifferential_contains(F, x, w)
    rhs = F(x) + conjugate(F, w) <= sum(Fraction(a) * b for a, b in zip(w, x))
    if lhs != rhs:
        raise ConsistencyError(f"subgradient tests disagree at x={x}, w={tuple(w)}")
    return lhs


def biconjugate_check(F: DiscreteFn) -> bool:
    """Whether ``f`` coincides with its convex closure on the domain.

    The closure value at ``x`` is the lower convex hull of the lifted points
    ``(y, f(y))`` evaluated at ``x``.  Meaningful for M-natural convex input;
    other input is accepted and simply answered.
    """
    from .hull import lower_hull_value

    pts = F.dom
    heights = [F.entries[p] for p in pts]
    return all(lower_hull_value(pts, heights, x) == F.entries[x] for x in pts)


# -- sections --------------------------------------------------------------------

def section(F: DiscreteFn, alpha: int) -> Section:
    part = {x: v for x, v in F.entries.items() if sum(x) == alpha}
    if not part:
        raise ValueError(f"empty section: no domain point has x(E)={alpha}")
    return Section(F.n, part, level=alpha)


def alpha_range(F: DiscreteFn) -> range:
    """``I_f`` as a range; raises if some intermediate level is empty."""
    sums = {sum(x) for x in F.entries}
    lo, hi = min(sums), max(sums)
    gaps = [a for a in range(lo, hi + 1) if a not in sums]
    if gaps:
        raise ValueError(f"levels {gaps} are empty: the domain is not a g-polymatroid")
    return range(lo, hi + 1)


def affine_rank(points: Iterable[Sequence[int]]) -> int:
    """Dimension of the affine hull of a finite point set (exact)."""
    pts = [tuple(p) for p in points]
    if not pts:
        return -1
    rows = [[Fraction(c) for c in vsub(p, pts[0])] for p in pts[1:]]
    return _rank(rows)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / p[col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], p)]
        rank += 1
    return rank


def is_full_dimensional(F: DiscreteFn) -> bool:
    return affine_rank(F.entries) == F.n
