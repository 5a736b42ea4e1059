"""Set functions on ``2^[n]`` and the polyhedra they define.

Set functions are dense tables indexed by bitmask.  Everything here is exact
and exhaustive; the practical ceiling is around ``n = 6`` for the pairwise
checks (``4^n`` pairs) and ``n = 5`` for lattice-point enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Iterator, Sequence

from .setcore import (
    IntVector,
    check_ground,
    elements_of,
    format_subset,
    full_mask,
    is_permutation_vector,
    submasks,
    subsets,
    sum_over,
)

MAX_N = 16


@dataclass(frozen=True)
class SetFunction:
    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        check_ground(self.n)
        if self.n > MAX_N:
            raise ValueError(f"set function tables are capped at n={MAX_N}")
        if len(self.values) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} values, got {len(self.values)}")
        if self.values[0] != 0:
            raise ValueError(f"f(empty set) must be 0, got {self.values[0]}")

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[int], int]) -> "SetFunction":
        return cls(n, tuple(int(fn(X)) for X in subsets(n)))

    @classmethod
    def modular(cls, x: Sequence[int]) -> "SetFunction":
        return cls.from_callable(len(x), lambda X: sum_over(x, X))

    def __call__(self, X: int) -> int:
        return self.values[X]

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    def __neg__(self) -> "SetFunction":
        return SetFunction(self.n, tuple(-v for v in self.values))

    def __add__(self, other: "SetFunction") -> "SetFunction":
        _same_ground(self, other)
        return SetFunction(self.n, tuple(a + b for a, b in zip(self.values, other.values)))


def _same_ground(f: SetFunction, g: SetFunction) -> None:
    if f.n != g.n:
        raise ValueError(f"ground sets differ: n={f.n} vs n={g.n}")


# -- submodularity -------------------------------------------------------------

def submodular_violation(f: SetFunction) -> tuple[int, int] | None:
    """First pair ``(X, Y)`` with ``f(X) + f(Y) < f(X|Y) + f(X&Y)``, if any.

    Uses the local form: it suffices to test ``X + i`` and ``X + j`` for
    ``i != j`` outside ``X``.  The reported pair is of that shape.
    """
    n = f.n
    for X in subsets(n):
        free = [i for i in range(n) if not X >> i & 1]
        for a, i in enumerate(free):
            Xi = X | 1 << i
            for j in free[a + 1:]:
                Xj = X | 1 << j
                if f(Xi) + f(Xj) < f(Xi | Xj) + f(X):
                    return Xi, Xj
    return None


def is_submodular(f: SetFunction) -> bool:
    return submodular_violation(f) is None


def is_submodular_pairwise(f: SetFunction) -> bool:
    """Direct check of the defining inequality over all ``4^n`` pairs."""
    N = 1 << f.n
    return all(
        f(X) + f(Y) >= f(X | Y) + f(X & Y) for X in range(N) for Y in range(N)
    )


def is_supermodular(g: SetFunction) -> bool:
    return is_submodular(-g)


def is_modular(f: SetFunction) -> bool:
    return is_submodular(f) and is_supermodular(f)


def dual_sup(f: SetFunction) -> SetFunction:
    """``f#(X) = f(E) - f(E - X)``.  Self-inverse; maps sub- to supermodular."""
    E = f.ground
    return SetFunction.from_callable(f.n, lambda X: f(E) - f(E & ~X))


def _relabel(A: int, n: int) -> tuple[list[int], Callable[[int], int]]:
    """Elements of ``A`` (0-based) and a map from new masks on ``[|A|]`` to old masks."""
    idx = [e - 1 for e in elements_of(A)]

    def lift(Y: int) -> int:
        X = 0
        for k, i in enumerate(idx):
            if Y >> k & 1:
                X |= 1 << i
        return X

    return idx, lift


def restrict(f: SetFunction, A: int) -> SetFunction:
    """``f^A`` on ``2^A``; the elements of ``A`` are renumbered ``1..|A|`` in order."""
    if A == 0 or A & ~f.ground:
        raise ValueError(f"restriction needs a nonempty subset of [{f.n}], got {format_subset(A)}")
    idx, lift = _relabel(A, f.n)
    return SetFunction.from_callable(len(idx), lambda Y: f(lift(Y)))


def contract(f: SetFunction, A: int) -> SetFunction:
    """``f_A(X) = f(X | A) - f(A)`` on ``2^(E - A)``, renumbered like :func:`restrict`."""
    if A == f.ground or A & ~f.ground:
        raise ValueError(f"contraction needs a proper subset of [{f.n}], got {format_subset(A)}")
    rest = f.ground & ~A
    idx, lift = _relabel(rest, f.n)
    return SetFunction.from_callable(len(idx), lambda Y: f(lift(Y) | A) - f(A))


# -- polyhedra -----------------------------------------------------------------

def greedy_vertex(f: SetFunction, ordering: Sequence[int]) -> IntVector:
    """Edmonds' greedy vertex of ``B(f)`` for an element sequence (1-based)."""
    if sorted(ordering) != list(range(1, f.n + 1)):
        raise ValueError(f"not an ordering of [{f.n}]: {tuple(ordering)}")
    x = [0] * f.n
    prefix = 0
    for e in ordering:
        nxt = prefix | 1 << (e - 1)
        x[e - 1] = f(nxt) - f(prefix)
        prefix = nxt
    return tuple(x)


def base_vertices(f: SetFunction) -> set[IntVector]:
    return {greedy_vertex(f, p) for p in permutations(range(1, f.n + 1))}


def in_submodular_polyhedron(f: SetFunction, x: Sequence[int]) -> bool:
    return all(sum_over(x, X) <= f(X) for X in subsets(f.n))


def in_base(f: SetFunction, x: Sequence[int]) -> bool:
    return sum(x) == f(f.ground) and in_submodular_polyhedron(f, x)


def in_supermodular_polyhedron(g: SetFunction, x: Sequence[int]) -> bool:
    return all(sum_over(x, X) >= g(X) for X in subsets(g.n))


def in_base_sup(g: SetFunction, x: Sequence[int]) -> bool:
    return sum(x) == g(g.ground) and in_supermodular_polyhedron(g, x)


def integrality_check(f: SetFunction) -> bool:
    # Regression guard: the representation is integral, so this only fails
    # if greedy_vertex ever stops returning ints.
    return all(all(isinstance(c, int) for c in v) for v in base_vertices(f))


def box_points(lower: Sequence[int], upper: Sequence[int],
               keep: Callable[[tuple[int, ...]], bool]) -> Iterator[IntVector]:
    """Depth-first enumeration of the box with a prefix-pruning predicate.

    ``keep`` receives partial tuples and must be monotone: if it rejects a
    prefix, every extension is rejected too.
    """
    n = len(lower)
    stack: list[tuple[int, ...]] = [()]
    while stack:
        prefix = stack.pop()
        k = len(prefix)
        if k == n:
            yield prefix
            continue
        for c in range(upper[k], lower[k] - 1, -1):
            cand = prefix + (c,)
            if keep(cand):
                stack.append(cand)


def _prefix_filter(upper_fn, lower_fn):
    """Prefix predicate checking ``lower(X) <= x(X) <= upper(X)`` on new subsets."""

    def keep(prefix: tuple[int, ...]) -> bool:
        k = len(prefix)
        top = 1 << (k - 1)
        for rest in submasks(top - 1):
            X = rest | top
            s = sum_over(prefix, X)
            if upper_fn is not None and s > upper_fn(X):
                return False
            if lower_fn is not None and s < lower_fn(X):
                return False
        return True

    return keep


def base_points(f: SetFunction) -> list[IntVector]:
    """Integer points of ``B(f)`` in lexicographic order."""
    E = f.ground
    fs = dual_sup(f)
    lower = [fs(1 << i) for i in range(f.n)]
    upper = [f(1 << i) for i in range(f.n)]
    pts = [
        x for x in box_points(lower, upper, _prefix_filter(f, fs))
        if sum(x) == f(E)
    ]
    return sorted(pts)


# -- generalized polymatroids and strong maps ------------------------------------

@dataclass(frozen=True)
class GPolymatroid:
    f: SetFunction
    g: SetFunction

    def __post_init__(self):
        _same_ground(self.f, self.g)
        if not is_submodular(self.f):
            raise ValueError("upper bound f of a g-polymatroid must be submodular")
        if not is_supermodular(self.g):
            raise ValueError("lower bound g of a g-polymatroid must be supermodular")
        bad = gpm_violation(self.f, self.g)
        if bad is not None:
            X, Y = bad
            raise ValueError(
                f"cross inequality fails at X={format_subset(X)}, Y={format_subset(Y)}")

    @property
    def n(self) -> int:
        return self.f.n


def gpm_violation(f: SetFunction, g: SetFunction) -> tuple[int, int] | None:
    """First ``(X, Y)`` breaking ``f(X) - g(Y) >= f(X - Y) - g(Y - X)``."""
    _same_ground(f, g)
    N = 1 << f.n
    for X in range(N):
        for Y in range(N):
            if f(X) - g(Y) < f(X & ~Y) - g(Y & ~X):
                return X, Y
    return None


def is_gpolymatroid(f: SetFunction, g: SetFunction) -> bool:
    return gpm_violation(f, g) is None


def gpm_points(P: GPolymatroid) -> list[IntVector]:
    """Integer points of ``P(f, g)``."""
    f, g = P.f, P.g
    lower = [g(1 << i) for i in range(P.n)]
    upper = [f(1 << i) for i in range(P.n)]
    return sorted(box_points(lower, upper, _prefix_filter(f, g)))


def is_weak_map(f1: SetFunction, f2: SetFunction) -> bool:
    """``P(f2)`` inside ``P(f1)``, decided pointwise as ``f2 <= f1``."""
    _same_ground(f1, f2)
    return all(a <= b for a, b in zip(f2.values, f1.values))


def strong_map_violation(f1: SetFunction, f2: SetFunction) -> tuple[int, int] | None:
    """First ``(X, Z)`` with ``f2(Z|X) - f2(X) > f1(Z|X) - f1(X)``."""
    _same_ground(f1, f2)
    E = f1.ground
    for X in subsets(f1.n):
        if X == E:
            continue
        for Z in submasks(E & ~X):
            if f2(Z | X) - f2(X) > f1(Z | X) - f1(X):
                return X, Z
    return None


def is_strong_map(f1: SetFunction, f2: SetFunction) -> bool:
    return strong_map_violation(f1, f2) is None


def is_strong_map_sequence(fs: Sequence[SetFunction]) -> bool:
    return all(is_strong_map(fs[i + 1], fs[i]) for i in range(len(fs) - 1))


class ConsistencyError(RuntimeError):
    """Two routes that must agree did not: an implementation bug or a counterexample."""


def strongmap_gpm_equivalence(f: SetFunction, g: SetFunction) -> bool:
    """Decide the g-polymatroid property both directly and via ``(f, g#)``."""
    direct = is_gpolymatroid(f, g)
    via_map = is_strong_map(f, dual_sup(g))
    if direct != via_map:
        raise ConsistencyError(
            f"g-polymatroid test says {direct}, strong-map test says {via_map} "
            f"for f={f.values}, g={g.values}"
        )
    return direct


def project_base_to_gpm(f: SetFunction, e: int) -> GPolymatroid:
    """Projection of ``B(f)`` along axis ``e`` (1-based) as ``P(f', g')`` on ``E - e``."""
    if not 1 <= e <= f.n:
        raise ValueError(f"element {e} not in [{f.n}]")
    if f.n < 2:
        raise ValueError("projection needs n >= 2")
    rest = f.ground & ~(1 << (e - 1))
    return GPolymatroid(restrict(f, rest), restrict(dual_sup(f), rest))


def section_of_gpm(P: GPolymatroid, alpha: int) -> SetFunction:
    """Submodular ``f'`` with ``B(f')`` the integer section of ``P`` at ``x(E) = alpha``."""
    E = P.f.ground
    lo, hi = P.g(E), P.f(E)
    if not lo <= alpha <= hi:
        raise ValueError(f"alpha={alpha} outside [{lo}, {hi}]")
    pts = [x for x in gpm_points(P) if sum(x) == alpha]
    if not pts:
        raise ValueError(f"empty section at alpha={alpha}; is P a g-polymatroid?")
    return SetFunction.from_callable(P.n, lambda X: max(sum_over(x, X) for x in pts) if X else 0)


# -- permutohedra ----------------------------------------------------------------

def permutohedron_rank(n: int) -> SetFunction:
    """``f(X) = sum_{i=1}^{|X|} (n - i + 1)``."""
    check_ground(n, 2)
    table = [0]
    for k in range(1, n + 1):
        table.append(table[-1] + n - k + 1)
    return SetFunction.from_callable(n, lambda X: table[X.bit_count()])


def support_function(V: Iterable[Sequence[int]], n: int) -> SetFunction:
    """``f_V(X) = max_{v in V} v(X)``, shifted so ``f_V(empty) = 0``."""
    V = list(V)
    return SetFunction.from_callable(n, lambda X: max(sum_over(v, X) for v in V) if X else 0)


def is_sub_permutohedron(V: Iterable[Sequence[int]]) -> bool:
    """Whether ``conv(V)`` is a base polyhedron spanned by permutation vectors."""
    V = {tuple(v) for v in V}
    if not V:
        raise ValueError("vertex set must be nonempty")
    if not all(is_permutation_vector(v) for v in V):
        return False
    n = len(next(iter(V)))
    if n == 1:
        return True
    h = support_function(V, n)
    return is_submodular(h) and base_vertices(h) <= V
