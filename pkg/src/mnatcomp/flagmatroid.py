"""Matroids and flag matroids, plus the pipeline for valuated generalized matroids.

A valuated generalized matroid (VGM) is an M-natural convex function on the
full cube ``{0,1}^n``.  Its compression lives on the permutohedron; each
maximal cell of the compression yields one strip whose level sets are the
bases of a flag matroid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .compression import CompressionResult, DomainError, compress
from .discrete import (
    DiscreteFn,
    is_cube_domain,
    is_m_convex,
    mnat_violation,
    section,
)
from .setcore import (
    Covector,
    Flag,
    IntVector,
    all_permutation_vectors,
    check_flag,
    covector,
    elements_of,
    format_subset,
    is_permutation_vector,
    mask_of_vector,
)
from .strips import Cell, Strip, linearity_domain, strip_decomposition
from .submodular import (
    ConsistencyError,
    SetFunction,
    base_points,
    base_vertices,
    in_base,
    is_strong_map_sequence,
    is_submodular,
    permutohedron_rank,
    support_function,
)


def is_base_family(bases: Iterable[int]) -> bool:
    """Equicardinal family satisfying the base exchange axiom."""
    B = set(bases)
    if not B:
        raise ValueError("a base family must be nonempty")
    if len({b.bit_count() for b in B}) != 1:
        return False
    for B1 in B:
        for B2 in B:
            for e in elements_of(B1 & ~B2):
                drop = B1 & ~(1 << (e - 1))
                if not any(drop | (1 << (f - 1)) in B for f in elements_of(B2 & ~B1)):
                    return False
    return True


def rank_from_bases(bases: Iterable[int], n: int) -> SetFunction:
    B = list(set(bases))
    return SetFunction.from_callable(n, lambda X: max((X & b).bit_count() for b in B))


@dataclass(frozen=True)
class Matroid:
    n: int
    bases: frozenset[int]
    rank: SetFunction = field(repr=False)

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[int]) -> "Matroid":
        bases = frozenset(bases)
        if not is_base_family(bases):
            raise ValueError(f"not a base family: {sorted(map(format_subset, bases))}")
        return cls(n, bases, rank_from_bases(bases, n))

    @property
    def rank_value(self) -> int:
        return self.rank(self.rank.ground)


def uniform_matroid(k: int, n: int) -> Matroid:
    return Matroid.from_bases(n, (X for X in range(1 << n) if X.bit_count() == k))


def is_flag_matroid(ms: Sequence[Matroid]) -> bool:
    return is_strong_map_sequence([m.rank for m in ms])


@dataclass(frozen=True)
class FlagMatroid:
    matroids: tuple[Matroid, ...]

    def __post_init__(self):
        for a, m in enumerate(self.matroids):
            if m.rank_value != a:
                raise ValueError(f"level {a} has rank {m.rank_value}")
        if not is_flag_matroid(self.matroids):
            raise ValueError("rank functions do not form a strong map sequence")

    def is_uniform(self) -> bool:
        n = self.matroids[0].n
        return all(m.bases == uniform_matroid(a, n).bases for a, m in enumerate(self.matroids))


def _masks(points: Iterable[IntVector]) -> frozenset[int]:
    return frozenset(mask_of_vector(x) for x in points)


def strip_flag_matroid(strip: Strip) -> FlagMatroid:
    n = strip.values.n
    ms = []
    for a in sorted(strip.levels):
        bases = _masks(strip.levels[a])
        if not is_base_family(bases):
            raise ConsistencyError(f"level {a} of strip {strip.cell.witness} is not a base family")
        m = Matroid(n, bases, rank_from_bases(bases, n))
        if m.rank_value != a:
            raise ConsistencyError(f"level {a} has rank {m.rank_value}")
        ms.append(m)
    if not is_flag_matroid(ms):
        raise ConsistencyError(f"strip {strip.cell.witness} is not a flag matroid")
    return FlagMatroid(tuple(ms))


# -- VGM structure ---------------------------------------------------------------------

def require_vgm(F: DiscreteFn) -> None:
    if not is_cube_domain(F):
        raise DomainError("a VGM must be defined on every point of {0,1}^n")
    if F((0,) * F.n) != 0:
        raise DomainError("a VGM must take value 0 at the empty set")


def permutohedron_points(n: int) -> list[IntVector]:
    return base_points(permutohedron_rank(n))


def verify_permutohedron_dom(F: DiscreteFn, result: CompressionResult | None = None,
                             hull_check: bool = False) -> bool:
    """Domain of the compression equals the permutohedron lattice points.

    The vertex set is taken from the greedy vertices of the permutohedron
    rank function.  With ``hull_check`` it is recomputed independently by
    exact LP vertex tests on the domain itself.
    """
    require_vgm(F)
    result = result or compress(F)
    dom = set(result.fhat.entries)
    if dom != set(permutohedron_points(F.n)):
        return False
    verts = base_vertices(permutohedron_rank(F.n))
    if not verts <= dom or verts != set(all_permutation_vectors(F.n)):
        return False
    if hull_check:
        from .hull import hull_vertices

        if hull_vertices(sorted(dom)) != verts:
            return False
    return True


def cell_sub_permutohedron(cell: Cell) -> tuple[bool, set[IntVector]]:
    """Whether ``conv(cell)`` is a sub-permutohedron; also returns its vertex set.

    With ``V`` the permutation vectors in the cell, ``conv(cell)`` is a
    sub-permutohedron iff ``f_V`` is submodular, every greedy vertex of
    ``f_V`` lies in ``V``, and every cell point lies in ``B(f_V)``.
    """
    V = {x for x in cell.points if is_permutation_vector(x)}
    if not V:
        return False, set()
    n = len(next(iter(V)))
    h = support_function(V, n)
    if not is_submodular(h):
        return False, V
    verts = base_vertices(h)
    if not verts <= V:
        return False, V
    ok = all(in_base(h, x) for x in cell.points)
    return ok, verts


class NonGenericError(ValueError):
    def __init__(self, level: int, tied: Sequence[int]):
        names = ", ".join(format_subset(X) for X in sorted(tied))
        super().__init__(f"non-generic w: level {level} has tied minimizers {names}")
        self.level = level
        self.tied = tuple(sorted(tied))


def generic_flag(F: DiscreteFn, w: Sequence[Fraction]) -> Flag:
    """The complete flag of singleton level minimizers for a generic ``w``."""
    require_vgm(F)
    w = covector(w)
    flag = []
    prev = 0
    for a in range(1, F.n + 1):
        D = _masks(linearity_domain(section(F, a), w))
        if len(D) != 1:
            raise NonGenericError(a, D)
        (X,) = D
        if X & prev != prev:
            raise ConsistencyError(f"level minimizers are not nested at level {a}")
        flag.append(X)
        prev = X
    check_flag(flag, F.n)
    return tuple(flag)


# -- end-to-end report -----------------------------------------------------------------

@dataclass
class StripRecord:
    witness: Covector
    offset: Fraction
    levels: dict[int, list[int]]
    flag_ok: bool
    sub_permutohedron: bool
    cell_points: int
    cell_vertices: int


@dataclass
class StripReport:
    n: int
    strips: list[StripRecord] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)
    failure: str | None = None
    reproducer: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None and all(self.verdicts.values())

    def _fail(self, name: str, reproducer: dict) -> "StripReport":
        self.verdicts[name] = False
        self.failure = name
        self.reproducer = reproducer
        return self


def strip_report(F: DiscreteFn) -> StripReport:
    """Run compress, cells, strips and flag matroids; stop at the first failure.

    Checks run in dependency order.  Each failed verdict records the name of
    the check and a small machine-readable reproducer.
    """
    report = StripReport(F.n)
    try:
        require_vgm(F)
    except DomainError as exc:
        return report._fail("vgm_domain", {"error": str(exc)})
    report.verdicts["vgm_domain"] = True

    v = mnat_violation(F)
    if v is not None:
        return report._fail("exchange_axiom", {"clause": v.clause, "x": list(v.x),
                                               "y": list(v.y), "i": v.i})
    report.verdicts["exchange_axiom"] = True

    result = compress(F, check=False)
    if not is_m_convex(result.fhat):
        return report._fail("compression_m_convex", {})
    report.verdicts["compression_m_convex"] = True

    if not verify_permutohedron_dom(F, result):
        return report._fail("permutohedron_domain", {
            "domain": [list(x) for x in result.fhat.dom]})
    report.verdicts["permutohedron_domain"] = True

    try:
        strips = strip_decomposition(F, result)
    except ConsistencyError as exc:
        return report._fail("strip_decomposition", {"error": str(exc)})
    report.verdicts["strip_decomposition"] = True

    for s in strips:
        levels = {a: sorted(_masks(D)) for a, D in s.levels.items()}
        try:
            strip_flag_matroid(s)
            flag_ok = True
        except ConsistencyError:
            flag_ok = False
        sub_ok, verts = cell_sub_permutohedron(s.cell)
        report.strips.append(StripRecord(s.cell.witness, s.cell.offset, levels, flag_ok,
                                         sub_ok, len(s.cell), len(verts)))
        if not flag_ok:
            return report._fail("flag_matroid", {"witness": list(map(str, s.cell.witness))})
        if not sub_ok:
            return report._fail("sub_permutohedron", {
                "witness": list(map(str, s.cell.witness)),
                "cell": [list(x) for x in sorted(s.cell.points)]})
    report.verdicts["flag_matroid"] = True
    report.verdicts["sub_permutohedron"] = True

    witnesses = {s.cell.witness for s in strips}
    report.verdicts["strip_cell_bijection"] = len(witnesses) == len(strips)
    if not report.verdicts["strip_cell_bijection"]:
        return report._fail("strip_cell_bijection", {})
    return report
