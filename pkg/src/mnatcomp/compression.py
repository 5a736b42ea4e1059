"""Compression: infimal convolution of all sections of an M-natural convex function.

For ``f`` with bounded, full-dimensional domain, the compression is

    fhat(x) = min { sum_alpha f_(alpha)(y_alpha) : x = sum_alpha y_alpha }

over all levels ``alpha`` in ``I_f``.  It is M-convex, its conjugate is the
sum of the section conjugates and its domain is the Minkowski sum of the
section domains.  All three facts are checked exhaustively here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .discrete import (
    DiscreteFn,
    alpha_range,
    conjugate,
    is_full_dimensional,
    is_m_convex,
    require_mnat,
    section,
)
from .setcore import IntVector, vadd
from .submodular import ConsistencyError


class DomainError(ValueError):
    pass


def _convolve_tracked(acc: dict, G: DiscreteFn) -> dict:
    # acc: point -> (value, parts); parts is the tuple of summands so far.
    out: dict = {}
    g_items = G.items()
    for p in sorted(acc):
        pv, parts = acc[p]
        for y, gv in g_items:
            z = vadd(p, y)
            v = pv + gv
            cur = out.get(z)
            if cur is None or v < cur[0]:
                out[z] = (v, parts + (y,))
    return out


def convolve(F: DiscreteFn, G: DiscreteFn) -> DiscreteFn:
    """``(F box G)(z) = min { F(x) + G(y) : x + y = z }``."""
    if F.n != G.n:
        raise ValueError(f"ground sets differ: n={F.n} vs n={G.n}")
    acc = {x: (v, ()) for x, v in F.entries.items()}
    out = _convolve_tracked(acc, G)
    return DiscreteFn(F.n, {z: v for z, (v, _) in out.items()})


@dataclass(frozen=True)
class CompressionResult:
    source: DiscreteFn
    fhat: DiscreteFn
    levels: tuple[int, ...]
    splits: dict[IntVector, tuple[IntVector, ...]]

    def split(self, x: Sequence[int]) -> dict[int, IntVector]:
        """One optimal decomposition of ``x``, keyed by level."""
        return dict(zip(self.levels, self.splits[tuple(x)]))

    def sections(self) -> list[DiscreteFn]:
        return [section(self.source, a) for a in self.levels]


def compress(F: DiscreteFn, *, check: bool = True) -> CompressionResult:
    """Compress ``F``; sections are folded in ascending level order.

    With ``check`` the input is validated (exchange axiom, bounded and
    full-dimensional domain) and the output is asserted M-convex.
    """
    if check:
        require_mnat(F)
        if not is_full_dimensional(F):
            raise DomainError(
                "compression needs a full-dimensional domain: the domain points do not "
                f"affinely span Z^{F.n}"
            )
    levels = tuple(alpha_range(F))
    first = section(F, levels[0])
    acc = {x: (v, (x,)) for x, v in first.entries.items()}
    for a in levels[1:]:
        acc = _convolve_tracked(acc, section(F, a))
    fhat = DiscreteFn(F.n, {z: v for z, (v, _) in acc.items()})
    splits = {z: parts for z, (_, parts) in acc.items()}
    if check and not is_m_convex(fhat):
        raise ConsistencyError("compression output failed the M-convex exchange axiom")
    return CompressionResult(F, fhat, levels, splits)


@dataclass(frozen=True)
class ConjugateViolation:
    w: tuple[Fraction, ...]
    lhs: Fraction
    rhs: Fraction


def verify_conjugate_sum(F: DiscreteFn, ws: Iterable[Sequence[Fraction]],
                         result: CompressionResult | None = None) -> list[ConjugateViolation]:
    """Compare ``fhat*(w)`` with ``sum_alpha f_(alpha)*(w)``; returns mismatches."""
    result = result or compress(F)
    secs = result.sections()
    bad = []
    for w in ws:
        w = tuple(Fraction(c) for c in w)
        lhs = conjugate(result.fhat, w)
        rhs = sum((conjugate(s, w) for s in secs), Fraction(0))
        if lhs != rhs:
            bad.append(ConjugateViolation(w, lhs, rhs))
    return bad


def minkowski_sum(sets: Iterable[Iterable[Sequence[int]]]) -> set[IntVector]:
    it = iter(sets)
    acc = {tuple(x) for x in next(it)}
    for S in it:
        S = {tuple(y) for y in S}
        acc = {vadd(x, y) for x in acc for y in S}
    return acc


def verify_dom_minkowski(F: DiscreteFn, result: CompressionResult | None = None) -> bool:
    result = result or compress(F)
    return set(result.fhat.entries) == minkowski_sum(s.entries for s in result.sections())


def verify_splits(result: CompressionResult) -> list[IntVector]:
    """Points whose recorded split does not reproduce the point and its value."""
    F = result.source
    bad = []
    for x, parts in result.splits.items():
        ok = (
            len(parts) == len(result.levels)
            and all(sum(y) == a for y, a in zip(parts, result.levels))
            and tuple(map(sum, zip(*parts))) == x
            and sum(F(y) for y in parts) == result.fhat(x)
        )
        if not ok:
            bad.append(x)
    return bad
