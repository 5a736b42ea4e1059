"""Seeded random instances for the tests and the CLI.

Valid instances come from closed families (sums of concave/convex functions
of ``|X & A|`` or ``x(A)`` over laminar families, plus linear terms), then
optionally get single-point perturbations that are kept only when they
survive the exchange-axiom check.
"""

from __future__ import annotations

import random
from typing import Callable

from .discrete import DiscreteFn, is_mnat_convex, vgm_from_setfunction
from .setcore import full_mask, sum_over
from .submodular import SetFunction


def _random_subset(rng: random.Random, n: int) -> int:
    return rng.randrange(1, 1 << n)


def _concave_table(rng: random.Random, length: int, spread: int = 3) -> list[int]:
    """Nondecreasing concave integer sequence starting at 0."""
    incs = sorted((rng.randint(0, spread) for _ in range(length)), reverse=True)
    out = [0]
    for d in incs:
        out.append(out[-1] + d)
    return out


def _convex_table(rng: random.Random, length: int, spread: int = 3) -> list[int]:
    incs = sorted(rng.randint(-spread, spread) for _ in range(length))
    out = [0]
    for d in incs:
        out.append(out[-1] + d)
    return out


def random_submodular(n: int, rng: random.Random, terms: int = 3,
                      monotone: bool = False) -> SetFunction:
    """Sum of concave functions of ``|X & A|`` plus a modular part."""
    parts = []
    for _ in range(terms):
        A = _random_subset(rng, n)
        parts.append((A, _concave_table(rng, n)))
    lin = [rng.randint(0 if monotone else -2, 2) for _ in range(n)]

    def f(X: int) -> int:
        return sum(t[(X & A).bit_count()] for A, t in parts) + sum_over(lin, X)

    return SetFunction.from_callable(n, f)


def random_supermodular(n: int, rng: random.Random, terms: int = 3) -> SetFunction:
    return -random_submodular(n, rng, terms)


def truncation(f: SetFunction, k: int) -> SetFunction:
    """``min(f, k)``; a strong-map quotient of a monotone submodular ``f``."""
    return SetFunction.from_callable(f.n, lambda X: min(f(X), k) if X else 0)


def uniform_rank(k: int, n: int) -> SetFunction:
    return SetFunction.from_callable(n, lambda X: min(X.bit_count(), k))


def _laminar_family(rng: random.Random, n: int) -> list[int]:
    """Random laminar family on ``[n]`` containing ``E`` and every singleton."""
    fam = {full_mask(n)} | {1 << i for i in range(n)}
    blocks = [full_mask(n)]
    while blocks:
        B = blocks.pop()
        elems = [i for i in range(n) if B >> i & 1]
        if len(elems) <= 2 or rng.random() < 0.3:
            continue
        rng.shuffle(elems)
        cut = rng.randint(1, len(elems) - 1)
        for part in (elems[:cut], elems[cut:]):
            mask = sum(1 << i for i in part)
            fam.add(mask)
            blocks.append(mask)
    return sorted(fam)


def _laminar_convex(rng: random.Random, n: int, cap: int, spread: int = 3
                    ) -> Callable[[tuple[int, ...]], int]:
    fam = _laminar_family(rng, n)
    tables = {A: _convex_table(rng, cap * A.bit_count(), spread) for A in fam}
    lin = [rng.randint(-2, 2) for _ in range(n)]

    def f(x: tuple[int, ...]) -> int:
        v = sum(c * xi for c, xi in zip(lin, x))
        for A, t in tables.items():
            v += t[sum(x[i] for i in range(n) if A >> i & 1)]
        return v

    return f


def perturb(F: DiscreteFn, rng: random.Random, tries: int = 6) -> DiscreteFn:
    """Apply random single-point +-1 changes, keeping those that stay M-natural."""
    for _ in range(tries):
        x = rng.choice(F.dom)
        if not any(x):
            continue
        cand = dict(F.entries)
        cand[x] += rng.choice((-1, 1))
        G = DiscreteFn(F.n, cand)
        if is_mnat_convex(G):
            F = G
    return F


def random_vgm(n: int, rng: random.Random, perturbations: int = 6) -> DiscreteFn:
    """Random valuated generalized matroid with ``f(empty) = 0``."""
    phi = _laminar_convex(rng, n, cap=1)
    zero = phi((0,) * n)
    sf = SetFunction.from_callable(
        n, lambda X: phi(tuple((X >> i) & 1 for i in range(n))) - zero
    )
    return perturb(vgm_from_setfunction(sf), rng, perturbations)


def random_mnat(n: int, rng: random.Random, perturbations: int = 4) -> DiscreteFn:
    """Random M-natural convex function on a box cut by a plank ``a <= x(E) <= b``.

    The box is ``[0, u]`` with ``u_i`` in ``{1, 2}``; ``a < b`` keeps the
    domain full-dimensional.
    """
    u = [rng.choice((1, 2)) for _ in range(n)]
    top = sum(u)
    while True:
        a, b = sorted(rng.sample(range(top + 1), 2))
        if b - a >= 1:
            break
    phi = _laminar_convex(rng, n, cap=2)
    pts = {}

    def rec(prefix):
        if len(prefix) == n:
            if a <= sum(prefix) <= b:
                pts[tuple(prefix)] = phi(tuple(prefix))
            return
        for c in range(u[len(prefix)] + 1):
            rec(prefix + [c])

    rec([])
    return perturb(DiscreteFn(n, pts), rng, perturbations)


def random_instance(kind: str, n: int, seed: int):
    rng = random.Random(seed)
    if kind == "setfn":
        return random_submodular(n, rng)
    if kind == "vgm":
        return random_vgm(n, rng)
    if kind == "mnat":
        return random_mnat(n, rng)
    raise ValueError(f"unknown instance kind {kind!r}")

