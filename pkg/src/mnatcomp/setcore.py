"""Ground-set arithmetic on bitmask subsets, integer points and flags.

Element ``i`` of ``E = [n]`` lives on bit ``i - 1``.  Integer points are plain
tuples of ``int``; covectors are tuples of :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, Sequence

INF = math.inf

IntVector = tuple[int, ...]
Covector = tuple[Fraction, ...]
Flag = tuple[int, ...]


def check_ground(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise ValueError(f"ground set size must be an integer >= {minimum}, got {n!r}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def size(mask: int) -> int:
    return mask.bit_count()


def subsets(n: int) -> range:
    return range(1 << n)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_subset(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def sum_over(x: Sequence[int], X: int) -> int:
    """``x(X)``; zero for the empty set."""
    return sum(x[e - 1] for e in elements_of(X))


def char_vector(X: int, n: int) -> IntVector:
    return tuple((X >> i) & 1 for i in range(n))


def mask_of_vector(v: Sequence[int]) -> int:
    """Inverse of :func:`char_vector` for 0/1 vectors."""
    mask = 0
    for i, c in enumerate(v):
        if c not in (0, 1):
            raise ValueError(f"not a 0/1 vector: {tuple(v)}")
        if c:
            mask |= 1 << i
    return mask


def unit(i: int, n: int) -> IntVector:
    """``chi_i`` for a 0-based coordinate index."""
    return tuple(1 if k == i else 0 for k in range(n))


def vadd(x: Sequence[int], y: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[int], y: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(x, y))


def total(x: Sequence[int]) -> int:
    return sum(x)


def pairing(w: Sequence[Fraction | int], x: Sequence[int]) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(w, x)), Fraction(0))


# -- rationals -----------------------------------------------------------------

def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floating point values are not accepted for covectors")
    return Fraction(v)


def covector(values: Iterable) -> Covector:
    return tuple(as_fraction(v) for v in values)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a 'p/q' string or integer, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def scale_to_integers(w: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    """Return ``(a, d)`` with ``w = a / d`` and ``d > 0`` the lcm of denominators."""
    d = 1
    for q in w:
        d = math.lcm(d, Fraction(q).denominator)
    return tuple(int(Fraction(q) * d) for q in w), d


# -- permutations and flags ----------------------------------------------------
#
# A permutation is held as its permutation vector v (a rearrangement of 1..n).
# The flag of v consists of the sets of elements carrying the i largest values,
# which makes sum_i chi_{F_i} = v hold coordinatewise.  The "ordering" helpers
# read a sequence of elements left to right and take prefixes instead.

def is_permutation_vector(v: Sequence[int]) -> bool:
    return sorted(v) == list(range(1, len(v) + 1))


def all_permutation_vectors(n: int) -> list[IntVector]:
    return [tuple(p) for p in permutations(range(1, n + 1))]


def check_flag(flag: Sequence[int], n: int) -> None:
    if len(flag) != n:
        raise ValueError(f"a complete flag on [{n}] needs {n} sets, got {len(flag)}")
    prev = 0
    for i, F in enumerate(flag, start=1):
        if F & ~full_mask(n):
            raise ValueError(f"set {format_subset(F)} is not inside [{n}]")
        if size(F) != i or (F & prev) != prev:
            raise ValueError(
                f"not a complete flag: F_{i} = {format_subset(F)} after {format_subset(prev)}"
            )
        prev = F


def flag_of_permutation(v: Sequence[int]) -> Flag:
    n = len(v)
    if not is_permutation_vector(v):
        raise ValueError(f"not a permutation vector: {tuple(v)}")
    by_value = sorted(range(n), key=lambda e: -v[e])
    flag, F = [], 0
    for e in by_value:
        F |= 1 << e
        flag.append(F)
    return tuple(flag)


def permutation_of_flag(flag: Sequence[int], n: int) -> IntVector:
    check_flag(flag, n)
    v = [0] * n
    prev = 0
    for i, F in enumerate(flag, start=1):
        (e,) = elements_of(F & ~prev)
        v[e - 1] = n + 1 - i
        prev = F
    return tuple(v)


def flag_of_ordering(order: Sequence[int]) -> Flag:
    """Prefix flag of an element sequence ``(pi(1), ..., pi(n))``."""
    n = len(order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"not an ordering of [{n}]: {tuple(order)}")
    flag, F = [], 0
    for e in order:
        F |= 1 << (e - 1)
        flag.append(F)
    return tuple(flag)


def ordering_of_flag(flag: Sequence[int], n: int) -> tuple[int, ...]:
    check_flag(flag, n)
    out, prev = [], 0
    for F in flag:
        (e,) = elements_of(F & ~prev)
        out.append(e)
        prev = F
    return tuple(out)


def flag_vector(flag: Sequence[int], n: int) -> IntVector:
    """``sum_i chi_{F_i}``."""
    v = [0] * n
    for F in flag:
        for e in elements_of(F):
            v[e - 1] += 1
    return tuple(v)


def format_flag(flag: Sequence[int]) -> str:
    return " < ".join(["{}"] + [format_subset(F) for F in flag])
