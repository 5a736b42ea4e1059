"""JSON formats for set functions and discrete functions.

Set functions: ``{"n": 2, "values": {"": 0, "1": 1, "2": 0, "1,2": 0}}`` with
all ``2^n`` keys present; keys are comma-joined sorted elements.

Discrete functions: ``{"n": 2, "points": [{"x": [1, 0], "f": 1}, ...]}``;
omitted points are off the domain.

Either document may carry ``"kind"``: ``setfn``, ``discretefn`` or ``vgm``.
A ``vgm`` document uses the set-function layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .discrete import DiscreteFn, vgm_from_setfunction
from .setcore import elements_of, mask_of
from .submodular import MAX_N, SetFunction

KINDS = ("setfn", "discretefn", "vgm")


class InputError(ValueError):
    """Malformed instance file; the message names the offending key."""


@dataclass(frozen=True)
class Instance:
    kind: str
    payload: SetFunction | DiscreteFn

    def as_discrete(self) -> DiscreteFn:
        if isinstance(self.payload, DiscreteFn):
            return self.payload
        if self.kind == "vgm":
            return vgm_from_setfunction(self.payload)
        raise InputError(f"a {self.kind} instance is not a discrete function")


def subset_key(X: int) -> str:
    return ",".join(map(str, elements_of(X)))


def _parse_key(key: str, n: int) -> int:
    if key == "":
        return 0
    try:
        elems = [int(t) for t in key.split(",")]
    except ValueError:
        raise InputError(f"values[{key!r}]: key is not a comma-joined element list") from None
    if elems != sorted(set(elems)):
        raise InputError(f"values[{key!r}]: elements must be sorted and distinct")
    if any(not 1 <= e <= n for e in elems):
        raise InputError(f"values[{key!r}]: elements must lie in 1..{n}")
    return mask_of(elems)


def _int_field(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise InputError(f"{where}: missing {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def _n(doc: dict) -> int:
    n = _int_field(doc, "n", "document")
    if not 1 <= n <= MAX_N:
        raise InputError(f"document.n: must be in 1..{MAX_N}, got {n}")
    return n


def setfunction_from_json(doc: dict) -> SetFunction:
    n = _n(doc)
    raw = doc.get("values")
    if not isinstance(raw, dict):
        raise InputError("document.values: expected an object keyed by subsets")
    table: dict[int, int] = {}
    for key, v in raw.items():
        X = _parse_key(key, n)
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"values[{key!r}]: expected an integer, got {v!r}")
        table[X] = v
    missing = [subset_key(X) for X in range(1 << n) if X not in table]
    if missing:
        raise InputError(f"values: {len(missing)} subsets missing, first {missing[0]!r}")
    if table[0] != 0:
        raise InputError("values['']: must be 0")
    return SetFunction(n, tuple(table[X] for X in range(1 << n)))


def discretefn_from_json(doc: dict) -> DiscreteFn:
    n = _n(doc)
    raw = doc.get("points")
    if not isinstance(raw, list) or not raw:
        raise InputError("document.points: expected a nonempty list")
    entries: dict[tuple[int, ...], int] = {}
    for k, p in enumerate(raw):
        where = f"points[{k}]"
        if not isinstance(p, dict):
            raise InputError(f"{where}: expected an object")
        x = p.get("x")
        if (not isinstance(x, list) or len(x) != n
                or any(isinstance(c, bool) or not isinstance(c, int) for c in x)):
            raise InputError(f"{where}.x: expected {n} integers")
        v = _int_field(p, "f", where)
        if tuple(x) in entries:
            raise InputError(f"{where}.x: duplicate point {tuple(x)}")
        entries[tuple(x)] = v
    return DiscreteFn(n, entries)


def instance_from_json(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object")
    kind = doc.get("kind")
    if kind is None:
        kind = "discretefn" if "points" in doc else "setfn"
    if kind not in KINDS:
        raise InputError(f"document.kind: expected one of {KINDS}, got {kind!r}")
    if kind == "discretefn":
        return Instance(kind, discretefn_from_json(doc))
    return Instance(kind, setfunction_from_json(doc))


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_json(doc)


def load(path: str) -> Instance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def setfunction_to_json(f: SetFunction, kind: str = "setfn") -> dict:
    return {"kind": kind, "n": f.n,
            "values": {subset_key(X): f(X) for X in range(1 << f.n)}}


def discretefn_to_json(F: DiscreteFn) -> dict:
    return {"kind": "discretefn", "n": F.n,
            "points": [{"x": list(x), "f": v} for x, v in F.items()]}
