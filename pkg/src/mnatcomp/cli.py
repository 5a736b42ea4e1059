"""Command-line interface.

Every command prints a JSON report on stdout (``export --format csv`` prints
CSV instead) and a short summary with timing on stderr.  Exit status is 0
when every verdict passes, 1 when some verification fails and 2 for input
errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import random
import sys
import time
from fractions import Fraction
from typing import Any, Callable

from . import io
from .compression import (
    DomainError,
    compress,
    verify_conjugate_sum,
    verify_dom_minkowski,
    verify_splits,
)
from .discrete import DiscreteFn, is_full_dimensional, is_m_convex, mnat_violation
from .flagmatroid import require_vgm, strip_report
from .generate import random_instance
from .hull import hull_vertices
from .setcore import elements_of, format_rational, parse_rational
from .strips import maximal_cells, parametric_sweep, strip_decomposition, sweep_bruteforce
from .submodular import ConsistencyError, SetFunction, submodular_violation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Report:
    def __init__(self, command: str, digest: str):
        self.command = command
        self.digest = digest
        self.verdicts: list[dict[str, Any]] = []
        self.result: dict[str, Any] = {}

    def verdict(self, name: str, ok: bool, counterexample: Any = None) -> bool:
        entry = {"name": name, "pass": bool(ok)}
        if not ok and counterexample is not None:
            entry["counterexample"] = counterexample
        self.verdicts.append(entry)
        return ok

    @property
    def ok(self) -> bool:
        return all(v["pass"] for v in self.verdicts)

    def to_json(self) -> dict:
        return {"command": self.command, "instance": self.digest,
                "verdicts": self.verdicts, "result": self.result}


def _q(v: Fraction | int) -> str:
    return format_rational(v)


def _digest(inst: io.Instance) -> str:
    if isinstance(inst.payload, SetFunction):
        doc = io.setfunction_to_json(inst.payload, inst.kind)
    else:
        doc = io.discretefn_to_json(inst.payload)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _sample_ws(n: int, seed: int, k: int) -> list[tuple[Fraction, ...]]:
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(n))
            for _ in range(k)]


def _guard(n: int, max_n: int) -> None:
    if n > max_n:
        raise io.InputError(
            f"n={n} exceeds --max-n={max_n}; exhaustive checks scale like 4^n "
            f"(about {4 ** n} exchange pairs on a 0/1 domain)"
        )


def _discrete(inst: io.Instance) -> DiscreteFn:
    return inst.as_discrete()


def _exchange_verdict(report: Report, F: DiscreteFn) -> bool:
    v = mnat_violation(F)
    cx = None if v is None else {"clause": v.clause, "x": list(v.x), "y": list(v.y), "i": v.i}
    return report.verdict("exchange_axiom", v is None, cx)


# -- commands ----------------------------------------------------------------------

def cmd_validate(inst: io.Instance, args, report: Report) -> None:
    if inst.kind == "setfn":
        f = inst.payload
        bad = submodular_violation(f)
        cx = None if bad is None else {"X": elements_of(bad[0]), "Y": elements_of(bad[1])}
        report.verdict("submodular", bad is None, cx)
        return
    F = _discrete(inst)
    if inst.kind == "vgm":
        try:
            require_vgm(F)
            report.verdict("vgm_domain", True)
        except DomainError as exc:
            report.verdict("vgm_domain", False, {"error": str(exc)})
    _exchange_verdict(report, F)


def _compress_checked(F: DiscreteFn, args, report: Report):
    if not _exchange_verdict(report, F) and not args.force:
        return None
    if not report.verdict("full_dimensional", is_full_dimensional(F),
                          {"error": "domain does not affinely span Z^n"}):
        return None
    return compress(F, check=False)


def cmd_compress(inst: io.Instance, args, report: Report) -> None:
    F = _discrete(inst)
    result = _compress_checked(F, args, report)
    if result is None:
        return
    report.verdict("compression_m_convex", is_m_convex(result.fhat))
    bad = verify_conjugate_sum(F, _sample_ws(F.n, args.seed, args.samples), result)
    cx = None if not bad else {"w": [_q(c) for c in bad[0].w],
                               "fhat_conj": _q(bad[0].lhs), "section_sum": _q(bad[0].rhs)}
    report.verdict("conjugate_sum", not bad, cx)
    report.verdict("dom_minkowski", verify_dom_minkowski(F, result))
    bad_splits = verify_splits(result)
    report.verdict("splits", not bad_splits, [list(x) for x in bad_splits[:1]] or None)
    report.result = {
        "levels": list(result.levels),
        "fhat": io.discretefn_to_json(result.fhat)["points"],
        "splits": [{"x": list(x), "parts": [list(y) for y in result.splits[x]]}
                   for x in result.fhat.dom],
    }


def _cells_json(strips) -> list[dict]:
    out = []
    for s in strips:
        out.append({
            "witness": [_q(c) for c in s.cell.witness],
            "offset": _q(s.cell.offset),
            "points": [list(x) for x in sorted(s.cell.points)],
            "levels": {str(a): [list(x) for x in sorted(s.levels[a], reverse=True)]
                       for a in sorted(s.levels)},
        })
    return out


def cmd_strips(inst: io.Instance, args, report: Report) -> None:
    F = _discrete(inst)
    result = _compress_checked(F, args, report)
    if result is None:
        return
    try:
        strips = strip_decomposition(F, result)
    except (ConsistencyError, ValueError) as exc:
        report.verdict("strip_decomposition", False, {"error": str(exc)})
        return
    report.verdict("strip_decomposition", True)
    report.result = {"cells": _cells_json(strips)}


def cmd_sweep(inst: io.Instance, args, report: Report) -> None:
    F = _discrete(inst)
    try:
        w = tuple(parse_rational(t) for t in args.w.split(",")) if args.w else (Fraction(0),) * F.n
    except ValueError as exc:
        raise io.InputError(f"--w: {exc}") from None
    if len(w) != F.n:
        raise io.InputError(f"--w: expected {F.n} coordinates, got {len(w)}")
    _exchange_verdict(report, F)
    try:
        sw = parametric_sweep(F, w)
    except (ConsistencyError, ValueError) as exc:
        report.verdict("level_minima_convex", False, {"error": str(exc)})
        return
    report.verdict("level_minima_convex", True)
    mismatch = None
    for lam in sw.probe_points():
        if sw.optimal_set(lam) != sweep_bruteforce(F, w, lam):
            mismatch = {"lambda": _q(lam)}
            break
    report.verdict("sweep_matches_bruteforce", mismatch is None, mismatch)
    report.result = {
        "w": [_q(c) for c in w],
        "minima": {str(a): _q(m) for a, m in sorted(sw.minima.items())},
        "breakpoints": [_q(b) for b in sw.breakpoints],
        "ranks": list(sw.ranks),
        "domains": {str(a): [list(x) for x in sorted(D)] for a, D in sorted(sw.domains.items())},
    }


def cmd_flags(inst: io.Instance, args, report: Report) -> None:
    F = _discrete(inst)
    rep = strip_report(F)
    for name, ok in rep.verdicts.items():
        report.verdict(name, ok, rep.reproducer if name == rep.failure else None)
    report.result = {"strips": [{
        "witness": [_q(c) for c in s.witness],
        "offset": _q(s.offset),
        "levels": {str(a): [elements_of(X) for X in Xs] for a, Xs in sorted(s.levels.items())},
        "flag_ok": s.flag_ok,
        "sub_permutohedron": s.sub_permutohedron,
        "cell_points": s.cell_points,
        "cell_vertices": s.cell_vertices,
    } for s in rep.strips]}


def cmd_export(inst: io.Instance, args, report: Report) -> None:
    F = _discrete(inst)
    result = _compress_checked(F, args, report)
    if result is None:
        return
    cells = maximal_cells(result.fhat)
    rows = []
    for cid, c in enumerate(cells):
        for x in sorted(c.points):
            rows.append((x, result.fhat(x), cid))
    if args.format == "csv":
        buf = _io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["point", "value", "cell"])
        for x, v, cid in rows:
            wr.writerow([" ".join(map(str, x)), v, cid])
        report.result = {"csv": buf.getvalue()}
        return
    pts = result.fhat.dom
    report.result = {
        "vertices": [list(v) for v in sorted(hull_vertices(pts))],
        "points": [{"x": list(x), "f": result.fhat(x)} for x in pts],
        "cells": [{"id": cid, "witness": [_q(q) for q in c.witness],
                   "points": [list(x) for x in sorted(c.points)]}
                  for cid, c in enumerate(cells)],
    }


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "compress": cmd_compress,
    "strips": cmd_strips,
    "sweep": cmd_sweep,
    "flags": cmd_flags,
    "export": cmd_export,
}


HELP = {
    "validate": "check submodularity or the exchange axiom",
    "compress": "compress and check the conjugate and domain identities",
    "strips": "list the maximal cells of the compression",
    "sweep": "minimize f - <w, x> level by level",
    "flags": "strip decomposition and flag matroid checks for a VGM",
    "export": "vertices, points and cells as JSON or CSV",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mnatcomp",
                                description="Compression of M-natural convex functions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled covectors")
    common.add_argument("--samples", type=int, default=100, help="sampled covectors per check")
    common.add_argument("--max-n", type=int, default=6, help="refuse larger ground sets")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=HELP[name])
        sp.add_argument("path", help="instance JSON file")
        if name in ("compress", "strips", "export"):
            sp.add_argument("--force", action="store_true",
                            help="continue past a failed exchange-axiom verdict")
        if name == "sweep":
            sp.add_argument("--w", default=None, help="comma-separated rationals, default 0")
        if name == "export":
            sp.add_argument("--format", choices=("json", "csv"), default="json")
    gp = sub.add_parser("gen", parents=[common], help="emit a seeded random valid instance")
    gp.add_argument("kind", choices=("setfn", "vgm", "mnat"))
    gp.add_argument("--n", type=int, default=3)
    return p


def _gen(args) -> int:
    if args.n > args.max_n:
        print(f"error: n={args.n} exceeds --max-n={args.max_n}", file=sys.stderr)
        return EXIT_INPUT
    obj = random_instance(args.kind, args.n, args.seed)
    if args.kind == "mnat":
        doc = io.discretefn_to_json(obj)
    elif args.kind == "vgm":
        from .discrete import setfunction_of_vgm

        doc = io.setfunction_to_json(setfunction_of_vgm(obj), "vgm")
    else:
        doc = io.setfunction_to_json(obj)
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gen":
        return _gen(args)
    t0 = time.perf_counter()
    try:
        inst = io.load(args.path)
        _guard(inst.payload.n, args.max_n)
        report = Report(args.command, _digest(inst))
        COMMANDS[args.command](inst, args, report)
    except (io.InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - t0
    if args.command == "export" and args.format == "csv" and "csv" in report.result:
        sys.stdout.write(report.result["csv"])
    else:
        print(json.dumps(report.to_json(), sort_keys=True, indent=1))
    failed = [v["name"] for v in report.verdicts if not v["pass"]]
    status = "ok" if not failed else "FAILED: " + ", ".join(failed)
    print(f"{args.command}: {len(report.verdicts)} checks, {status} ({elapsed:.3f}s)",
          file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
