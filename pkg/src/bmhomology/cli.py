"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 golden mismatch.
A table argument is a file path or the name of a bundled corpus table
(``A1`` .. ``A19``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import BmError
from .homology import AbelianGroup, format_group, parse_group

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# helpers


def load_table(spec: str):
    from .corpus import CORPUS_NAMES, corpus_table
    from .quasigroup import parse_table

    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return parse_table(fh.read())
    if spec in CORPUS_NAMES:
        return corpus_table(spec)
    raise FileNotFoundError(f"no such table file: {spec}")


def corpus_name_of(q) -> Optional[str]:
    from .corpus import corpus_tables

    for name, table in corpus_tables().items():
        if table == q:
            return name
    return None


@dataclass
class ReportRow:
    quasigroup: str
    degree: int
    identity: str
    t: int
    s: int
    group: AbelianGroup
    expected: Optional[AbelianGroup] = None

    @property
    def match(self) -> Optional[bool]:
        return None if self.expected is None else self.group == self.expected

    def to_json(self) -> dict:
        return {
            "quasigroup": self.quasigroup, "degree": self.degree, "identity": self.identity,
            "t": self.t, "s": self.s, "group": self.group.to_json(),
            "expected": None if self.expected is None else self.expected.to_json(),
            "match": self.match,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ReportRow":
        exp = d.get("expected")
        return cls(d["quasigroup"], d["degree"], d["identity"], d["t"], d["s"],
                   AbelianGroup.from_json(d["group"]),
                   None if exp is None else AbelianGroup.from_json(exp))

    def to_text(self) -> str:
        ident = self.identity or "-"
        line = f"{self.quasigroup}\tH{self.degree}\t{ident}\t({self.t},{self.s})\t{format_group(self.group)}"
        if self.expected is not None:
            verdict = "PASS" if self.match else "FAIL"
            line += f"\texpected {format_group(self.expected)}\t{verdict}"
        return line

    @classmethod
    def from_text(cls, line: str) -> "ReportRow":
        parts = line.split("\t")
        t, s = (int(v) for v in parts[3].strip("()").split(","))
        expected = parse_group(parts[5][len("expected "):]) if len(parts) > 5 else None
        return cls(parts[0], int(parts[1][1:]), "" if parts[2] == "-" else parts[2], t, s,
                   parse_group(parts[4]), expected)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=1))
    else:
        for line in text_lines:
            print(line)


# --------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    from .identities import classify, registry_identities, satisfies, substitutions_for
    from .quasigroup import loop_class

    q = load_table(args.table)
    all_ids = registry_identities(include_groups=True)
    sat = [v.name for v in all_ids if satisfies(q, v)]
    is_group = len(sat) == len(all_ids)
    varieties = [e.name for e, ok in classify(q) if ok]
    listed = [v.name for v in registry_identities() if v.name in set(sat)]
    subs = substitutions_for(q) if listed else [(1, 1)]
    loop = loop_class(q).value
    payload = {"order": q.order, "group": is_group, "satisfied": listed,
               "varieties": varieties, "loop_class": loop,
               "substitutions": [list(p) for p in subs]}
    lines = [f"order: {q.order}"]
    if is_group:
        lines.append("group: all identities satisfied")
    lines += [f"satisfied: {' '.join(listed) if listed else '(none)'}",
              f"varieties: {' '.join(varieties) if varieties else '(none)'}",
              f"loop class: {loop}",
              "substitutions: " + " ".join(f"({t},{s})" for t, s in subs)]
    _emit(args, payload, lines)
    return EXIT_OK


def _golden_lookup(q, degree, identity, t, s):
    from .corpus import golden

    name = corpus_name_of(q)
    if name is None:
        return name, None
    for c in golden()[name].cells:
        if c.degree == degree and (c.identity.name if c.identity else "") == identity \
                and (c.t, c.s) == (t, s):
            return name, c.group
    return name, None


def _homology_common(args, degree: int) -> int:
    from .homology import h1, h2
    from .identities import parse_identity, satisfies, variety_of

    q = load_table(args.table)
    ident = ""
    if degree == 1:
        g = h1(q, args.t, args.s)
    else:
        identity = parse_identity(args.identity)
        ident = identity.name
        if not satisfies(q, identity):
            print(f"warning: IdentityNotSatisfied: table does not satisfy {ident}", file=sys.stderr)
        elif not identity.is_x and not variety_of(identity).admits(args.t, args.s):
            print(f"warning: SubstitutionNotValid: ({args.t},{args.s}) is not a solution for {ident}",
                  file=sys.stderr)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            g = h2(q, identity, args.t, args.s, check=False)
    name, expected = (None, None)
    if args.golden:
        name, expected = _golden_lookup(q, degree, ident, args.t, args.s)
        if expected is None:
            print("warning: no golden value for this cell", file=sys.stderr)
    row = ReportRow(name or args.table, degree, ident, args.t, args.s, g, expected)
    if args.json:
        print(json.dumps(row.to_json(), indent=1))
    elif expected is None:
        print(format_group(g))
    else:
        print(f"{format_group(g)}\texpected {format_group(expected)}\t{'PASS' if row.match else 'FAIL'}")
    return EXIT_MISMATCH if row.match is False else EXIT_OK


def cmd_h1(args) -> int:
    return _homology_common(args, 1)


def cmd_h2(args) -> int:
    return _homology_common(args, 2)


def cmd_affine_solve(args) -> int:
    from .affine import solve_affine
    from .identities import parse_identity

    if args.modulus < 1:
        raise UsageError("modulus must be >= 1")
    sols = solve_affine(parse_identity(args.identity), args.modulus)
    payload = [sp.to_json() for sp in sols]
    lines = [f"{len(sols)} solutions mod {args.modulus}"] + [f"t={sp.t} s={sp.s} c0={sp.c0}" for sp in sols]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_parastrophe(args) -> int:
    from .quasigroup import format_table, parastrophe

    q = parastrophe(load_table(args.table), args.kind)
    _emit(args, {"table": [list(r) for r in q.table]}, [format_table(q).rstrip("\n")])
    return EXIT_OK


def cmd_mlt(args) -> int:
    from .quasigroup import multiplication_group

    G = multiplication_group(load_table(args.table), cap=args.budget)
    payload = {"order": G.size, "elements": [list(p) for p in G.elements]}
    lines = [f"order: {G.size}"] + [" ".join(map(str, p)) for p in G.elements]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_cat_homology(args) -> int:
    from .category import category_h1_h2
    from .quasigroup import endomorphism_monoid, multiplication_group

    q = load_table(args.table)
    if args.source == "end":
        monoid, _ = endomorphism_monoid(q, budget=args.budget)
    else:
        monoid = multiplication_group(q, cap=args.budget)
    H1, H2 = category_h1_h2(monoid, budget=max(args.budget, monoid.size ** 3))
    payload = {"source": args.source, "order": monoid.size, "H1": H1.to_json(), "H2": H2.to_json()}
    lines = [f"monoid order: {monoid.size}", f"H1: {H1}", f"H2: {H2}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_extend(args) -> int:
    from .affine import AffineSpec
    from .extensions import Cochain2, cocycle_condition, extension_table, parse_grid
    from .identities import parse_identity
    from .quasigroup import format_table

    X = load_table(args.base)
    A = AffineSpec(args.modulus, args.t, args.s, args.c0)
    if args.phi == "random":
        phi = Cochain2.random(X.order, args.modulus, np.random.default_rng(args.seed))
    elif args.phi:
        with open(args.phi, encoding="utf-8") as fh:
            phi = Cochain2(parse_grid(fh.read()), args.modulus)
    else:
        phi = Cochain2.zero(X.order, args.modulus)
    if phi.n != X.order:
        raise BmError(f"phi is {phi.n}x{phi.n}, base has order {X.order}")
    E = extension_table(A, X, phi)
    payload = {"order": E.order, "phi": [list(r) for r in phi.values], "table": [list(r) for r in E.table]}
    lines = [format_table(E).rstrip("\n")]
    if args.identity:
        ok = cocycle_condition(X, parse_identity(args.identity), args.t, args.s, args.modulus, phi)
        payload["cocycle"] = ok
        lines.append(f"cocycle for {args.identity}: {'yes' if ok else 'no'}")
    _emit(args, payload, lines)
    return EXIT_OK


def _compute_cell(cell):
    """Worker: ``(name, degree, identity, t, s) -> group string``."""
    from .corpus import corpus_table
    from .homology import h1, h2
    from .identities import parse_identity

    name, degree, ident, t, s = cell
    q = corpus_table(name)
    if degree == 1:
        return format_group(h1(q, t, s))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return format_group(h2(q, parse_identity(ident), t, s, check=False))


def report_rows(only=None, jobs: int = 1) -> List[ReportRow]:
    from .corpus import golden, golden_cells

    cells = golden_cells(only)
    tasks = [(c.quasigroup, c.degree, c.identity.name if c.identity else "", c.t, c.s) for c in cells]
    # largest tables first so the pool stays busy
    sizes = {n: e.order for n, e in golden().items()}
    order = sorted(range(len(tasks)), key=lambda k: -sizes[tasks[k][0]])
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_compute_cell, [tasks[k] for k in order]))
        groups = [None] * len(tasks)
        for k, g in zip(order, results):
            groups[k] = g
    else:
        groups = [_compute_cell(t) for t in tasks]
    return [ReportRow(c.quasigroup, c.degree, task[2], c.t, c.s, parse_group(g), c.group)
            for c, task, g in zip(cells, tasks, groups)]


def cmd_report(args) -> int:
    start = time.time()
    rows = report_rows(args.only, args.jobs)
    failed = [r for r in rows if not r.match]
    names = sorted({r.quasigroup for r in rows}, key=lambda n: int(n[1:]))
    clean = [n for n in names if all(r.match for r in rows if r.quasigroup == n)]
    if args.json:
        print(json.dumps({"cells": [r.to_json() for r in rows],
                          "quasigroups": len(names), "passing_quasigroups": len(clean),
                          "failed": len(failed)}, indent=1))
    else:
        for r in rows:
            print(r.to_text())
        print(f"# {len(rows) - len(failed)}/{len(rows)} cells PASS; "
              f"{len(clean)}/{len(names)} quasigroups fully PASS; {time.time() - start:.1f}s")
    return EXIT_MISMATCH if failed else EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bmhomology", description="Bol-Moufang homology of finite quasigroups")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    p.add_argument("--budget", type=int, default=10 ** 6, help="search / size budget")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="satisfied identities, varieties, loop class")
    s.add_argument("table")
    s.set_defaults(func=cmd_check)

    for name, func in (("h1", cmd_h1), ("h2", cmd_h2)):
        s = sub.add_parser(name, help=f"compute {name.upper()}")
        s.add_argument("table")
        if name == "h2":
            s.add_argument("--identity", "-i", required=True)
        s.add_argument("--t", type=int, default=1)
        s.add_argument("--s", type=int, default=1)
        s.add_argument("--golden", action="store_true", help="compare with the bundled reference value")
        s.set_defaults(func=func)

    s = sub.add_parser("affine-solve", help="affine solutions of an identity mod n")
    s.add_argument("--identity", "-i", required=True)
    s.add_argument("--modulus", "-n", type=int, required=True)
    s.set_defaults(func=cmd_affine_solve)

    s = sub.add_parser("parastrophe", help="print a parastrophe table")
    s.add_argument("table")
    s.add_argument("--kind", default="rdiv",
                   help="mul, rdiv (/), ldiv (\\), op, rdiv_op (//), ldiv_op (\\\\)")
    s.set_defaults(func=cmd_parastrophe)

    s = sub.add_parser("mlt", help="multiplication group")
    s.add_argument("table")
    s.set_defaults(func=cmd_mlt)

    s = sub.add_parser("cat-homology", help="nerve homology of End(X) or Mlt(X)")
    s.add_argument("--source", choices=("end", "mlt"), required=True)
    s.add_argument("--table", required=True)
    s.set_defaults(func=cmd_cat_homology)

    s = sub.add_parser("extend", help="extension of a table by an affine Z/m")
    s.add_argument("--base", required=True)
    s.add_argument("--modulus", type=int, required=True)
    s.add_argument("--t", type=int, default=1)
    s.add_argument("--s", type=int, default=1)
    s.add_argument("--c0", type=int, default=0)
    s.add_argument("--phi", help="n x n integer grid file, or 'random' (uses --seed); default zero")
    s.add_argument("--identity", help="also test the cocycle condition for this identity")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("report", help="recompute every bundled reference cell")
    s.add_argument("--only", nargs="+", help="restrict to these corpus names")
    s.add_argument("--golden", action="store_true", help="accepted for symmetry; report always compares")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BmError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
