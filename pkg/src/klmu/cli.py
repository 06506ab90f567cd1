"""``klmu`` command line: single queries, mu tables, verification, cache files."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Iterable, Optional

from .cells import TWO_SIDED, cell_label, two_sided_cell
from .coxeter import CoxeterSystem, a2, b2
from .kl import CacheFormatError, engine
from .semilinear import SemilinearError, b_value
from .verify import DEFAULT_BOUNDS, THEOREMS, verify
from .weights import Weight, a_coefficient

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TABLE_KEYS = ("u", "w", "lu", "lw", "cell_u", "cell_w", "mu")


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not an integer") from None


def _system(name: str) -> CoxeterSystem:
    return a2() if name.upper() in ("A2", "A~2") else b2()


def _element(W: CoxeterSystem, text: str):
    try:
        return W(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _weight(text: str) -> Weight:
    try:
        return Weight.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, rows: list[dict], keys: Iterable[str], out=None) -> None:
    out = out or sys.stdout
    keys = list(keys)
    if args.json:
        for row in rows:
            out.write(json.dumps({k: row[k] for k in keys}, sort_keys=False) + "\n")
    elif args.csv:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([row[k] for k in keys])
    else:
        for row in rows:
            out.write("\t".join(str(row[k]) for k in keys) + "\n")


# -- subcommands ----------------------------------------------------------------


def cmd_kl(args) -> int:
    W = _system(args.system)
    u, w = _element(W, args.u), _element(W, args.w)
    p = engine(W).kl_polynomial(u, w)
    if args.json or args.csv:
        _emit(args, [{"u": str(u), "w": str(w), "P": str(p)}], ("u", "w", "P"))
    else:
        print(p)
    return EXIT_OK


def cmd_mu(args) -> int:
    W = _system(args.system)
    u, w = _element(W, args.u), _element(W, args.w)
    m = engine(W).mu(u, w)
    if args.json or args.csv:
        _emit(args, [{"u": str(u), "w": str(w), "mu": m}], ("u", "w", "mu"))
    else:
        print(m)
    return EXIT_OK


def cmd_cell(args) -> int:
    w = _element(b2(), args.w)
    lab = cell_label(w)
    row = {"w": str(w), "two_sided": lab.two_sided, "left": lab.left, "a": lab.a}
    if args.json or args.csv:
        _emit(args, [row], row.keys())
    else:
        print(f"{lab.two_sided} {lab.left} a={lab.a}")
    return EXIT_OK


def cmd_b(args) -> int:
    lam, lam2 = _weight(args.lam), _weight(args.lam2)
    for x in (lam, lam2):
        if not (x.in_root_lattice() and x.is_dominant()):
            raise UsageError(f"{x.root()} is not a dominant weight in the root lattice")
    try:
        val = b_value(lam, lam2, args.method)
    except SemilinearError as exc:
        print(f"klmu: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json or args.csv:
        _emit(args, [{"lambda": lam.root(), "target": lam2.root(), "b": str(val)}], ("lambda", "target", "b"))
    else:
        print(val)
    return EXIT_OK


def cmd_acoef(args) -> int:
    lam, lam2 = _weight(args.lam), _weight(args.lam2)
    for x in (lam, lam2):
        if not (x.in_root_lattice() and x.is_dominant()):
            raise UsageError(f"{x.root()} is not a dominant weight in the root lattice")
    val = a_coefficient(lam, lam2, args.a_method)
    if args.json or args.csv:
        _emit(args, [{"lambda": lam.root(), "target": lam2.root(), "a": str(val)}], ("lambda", "target", "a"))
    else:
        print(val)
    return EXIT_OK


def _descent_filter(W: CoxeterSystem, text: Optional[str]):
    if text is None:
        return None
    labels = "" if text in ("", "e", "-") else text
    try:
        return frozenset(W.gen_index(c) for c in labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def table_rows(W: CoxeterSystem, max_length: int, zeros: bool = False, cell_u=None, cell_w=None,
               ldes_w=None, rdes_w=None) -> list[dict]:
    """Rows of the mu-table in ShortLex order on ``w``, then on ``u``."""
    eng = engine(W)
    is_b2 = W is b2()
    cell = (lambda i: two_sided_cell(W.element(i))) if is_b2 else (lambda i: "")
    key = lambda i: (W.length_of(i), W.word_of(i))
    name = lambda i: W.render(W.word_of(i))
    rows = []
    for w in W.ball_ids(max_length):
        if cell_w and cell(w) != cell_w:
            continue
        if ldes_w is not None and W.ldes(w) != ldes_w:
            continue
        if rdes_w is not None and W.rdes(w) != rdes_w:
            continue
        for u in sorted(W.lower_ideal(w), key=key):
            if u == w or (cell_u and cell(u) != cell_u):
                continue
            m = eng.mu_id(u, w)
            if m or zeros:
                rows.append({
                    "u": name(u), "w": name(w), "lu": W.length_of(u), "lw": W.length_of(w),
                    "cell_u": cell(u), "cell_w": cell(w), "mu": m,
                })
    return rows


def cmd_table_mu(args) -> int:
    W = _system(args.system)
    ceiling = _env_int("KLMU_MAX_LENGTH_CEILING", 20)
    max_length = args.max_length if args.max_length is not None else _env_int("KLMU_MAX_LENGTH", 14)
    if not 0 <= max_length <= ceiling:
        raise UsageError(f"--max-length must lie in 0..{ceiling}")
    for c in (args.cell_u, args.cell_w):
        if c and c not in TWO_SIDED:
            raise UsageError(f"unknown cell {c!r}; expected one of {', '.join(TWO_SIDED)}")
    if (args.cell_u or args.cell_w) and W is not b2():
        raise UsageError("cell filters need the B2 system")
    rows = table_rows(
        W, max_length, args.zeros, args.cell_u, args.cell_w,
        _descent_filter(W, args.ldes), _descent_filter(W, args.rdes),
    )
    _emit(args, rows, TABLE_KEYS)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.theorem not in THEOREMS:
        raise UsageError(f"unknown theorem id {args.theorem!r}; known: {', '.join(THEOREMS)}")
    bound = args.bound if args.bound is not None else _env_int("KLMU_BOUND", DEFAULT_BOUNDS[args.theorem])
    if bound < 0:
        raise UsageError("--bound must be nonnegative")
    rep = verify(args.theorem, bound, perturb=args.perturb)
    if args.json:
        print(json.dumps(rep.as_dict()))
    elif args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(("theorem", "bound", "checked", "status", "inputs", "expected", "computed"))
        for c in rep.counterexamples or [None]:
            tail = (c.inputs, c.expected, c.computed) if c else ("", "", "")
            writer.writerow((rep.theorem, rep.bound, rep.checked, rep.status) + tail)
    else:
        print(rep.summary())
        for c in rep.counterexamples:
            print(f"  {c.inputs}: expected {c.expected}, computed {c.computed}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_cache(args) -> int:
    W = _system(args.system)
    if args.action == "build":
        if not args.cache:
            raise UsageError("cache build needs --cache PATH")
        max_length = args.max_length if args.max_length is not None else _env_int("KLMU_MAX_LENGTH", 14)
        engine(W).warm(max_length)
    stats = engine(W).stats()
    if args.json:
        print(json.dumps(stats))
    else:
        for k in ("columns", "entries"):
            print(f"{k}\t{stats[k]}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="one JSON object per row")
    fmt.add_argument("--csv", action="store_true", help="CSV with a header row")
    common.add_argument("--cache", metavar="PATH", default=None,
                        help="KL cache file to load before and save after (default: $KLMU_CACHE)")
    common.add_argument("--system", choices=("B2", "A2"), default=None,
                        help="affine Weyl group (default: $KLMU_SYSTEM or B2)")

    p = argparse.ArgumentParser(prog="klmu", description="Kazhdan-Lusztig polynomials and mu for affine B2.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("kl", parents=[common], help="print P_{u,w}")
    s.add_argument("u")
    s.add_argument("w")
    s.set_defaults(func=cmd_kl)

    s = sub.add_parser("mu", parents=[common], help="print mu(u,w)")
    s.add_argument("u")
    s.add_argument("w")
    s.set_defaults(func=cmd_mu)

    s = sub.add_parser("cell", parents=[common], help="two-sided cell, left cell and a-value (B2)")
    s.add_argument("w")
    s.set_defaults(func=cmd_cell)

    s = sub.add_parser("b", parents=[common], help="b_{lambda,lambda''} for weights written i,j or m*x+n*y")
    s.add_argument("lam")
    s.add_argument("lam2")
    s.add_argument("--method", choices=("semilinear", "direct"), default="semilinear")
    s.set_defaults(func=cmd_b)

    s = sub.add_parser("acoef", parents=[common], help="a_{lambda,lambda'}")
    s.add_argument("lam")
    s.add_argument("lam2")
    s.add_argument("--method", dest="a_method", choices=("closed", "sum"), default="closed")
    s.set_defaults(func=cmd_acoef)

    s = sub.add_parser("table-mu", parents=[common], help="all pairs u < w with mu != 0")
    s.add_argument("--max-length", type=int, default=None, help="length bound on w (default: $KLMU_MAX_LENGTH or 14)")
    s.add_argument("--zeros", action="store_true", help="also list pairs with mu = 0")
    s.add_argument("--cell-u", default=None, help="two-sided cell of u (c_e, c_1, c_2, c_0)")
    s.add_argument("--cell-w", default=None, help="two-sided cell of w")
    s.add_argument("--ldes", default=None, help="left descent set of w, e.g. rt")
    s.add_argument("--rdes", default=None, help="right descent set of w")
    s.set_defaults(func=cmd_table_mu)

    s = sub.add_parser("verify", parents=[common], help="check a statement exhaustively within a bound")
    s.add_argument("theorem", help=", ".join(THEOREMS))
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("cache", parents=[common], help="build or inspect a KL cache file")
    s.add_argument("action", choices=("build", "stats"))
    s.add_argument("--max-length", type=int, default=None)
    s.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.system is None:
        args.system = os.environ.get("KLMU_SYSTEM", "B2")
    if args.cache is None:
        args.cache = os.environ.get("KLMU_CACHE") or None
    try:
        W = _system(args.system)
        if args.cache and os.path.exists(args.cache):
            engine(W).load(args.cache)
        code = args.func(args)
        if args.cache:
            engine(W).save(args.cache)
        return code
    except UsageError as exc:
        print(f"klmu: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CacheFormatError as exc:
        print(f"klmu: bad cache file: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
