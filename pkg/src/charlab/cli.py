"""``charlab`` command line: eval, verify, lemma, count, render.

stdout carries exactly one JSON document; logs go to stderr.  Exit codes:
0 success, 1 counterexample or inconsistent counts, 2 usage error,
3 singular evaluation point.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import combinat, identities
from .characters import (
    FAMILIES as CHAR_FAMILIES,
    CharacterError,
    CharacterSpec,
    SingularDenominatorError,
    SymbolicGuardError,
    character_at,
    principal_specialization,
)
from .laurent import SquareRootError, to_rational
from .shapes import Shape, ShapeError, parse_half

log = logging.getLogger("charlab")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _half(text: str) -> str:
    try:
        parse_half(text)
    except (ShapeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return text


# -- subcommands ---------------------------------------------------------------------

def cmd_eval(args) -> int:
    shape = Shape.parse(args.shape)
    if len(shape) > args.vars:
        raise UsageError(f"shape {shape} has more parts than --vars {args.vars}")
    if len(shape) < args.vars:
        shape = shape.padded(args.vars)
        log.info("shape zero-padded to %s", shape)
    spec = CharacterSpec(args.family, shape, args.vars)
    doc = {"family": spec.family, "shape": str(shape), "vars": str(args.vars)}
    if args.at is not None:
        if args.negate:
            raise UsageError("--negate only applies with --principal")
        point = [to_rational(p) for p in args.at.split(",")]
        if len(point) != args.vars:
            raise UsageError(f"--at needs {args.vars} coordinates, got {len(point)}")
        doc["point"] = [fmt(p) for p in point]
        doc["value"] = fmt(character_at(spec, point))
    else:
        doc["specialization"] = "minus-ones" if args.negate else "ones"
        doc["value"] = fmt(principal_specialization(spec, negate=args.negate))
    _emit(doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    m = args.m
    if args.identity in ("eq13", "eq14"):
        if parse_half(m) % 2:
            raise UsageError(f"{args.identity} needs an integer --m")
    log.info("verifying %s m=%s n=%d (%s)", args.identity, m, args.n, args.mode)
    rep = identities.verify_theorem(args.identity, m, args.n, args.mode, args.trials, args.seed)
    _emit(rep.to_json())
    return EXIT_OK if rep.equal else EXIT_MISMATCH


def cmd_lemma(args) -> int:
    log.info("verifying lemma %d N=%d (%s)", args.which, args.N, args.mode)
    rep = identities.verify_lemma(args.which, args.N, args.mode, args.trials, args.seed)
    _emit(rep.to_json())
    return EXIT_OK if rep.equal else EXIT_MISMATCH


def cmd_count(args) -> int:
    if args.methods is None:
        methods = [k for k in combinat.METHODS if not (args.family == "spp-star" and k == "bruteforce")]
    else:
        methods = [s.strip() for s in args.methods.split(",") if s.strip()]
    bad = [s for s in methods if s not in combinat.METHODS]
    if bad or not methods:
        raise UsageError(f"unknown method(s) {bad}; choose from {', '.join(combinat.METHODS)}")
    if args.family != "pp" and (args.b is not None or args.c is not None):
        raise UsageError("--b and --c only apply to --family pp")
    if args.family in ("tcpp", "spp-star") and args.n < 1:
        raise UsageError(f"{args.family} needs --n >= 1")
    if args.family == "spp-star" and "bruteforce" in methods:
        raise UsageError("spp-star has no brute-force method; use character,product")
    m = args.m
    if args.family == "pp":
        # the pp box has height 2m, matching the other families
        rep = combinat.count_report("pp", 2 * m, args.n, methods, args.b, args.c)
    else:
        rep = combinat.count_report(args.family, m, args.n, methods)
    for k, v in rep.methods.items():
        log.info("%s: %s", k, v)
    _emit(rep.to_json())
    return EXIT_OK if rep.consistent else EXIT_MISMATCH


def cmd_render(args) -> int:
    from .render import nth_pp, render_svg

    a, b = 2 * args.m, args.n
    try:
        pp = nth_pp(a, b, b, args.index)
    except IndexError as exc:
        raise UsageError(str(exc))
    svg = render_svg(pp, a, title=f"PP in {a}x{b}x{b} box, #{args.index}")
    Path(args.out).write_bytes(svg)
    log.info("wrote %s", args.out)
    _emit({
        "family": "pp",
        "params": {"height": str(a), "b": str(b), "c": str(b)},
        "index": str(args.index),
        "matrix": [[str(v) for v in row] for row in pp],
        "out": str(args.out),
    })
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="charlab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a character")
    e.add_argument("--family", required=True, choices=CHAR_FAMILIES)
    e.add_argument("--shape", required=True, help="comma-separated parts, halves as a/2")
    e.add_argument("--vars", required=True, type=_positive)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--at", help="comma-separated nonzero rationals")
    g.add_argument("--principal", action="store_true", help="all-ones specialization (default)")
    e.add_argument("--negate", action="store_true", help="with --principal: all minus ones")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="check a factorization identity")
    v.add_argument("--identity", required=True, choices=identities.THEOREMS)
    v.add_argument("--m", required=True, type=_half, help="integer, or a/2 for the uniform forms")
    v.add_argument("--n", required=True, type=_positive)
    _mode_flags(v)
    v.set_defaults(func=cmd_verify)

    lm = sub.add_parser("lemma", help="check a subset-sum lemma")
    lm.add_argument("--which", required=True, type=int, choices=(1, 2, 3))
    lm.add_argument("--N", required=True, type=_nonneg)
    _mode_flags(lm)
    lm.set_defaults(func=cmd_lemma)

    c = sub.add_parser("count", help="count plane partitions of a symmetry class")
    c.add_argument("--family", required=True, choices=combinat.FAMILIES)
    c.add_argument("--m", required=True, type=_nonneg, help="the box height is 2m")
    c.add_argument("--n", required=True, type=_nonneg)
    c.add_argument("--b", type=_nonneg, help="pp only: rows (default n)")
    c.add_argument("--c", type=_nonneg, help="pp only: columns (default n)")
    c.add_argument("--methods", help="comma-separated subset of bruteforce,character,product (default: all applicable)")
    c.set_defaults(func=cmd_count)

    r = sub.add_parser("render", help="draw a plane partition as a lozenge tiling")
    r.add_argument("--family", required=True, choices=("pp",))
    r.add_argument("--m", required=True, type=_nonneg, help="the box is 2m x n x n")
    r.add_argument("--n", required=True, type=_nonneg)
    r.add_argument("--index", required=True, type=_nonneg, help="position in enumeration order")
    r.add_argument("--out", required=True, help="SVG file to write")
    r.set_defaults(func=cmd_render)
    return p


def _mode_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", default="symbolic", choices=identities.MODES)
    p.add_argument("--trials", default=20, type=_positive)
    p.add_argument("--seed", default=0, type=_nonneg)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="charlab: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except SingularDenominatorError as exc:
        print(f"charlab: {exc} (hint: --principal evaluates at all ones, add --negate for all minus ones)", file=sys.stderr)
        return EXIT_SINGULAR
    except (UsageError, CharacterError, ShapeError, SymbolicGuardError, identities.GuardError,
            SquareRootError, ValueError, ZeroDivisionError) as exc:
        print(f"charlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
