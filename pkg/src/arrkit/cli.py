"""Command-line front end: build, verify, combinatorics, containment, render,
compare.

Exit discipline: 0 = computed and matched expectations; 1 = computed but the
checked property failed; 2 = usage or computational error.  Reports are JSON
on stdout unless --out names a report file; build and render write their
artifact to --out instead and keep the report on stdout.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import formats
from .arrangement import Arrangement, freeness_replay, singular_locus, weak_combinatorics
from .families import build_a31_3, build_family_12k7
from .ideals import DegreeCapExceeded, FatPointScheme, containment_check, witness_line_factors
from .isomorphism import incidence_isomorphic
from .render import drawn_segment_count, render_svg


def _emit(report: dict, out: Optional[str]) -> None:
    text = formats.json_report(report)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _load_arrangement(path: str) -> Arrangement:
    return formats.read_arrangement(path)


def cmd_build(args: argparse.Namespace) -> int:
    if args.family == "a12k7":
        if args.k is None:
            return _fail("--k is required for family a12k7")
        arrangement = build_family_12k7(args.k)
    else:
        if args.k is not None:
            return _fail("--k applies only to family a12k7")
        arrangement = build_a31_3()
    formats.write_arrangement(args.out, arrangement)
    report = {
        "command": "build",
        "inputs": {"family": args.family, "k": args.k, "out": args.out},
        "result": {
            "lines": len(arrangement.lines),
            "canonical_lines": [str(line) for line in arrangement.lines],
        },
        "exit_code": 0,
    }
    _emit(report, None)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    arrangement = _load_arrangement(args.arrangement)
    if args.table:
        order = formats.read_order(args.table)
        arrangement = arrangement.reorder(order)
    expect = tuple(sorted(int(t) for t in args.expect.split(",")))
    if len(expect) != 3:
        return _fail("--expect needs three comma-separated integers")
    certificate = freeness_replay(arrangement)
    final = tuple(sorted(certificate.final_exponents())) if certificate.verdict else None
    matched = certificate.verdict and final == expect
    report = {
        "command": "verify",
        "inputs": {
            "arrangement": args.arrangement,
            "table": args.table,
            "expect": list(expect),
        },
        "result": {
            "certificate": certificate.to_payload(),
            "final_exponents": None if final is None else list(final),
            "matched": bool(matched),
        },
        "exit_code": 0 if matched else 1,
    }
    _emit(report, args.out)
    return 0 if matched else 1


def cmd_combinatorics(args: argparse.Namespace) -> int:
    arrangement = _load_arrangement(args.arrangement)
    combinatorics = weak_combinatorics(arrangement)
    report = {
        "command": "combinatorics",
        "inputs": {"arrangement": args.arrangement},
        "result": {
            "lines": combinatorics.n,
            "t_vector": {str(k): v for k, v in sorted(combinatorics.t.items())},
            "pair_count": combinatorics.pair_count(),
        },
        "exit_code": 0,
    }
    _emit(report, args.out)
    return 0


def cmd_containment(args: argparse.Namespace) -> int:
    if args.m < 1:
        return _fail("m must be a positive integer")
    if args.r < 1:
        return _fail("r must be a positive integer")
    if args.threads < 1:
        return _fail("threads must be a positive integer")
    arrangement = _load_arrangement(args.arrangement)
    if len(arrangement.lines) < 2:
        return _fail("containment needs an arrangement with at least 2 lines")
    locus = singular_locus(arrangement)
    scheme = FatPointScheme.uniform([entry.point for entry in locus.entries], 1)
    check = containment_check(scheme, args.m, args.r,
                              max_degree=args.max_degree, threads=args.threads)
    factor_counts: List[int] = []
    quotient_degrees: List[int] = []
    for witness in check.witnesses:
        factors, quotient = witness_line_factors(witness, arrangement)
        factor_counts.append(len(factors))
        quotient_degrees.append(quotient.degree)
    payload = check.to_payload()
    payload["line_factor_counts"] = factor_counts
    payload["quotient_degrees"] = quotient_degrees
    report = {
        "command": "containment",
        "inputs": {
            "arrangement": args.arrangement,
            "m": args.m,
            "r": args.r,
            "max_degree": args.max_degree,
            "threads": args.threads,
        },
        "result": payload,
        "exit_code": 0,
    }
    _emit(report, args.out)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    arrangement = _load_arrangement(args.arrangement)
    window = tuple(Fraction(w) for w in args.window)
    svg = render_svg(arrangement, window)
    Path(args.out).write_bytes(svg)
    infinity = [arrangement.labels[i] for i, line in enumerate(arrangement.lines)
                if not line.coords[0] and not line.coords[1]]
    report = {
        "command": "render",
        "inputs": {
            "arrangement": args.arrangement,
            "window": [str(w) for w in args.window],
            "out": args.out,
        },
        "result": {
            "drawn_segments": drawn_segment_count(svg),
            "infinity_legend": infinity,
            "bytes": len(svg),
        },
        "exit_code": 0,
    }
    _emit(report, None)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    first = _load_arrangement(args.a)
    second = _load_arrangement(args.b)
    combo_a = weak_combinatorics(first)
    combo_b = weak_combinatorics(second)
    equal = combo_a.n == combo_b.n and combo_a.t == combo_b.t
    isomorphic = incidence_isomorphic(first, second)
    report = {
        "command": "compare",
        "inputs": {"a": args.a, "b": args.b},
        "result": {
            "t_vector_a": {str(k): v for k, v in sorted(combo_a.t.items())},
            "t_vector_b": {str(k): v for k, v in sorted(combo_b.t.items())},
            "weak_combinatorics_equal": equal,
            "isomorphic": isomorphic,
        },
        "exit_code": 0,
    }
    _emit(report, args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrkit",
        description="Exact line-arrangement toolkit over Q(sqrt(3)).",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_build = sub.add_parser("build", help="construct an arrangement and write it to a file")
    p_build.add_argument("--family", choices=["a12k7", "a31_3"], required=True)
    p_build.add_argument("--k", type=int, default=None, help="family parameter (a12k7 only)")
    p_build.add_argument("--out", required=True, help="arrangement file to write")
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="replay an addition order and check exponents")
    p_verify.add_argument("arrangement", help="arrangement file")
    p_verify.add_argument("--table", default=None, help="label order file (default: file order)")
    p_verify.add_argument("--expect", required=True, help="expected exponents, e.g. 1,7,11")
    p_verify.add_argument("--out", default=None, help="report file (default: stdout)")
    p_verify.set_defaults(func=cmd_verify)

    p_comb = sub.add_parser("combinatorics", help="report the t-vector of an arrangement")
    p_comb.add_argument("arrangement", help="arrangement file")
    p_comb.add_argument("--out", default=None, help="report file (default: stdout)")
    p_comb.set_defaults(func=cmd_combinatorics)

    p_cont = sub.add_parser("containment", help="symbolic vs ordinary power containment")
    p_cont.add_argument("arrangement", help="arrangement file")
    p_cont.add_argument("-m", type=int, required=True, help="symbolic exponent")
    p_cont.add_argument("-r", type=int, required=True, help="ordinary exponent")
    p_cont.add_argument("--max-degree", type=int, default=60, help="generator scan cap")
    p_cont.add_argument("--threads", type=int, default=1,
                        help="worker threads (accepted for reproducible CLI logs; "
                             "the engine is sequential)")
    p_cont.add_argument("--out", default=None, help="report file (default: stdout)")
    p_cont.set_defaults(func=cmd_containment)

    p_render = sub.add_parser("render", help="render the affine chart z=1 to SVG")
    p_render.add_argument("arrangement", help="arrangement file")
    p_render.add_argument("--window", nargs=4, required=True,
                          metavar=("XMIN", "XMAX", "YMIN", "YMAX"),
                          help="clip window as four rationals")
    p_render.add_argument("--out", required=True, help="SVG file to write")
    p_render.set_defaults(func=cmd_render)

    p_cmp = sub.add_parser("compare", help="compare two arrangements")
    p_cmp.add_argument("a", help="first arrangement file")
    p_cmp.add_argument("b", help="second arrangement file")
    p_cmp.add_argument("--out", default=None, help="report file (default: stdout)")
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegreeCapExceeded as exc:
        return _fail(f"degree cap exceeded: {exc}")
    except (ValueError, OSError, ZeroDivisionError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
