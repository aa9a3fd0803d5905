"""Command line interface.

All results go to stdout as JSON; diagnostics go to stderr.  Exit codes:
0 for success (including a passing check), 1 for a mathematical failure
(a failed suite row or a rank deficit), 2 for usage errors such as
malformed grammar.  Identical invocations with identical seeds produce
byte-identical output.

The default truncation degree for `expand` is 2, overridable by the
BRAIDCERT_DEGREE environment variable or the --degree flag.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .braids import parse_braid, permutation
from .certify import certificate
from .chains import pair, parse_cycle
from .cochains import GroupElement, hbar_cochain, hbar_partition_cochain, tau1
from .magnus import MagnusExpansion
from .suites import SUITES, run_suite
from .words import GrammarError, format_word, parse_word

DEGREE_ENV = "BRAIDCERT_DEGREE"


def _emit(payload: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _default_degree() -> int:
    raw = os.environ.get(DEGREE_ENV)
    if raw is None:
        return 2
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"{DEGREE_ENV} must be an integer, got {raw!r}")
    if value < 2:
        raise SystemExit(f"{DEGREE_ENV} must be at least 2, got {value}")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidcert",
        description="Exact expansion cocycles on braid groups and independence certificates.",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
    # accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add_parser(name: str, **kwargs: Any) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("expand", help="expansion of a free group word")
    p.add_argument("--n", type=int, required=True, help="free group rank")
    p.add_argument("--degree", type=int, default=None, help="truncation degree (default 2)")
    p.add_argument("word", help="word grammar: x<k> and x<k>^-1 tokens")

    p = add_parser("tau1", help="the crossed homomorphism on a braid")
    p.add_argument("--n", type=int, required=True, help="strand count")
    p.add_argument("braid", help="braid grammar: s<k>, A(i,j), twist(k)")

    p = add_parser("xi", help="the free group automorphism of a braid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("braid")

    p = add_parser("perm", help="underlying permutation of a braid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("braid")

    p = add_parser("braid-eq", help="decide equality of two braid words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("left")
    p.add_argument("right")

    p = add_parser("hbar", help="evaluate a contracted composite cochain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True, help="cochain degree")
    p.add_argument("--exterior", action="store_true", help="project into Lambda^p")
    p.add_argument("braids", nargs="+", help="one braid per cochain argument")

    p = add_parser("pair", help="pair a cochain with a cycle")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=int, help="pair with the degree-p cochain")
    group.add_argument("--partition", help="pair with the partition cochain, e.g. '2,1'")
    p.add_argument(
        "--form", choices=("exterior", "tensor"), default="exterior",
        help="value shape for --p (partitions are always exterior)",
    )
    p.add_argument("cycle", help="cycle grammar: torus:... or cross:{size:...}...")

    p = add_parser("independence", help="build an independence certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True, help="exterior degree")
    p.add_argument("--catalog-depth", type=int, default=3)
    p.add_argument("--out", help="also write the certificate JSON to this file")

    p = add_parser("check", help="run a named self-check suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except GrammarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "expand":
        degree = args.degree if args.degree is not None else _default_degree()
        if degree < 2:
            print("error: --degree must be at least 2", file=sys.stderr)
            return 2
        theta = MagnusExpansion.standard(args.n, degree)
        word = parse_word(args.word, args.n)
        _emit(theta.value(word).to_json_dict())
        return 0

    if args.command == "tau1":
        theta = MagnusExpansion.standard(args.n, 2)
        g = GroupElement.from_braid(parse_braid(args.braid, args.n))
        _emit(tau1(theta, g).to_json_dict())
        return 0

    if args.command == "xi":
        aut = GroupElement.from_braid(parse_braid(args.braid, args.n)).aut
        _emit(
            {
                "n": args.n,
                "images": [format_word(w) for w in aut.fwd.images],
                "inverse_images": [format_word(w) for w in aut.inv.images],
            }
        )
        return 0

    if args.command == "perm":
        beta = parse_braid(args.braid, args.n)
        perm = permutation(beta)
        _emit(
            {
                "n": args.n,
                "permutation": list(perm),
                "pure": perm == tuple(range(1, args.n + 1)),
            }
        )
        return 0

    if args.command == "braid-eq":
        left = GroupElement.from_braid(parse_braid(args.left, args.n))
        right = GroupElement.from_braid(parse_braid(args.right, args.n))
        _emit({"n": args.n, "equal": left == right})
        return 0

    if args.command == "hbar":
        theta = MagnusExpansion.standard(args.n, 2)
        if len(args.braids) != args.p:
            print(
                f"error: degree {args.p} needs {args.p} braid arguments, "
                f"got {len(args.braids)}",
                file=sys.stderr,
            )
            return 2
        elems = [
            GroupElement.from_braid(parse_braid(text, args.n)) for text in args.braids
        ]
        value = hbar_cochain(theta, args.p, exterior=args.exterior)(*elems)
        _emit(value.to_json_dict())
        return 0

    if args.command == "pair":
        theta = MagnusExpansion.standard(args.n, 2)
        if args.partition is not None:
            try:
                parts = tuple(int(x) for x in args.partition.split(","))
            except ValueError:
                print(f"error: bad partition {args.partition!r}", file=sys.stderr)
                return 2
            cochain = hbar_partition_cochain(theta, parts)
        else:
            exterior = args.form == "exterior"
            cochain = hbar_cochain(theta, args.p, exterior=exterior)
        cycle = parse_cycle(args.cycle, args.n)
        _emit(pair(cochain, cycle).to_json_dict())
        return 0

    if args.command == "independence":
        cert = certificate(
            args.n, args.q, catalog_depth=args.catalog_depth, seed=args.seed
        )
        payload = cert.to_json_dict()
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2)
                fh.write("\n")
        _emit(payload)
        if not cert.passed:
            print(
                f"rank deficit: {cert.rank} of {cert.expected_rank}", file=sys.stderr
            )
            return 1
        return 0

    if args.command == "check":
        report = run_suite(args.suite, seed=args.seed)
        _emit(report.to_json_dict())
        if not report.passed:
            print(f"suite {args.suite} failed", file=sys.stderr)
            return 1
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
