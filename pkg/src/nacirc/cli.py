"""Command-line front end.

Exit codes: 0 on success, 2 on malformed input (circuit files, arguments),
3 on unsupported parameters (FieldTooSmall, EnumerationCapExceeded,
TermCapExceeded and friends).  With --json every verdict is printed as a
single object with the frozen field names result/witness/bound/stats.
Identical argv and seed produce byte-identical stdout.
"""

import argparse
import json
import sys

import numpy as np

from . import algebra, circuit, hitting, monomial, oracle, verify
from .errors import (
    BadMode,
    BadReference,
    CapExceeded,
    CycleError,
    DegreeExceeded,
    EnumerationCapExceeded,
    FieldTooSmall,
    NotPrime,
    ParseError,
    SetTooSmall,
    TermCapExceeded,
)
from .ffield import DEFAULT_MODULUS
from .randpit import BlackBox, randomized_pit
from .whitebox import whitebox_pit

PARSE_ERRORS = (ParseError, CycleError, BadReference, BadMode)
PARAM_ERRORS = (
    FieldTooSmall,
    EnumerationCapExceeded,
    TermCapExceeded,
    SetTooSmall,
    NotPrime,
    DegreeExceeded,
    CapExceeded,
)


def _read_circuit(path):
    with open(path, "rb") as fh:
        return circuit.parse(fh.read())


def _emit_verdict(args, result, witness=None, bound=None, stats=None, witness_text=None):
    if args.json:
        payload = {
            "result": result,
            "witness": witness,
            "bound": str(bound) if bound is not None else None,
            "stats": stats or {},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        line = result
        if witness_text:
            line += " " + witness_text
        print(line)
        if witness and not witness_text and isinstance(witness, str):
            print(witness, end="")


def _point_dump(points):
    blocks = []
    for i, elem in enumerate(points, start=1):
        blocks.append(f"var {i}")
        blocks.append(algebra.dump_elem(elem).rstrip("\n"))
    return "\n".join(blocks) + "\n"


def cmd_pit_white(args):
    c = _read_circuit(args.file)
    result, witness = whitebox_pit(c)
    lit = None
    if result == "NONZERO":
        lit = "1" if witness is None else monomial.format_node(witness)
    _emit_verdict(args, result, witness=lit, stats={"gates": c.size, "degree": c.degree},
                  witness_text=lit)
    return 0


def cmd_pit_random(args):
    c = _read_circuit(args.file)
    d = max(c.degree, 1)
    set_size = args.set_size if args.set_size is not None else 100 * d
    bb = BlackBox.from_circuit(c, d=d)
    rng = np.random.default_rng(args.seed)
    result, witness, bound = randomized_pit(bb, range(set_size), args.trials, rng)
    stats = {"queries": bb.queries, "trials": args.trials, "set_size": set_size}
    if result == "ZERO":
        _emit_verdict(args, result, bound=bound, stats=stats, witness_text=f"p_fail<={bound}")
    else:
        _emit_verdict(args, result, witness=_point_dump(witness) if args.json else None,
                      stats=stats)
        if not args.json:
            print(_point_dump(witness), end="")
    return 0


def cmd_pit_hitting(args):
    c = _read_circuit(args.file)
    bb = BlackBox.from_circuit(c)
    delta = args.depth if args.depth is not None else c.product_depth
    result, witness = hitting.blackbox_pit_det(bb, c.size, delta, budget=args.budget)
    stats = {"queries": bb.queries, "depth": delta, "budget": args.budget}
    if result == "NONZERO":
        dump = _point_dump(witness)
        _emit_verdict(args, result, witness=dump if args.json else None, stats=stats)
        if not args.json:
            print(dump, end="")
    else:
        _emit_verdict(args, result, stats=stats)
    return 0


def cmd_expand(args):
    c = _read_circuit(args.file)
    poly = oracle.expand(c, max_terms=args.max_terms)
    items = sorted(
        ((monomial.format_node(m), coeff) for m, coeff in poly.terms.items()),
        key=lambda kv: kv[0],
    )
    if args.json:
        print(json.dumps({
            "terms": [{"coeff": coeff, "monomial": lit} for lit, coeff in items],
            "const": poly.const,
        }, sort_keys=True))
    else:
        for lit, coeff in items:
            print(f"{coeff} {lit}")
        print(f"const {poly.const}")
    return 0


def cmd_gen(args):
    c = circuit.gen_random(args.n, args.size, args.degree, args.mode, args.seed, args.field)
    text = c.serialize()
    if args.json:
        print(json.dumps({"circuit": text}, sort_keys=True))
    else:
        print(text, end="")
    return 0


def cmd_hitting_dump(args):
    points = hitting.hitting_set_nonassoc(
        args.n, args.size, args.degree, args.depth, args.mode, args.field, budget=args.budget
    )
    if args.json:
        payload = []
        for pts in points:
            payload.append([
                {"d": e.d, "scalar": e.scalar, "body": np.asarray(e.body, dtype=object).tolist()}
                for e in pts
            ])
        print(json.dumps({"points": payload}, sort_keys=True))
    else:
        for idx, pts in enumerate(points):
            print(f"point {idx}")
            print(_point_dump(pts), end="")
    return 0


def cmd_verify(args):
    lines = []
    ok, results = verify.run_suite(args.corpus, args.seed, report=lines.append)
    if args.json:
        print(json.dumps({"passed": ok, "results": results}, sort_keys=True))
    else:
        for line in lines:
            print(line)
        print("ALL PASS" if ok else "FAILURES PRESENT")
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="nacirc", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("pit-white", help="deterministic white-box identity test")
    p.add_argument("file")
    common(p)
    p.set_defaults(fn=cmd_pit_white)

    p = sub.add_parser("pit-random", help="randomized black-box identity test")
    p.add_argument("file")
    p.add_argument("--set-size", type=int, default=None, help="|S| (default 100*degree)")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_pit_random)

    p = sub.add_parser("pit-hitting", help="deterministic black-box identity test")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=None, help="product depth promise")
    p.add_argument("--budget", type=int, default=hitting.DEFAULT_BUDGET)
    common(p)
    p.set_defaults(fn=cmd_pit_hitting)

    p = sub.add_parser("expand", help="brute-force expansion")
    p.add_argument("file")
    p.add_argument("--max-terms", type=int, default=oracle.DEFAULT_TERM_CAP)
    common(p)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("gen", help="deterministic random circuit")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--degree", type=int, required=True, help="syntactic degree cap")
    p.add_argument("--mode", choices=("comm", "noncomm"), default="comm")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", type=int, default=DEFAULT_MODULUS)
    common(p)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("hitting-dump", help="materialized hitting set points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", choices=("comm", "noncomm"), default="comm")
    p.add_argument("--field", type=int, default=DEFAULT_MODULUS)
    p.add_argument("--budget", type=int, default=hitting.DEFAULT_BUDGET)
    common(p)
    p.set_defaults(fn=cmd_hitting_dump)

    p = sub.add_parser("verify", help="cross-algorithm verification suite")
    p.add_argument("--corpus", choices=("small", "full"), default="small")
    p.add_argument("--seed", type=int, default=1)
    common(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PARAM_ERRORS as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
