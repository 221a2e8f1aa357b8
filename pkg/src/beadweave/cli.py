"""Command-line interface: ``beadweave {contract,hair,weight,realize,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import _kernel
from .contraction import GropeSpec, build_grope_clasper, check_theorem1_shape, complete_contraction
from .diagram import DiagramError
from .families import ellipse_generator
from .hairmap import hair_expand
from .pipeline import DEFAULT_MAX_N, StageError, verify_paper
from .sl2weight import sl2_eval_sum
from .textio import (
    FormatError,
    format_clasper,
    format_diagram,
    format_linking,
    format_sum,
    parse_clasper,
    parse_linking,
    parse_sum,
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def cmd_contract(args) -> int:
    clasper = parse_clasper(_read(args.clasper))
    lk = parse_linking(_read(args.linking))
    result = complete_contraction(clasper, lk)
    sys.stdout.write(format_sum(result))
    if args.check_n is not None:
        report = check_theorem1_shape(result, args.check_n)
        for i, t in enumerate(report.terms):
            status = "ok" if t.passed else "FAIL " + "; ".join(t.violations)
            print(f"# term {i}: {status}")
        for w in report.warnings:
            print(f"# warning: {w}")
        return 0 if report.passed else 1
    return 0


def cmd_hair(args) -> int:
    s = parse_sum(_read(args.sum_file))
    sys.stdout.write(format_sum(hair_expand(s, args.max_degree)))
    return 0


def cmd_weight(args) -> int:
    s = parse_sum(_read(args.diagram_file))
    value = sl2_eval_sum(s, loop_value=args.loop_value)
    print(value)
    return 0


def cmd_realize(args) -> int:
    gen = ellipse_generator(args.n)
    print(f"# generator: ellipse with {args.n - 1} rungs and two hairs")
    sys.stdout.write(format_diagram(gen))
    if args.emit_clasper or args.write_prefix:
        clasper, lk = build_grope_clasper(GropeSpec(args.n))
        if args.emit_clasper:
            print("# clasper T'")
            sys.stdout.write(format_clasper(clasper))
            print("# linking data")
            sys.stdout.write(format_linking(lk))
        if args.write_prefix:
            Path(args.write_prefix + ".clasper").write_text(format_clasper(clasper))
            Path(args.write_prefix + ".lk").write_text(format_linking(lk))
    return 0


def cmd_verify(args) -> int:
    report = verify_paper(args.n, max_n=args.max_n)
    if args.json:
        payload = report.to_dict()
        payload["kernel"] = _kernel.BACKEND
        print(json.dumps(payload, indent=2))
    else:
        for v in report.verdicts:
            print(f"[{'PASS' if v.passed else 'FAIL'}] {v.name}: {v.detail}")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beadweave", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("contract", help="complete contraction of a clasper")
    c.add_argument("clasper")
    c.add_argument("linking")
    c.add_argument("--check-n", type=int, default=None,
                   help="also run the grope-boundary shape check for this n")
    c.set_defaults(func=cmd_contract)

    h = sub.add_parser("hair", help="apply the hair map to a sum file")
    h.add_argument("sum_file")
    h.add_argument("--max-degree", type=int, required=True)
    h.set_defaults(func=cmd_hair)

    w = sub.add_parser("weight", help="sl2 weight of a closed diagram (or sum)")
    w.add_argument("diagram_file")
    w.add_argument("--loop-value", type=int, default=3)
    w.set_defaults(func=cmd_weight)

    r = sub.add_parser("realize", help="print the generator for n (and its clasper)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--emit-clasper", action="store_true")
    r.add_argument("--write-prefix", default=None,
                   help="write PREFIX.clasper and PREFIX.lk")
    r.set_defaults(func=cmd_realize)

    v = sub.add_parser("verify", help="run the full verification chain")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, DiagramError, StageError, ValueError, OSError) as exc:
        print(f"beadweave: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
