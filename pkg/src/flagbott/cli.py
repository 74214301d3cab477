"""Command line: ``flagbott present|check|example``.

Exit codes: 0 success, 1 failed check, 2 malformed tower file,
3 unsupported centralizer, 4 inadmissible coefficient ring.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cases import CASES, run_case
from .errors import FlagBottError, SpecError
from .oracle import cross_check
from .polykernel import parse_ring
from .specfile import dumps, parse_tower, presentation_to_data
from .tower import effective_presentation, equivariant_presentation, ordinary_presentation, simplified

BUILDERS = {
    "equivariant": equivariant_presentation,
    "ordinary": ordinary_presentation,
    "effective": effective_presentation,
}


def _load(args):
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {args.file}: {exc.strerror}") from None
    ring = None
    if args.coeff:
        try:
            ring = parse_ring(args.coeff)
        except ValueError as exc:
            raise SpecError(f"--coeff: {exc}") from None
    return parse_tower(text, ring)


def cmd_present(args) -> int:
    spec = _load(args)
    p = BUILDERS[args.mode](spec)
    if not args.raw and args.mode != "effective":
        p = simplified(spec, p, args.mode == "equivariant")
    if args.out == "machine":
        sys.stdout.write(dumps(presentation_to_data(p)))
    else:
        sys.stdout.write(p.render())
    return 0


def cmd_check(args) -> int:
    spec = _load(args)
    report = cross_check(spec, kind=args.order, budget=args.budget)
    sys.stdout.write(dumps(report.to_data()) if args.out == "machine" else report.render())
    return 0 if report.passed else 1


def cmd_example(args) -> int:
    res = run_case(args.name)
    sys.stdout.write(dumps(res.to_data()) if args.out == "machine" else res.render())
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flagbott", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="tower description file")
            p.add_argument("--coeff", help="override the coefficient ring: Z, Q or Fp:<p>")
        p.add_argument("--out", choices=["text", "machine"], default="text")

    p = sub.add_parser("present", help="print a presentation of the cohomology ring")
    common(p)
    p.add_argument("--mode", choices=sorted(BUILDERS), default="equivariant")
    p.add_argument("--raw", action="store_true", help="keep the redundant SU coordinates")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("check", help="compare the presentations with the Weyl-group oracles")
    common(p)
    p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    p.add_argument("--budget", type=int, default=None, help="maximum number of S-pairs")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("example", help="replay a named worked example")
    p.add_argument("name", choices=list(CASES))
    common(p, with_file=False)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FlagBottError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
