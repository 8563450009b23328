"""Command-line entry point: ``semirandom {run,estimate,verify,couple}``."""
from __future__ import annotations

import argparse
import json
import sys

from .harness import COMMANDS, FORMATS, STOPS, STRATEGIES, ExperimentSpec, execute


class _Parser(argparse.ArgumentParser):
    # usage errors are reported as JSON like every other failure
    def error(self, message):
        sys.stderr.write(json.dumps({"record": "error", "error": "UsageError",
                                     "message": message}) + "\n")
        sys.exit(2)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=STRATEGIES, default="kmin")
    p.add_argument("--variant", choices=("pre", "post"), default=None,
                   help="process variant (default depends on the strategy)")
    p.add_argument("--n", type=int, default=1000, help="number of vertices")
    p.add_argument("--k", type=int, default=2, help="target minimum degree for kmin")
    p.add_argument("--m", type=int, default=None, help="target edge count for bipartite")
    p.add_argument("--pattern", default=None,
                   help="pattern graph file ('p n m' format) or K<r>/C<r>/P<r>")
    p.add_argument("--g", default="ln", help="star budget growth: ln, sqrtln, loglog or const:<x>")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--budget", type=int, default=0, help="max rounds per trial (0 = none)")
    p.add_argument("--stop", choices=STOPS, default="default")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-edges", action="store_true", help="include every edge in trial records")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="semirandom", description="Simulate semi-random graph processes.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--format", choices=FORMATS, default="jsonl")
        p.add_argument("--omit-timing", action="store_true",
                       help="leave wall_ms out so reports are byte-reproducible")
        p.add_argument("--spec", default=None, help="read the experiment spec from a JSON file")
        p.add_argument("--dump-spec", action="store_true", help="print the spec as JSON and exit")
        if name == "verify":
            p.add_argument("input", nargs="?", default=None, help="file of trial records")
            continue
        _common(p)
        if name == "couple":
            p.add_argument("--rounds", type=int, default=1000)
    return ap


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    if args.spec:
        with open(args.spec) as fh:
            d = json.load(fh)
        d["command"] = args.command
        if args.omit_timing:
            d["omit_timing"] = True
        return ExperimentSpec.from_dict(d)
    d = {k: v for k, v in vars(args).items() if k not in ("spec", "dump_spec")}
    return ExperimentSpec.from_dict(d)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
    except (OSError, ValueError, TypeError) as exc:
        sys.stderr.write(json.dumps({"record": "error", "error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 2
    if args.dump_spec:
        sys.stdout.write(json.dumps(spec.to_dict(), indent=2) + "\n")
        return 0
    return execute(spec, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
