"""Command line entry point.

Exit codes: 0 PASS, 1 FAIL, 2 INCONCLUSIVE-AT-CAP (including enumeration
overflow), 3 usage error. Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional

from . import counterexample, groups, render, sequences
from .colorings import Coloring, color_text, compile_coloring, constant_coloring
from .dsl import SpecSyntaxError, format_spec, parse_spec
from .groups import DEFAULT_MAX_ELEMENTS, BallOverflow, UnsupportedSpec, WordMetric
from .verify import (
    FAIL, INCONCLUSIVE, PASS, Window, aperiodicity_scan, la2_scan, orbit_pattern_scan,
    ua_lambda_scan,
)

EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _spec(text: str):
    try:
        return parse_spec(text)
    except SpecSyntaxError as exc:
        raise UsageError(f"bad --spec {text!r}: {exc}") from exc


def _coloring(args) -> Coloring:
    spec = _spec(args.spec)
    if getattr(args, "coloring", "compiled") == "constant":
        return constant_coloring(spec)
    return compile_coloring(spec)


def _emit(args, text: str, binary: bool = False) -> None:
    out = getattr(args, "output", None)
    if out:
        mode = "wb" if binary else "w"
        with open(out, mode) as fh:
            fh.write(text)
    elif binary:
        sys.stdout.buffer.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands


def cmd_parse(args) -> int:
    print(format_spec(_spec(args.spec)))
    return 0


def cmd_color(args) -> int:
    f = _coloring(args)
    metric = WordMetric(f.spec, args.max_elements)
    lines = [
        f"{groups.format_element(f.spec, g)}\t{color_text(f(g))}\n"
        for g in metric.ball(args.radius)
    ]
    _emit(args, "".join(lines))
    return 0


def _report(args, report) -> int:
    _emit(args, report.to_json(timing=args.timing))
    print(f"{report.kind}: {report.verdict}", file=sys.stderr)
    return EXIT[report.verdict]


def cmd_verify_aperiodic(args) -> int:
    f = _coloring(args)
    window = Window(args.window, max_elements=args.max_elements)
    return _report(args, aperiodicity_scan(f, args.b_radius, window, args.threads, args.seed))


def cmd_verify_la2(args) -> int:
    f = _coloring(args)
    try:
        g = groups.parse_element(f.spec, args.g)
    except ValueError as exc:
        raise UsageError(f"bad --g {args.g!r}: {exc}") from exc
    if g == groups.identity(f.spec):
        raise UsageError("--g must not be the identity")
    report = la2_scan(f, g, args.h_radius, args.s_cap, args.max_elements, args.threads, args.seed)
    return _report(args, report)


def cmd_verify_ua(args) -> int:
    f = _coloring(args)
    report = ua_lambda_scan(
        f, args.g_radius, args.h_radius,
        max_elements=args.max_elements, threads=args.threads, seed=args.seed,
    )
    return _report(args, report)


def cmd_verify_orbit(args) -> int:
    f = _coloring(args)
    metric = WordMetric(f.spec, args.max_elements)
    schedule = list(metric.ball(args.schedule_radius))
    if args.schedule_random:
        schedule = random.Random(args.seed).sample(schedule, min(args.schedule_random, len(schedule)))
    window = Window(args.window, max_elements=args.max_elements)
    return _report(args, orbit_pattern_scan(f, schedule, window, args.b_radius, args.threads, args.seed))


def cmd_demo_counterexample(args) -> int:
    rng = random.Random(args.seed)
    f = [rng.randrange(args.colors) for _ in range(args.domain + 1)]
    try:
        result = counterexample.demo(f, args.window)
    except counterexample.WindowTooSmall as exc:
        raise UsageError(str(exc)) from exc
    verdict = PASS if result.constant else FAIL
    lines = [
        f"colors={args.colors} domain=[0..{args.domain}] window=[1..{args.window}] seed={args.seed}",
        f"color: {result.color}",
        "sequence: " + " ".join(map(str, result.sequence)),
        f"h_{args.window}: {result.hn.cycle_text()}",
        "pullback: " + "".join(map(str, result.pattern)),
        "window periods: " + " ".join(map(str, result.periods)),
        f"verdict: {verdict}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT[verdict]


def cmd_render_grid(args) -> int:
    f = _coloring(args)
    try:
        data = render.render_grid(f, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, data, binary=True)
    return 0


def cmd_seq_dump(args) -> int:
    if args.which == "thue-morse":
        terms = sequences.thue_morse_prefix(args.n)
    else:
        terms = sequences.squarefree_ternary_prefix(args.n)
    _emit(args, "".join(map(str, terms)) + "\n")
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, spec: bool = True) -> None:
    if spec:
        p.add_argument("--spec", required=True, help="group expression, e.g. free(Z,prod(Z,Z))")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    p.add_argument("--threads", type=int, default=1)


def _scan(p: argparse.ArgumentParser) -> None:
    _common(p)
    p.add_argument("--coloring", choices=["compiled", "constant"], default="compiled")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lacolor", description="Limit aperiodic colorings on finite windows.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse and print a group expression")
    _common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("color", help="dump the compiled coloring on a ball")
    _common(p)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--coloring", choices=["compiled", "constant"], default="compiled")
    p.set_defaults(func=cmd_color)

    verify = sub.add_parser("verify", help="run a verification scan")
    vsub = verify.add_subparsers(dest="scan", required=True, parser_class=_Parser)

    p = vsub.add_parser("aperiodic")
    _scan(p)
    p.add_argument("--b-radius", type=int, default=4)
    p.add_argument("--window", type=int, default=12)
    p.set_defaults(func=cmd_verify_aperiodic)

    p = vsub.add_parser("la2")
    _scan(p)
    p.add_argument("--g", required=True, help="element text, e.g. 3 or L1.R-2")
    p.add_argument("--h-radius", type=int, default=100)
    p.add_argument("--s-cap", type=int, default=64)
    p.set_defaults(func=cmd_verify_la2)

    p = vsub.add_parser("ua")
    _scan(p)
    p.add_argument("--g-radius", type=int, default=4)
    p.add_argument("--h-radius", type=int, default=50)
    p.set_defaults(func=cmd_verify_ua)

    p = vsub.add_parser("orbit")
    _scan(p)
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--b-radius", type=int, default=4)
    p.add_argument("--schedule-radius", type=int, default=16)
    p.add_argument("--schedule-random", type=int, default=0,
                   help="sample this many shifts from the schedule ball (uses --seed)")
    p.set_defaults(func=cmd_verify_orbit)

    demo = sub.add_parser("demo", help="demonstrations")
    dsub = demo.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    p = dsub.add_parser("counterexample")
    _common(p, spec=False)
    p.add_argument("--colors", type=int, default=3)
    p.add_argument("--domain", type=int, default=5000)
    p.add_argument("--window", type=int, default=50)
    p.set_defaults(func=cmd_demo_counterexample)

    rend = sub.add_parser("render", help="images")
    rsub = rend.add_subparsers(dest="render", required=True, parser_class=_Parser)
    p = rsub.add_parser("grid")
    _common(p)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--coloring", choices=["compiled", "constant"], default="compiled")
    p.set_defaults(func=cmd_render_grid)

    seq = sub.add_parser("seq", help="sequence utilities")
    ssub = seq.add_subparsers(dest="seq", required=True, parser_class=_Parser)
    p = ssub.add_parser("dump")
    _common(p, spec=False)
    p.add_argument("--which", choices=["thue-morse", "ternary"], default="thue-morse")
    p.add_argument("--n", type=int, default=64)
    p.set_defaults(func=cmd_seq_dump)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lacolor: {exc}", file=sys.stderr)
        return USAGE
    except UnsupportedSpec as exc:
        print(f"lacolor: {exc}", file=sys.stderr)
        return USAGE
    except BallOverflow as exc:
        print(f"lacolor: {INCONCLUSIVE}: {exc}", file=sys.stderr)
        return EXIT[INCONCLUSIVE]


if __name__ == "__main__":
    sys.exit(main())
