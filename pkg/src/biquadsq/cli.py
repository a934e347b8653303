"""Command line: decide, corpus, eval.

Exit codes for ``decide``: 0 true, 1 false, 2 unknown, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .arith import fraction_str, legendre
from .biquad import is_integral, make_field, norm_total, parse_coords
from .decision import MODES, decide, explain, format_explain
from .dyadic import Zsqrt5Residue, e_approx
from .errors import BiquadError
from .oracle import SearchParams, corpus_crosscheck, find_witness, verify_witness

EXIT_TRUE, EXIT_FALSE, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
DEFAULT_FIELDS = "2,3;-3,5;-7,17"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _budget_default() -> int | None:
    env = os.environ.get("BIQUADSQ_FACTOR_BUDGET")
    return int(env) if env else None


def _element(a: int, b: int, s: str):
    try:
        F = make_field(a, b)
        return F.elem(*parse_coords(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    except BiquadError as exc:
        raise UsageError(f"bad field ({a}, {b}): {exc}") from exc


def _decide_one(a: int, b: int, s: str, args) -> tuple[int, dict[str, Any], str]:
    S = _element(a, b, s)
    v = decide(S, args.factor_budget, args.mode)
    if args.witness and v.witness is None and v.is_sum is not False:
        w = find_witness(S, SearchParams(args.height, args.denom))
        if w is not None and verify_witness(S, *w):
            v.witness = w
    rep = explain(v)
    out = {**v.to_dict(), "explain": rep["lines"]}
    code = {True: EXIT_TRUE, False: EXIT_FALSE, None: EXIT_UNKNOWN}[v.is_sum]
    text = format_explain(v)
    if v.witness is not None:
        x, y = v.witness
        text += f"\nwitness: x = {x!r}\n         y = {y!r}"
    return code, out, text


def cmd_decide(args) -> int:
    if args.batch:
        worst = EXIT_TRUE
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            try:
                item = json.loads(line)
                s = item["s"]
                if not isinstance(s, str):
                    s = ",".join(str(t) for t in s)
                code, out, _ = _decide_one(int(item["a"]), int(item["b"]), s, args)
            except (UsageError, KeyError, ValueError) as exc:
                code, out = EXIT_USAGE, {"error": str(exc)}
            print(json.dumps(out, separators=(",", ":")))
            worst = max(worst, code)
        return worst
    if args.a is None or args.b is None or args.s is None:
        raise UsageError("decide needs --a, --b and --s (or --batch)")
    code, out, text = _decide_one(args.a, args.b, args.s, args)
    print(json.dumps(out, indent=2) if args.json else text)
    return code


def _parse_fields(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            a, b = (int(t) for t in part.split(","))
        except ValueError as exc:
            raise UsageError(f"bad field spec {part!r}") from exc
        out.append((a, b))
    return out


def cmd_corpus(args) -> int:
    fields = _parse_fields(args.fields)
    for a, b in fields:
        _element(a, b, "1,0,0,0")
    params = SearchParams(args.height, args.denom, args.seed)
    rep = corpus_crosscheck(fields, args.bound, args.count, args.seed, params, args.factor_budget)
    print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    return EXIT_TRUE if not rep.fatal else EXIT_FALSE


def _show_e(x) -> str:
    if isinstance(x, Zsqrt5Residue):
        if x.u == 0:
            return "sqrt5" if x.v == 1 else f"{x.v}*sqrt5 (mod 2^{x.k})"
        return str(x)
    return str(x)


def cmd_eval(args) -> int:
    what = args.what
    try:
        if what == "e":
            if len(args.args) != 1:
                raise UsageError("eval e N")
            print(_show_e(e_approx(int(args.args[0]), args.precision)))
        elif what == "legendre":
            if len(args.args) != 2:
                raise UsageError("eval legendre a p")
            print(legendre(int(args.args[0]), int(args.args[1])))
        elif what in ("norm", "integral"):
            if args.a is None or args.b is None or args.s is None:
                raise UsageError(f"eval {what} needs --a, --b and --s")
            S = _element(args.a, args.b, args.s)
            print(fraction_str(norm_total(S)) if what == "norm" else str(is_integral(S)).lower())
    except BiquadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="biquadsq", description="Sums of two squares in biquadratic fields.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def element_flags(q):
        q.add_argument("--a", type=int)
        q.add_argument("--b", type=int)
        q.add_argument("--s", help='coordinates "s0,s1,s2,s3" on 1, sqrt a, sqrt b, sqrt c')

    d = sub.add_parser("decide", help="decide one element (or a batch of JSON lines)")
    element_flags(d)
    d.add_argument("--factor-budget", type=int, default=_budget_default())
    d.add_argument("--mode", choices=MODES, default="sound")
    d.add_argument("--witness", action="store_true", help="search for an explicit witness")
    d.add_argument("--height", type=int, default=3)
    d.add_argument("--denom", type=int, default=4, choices=(1, 2, 4))
    d.add_argument("--json", action="store_true")
    d.add_argument("--batch", action="store_true", help='read {"a":..,"b":..,"s":..} lines from stdin')
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("corpus", help="random cross-check against the witness oracle")
    c.add_argument("--fields", default=DEFAULT_FIELDS)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--bound", type=int, default=5)
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--height", type=int, default=3)
    c.add_argument("--denom", type=int, default=4, choices=(1, 2, 4))
    c.add_argument("--factor-budget", type=int, default=_budget_default())
    c.set_defaults(func=cmd_corpus)

    e = sub.add_parser("eval", help="inspect e(N), Legendre symbols, norms, integrality")
    e.add_argument("what", choices=("e", "legendre", "norm", "integral"))
    e.add_argument("args", nargs="*")
    element_flags(e)
    e.add_argument("--precision", type=int, default=8)
    e.set_defaults(func=cmd_eval)
    return p


def _glue_values(argv: list[str]) -> list[str]:
    """Coordinate lists like "-1,0,0,0" look like flags to argparse."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--s", "--fields") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_glue_values(argv))
        if not getattr(args, "func", None):
            raise UsageError(parser.format_usage().strip())
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
