"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (reported as a JSON object
on stdout), 2 on a usage error (argparse message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import acceptance
from .coxeter import CoxeterGroup, format_root, format_word, parse_word
from .errors import CambrianError
from .fan import cone_dump, cone_report
from .modules import ar_quiver_dot, removed_modules, support_tilting_check, torsion_pair_for_sortable
from .quiver import load_quiver
from .sortable import (
    FOUND,
    antisortable,
    bounded_by_power,
    default_horizon,
    fiber,
    is_bounded,
    layer_roots,
    leftmost_word,
    pi_c,
    require_sortable,
    sorting_blocks,
)

NEEDS_WORD = {"pi-c", "sortable", "leftmost", "layers", "bounded", "antisortable", "fiber", "cone", "removed",
              "torsion-pair", "tilting"}


def _letters(W: CoxeterGroup, w) -> str:
    return format_word(leftmost_word(W, w).letters)


def _renumbering(W: CoxeterGroup, out: dict) -> dict:
    if W.quiver.renumbered:
        out["renumbering"] = list(W.quiver.relabel)
    return out


def _effective_horizon(W, x, requested):
    """The iteration cap actually applied: per-root defaults are reported by their maximum."""
    if requested is not None:
        return requested
    word = leftmost_word(W, x).letters
    return max((default_horizon(b) for b in layer_roots(W, word)), default=0)


def cmd_pi_c(W, word, args):
    return {"result": _letters(W, pi_c(W, W.from_word(word)))}


def cmd_sortable(W, word, args):
    w = W.from_word(word)
    sw = leftmost_word(W, w)
    blocks = sorting_blocks(W, w)
    witness = None
    if blocks is None:
        supports = sw.supports
        t = next(k for k in range(1, len(supports)) if not supports[k] <= supports[k - 1])
        witness = {"block": t, "outside_previous": sorted(supports[t] - supports[t - 1])}
    return {
        "verdict": "Sortable" if blocks is not None else "NotSortable",
        "witness": witness,
        "word": format_word(sw.letters),
        "positions": list(sw.positions),
        "blocks": [format_word(b) for b in sw.blocks],
    }


def cmd_leftmost(W, word, args):
    sw = leftmost_word(W, W.from_word(word))
    return {
        "word": format_word(sw.letters),
        "positions": list(sw.positions),
        "blocks": [format_word(b) for b in sw.blocks],
    }


def cmd_layers(W, word, args):
    return {"word": format_word(word), "roots": [format_root(b) for b in layer_roots(W, word)]}


def cmd_bounded(W, word, args):
    x = W.from_word(word)
    report = is_bounded(W, x, args.horizon)
    sw = leftmost_word(W, x)
    out = report.to_json()
    out["horizon"] = _effective_horizon(W, x, args.horizon)
    out["word"] = format_word(sw.letters)
    out["positions"] = list(sw.positions)
    if args.max_power is not None:
        out["power"] = bounded_by_power(W, x, args.max_power)
    return out


def cmd_antisortable(W, word, args):
    x = W.from_word(word)
    top = antisortable(W, x, horizon=args.horizon)
    if top.status == FOUND:
        return {"result": _letters(W, top.element)}
    return {"result": None, "status": top.status, "horizon": _effective_horizon(W, x, args.horizon)}


def cmd_fiber(W, word, args):
    x = W.from_word(word)
    require_sortable(W, x)
    top = antisortable(W, x, horizon=args.horizon)
    bound = args.len_bound
    if bound is None:
        if top.status != FOUND:
            raise CambrianError("fiber is not known to be finite; pass --len-bound")
        bound = W.length(top.element)
    members = sorted(fiber(W, x, bound), key=lambda w: (W.length(w), leftmost_word(W, w).letters))
    out = {
        "sortable": _letters(W, x),
        "elements": [_letters(W, w) for w in members],
        "count": len(members),
        "len_bound": bound,
        "complete": top.status == FOUND and bound >= W.length(top.element),
    }
    if top.status != FOUND:
        out["horizon"] = bound
    return out


def cmd_cone(W, word, args):
    x = W.from_word(word)
    if args.format == "off":
        return cone_dump(W, x)
    out = cone_report(W, x)
    out["sortable"] = _letters(W, x)
    return out


def cmd_removed(W, word, args):
    w = W.from_word(word)
    return {
        "word": _letters(W, w),
        "modules": [{"module": idx.label(), "root": format_root(b)} for idx, b in removed_modules(W, w)],
    }


def cmd_torsion_pair(W, word, args):
    report = torsion_pair_for_sortable(W, W.from_word(word))
    report.pop("passed")
    return report


def cmd_tilting(W, word, args):
    return support_tilting_check(W, W.from_word(word))


def cmd_ar_quiver(W, word, args):
    highlight = W.from_word(word) if word is not None else None
    return ar_quiver_dot(W, copies=args.copies, highlight=highlight)


COMMANDS = {
    "pi-c": (cmd_pi_c, "project an element to its c-sortable part"),
    "sortable": (cmd_sortable, "test c-sortability"),
    "leftmost": (cmd_leftmost, "leftmost reduced subword of c^inf"),
    "layers": (cmd_layers, "layer roots of a reduced word"),
    "bounded": (cmd_bounded, "boundedness of a c-sortable element"),
    "antisortable": (cmd_antisortable, "maximum of the pi^c fiber"),
    "fiber": (cmd_fiber, "elements projecting to a c-sortable element"),
    "cone": (cmd_cone, "Cambrian cone basis and rays"),
    "removed": (cmd_removed, "preprojectives removed by the leftmost word"),
    "torsion-pair": (cmd_torsion_pair, "torsion pair of a c-sortable element (Dynkin)"),
    "tilting": (cmd_tilting, "support tilting summands of a c-sortable element"),
    "ar-quiver": (cmd_ar_quiver, "DOT drawing of the preprojective component"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cambrian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-q", "--quiver", required=True, help="preset name, file, or arrow list '1 2 / 2 3'")
        p.add_argument("-w", "--word", help="generator indices, e.g. '1 3 2'")
        p.add_argument("--len-bound", type=int, help="length bound for fiber enumeration")
        p.add_argument("--horizon", type=int, help="iteration cap for preprojectivity tests")
        p.add_argument("--max-power", type=int, help="also search N <= this with x <= c^N")
        p.add_argument("--copies", type=int, default=4, help="copies of c drawn for infinite AR components")
        default = "dot" if name == "ar-quiver" else "json"
        choices = ["json", "dot"] + (["off"] if name == "cone" else [])
        p.add_argument("--format", choices=choices, default=default)
    st = sub.add_parser("selftest", help="run the acceptance criteria")
    st.add_argument("--only", action="append", help="criterion name (repeatable)")
    return parser


def _emit(obj) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return _run(argv)
    except SystemExit as exc:  # argparse reports usage errors (and --help) this way
        return exc.code if isinstance(exc.code, int) else 2


def _run(argv: Optional[Sequence[str]]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selftest":
        return _selftest(args, parser)
    func = COMMANDS[args.command][0]
    word = None
    if args.word is not None:
        try:
            word = parse_word(args.word)
        except ValueError:
            parser.error(f"word {args.word!r} must be space-separated integers")
    if args.command in NEEDS_WORD and word is None:
        parser.error(f"{args.command} requires -w/--word")
    if args.format == "dot" and args.command != "ar-quiver":
        parser.error("--format dot is only available for ar-quiver")
    try:
        W = CoxeterGroup(load_quiver(args.quiver))
        out = func(W, word, args)
        if isinstance(out, dict) and args.command != "ar-quiver":
            out = _renumbering(W, out)
        if args.command == "ar-quiver" and args.format == "json":
            out = {"dot": out}
    except CambrianError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except (OSError, KeyError, ValueError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    _emit(out)
    return 0


def _selftest(args, parser) -> int:
    try:
        outcomes = acceptance.run_all(args.only)
    except KeyError as exc:
        parser.error(str(exc))
    for o in outcomes:
        print(o.line(), file=sys.stderr)
    passed = all(o.passed for o in outcomes)
    _emit({"passed": passed, "criteria": [o.to_json() for o in outcomes]})
    return 0 if passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
