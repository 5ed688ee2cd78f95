"""Command-line front end; every subcommand prints one JSON document.

Family files use the ``{"sets": [[label, ...], ...], "t": T, "valuation": [...]}``
format; ``-`` reads the family from standard input. Member indices in output
documents are 0-based positions in ``"sets"``. Exit codes: 0 ok, 1 domain
error, 2 usage error, 3 incomplete search.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .closed_forms import chang_U, valued_U
from .counting import count_sdr, enumerate_sdrs
from .family import (
    FamilyError,
    SetFamily,
    bits,
    construct_bar,
    construct_star,
    equivalence_classes,
    exchange,
    is_t_family,
    is_valued_family,
    parse_family_document,
    serialize_family,
    tight_sets,
)
from .pairs import census
from .sampling import SamplingError
from .search import COLLECT, MIN_ONLY, SearchSpec, descent_probe, verify_theorem4

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "error": EXIT_ERROR, "incomplete": EXIT_INCOMPLETE,
                "usage": EXIT_USAGE}[self.status]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(f"{self.prog}: error: {message}")


def _indices(mask: int) -> list[int]:
    return list(bits(mask))


def _load(path: str) -> tuple[SetFamily, int | None, tuple[int, ...] | None]:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise FamilyError(f"cannot read {path}: {exc.strerror}") from None
    return parse_family_document(text)


def _t_and_valuation(args, doc_t, doc_a, need_valuation=True):
    t = args.t if args.t is not None else doc_t
    a = tuple(args.valuation) if args.valuation else doc_a
    if t is None:
        raise FamilyError("t is required (--t or the family file's \"t\")")
    if need_valuation and a is None:
        raise FamilyError('a valuation is required (--valuation or the file\'s "valuation")')
    return t, a


def _cmd_count(args):
    family, _, _ = _load(args.family)
    return {"n_sdr": str(count_sdr(family))}


def _cmd_enumerate(args):
    family, _, _ = _load(args.family)
    result = enumerate_sdrs(family, args.limit)
    labels = family.ground.labels
    return {
        "sequences": [[labels[x] for x in sdr] for sdr in result.sequences],
        "truncated": result.truncated,
    }


def _cmd_verify(args):
    family, doc_t, doc_a = _load(args.family)
    t, a = _t_and_valuation(args, doc_t, doc_a, need_valuation=False)
    if a is None:
        # |A_i| = a_i + t fixes the only candidate valuation
        a = tuple(size - t for size in family.sizes())
    valued = all(w >= 1 for w in a) and is_valued_family(family, t, a)
    return {"is_t_family": is_t_family(family, t), "is_valued": valued}


def _cmd_pairs(args):
    family, doc_t, doc_a = _load(args.family)
    t, a = _t_and_valuation(args, doc_t, doc_a)
    result = census(family, t, a)
    labels = family.ground.labels
    return {
        "nep": result.nep,
        "nsp": result.nsp,
        "bound": str(result.bound),
        "theorem_applicable": result.theorem_applicable,
        "pairs": [
            {
                "x": labels[rep.x],
                "y": labels[rep.y],
                "exclusive": rep.exclusive,
                "saturated": rep.saturated,
                "witness": None if rep.witness is None else _indices(rep.witness),
            }
            for rep in result.reports
        ],
    }


def _cmd_transform(args):
    family, doc_t, doc_a = _load(args.family)
    index = family.ground.index
    for label in (args.x, args.y):
        if label not in index:
            raise FamilyError(f"element {label!r} is not in the ground set")
    result = exchange(family, index[args.x], index[args.y])
    t = args.t if args.t is not None else doc_t
    a = tuple(args.valuation) if args.valuation else doc_a
    payload: dict[str, Any] = {"family": serialize_family(result, t, a)}
    if t is not None and a is not None:
        deltas = []
        for tight in tight_sets(family, t, a):
            after = result.subset_unions[tight.indices].bit_count()
            deltas.append({
                "indices": _indices(tight.indices),
                "before": tight.union_size,
                "after": after,
                "delta": after - tight.union_size,
            })
        payload["tight_set_deltas"] = deltas
        payload["is_valued"] = is_valued_family(result, t, a)
    return payload


def _cmd_classes(args):
    family, doc_t, doc_a = _load(args.family)
    t, a = _t_and_valuation(args, doc_t, doc_a)
    return {
        "classes": [_indices(c) for c in equivalence_classes(family, t, a)],
        "tight_sets": [
            {"indices": _indices(ts.indices), "union_size": ts.union_size}
            for ts in tight_sets(family, t, a)
        ],
    }


def _cmd_formula(args):
    if args.valuation:
        value = valued_U(args.t, args.valuation)
    else:
        value = chang_U(args.t, args.n)
    return {"value": str(value)}


def _cmd_construct(args):
    if args.kind == "star":
        family = construct_star(args.t, args.n)
        return serialize_family(family, args.t, [1] * args.n)
    family = construct_bar(args.t, args.valuation)
    return serialize_family(family, args.t, args.valuation)


def _cmd_search(args):
    spec = SearchSpec(
        args.t,
        tuple(args.valuation),
        ground_cap=args.ground_cap,
        mode=COLLECT if args.collect else MIN_ONLY,
        max_families=args.max_families,
        max_seconds=args.max_seconds,
    )
    report = verify_theorem4(spec, jobs=args.jobs)
    doc = report.to_dict()
    doc["seed"] = args.seed
    if report.status != "complete":
        return CommandResult("incomplete", doc, ["search budget exhausted; verdict withheld"])
    return doc


def _cmd_descent(args):
    spec = SearchSpec(args.t, tuple(args.valuation), ground_cap=args.ground_cap)
    return descent_probe(spec, args.samples, args.seed).to_dict()


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdrkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def family_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("family", help="family file, or - for stdin")
        p.set_defaults(func=func)
        return p

    def t_val(p, required=False):
        p.add_argument("--t", type=int, required=required)
        p.add_argument("--valuation", type=int, nargs="+")

    family_cmd("count", _cmd_count, "number of SDRs")
    p = family_cmd("enumerate", _cmd_enumerate, "list SDRs in enumeration order")
    p.add_argument("--limit", type=int, default=1000)
    t_val(family_cmd("verify", _cmd_verify, "(t,n)-family and valued-family checks"))
    t_val(family_cmd("pairs", _cmd_pairs, "exclusive/saturated pair census"))
    p = family_cmd("transform", _cmd_transform, "exchange transform")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    t_val(p)
    t_val(family_cmd("classes", _cmd_classes, "tight sets and their classes"))

    p = sub.add_parser("formula", help="closed-form minimum SDR count")
    p.add_argument("--t", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--valuation", type=int, nargs="+")
    p.set_defaults(func=_cmd_formula)

    p = sub.add_parser("construct", help="build an extremal family")
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    star = kinds.add_parser("star")
    star.add_argument("--t", type=int, required=True)
    star.add_argument("--n", type=int, required=True)
    bar = kinds.add_parser("bar")
    bar.add_argument("--t", type=int, required=True)
    bar.add_argument("--valuation", type=int, nargs="+", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("search", help="exhaustive minimum over valued families")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--valuation", type=int, nargs="+", required=True)
    p.add_argument("--ground-cap", type=int)
    p.add_argument("--collect", action="store_true", help="include minimizer representatives")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-families", type=int)
    p.add_argument("--max-seconds", type=float)
    p.add_argument("--quiet", action="store_true", help="no per-shard progress lines")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("descent", help="random descent-step probe")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--valuation", type=int, nargs="+", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--ground-cap", type=int)
    p.set_defaults(func=_cmd_descent)
    return parser


def run(argv: Sequence[str]) -> CommandResult:
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _UsageError as exc:
        return CommandResult("usage", None, [str(exc)])
    except SystemExit as exc:  # --help
        return CommandResult("ok" if not exc.code else "usage")
    try:
        out = args.func(args)
    except (FamilyError, SamplingError, ValueError) as exc:
        return CommandResult("error", None, [str(exc)])
    if isinstance(out, CommandResult):
        return out
    return CommandResult("ok", out)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if "search" in argv[:1] and "--quiet" not in argv:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    result = run(argv)
    if result.payload is not None:
        json.dump(result.payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
