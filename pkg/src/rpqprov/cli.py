"""Command-line front end.

Exit codes: 0 success, 1 bad input or usage, 2 state cap exceeded,
3 undecided comparison (bound exceeded), 4 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import annotated, automata, spheres
from .annotated import enumerate_annotated
from .automata import format_word
from .errors import RpqProvError, StateCapExceeded
from .graphdb import answers, load_database, reasons_automaton
from .provenance import UNKNOWN, ComparisonConfig, compare, oracle_dominates, oracle_exceeds
from .regex import compile_rpq, parse_rpq
from .semiring import SEMIRINGS

EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_UNKNOWN = 3
EXIT_DISAGREE = 4


class UsageError(RpqProvError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text):
    src, sep, dst = text.partition(":")
    if not sep or not src or not dst:
        raise argparse.ArgumentTypeError(f"pair must look like src:dst, got {text!r}")
    return src, dst


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text, out):
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_weight(sr, x):
    if isinstance(x, bool) or isinstance(x, int):
        return x
    return sr.format_weight(x)


def _emit(args, out, rows, fields):
    for row in rows:
        if args.format == "json-lines":
            out.write(json.dumps(dict(zip(fields, row)), sort_keys=True) + "\n")
        else:
            out.write("\t".join("" if v is None else str(v) for v in row) + "\n")


def _query_and_db(args):
    q = compile_rpq(parse_rpq(args.query))
    d = load_database(_read(args.graph), args.semiring)
    return q, d


def cmd_answers(args, out):
    q, d = _query_and_db(args)
    sr = d.semiring
    rows = []
    for e in answers(q, d, args.state_cap):
        if args.format == "json-lines":
            weight = None if e.unbounded else _json_weight(sr, e.weight)
            rows.append((e.source, e.target, weight, e.unbounded))
        else:
            weight = "unbounded" if e.unbounded else sr.format_weight(e.weight)
            rows.append((e.source, e.target, weight))
    _emit(args, out, rows, ("source", "target", "weight", "unbounded"))
    return 0


def cmd_reasons(args, out):
    q, d = _query_and_db(args)
    sr = d.semiring
    a = reasons_automaton(q, d, args.pair[0], args.pair[1], args.state_cap)
    if args.export:
        _write(args.export, annotated.dumps(a), out)
    rows = []
    for entry in enumerate_annotated(a, args.max_len):
        weight = _json_weight(sr, entry.weight) if args.format == "json-lines" else sr.format_weight(entry.weight)
        rows.append((format_word(entry.word), weight))
    _emit(args, out, rows, ("word", "weight"))
    return 0


def _comparison(args):
    if len(args.pair) != 2:
        raise UsageError("compare needs exactly two --pair arguments")
    q, d = _query_and_db(args)
    cfg = ComparisonConfig(d.semiring, args.bound, state_cap=args.state_cap)
    if d.semiring.name in ("tropical", "multiplicity"):
        cfg.require_bound()
    (a, b), (c, e) = args.pair
    l1 = reasons_automaton(q, d, a, b, args.state_cap)
    l2 = reasons_automaton(q, d, c, e, args.state_cap)
    return cfg, l1, l2


def _verdict_rows(record):
    rows = [("relation", record["relation"]), ("semiring", record["semiring"]), ("bound", record["bound"])]
    for key in ("left_le_right", "right_le_left"):
        r = record[key]
        holds = {True: "true", False: "false", None: "unknown"}[r["holds"]]
        rows.append((key, holds, r["failed_condition"], r["witness"], r["at_weight"]))
    return rows


def _print_record(args, out, record):
    if args.format == "json-lines":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        for row in _verdict_rows(record):
            out.write("\t".join("" if v is None else str(v) for v in row) + "\n")


def cmd_compare(args, out):
    cfg, l1, l2 = _comparison(args)
    verdict = compare(l1, l2, cfg)
    _print_record(args, out, verdict.to_record())
    return EXIT_UNKNOWN if verdict.relation == UNKNOWN else 0


def cmd_oracle_check(args, out):
    """Compare the automaton-based verdict with brute-force word enumeration."""
    cfg, l1, l2 = _comparison(args)
    verdict = compare(l1, l2, cfg)
    record = verdict.to_record()
    if verdict.relation == UNKNOWN:
        over = oracle_exceeds(l1, cfg.bound, args.max_len) or oracle_exceeds(l2, cfg.bound, args.max_len)
        record["oracle"] = {"exceeds_bound": None if over is None else format_word(over)}
        agree = over is not None
    else:
        fwd = oracle_dominates(l1, l2, args.max_len, cfg)
        bwd = oracle_dominates(l2, l1, args.max_len, cfg)
        record["oracle"] = {"left_le_right": fwd, "right_le_left": bwd}
        agree = fwd == verdict.forward.holds and bwd == verdict.backward.holds
    record["oracle"]["max_len"] = args.max_len
    record["agree"] = agree
    if args.format == "json-lines":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        for row in _verdict_rows(record):
            out.write("\t".join("" if v is None else str(v) for v in row) + "\n")
        out.write(f"agree\t{'true' if agree else 'false'}\n")
    return 0 if agree else EXIT_DISAGREE


def cmd_sphere(args, out):
    a = annotated.loads(_read(args.automaton), args.semiring)
    sr = a.semiring
    kind, k = args.kind, args.k
    cap = args.state_cap
    if sr.name in ("tropical", "fuzzy"):
        if kind == "inner":
            _write(args.out, annotated.dumps(spheres.inner_sphere(a, k, cap)), out)
            return 0
        family = {k: annotated.support(spheres.inner_sphere(a, k, cap))}
        prev = sr.previous_better(k)
        if prev is not None:
            family[prev] = annotated.support(spheres.inner_sphere(a, prev, cap))
        if kind == "stripe":
            result = spheres.stripe_support(family, k, sr, "inner", cap)
        else:
            result = spheres.outer_sphere_support(a, k, cap)
    elif sr.name == "multiplicity":
        if kind == "inner":
            raise UsageError("inner spheres over the multiplicity semiring are not supported; use outer or stripe")
        if k < 1:
            raise UsageError("multiplicity spheres need k >= 1")
        b = spheres.multiplicity_expand(annotated.trim(a))
        if kind == "outer":
            result = spheres.multiplicity_outer_sphere_support(b, k, cap)
        else:
            family = {
                k: spheres.multiplicity_outer_sphere_support(b, k, cap),
                k + 1: spheres.multiplicity_outer_sphere_support(b, k + 1, cap),
            }
            result = spheres.stripe_support(family, k, sr, "outer", cap)
    else:
        raise UsageError("spheres are defined for the tropical, fuzzy and multiplicity semirings")
    _write(args.out, automata.dumps(automata.trim(result)), out)
    return 0


def build_parser():
    parser = _Parser(prog="rpqprov", description="Regular path query provenance over weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", required=True, help="graph file ('-' for stdin)")
            p.add_argument("--query", required=True, help="regular path query")
        p.add_argument("--semiring", required=graph, choices=sorted(SEMIRINGS))
        p.add_argument("--format", choices=("tsv", "json-lines"), default="tsv")
        p.add_argument("--state-cap", type=int, default=None)

    p = sub.add_parser("answers", help="all answer pairs with their weights")
    common(p)
    p.set_defaults(func=cmd_answers)

    p = sub.add_parser("reasons", help="reasons for one answer pair")
    common(p)
    p.add_argument("--pair", required=True, type=_pair)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--export", help="write the reasons automaton to this file")
    p.set_defaults(func=cmd_reasons)

    for name, func, doc in (
        ("compare", cmd_compare, "dominance verdict between two answer pairs"),
        ("oracle-check", cmd_oracle_check, "check a verdict against word enumeration"),
    ):
        p = sub.add_parser(name, help=doc)
        common(p)
        p.add_argument("--pair", action="append", required=True, type=_pair)
        p.add_argument("--bound", type=int, help="weight bound (tropical, multiplicity)")
        if name == "oracle-check":
            p.add_argument("--max-len", type=int, default=8)
        p.set_defaults(func=func)

    p = sub.add_parser("sphere", help="sphere or stripe of an annotated automaton")
    common(p, graph=False)
    p.add_argument("--automaton", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--kind", choices=("inner", "outer", "stripe"), default="inner")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_sphere)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_len", 0) is not None and getattr(args, "max_len", 0) < 0:
            raise UsageError("--max-len must be nonnegative")
        if getattr(args, "k", 0) is not None and getattr(args, "k", 0) < 0:
            raise UsageError("-k must be nonnegative")
        return args.func(args, out)
    except StateCapExceeded as exc:
        err.write(f"rpqprov: error: {exc}\n")
        return EXIT_RESOURCE
    except (RpqProvError, OSError, ValueError) as exc:
        err.write(f"rpqprov: error: {' '.join(str(exc).split())}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
