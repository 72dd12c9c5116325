"""Command-line interface: ``drsa {approx,quality,rules,classify,rank,transform}``.

Results go to stdout (or ``--out``) as JSON; diagnostics go to stderr.
Exit codes: 0 success, 1 validation or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from drsa import approximation as ap
from drsa import interval, io, pct, rules, transform
from drsa.dominance import Variant
from drsa.errors import DrsaError
from drsa.table import ClassUnion, DecisionTable

log = logging.getLogger("drsa")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DrsaError(f"cannot read {path}: {exc.strerror}") from None


def _attrs(args):
    if args.attrs is None:
        return None
    return [a.strip() for a in args.attrs.split(",") if a.strip()]


def _load_decision_table(args) -> DecisionTable:
    table = io.parse_table(_read(args.table))
    if not isinstance(table, DecisionTable):
        raise DrsaError(f"{args.command} needs a decision table")
    return table


def _ids(table, objects):
    return list(table.ordered(objects))


def cmd_approx(args) -> dict:
    table = io.parse_table(_read(args.table))
    if isinstance(table, interval.IntervalTable):
        return _approx_interval(table, args)
    if not isinstance(table, DecisionTable):
        raise DrsaError("approx needs a decision or interval table")
    variant = Variant.parse(args.mv)
    unions = [ClassUnion.parse(args.union)] if args.union else ap.all_unions(table)
    threshold = None
    if args.theta is not None:
        threshold = ap.ConsistencyThreshold(args.measure, args.theta)
    out = []
    for union in unions:
        if threshold is None:
            result = ap.drsa_approximation(table, _attrs(args), union, variant)
        else:
            result = ap.vc_approximation(table, _attrs(args), union, threshold, variant)
        out.append({
            "union": str(union),
            "lower": _ids(table, result.lower),
            "upper": _ids(table, result.upper),
            "boundary": _ids(table, result.boundary),
            "consistency": {x: io.fmt(v) for x, v in result.consistency.items()},
        })
    doc = {"command": "approx", "attributes": list(result.attributes), "mv": variant.value,
           "measure": args.measure if threshold else "epsilon",
           "theta": io.fmt(threshold.value) if threshold else None, "unions": out}
    return doc


def _approx_interval(tbl: interval.IntervalTable, args) -> dict:
    attrs = _attrs(args)
    if args.union:
        ts = [ClassUnion.parse(args.union).t]
    else:
        ts = list(range(1, tbl.n_classes + 1))
    out = []
    for t in ts:
        sets = interval.interval_class_sets(tbl, t)
        entry = {"t": t}
        for key, s in zip(("certain_up", "certain_down", "possible_up", "possible_down"), sets):
            entry[key] = tbl.ordered(s)
        for which in interval.Which:
            entry[which.value] = tbl.ordered(interval.second_order_approximation(tbl, attrs, t, which))
        out.append(entry)
    names = attrs if attrs is not None else [c.name for c in tbl.criteria]
    return {"command": "approx", "kind": "interval", "attributes": names, "classes": out}


def cmd_quality(args) -> dict:
    table = _load_decision_table(args)
    variant = Variant.parse(args.mv)
    q = ap.quality_of_approximation(table, _attrs(args), variant)
    boundary = set()
    for a in ap.approximate_all(table, _attrs(args), variant):
        if a.union.upward:
            boundary |= a.boundary
    return {"command": "quality", "mv": variant.value, "quality": io.fmt(q),
            "inconsistent": _ids(table, boundary)}


def cmd_rules(args) -> dict:
    table = _load_decision_table(args)
    variant = Variant.parse(args.mv)
    theta = args.theta if args.theta is not None else 0.0
    if args.measure != "epsilon":
        raise DrsaError("rule induction supports --measure epsilon only")
    found = rules.induce_rules(table, _attrs(args), theta, variant, args.certainty)
    return io.rules_to_dict(found, table, command="rules", mv=variant.value, theta=io.fmt(ap.exact(theta)),
                            certainty=args.certainty)


def cmd_classify(args) -> dict:
    if not args.rules:
        raise DrsaError("classify needs --rules")
    rule_list, attrs, classes = io.parse_rules(_read(args.rules))
    ids, records, decision = io.read_records(_read(args.table))
    label_index = {label: i + 1 for i, label in enumerate(classes)}
    out = []
    correct = known = 0
    for x, values in zip(ids, records):
        c = rules.classify_values(rule_list, attrs, len(classes), values)
        entry = {"id": x, "interval": [c.lower, c.upper], "class": c.point,
                 "label": classes[c.point - 1], "covered": c.covered}
        if decision is not None and values.get(decision) in label_index:
            actual = label_index[values[decision]]
            entry["actual"] = actual
            known += 1
            correct += actual == c.point
        out.append(entry)
    doc = {"command": "classify", "objects": out}
    if known:
        doc["accuracy"] = io.fmt(Fraction(correct, known))
    return doc


def _pair(p):
    return [p[0], p[1]]


def cmd_rank(args) -> dict:
    alts = io.parse_table(_read(args.table))
    if isinstance(alts, DecisionTable):
        alts = pct.Alternatives(alts.attributes, dict(zip(alts.objects, alts.rows())))
    if not isinstance(alts, pct.Alternatives):
        raise DrsaError("rank needs a table of alternatives")
    judgments = []
    if args.judgments:
        doc = io._loads(_read(args.judgments))
        items = doc.get("judgments") if isinstance(doc, dict) else doc
        if not isinstance(items, list):
            raise io.ParseError("expected a list of [a, b, label] judgments", "judgments")
        for i, item in enumerate(items):
            if not (isinstance(item, list) and len(item) == 3):
                raise io.ParseError("a judgment is [a, b, label]", f"judgments[{i}]")
            judgments.append(tuple(item))
    objects = _attrs_list(args.objects) if args.objects else None
    theta = args.theta if args.theta is not None else 0.0
    table, found, structure, relation, ranking = pct.rank(alts, judgments, args.variant, theta, objects, args.mode)
    lower_s, lower_sc = pct.approximate_outranking(table, theta)
    names = [pct.delta_name(c.name) for c in alts.criteria]
    dtable = table.as_decision_table()
    rule_docs = [io.rule_to_dict(r, dtable.attributes, "(a,b)", pct.rule_conclusion_label(r)) for r in found]
    order = [p for p in table.pairs]
    return {
        "command": "rank", "variant": pct.PctVariant(args.variant).value, "theta": io.fmt(ap.exact(theta)),
        "mode": args.mode, "criteria": names,
        "pct": [{"pair": _pair(r.pair), "delta": list(r.delta), "label": r.label} for r in table.rows],
        "lower_S": [_pair(p) for p in order if p in lower_s],
        "lower_Sc": [_pair(p) for p in order if p in lower_sc],
        "rules": rule_docs,
        "relation": [{"pair": _pair(p), "S": io.fmt(structure.s(*p)), "Sc": io.fmt(structure.sc(*p)),
                      "R": io.fmt(relation[p])} for p in structure.pairs()],
        "scores": {x: io.fmt(ranking.scores[x]) for x in structure.objects},
        "ranking": [list(g) for g in ranking.order],
    }


def _attrs_list(text):
    return [a.strip() for a in text.split(",") if a.strip()]


def cmd_transform(args):
    table = _load_decision_table(args)
    result = transform.transform(table, decompose=args.decompose)
    if args.decompose:
        return {"command": "transform", "tables": [io.table_to_dict(t) for t in result]}
    return io.table_to_dict(result)


COMMANDS = {
    "approx": cmd_approx,
    "quality": cmd_quality,
    "rules": cmd_rules,
    "classify": cmd_classify,
    "rank": cmd_rank,
    "transform": cmd_transform,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drsa", description="Dominance-based rough set analysis.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def common(p, union=True):
        p.add_argument("--table", required=True, help="table document (JSON)")
        p.add_argument("--out", help="write the result here instead of stdout")
        p.add_argument("--attrs", help="comma-separated condition attributes (default: all)")
        p.add_argument("--mv", default="classical", choices=["classical", "1.5", "2", "1.5+2"],
                       help="dominance variant for missing values")
        if union:
            p.add_argument("--union", help="class union as t:up or t:down (default: all)")

    p = sub.add_parser("approx", help="lower/upper approximations of class unions")
    common(p)
    p.add_argument("--theta", type=float, help="VC threshold; omit for classical approximations")
    p.add_argument("--measure", default="epsilon", choices=["epsilon", "mu"])

    p = sub.add_parser("quality", help="quality of approximation")
    common(p, union=False)

    p = sub.add_parser("rules", help="induce decision rules")
    common(p, union=False)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--measure", default="epsilon", choices=["epsilon", "mu"])
    p.add_argument("--certainty", default="certain", choices=["certain", "possible"])

    p = sub.add_parser("classify", help="classify objects with a rule document")
    p.add_argument("--table", required=True)
    p.add_argument("--rules", required=True, help="rule document produced by the rules command")
    p.add_argument("--out")

    p = sub.add_parser("rank", help="rank alternatives from pairwise judgments")
    p.add_argument("--table", required=True)
    p.add_argument("--judgments", help="JSON list of [a, b, S|Sc] judgments")
    p.add_argument("--variant", default="enc", choices=["ec", "enc"])
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--mode", default="crisp", choices=["crisp", "valued"])
    p.add_argument("--objects", help="comma-separated objects to rank (default: all)")
    p.add_argument("--out")

    p = sub.add_parser("transform", help="transform non-ordinal attributes")
    p.add_argument("--table", required=True)
    p.add_argument("--decompose", action="store_true", help="also split into one binary problem per class")
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        result = COMMANDS[args.command](args)
    except DrsaError as exc:
        print(f"drsa {args.command}: error: {exc}", file=sys.stderr)
        return 1
    text = io.dumps(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def run_command(argv) -> int:
    """``main`` that also maps argparse's SystemExit to an exit code."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


def entry() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    entry()
