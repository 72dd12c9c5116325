"""JSON documents for tables and rules, plus human-readable rule rendering.

A table document has a schema section and a data section::

    {
      "format": "drsa-table/1",
      "kind": "decision",
      "attributes": [
        {"name": "q1", "type": "criterion", "preference": "gain", "domain": "numeric", "active": true},
        {"name": "d", "type": "decision", "preference": "gain", "domain": [1, 2, 3]}
      ],
      "objects": [{"id": "o1", "values": {"q1": 1, "d": 1}}]
    }

Missing values are the strings ``"?"`` (lost) and ``"*"`` (do not care).
Interval tables (``"kind": "interval"``) hold ``[l, u]`` pairs, with ``null``
for a missing limit. Documents without a decision attribute describe plain
alternatives, as used for ranking.
"""

from __future__ import annotations

import json
import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence

from drsa.errors import ParseError, ValidationError
from drsa.interval import IntervalTable
from drsa.pct import Alternatives
from drsa.rules import Certainty, DecisionRule, ElementaryCondition, Relation
from drsa.table import Attribute, ClassUnion, DecisionTable, Direction, Kind, is_missing

TABLE_FORMAT = "drsa-table/1"
RULES_FORMAT = "drsa-rules/1"
_QUANTUM = Decimal("0.000001")


def fmt(value) -> str:
    """Fixed six-decimal rendering with half-even rounding."""
    if isinstance(value, float):
        value = Fraction(value)
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = 60
        d = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(_QUANTUM, rounding=ROUND_HALF_EVEN)
    if d == 0:
        d = abs(d)
    return f"{d:.6f}"


def parse_number(text) -> Fraction:
    try:
        return Fraction(Decimal(str(text)))
    except Exception:
        raise ParseError(f"not a number: {text!r}") from None


def dumps(document: Any) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None


# -- schema --------------------------------------------------------------------

def attribute_to_dict(attr: Attribute, decision: bool = False) -> dict:
    if decision:
        kind = "decision"
    else:
        kind = "criterion" if attr.is_criterion else "regular"
    out = {"name": attr.name, "type": kind,
           "preference": attr.kind.value if attr.is_criterion else "none",
           "domain": "numeric" if attr.values is None else list(attr.values)}
    if not decision:
        out["active"] = True
    return out


def _attribute_from_dict(entry: Any, locus: str) -> tuple[Attribute, str, bool]:
    if not isinstance(entry, dict):
        raise ParseError("attribute entry must be an object", locus)
    for key in ("name", "type"):
        if key not in entry:
            raise ParseError(f"missing field {key!r}", locus)
    name, role = entry["name"], entry["type"]
    if not isinstance(name, str) or not name:
        raise ParseError("attribute name must be a non-empty string", f"{locus}.name")
    if role not in ("criterion", "regular", "decision"):
        raise ParseError(f"unknown attribute type {role!r}", f"{locus}.type")
    preference = entry.get("preference", "none" if role == "regular" else "gain")
    if role == "regular":
        if preference not in ("none", None):
            raise ParseError("regular attributes carry no preference direction", f"{locus}.preference")
        kind = Kind.REGULAR
    else:
        if preference not in ("gain", "cost"):
            raise ParseError(f"preference must be gain or cost, got {preference!r}", f"{locus}.preference")
        kind = Kind(preference)
    domain = entry.get("domain", "numeric")
    if domain == "numeric":
        values = None
    elif isinstance(domain, list):
        values = tuple(domain)
    else:
        raise ParseError("domain must be \"numeric\" or a list of values", f"{locus}.domain")
    active = entry.get("active", True)
    if not isinstance(active, bool):
        raise ParseError("active must be true or false", f"{locus}.active")
    try:
        attr = Attribute(name, kind, values)
    except ValidationError as exc:
        raise ParseError(str(exc), locus) from None
    return attr, role, active


def _schema(doc: dict):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    fmt_tag = doc.get("format", TABLE_FORMAT)
    if fmt_tag != TABLE_FORMAT:
        raise ParseError(f"unsupported format {fmt_tag!r}", "format")
    attrs = doc.get("attributes")
    if not isinstance(attrs, list) or not attrs:
        raise ParseError("a non-empty attribute list is required", "attributes")
    conditions, decision, inactive = [], None, set()
    for i, entry in enumerate(attrs):
        attr, role, active = _attribute_from_dict(entry, f"attributes[{i}]")
        if role == "decision":
            if decision is not None:
                raise ValidationError("a table may have only one decision attribute")
            decision = attr
        elif active:
            conditions.append(attr)
        else:
            inactive.add(attr.name)
    names = [a.name for a in conditions] + sorted(inactive) + ([decision.name] if decision else [])
    if len(set(names)) != len(names):
        raise ValidationError("attribute names must be unique")
    records = doc.get("objects")
    if not isinstance(records, list):
        raise ParseError("an object list is required", "objects")
    for i, rec in enumerate(records):
        if not isinstance(rec, dict) or "id" not in rec or not isinstance(rec.get("values"), dict):
            raise ParseError("each object needs an id and a values mapping", f"objects[{i}]")
    return conditions, decision, records


def _cell(rec: dict, attr: Attribute, locus: str):
    if attr.name not in rec["values"]:
        raise ParseError(f"missing value for {attr.name!r}", locus)
    return rec["values"][attr.name]


def parse_table(text: str):
    """Parse a table document into a DecisionTable, IntervalTable or Alternatives."""
    doc = _loads(text)
    conditions, decision, records = _schema(doc)
    kind = doc.get("kind")
    if kind is None:
        kind = "decision" if decision is not None else "alternatives"
    ids = [rec["id"] for rec in records]

    if kind == "alternatives":
        evaluations = {}
        for i, rec in enumerate(records):
            evaluations[rec["id"]] = tuple(_cell(rec, a, f"objects[{i}].values") for a in conditions)
        if len(evaluations) != len(records):
            raise ValidationError("object identifiers must be unique")
        return Alternatives(conditions, evaluations)

    if decision is None:
        raise ValidationError("a decision table needs exactly one decision attribute")

    if kind == "interval":
        intervals, decisions = [], []
        for i, rec in enumerate(records):
            locus = f"objects[{i}].values"
            row = []
            for a in conditions:
                cell = _cell(rec, a, locus)
                if not (isinstance(cell, list) and len(cell) == 2):
                    raise ParseError("an interval must be a [l, u] pair", f"{locus}.{a.name}")
                row.append(tuple(cell))
            intervals.append(row)
            d = _cell(rec, decision, locus)
            if not isinstance(d, list):
                d = [d, d]
            if len(d) != 2:
                raise ParseError("a decision interval must be a [l, u] pair", f"{locus}.{decision.name}")
            decisions.append(tuple(d))
        labels = decision.values
        if labels is None:
            labels = sorted({v for p in decisions for v in p}, reverse=decision.kind is Kind.COST)
        return IntervalTable(conditions, ids, intervals, decisions, labels, decision)

    if kind != "decision":
        raise ParseError(f"unknown table kind {kind!r}", "kind")
    rows, decisions = [], []
    for i, rec in enumerate(records):
        locus = f"objects[{i}].values"
        rows.append(tuple(_cell(rec, a, locus) for a in conditions))
        decisions.append(_cell(rec, decision, locus))
    return DecisionTable(conditions, ids, rows, decisions, decision)


def table_to_dict(table) -> dict:
    if isinstance(table, DecisionTable):
        attrs = [attribute_to_dict(a) for a in table.attributes]
        dec = table.decision
        if dec.values is None and list(table.labels) != sorted(table.labels, reverse=dec.kind is Kind.COST):
            dec = Attribute(dec.name, dec.kind, table.labels)
        attrs.append(attribute_to_dict(dec, decision=True))
        objects = []
        for x, row, label in zip(table.objects, table.rows(), table.decisions()):
            values = {a.name: v for a, v in zip(table.attributes, row)}
            values[table.decision.name] = label
            objects.append({"id": x, "values": values})
        return {"format": TABLE_FORMAT, "kind": "decision", "attributes": attrs, "objects": objects}
    if isinstance(table, IntervalTable):
        attrs = [attribute_to_dict(a) for a in table.criteria]
        dec = Attribute(table.decision.name, table.decision.kind, table.labels)
        attrs.append(attribute_to_dict(dec, decision=True))
        objects = []
        for x, row, d in zip(table.objects, table.raw, table.raw_decisions):
            values = {a.name: [None if is_missing(v) else v for v in cell] for a, cell in zip(table.criteria, row)}
            values[table.decision.name] = list(d)
            objects.append({"id": x, "values": values})
        return {"format": TABLE_FORMAT, "kind": "interval", "attributes": attrs, "objects": objects}
    if isinstance(table, Alternatives):
        attrs = [attribute_to_dict(a) for a in table.criteria]
        objects = [{"id": x, "values": {a.name: v for a, v in zip(table.criteria, row)}}
                   for x, row in table.evaluations.items()]
        return {"format": TABLE_FORMAT, "kind": "alternatives", "attributes": attrs, "objects": objects}
    raise TypeError(f"cannot serialize {type(table).__name__}")


def serialize_table(table) -> str:
    return dumps(table_to_dict(table))


def read_records(text: str) -> tuple[list, list[dict], str | None]:
    """Raw ``(ids, values-by-name, decision attribute name)`` for classification input."""
    doc = _loads(text)
    conditions, decision, records = _schema(doc)
    return ([r["id"] for r in records], [dict(r["values"]) for r in records],
            decision.name if decision else None)


# -- rules ---------------------------------------------------------------------

def _render_value(value) -> str:
    if isinstance(value, str):
        return value
    return repr(value)


def render_condition(cond: ElementaryCondition, attr: Attribute, subject: str = "y") -> str:
    if cond.relation is Relation.EQUALS:
        op = "="
    else:
        at_least = cond.relation is Relation.AT_LEAST
        if attr.kind is Kind.COST:
            at_least = not at_least
        op = "≥" if at_least else "≤"
    return f"f({subject},{cond.attribute}) {op} {_render_value(cond.value)}"


def render_rule(rule: DecisionRule, attributes: Sequence[Attribute], subject: str = "y",
                conclusion: str | None = None) -> str:
    """``if f(y,q1) ≥ 2 ∧ f(y,q2) ≥ 2 then y ∈ Cl_2^≥``."""
    by_name = {a.name: a for a in attributes}
    body = " ∧ ".join(render_condition(c, by_name[c.attribute], subject) for c in rule.conditions)
    then = "then it is possible that" if rule.certainty is Certainty.POSSIBLE else "then"
    return f"if {body} {then} {subject} ∈ {conclusion or rule.conclusion.symbol()}"


_COND = re.compile(r"^f\(y,(?P<attr>[^)]+)\)\s*(?P<op>≥|≤|=)\s*(?P<value>.+)$")
_RULE = re.compile(r"^if (?P<body>.+?) then (?P<possible>it is possible that )?y ∈ Cl_(?P<t>\d+)\^(?P<dir>≥|≤)$")


def _parse_value(text: str, attr: Attribute):
    text = text.strip()
    if attr.values is not None:
        for v in attr.values:
            if _render_value(v) == text:
                return v
        raise ParseError(f"value {text!r} not in the domain of {attr.name!r}")
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise ParseError(f"not a number: {text!r}") from None


def parse_rule_text(text: str, attributes: Sequence[Attribute]) -> DecisionRule:
    """Inverse of :func:`render_rule` (statistics are not part of the text)."""
    m = _RULE.match(text.strip())
    if not m:
        raise ParseError(f"unrecognised rule text {text!r}")
    by_name = {a.name: a for a in attributes}
    upward = m["dir"] == "≥"
    conditions = []
    for part in m["body"].split(" ∧ "):
        c = _COND.match(part.strip())
        if not c or c["attr"] not in by_name:
            raise ParseError(f"unrecognised condition {part!r}")
        attr = by_name[c["attr"]]
        if c["op"] == "=":
            relation = Relation.EQUALS
        else:
            at_least = c["op"] == "≥"
            if attr.kind is Kind.COST:
                at_least = not at_least
            relation = Relation.AT_LEAST if at_least else Relation.AT_MOST
        conditions.append(ElementaryCondition(attr.name, relation, _parse_value(c["value"], attr)))
    certainty = Certainty.POSSIBLE if m["possible"] else Certainty.CERTAIN
    return DecisionRule(tuple(conditions), ClassUnion(int(m["t"]), Direction.UP if upward else Direction.DOWN),
                        certainty)


def rule_to_dict(rule: DecisionRule, attributes: Sequence[Attribute], subject: str = "y",
                 conclusion: str | None = None) -> dict:
    return {
        "conditions": [{"attribute": c.attribute, "relation": c.relation.value, "value": c.value}
                       for c in rule.conditions],
        "conclusion": conclusion or str(rule.conclusion),
        "certainty": rule.certainty.value,
        "support": rule.support,
        "coverage": rule.coverage,
        "consistency": fmt(rule.consistency),
        "confidence": fmt(rule.confidence),
        "text": render_rule(rule, attributes, subject, conclusion),
    }


def rules_to_dict(rules: Sequence[DecisionRule], table: DecisionTable, **meta) -> dict:
    doc = {"format": RULES_FORMAT}
    doc.update(meta)
    doc["attributes"] = [attribute_to_dict(a) for a in table.attributes]
    doc["classes"] = list(table.labels)
    doc["rules"] = [rule_to_dict(r, table.attributes) for r in rules]
    return doc


def serialize_rules(rules: Sequence[DecisionRule], table: DecisionTable, **meta) -> str:
    return dumps(rules_to_dict(rules, table, **meta))


def parse_rules(text: str) -> tuple[list[DecisionRule], list[Attribute], list]:
    """Parse a rule document into ``(rules, condition attributes, class labels)``."""
    doc = _loads(text)
    if not isinstance(doc, dict) or doc.get("format") != RULES_FORMAT:
        raise ParseError(f"expected a {RULES_FORMAT} document", "format")
    attrs = []
    for i, entry in enumerate(doc.get("attributes", [])):
        attr, role, _ = _attribute_from_dict(entry, f"attributes[{i}]")
        attrs.append(attr)
    by_name = {a.name: a for a in attrs}
    classes = doc.get("classes")
    if not isinstance(classes, list) or len(classes) < 2:
        raise ParseError("a class list with at least two labels is required", "classes")
    rules = []
    for i, rec in enumerate(doc.get("rules", [])):
        locus = f"rules[{i}]"
        try:
            conditions = []
            for j, c in enumerate(rec["conditions"]):
                cond = ElementaryCondition(c["attribute"], Relation(c["relation"]), c["value"])
                if cond.attribute not in by_name:
                    raise ParseError(f"unknown attribute {cond.attribute!r}", f"{locus}.conditions[{j}]")
                cond.check(by_name[cond.attribute])
                conditions.append(cond)
            union = ClassUnion.parse(rec["conclusion"])
            rule = DecisionRule(tuple(conditions), union, Certainty(rec.get("certainty", "certain")),
                                int(rec.get("support", 0)), int(rec.get("coverage", 0)),
                                parse_number(rec.get("consistency", "0")),
                                parse_number(rec.get("confidence", "1")))
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed rule: {exc}", locus) from None
        if not 1 <= union.t <= len(classes):
            raise ParseError(f"conclusion class {union.t} outside 1..{len(classes)}", locus)
        rules.append(rule)
    return rules, attrs, classes
