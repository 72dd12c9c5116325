"""Monotone decision rules: sequential-covering induction and rule-based classification.

Rules are grown greedily, one elementary condition at a time, from the values
of positive objects that the rule still has to cover. A rule is accepted once
its consistency (the share of negative objects it covers) drops to the
threshold; it is then pruned to a condition-minimal form, and the positives it
covers are removed from the pool.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from drsa.approximation import (ConsistencyThreshold, Measure, all_unions, drsa_approximation, exact,
                                vc_lower)
from drsa.dominance import Variant
from drsa.errors import DomainError
from drsa.table import Attribute, ClassUnion, DecisionTable, Kind, is_missing

log = logging.getLogger(__name__)


class Relation(str, enum.Enum):
    AT_LEAST = ">="
    AT_MOST = "<="
    EQUALS = "="


class Certainty(str, enum.Enum):
    CERTAIN = "certain"
    POSSIBLE = "possible"


@dataclass(frozen=True)
class ElementaryCondition:
    attribute: str
    relation: Relation
    value: object

    def __post_init__(self):
        object.__setattr__(self, "relation", Relation(self.relation))

    def satisfied_by(self, attr: Attribute, value) -> bool:
        if is_missing(value):
            return False
        if self.relation is Relation.EQUALS:
            return value == self.value
        a, r = attr.rank(value), attr.rank(self.value)
        at_least = self.relation is Relation.AT_LEAST
        if attr.kind is Kind.COST:
            at_least = not at_least
        return a >= r if at_least else a <= r

    def check(self, attr: Attribute) -> None:
        if attr.is_criterion == (self.relation is Relation.EQUALS):
            raise DomainError(f"relation {self.relation.value} cannot be used on {attr.kind.value} attribute {attr.name!r}")
        attr.check_value(self.value)
        if is_missing(self.value):
            raise DomainError("a condition value cannot be missing")


@dataclass(frozen=True)
class DecisionRule:
    """``if <conditions> then y ∈ conclusion``, with statistics from the training table."""

    conditions: tuple[ElementaryCondition, ...]
    conclusion: ClassUnion
    certainty: Certainty = Certainty.CERTAIN
    support: int = 0
    coverage: int = 0
    consistency: Fraction = Fraction(0)
    confidence: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        object.__setattr__(self, "certainty", Certainty(self.certainty))
        if not self.conditions:
            raise DomainError("a decision rule needs at least one condition")
        names = [c.attribute for c in self.conditions]
        if len(set(names)) != len(names):
            raise DomainError("conditions of a rule must use distinct attributes")
        wrong = Relation.AT_MOST if self.conclusion.upward else Relation.AT_LEAST
        if any(c.relation is wrong for c in self.conditions):
            raise DomainError("a rule mixes conditions with the opposite orientation of its conclusion")

    @property
    def strength(self) -> Fraction:
        return 1 - self.consistency

    def matches(self, attributes: Mapping[str, Attribute], values: Mapping[str, object]) -> bool:
        return all(c.satisfied_by(attributes[c.attribute], values.get(c.attribute, "?"))
                   for c in self.conditions)

    def canonical_key(self, order: Mapping[str, int] | None = None):
        def cond_key(c):
            pos = order[c.attribute] if order else 0
            return (pos, c.attribute, c.relation.value, _sortable(c.value))
        u = self.conclusion
        return (0 if u.upward else 1, u.t, tuple(sorted(cond_key(c) for c in self.conditions)),
                self.certainty.value)


def _sortable(value):
    return (0, value, "") if isinstance(value, (int, float)) else (1, 0, str(value))


def _covered_by(table: DecisionTable, conditions: Iterable[ElementaryCondition], objects=None) -> frozenset:
    pool = table.universe if objects is None else frozenset(objects)
    for c in conditions:
        i = table.attribute_position(c.attribute)
        a = table.attribute(c.attribute)
        pool = frozenset(x for x in pool if c.satisfied_by(a, table.row(x)[i]))
    return pool


def rule_covers(rule: DecisionRule, table: DecisionTable, x) -> bool:
    row = table.row(x)
    return all(c.satisfied_by(table.attribute(c.attribute), row[table.attribute_position(c.attribute)])
               for c in rule.conditions)


def covered_objects(rule: DecisionRule, table: DecisionTable) -> frozenset:
    return _covered_by(table, rule.conditions)


def _ratio(covered: frozenset, negatives: frozenset) -> Fraction:
    if not negatives:
        return Fraction(0)
    return Fraction(len(covered & negatives), len(negatives))


def rule_consistency(rule: DecisionRule, table: DecisionTable) -> Fraction:
    """Share of objects outside the conclusion that the rule covers (0 if there are none)."""
    negatives = table.universe - table.extension(rule.conclusion)
    return _ratio(covered_objects(rule, table), negatives)


def rule_statistics(rule: DecisionRule, table: DecisionTable) -> DecisionRule:
    """Return ``rule`` with support, coverage, consistency and confidence recomputed on ``table``."""
    covered = covered_objects(rule, table)
    extension = table.extension(rule.conclusion)
    support = len(covered & extension)
    confidence = Fraction(support, len(covered)) if covered else Fraction(0)
    return replace(rule, support=support, coverage=len(covered),
                   consistency=_ratio(covered, table.universe - extension), confidence=confidence)


# -- induction ---------------------------------------------------------------

def _relation_for(attr: Attribute, upward: bool) -> Relation:
    if not attr.is_criterion:
        return Relation.EQUALS
    return Relation.AT_LEAST if upward else Relation.AT_MOST


def _weakness(attr: Attribute, cond: ElementaryCondition):
    # smaller key = less restrictive condition
    if cond.relation is Relation.EQUALS:
        return _sortable(cond.value)
    r = attr.rank(cond.value)
    at_least = cond.relation is Relation.AT_LEAST
    if attr.kind is Kind.COST:
        at_least = not at_least
    return (0, r if at_least else -r, "")


def _grow(table, attrs, upward, uncovered, negatives, theta):
    conditions: dict[str, ElementaryCondition] = {}
    covered = table.universe
    while not conditions or _ratio(covered, negatives) > theta:
        targets = uncovered & covered
        best, best_key = None, None
        for pos, attr in enumerate(attrs):
            if attr.name in conditions and not attr.is_criterion:
                continue
            i = table.attribute_position(attr.name)
            values = {table.row(x)[i] for x in targets}
            relation = _relation_for(attr, upward)
            for v in sorted((v for v in values if not is_missing(v)), key=_sortable):
                cond = ElementaryCondition(attr.name, relation, v)
                trial = dict(conditions)
                trial[attr.name] = cond
                # only strictly shrinking candidates count, so replacements are always stricter
                new_covered = _covered_by(table, trial.values(), covered)
                if conditions and new_covered == covered:
                    continue
                key = (-len(new_covered & targets), _ratio(new_covered, negatives), pos, _weakness(attr, cond))
                if best_key is None or key < best_key:
                    best, best_key = (cond, new_covered), key
        if best is None:
            return None, covered
        cond, covered = best
        conditions[cond.attribute] = cond
    return list(conditions.values()), covered


def _prune(table, conditions, negatives, theta):
    changed = True
    while changed and len(conditions) > 1:
        changed = False
        for cond in list(conditions):
            rest = [c for c in conditions if c is not cond]
            if _ratio(_covered_by(table, rest), negatives) <= theta:
                conditions = rest
                changed = True
                break
    return conditions


def sequential_covering(table: DecisionTable, attributes, union: ClassUnion, positives: Iterable,
                        negatives: Iterable, theta=0, certainty=Certainty.CERTAIN) -> list[DecisionRule]:
    """Cover ``positives`` with rules concluding ``union`` whose negative share is at most ``theta``.

    Positives that no admissible rule can reach (possible only with missing
    values) are logged and left uncovered.
    """
    attrs = table.resolve(attributes)
    positives = frozenset(positives)
    negatives = frozenset(negatives)
    theta = exact(theta)
    uncovered = set(positives)
    found: list[tuple[list[ElementaryCondition], frozenset]] = []
    while uncovered:
        conditions, covered = _grow(table, attrs, union.upward, frozenset(uncovered), negatives, theta)
        if conditions is None:
            stuck = uncovered & covered
            log.warning("cannot cover %d object(s) of %s with an admissible rule",
                        len(stuck), union.symbol())
            uncovered -= stuck
            continue
        conditions = _prune(table, conditions, negatives, theta)
        covered = _covered_by(table, conditions)
        found.append((conditions, covered & positives))
        uncovered -= covered

    # drop rules whose positives are all covered by the remaining ones
    kept = list(found)
    for item in reversed(found):
        others = [cov for cond, cov in kept if cond is not item[0]]
        if others and item[1] <= frozenset().union(*others):
            kept = [k for k in kept if k[0] is not item[0]]

    order = {a.name: i for i, a in enumerate(table.attributes)}
    rules = []
    for conditions, _ in kept:
        conditions = sorted(conditions, key=lambda c: order[c.attribute])
        rule = DecisionRule(tuple(conditions), union, certainty)
        rules.append(rule_statistics(rule, table))
    return sorted(rules, key=lambda r: r.canonical_key(order))


def induce_rules(table: DecisionTable, attributes=None, threshold=0, variant=Variant.CLASSICAL,
                 certainty=Certainty.CERTAIN, unions: Sequence[ClassUnion] | None = None) -> list[DecisionRule]:
    """Induce rules for every non-trivial union (or the given ``unions``).

    Certain rules cover the ε-VC lower approximation at ``threshold`` and admit
    at most that share of the union's complement. Possible rules cover the
    upper approximation and admit at most that share of objects outside it.
    """
    variant = Variant.parse(variant)
    certainty = Certainty(certainty)
    if isinstance(threshold, ConsistencyThreshold):
        if threshold.measure is not Measure.EPSILON:
            raise DomainError("rule induction supports the ε consistency measure only")
        theta = threshold.value
    else:
        theta = ConsistencyThreshold(Measure.EPSILON, threshold).value
    names = tuple(a.name for a in table.resolve(attributes))
    rules = []
    for union in unions if unions is not None else all_unions(table):
        if certainty is Certainty.CERTAIN:
            positives = vc_lower(table, names, union, ConsistencyThreshold(Measure.EPSILON, theta), variant)
            negatives = table.universe - table.extension(union)
        else:
            positives = drsa_approximation(table, names, union, variant).upper
            negatives = table.universe - positives
        rules.extend(sequential_covering(table, names, union, positives, negatives, theta, certainty))
    order = {a.name: i for i, a in enumerate(table.attributes)}
    return sorted(rules, key=lambda r: r.canonical_key(order))


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    lower: int
    upper: int
    point: int
    covered: bool


def classify_values(rules: Sequence[DecisionRule], attributes: Sequence[Attribute], n_classes: int,
                    values: Mapping[str, object]) -> Classification:
    """Classify one object given as ``{attribute name: value}``.

    Matching upward rules raise the lower class bound, matching downward rules
    cut the upper bound. A contradictory interval is resolved in favour of the
    side whose matching rules have the larger total support (downward on ties).
    """
    by_name = {a.name: a for a in attributes}
    t_min, t_max = 1, n_classes
    up_support = down_support = 0
    covered = False
    for rule in rules:
        if not rule.matches(by_name, values):
            continue
        covered = True
        if rule.conclusion.upward:
            t_min = max(t_min, rule.conclusion.t)
            up_support += rule.support
        else:
            t_max = min(t_max, rule.conclusion.t)
            down_support += rule.support
    if t_min <= t_max:
        point = (t_min + t_max) // 2
    else:
        point = t_min if up_support > down_support else t_max
    return Classification(t_min, t_max, point, covered)


def classify(rules: Sequence[DecisionRule], table: DecisionTable, x) -> Classification:
    """Classify a table object, or a ``{attribute: value}`` mapping, with ``rules``."""
    if isinstance(x, Mapping):
        values = x
    else:
        values = dict(zip(table.attribute_names, table.row(x)))
    return classify_values(rules, table.attributes, table.n_classes, values)
