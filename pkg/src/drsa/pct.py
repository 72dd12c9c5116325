"""Ranking with pairwise comparison tables (PCT) and the Net Flow Rule.

Pipeline: reference pairs labelled S (outranks) or Sc (does not outrank) are
turned into a PCT whose columns are evaluation differences, the PCT is
approximated with ε-VC dominance on pairs, rules are induced for S and Sc,
the rules are applied to the objects to be ranked, and the resulting
preference structure is exploited by the Net Flow Rule.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from drsa.approximation import exact
from drsa.errors import DomainError, ValidationError
from drsa.rules import DecisionRule, covered_objects, sequential_covering
from drsa.table import Attribute, ClassUnion, DecisionTable, Direction, Kind, is_missing

S = "S"
SC = "Sc"
OUTRANKS = ClassUnion(2, Direction.UP)
NOT_OUTRANKS = ClassUnion(1, Direction.DOWN)


class PctVariant(str, enum.Enum):
    CONSISTENT = "ec"        # criteria form a consistent family: dominance pairs join S
    NOT_CONSISTENT = "enc"   # only reflexive pairs join S


class Mode(str, enum.Enum):
    CRISP = "crisp"
    VALUED = "valued"


def _label(label) -> str:
    text = str(label).strip()
    if text in (S, "s"):
        return S
    if text in (SC, "Sᶜ", "S^c", "sc", "SC"):
        return SC
    raise DomainError(f"pair label must be S or Sc, got {label!r}")


def delta_name(criterion: str) -> str:
    return f"Δ{criterion}"


@dataclass(frozen=True)
class Alternatives:
    """Objects evaluated on cardinal criteria."""

    criteria: tuple[Attribute, ...]
    evaluations: Mapping[Hashable, tuple]

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        object.__setattr__(self, "evaluations", {x: tuple(v) for x, v in self.evaluations.items()})
        if not self.criteria:
            raise ValidationError("at least one criterion is required")
        for c in self.criteria:
            if not c.is_criterion or not c.is_numeric:
                raise ValidationError(f"{c.name!r} is not a cardinal (numeric) criterion")
        for x, row in self.evaluations.items():
            if len(row) != len(self.criteria):
                raise ValidationError(f"object {x!r} needs {len(self.criteria)} evaluations")
            for c, v in zip(self.criteria, row):
                if is_missing(v):
                    raise ValidationError(f"object {x!r} has a missing value on {c.name!r}")
                c.check_value(v)

    @property
    def objects(self) -> tuple:
        return tuple(self.evaluations)

    def delta(self, a, b) -> tuple:
        """Per-criterion differences, sign-flipped for cost criteria so larger is better."""
        try:
            fa, fb = self.evaluations[a], self.evaluations[b]
        except KeyError as exc:
            raise DomainError(f"unknown object {exc.args[0]!r}") from None
        return tuple((x - y) if c.kind is Kind.GAIN else (y - x)
                     for c, x, y in zip(self.criteria, fa, fb))

    def dominates(self, a, b) -> bool:
        return all(d >= 0 for d in self.delta(a, b))


@dataclass(frozen=True)
class PctRow:
    pair: tuple
    delta: tuple
    label: str


@dataclass(frozen=True)
class PairwiseComparisonTable:
    alternatives: Alternatives
    rows: tuple[PctRow, ...]
    variant: PctVariant

    @property
    def pairs(self) -> tuple:
        return tuple(r.pair for r in self.rows)

    def labelled(self, label: str) -> frozenset:
        return frozenset(r.pair for r in self.rows if r.label == label)

    def as_decision_table(self) -> DecisionTable:
        """The PCT as a two-class table: Δ columns as gain criteria, Sc < S."""
        attrs = [Attribute(delta_name(c.name), Kind.GAIN) for c in self.alternatives.criteria]
        return DecisionTable(attrs, self.pairs, [r.delta for r in self.rows],
                             [r.label for r in self.rows], Attribute("outranking", Kind.GAIN),
                             class_order=[SC, S])


def enrichment_pairs(alternatives: Alternatives, variant: PctVariant) -> list[tuple]:
    objs = alternatives.objects
    if PctVariant(variant) is PctVariant.NOT_CONSISTENT:
        return [(x, x) for x in objs]
    return [(x, y) for x in objs for y in objs if alternatives.dominates(x, y)]


def build_pct(alternatives: Alternatives, judgments, variant=PctVariant.NOT_CONSISTENT) -> PairwiseComparisonTable:
    """Judged pairs followed by the variant's enrichment pairs (all labelled S).

    ``judgments`` is a mapping ``{(a, b): label}`` or an iterable of
    ``(a, b, label)``. A pair given both labels is an error.
    """
    variant = PctVariant(variant)
    items = judgments.items() if isinstance(judgments, Mapping) else (((a, b), l) for a, b, l in judgments)
    labels: dict[tuple, str] = {}
    for (a, b), label in items:
        label = _label(label)
        for x in (a, b):
            if x not in alternatives.evaluations:
                raise DomainError(f"judgment references unknown object {x!r}")
        if labels.get((a, b), label) != label:
            raise DomainError(f"pair ({a}, {b}) is labelled both S and Sc")
        labels[(a, b)] = label
    for pair in enrichment_pairs(alternatives, variant):
        if labels.get(pair, S) != S:
            raise DomainError(f"pair {pair} is labelled Sc but the {variant.value} variant forces S")
        labels.setdefault(pair, S)
    rows = tuple(PctRow(p, alternatives.delta(*p), l) for p, l in labels.items())
    return PairwiseComparisonTable(alternatives, rows, variant)


def _pair_dominates(d1: tuple, d2: tuple) -> bool:
    return all(a >= b for a, b in zip(d1, d2))


def pair_cone(pct: PairwiseComparisonTable, pair, dominating: bool = True) -> frozenset:
    """Rows whose Δ vector dominates (or is dominated by) the Δ vector of ``pair``."""
    by_pair = {r.pair: r.delta for r in pct.rows}
    d = by_pair[pair]
    if dominating:
        return frozenset(p for p, e in by_pair.items() if _pair_dominates(e, d))
    return frozenset(p for p, e in by_pair.items() if _pair_dominates(d, e))


def pair_epsilon(pct: PairwiseComparisonTable, pair) -> Fraction:
    """ε consistency of a PCT row against the opposite label (0 when that label is empty)."""
    label = {r.pair: r.label for r in pct.rows}[pair]
    other = pct.labelled(SC if label == S else S)
    if not other:
        return Fraction(0)
    c = pair_cone(pct, pair, dominating=(label == S))
    return Fraction(len(c & other), len(other))


def approximate_outranking(pct: PairwiseComparisonTable, theta=0) -> tuple[frozenset, frozenset]:
    """ε-VC lower approximations of S and Sc."""
    theta = exact(theta)
    if not 0 <= theta <= 1:
        raise DomainError("θ must lie in [0, 1]")
    lower_s = frozenset(p for p in pct.labelled(S) if pair_epsilon(pct, p) <= theta)
    lower_sc = frozenset(p for p in pct.labelled(SC) if pair_epsilon(pct, p) <= theta)
    return lower_s, lower_sc


def induce_pct_rules(pct: PairwiseComparisonTable, theta=0) -> list[DecisionRule]:
    """``Δ_q >= r`` rules concluding S and ``Δ_q <= r`` rules concluding Sc."""
    lower_s, lower_sc = approximate_outranking(pct, theta)
    table = pct.as_decision_table()
    s, sc = pct.labelled(S), pct.labelled(SC)
    return (sequential_covering(table, None, OUTRANKS, lower_s, sc, theta)
            + sequential_covering(table, None, NOT_OUTRANKS, lower_sc, s, theta))


def rule_conclusion_label(rule: DecisionRule) -> str:
    return S if rule.conclusion.upward else SC


@dataclass
class PreferenceStructure:
    """Valued relations 𝕊 and 𝕊ᶜ over the ordered pairs of distinct objects of M."""

    objects: tuple
    outranking: dict = field(default_factory=dict)
    non_outranking: dict = field(default_factory=dict)
    mode: Mode = Mode.CRISP

    def pairs(self):
        return [(a, b) for a in self.objects for b in self.objects if a != b]

    def s(self, a, b):
        return self.outranking.get((a, b), 0)

    def sc(self, a, b):
        return self.non_outranking.get((a, b), 0)


def apply_rules(rules: Sequence[DecisionRule], alternatives: Alternatives, objects: Iterable | None = None,
                mode=Mode.CRISP, variant=PctVariant.NOT_CONSISTENT) -> PreferenceStructure:
    """Preference structure on M from PCT rules.

    Crisp: 1 when some rule of the label covers the pair. Valued: the largest
    strength (1 - consistency) among covering rules. Under the consistent
    variant, dominance pairs always get 𝕊 = 1.
    """
    mode = Mode(mode)
    variant = PctVariant(variant)
    objects = tuple(alternatives.objects if objects is None else objects)
    for x in objects:
        if x not in alternatives.evaluations:
            raise DomainError(f"unknown object {x!r}")
    structure = PreferenceStructure(objects, {}, {}, mode)
    pairs = structure.pairs()
    if not pairs:
        return structure
    names = [delta_name(c.name) for c in alternatives.criteria]
    attrs = [Attribute(n, Kind.GAIN) for n in names]
    table = DecisionTable(attrs, pairs, [alternatives.delta(*p) for p in pairs],
                          [SC] * len(pairs), Attribute("outranking", Kind.GAIN), class_order=[SC, S])
    for pair in pairs:
        structure.outranking[pair] = 0
        structure.non_outranking[pair] = 0
    for rule in rules:
        target = structure.outranking if rule.conclusion.upward else structure.non_outranking
        value = 1 if mode is Mode.CRISP else rule.strength
        for pair in covered_objects(rule, table):
            if value > target[pair]:
                target[pair] = value
    if variant is PctVariant.CONSISTENT:
        for a, b in pairs:
            if alternatives.dominates(a, b):
                structure.outranking[(a, b)] = 1
    return structure


def relation_r(structure: PreferenceStructure) -> dict:
    """``R(a, b) = (S(a, b) + 1 - Sc(a, b)) / 2`` for every ordered pair of distinct objects."""
    return {(a, b): Fraction(exact(structure.s(a, b)) + 1 - exact(structure.sc(a, b)), 2)
            for a, b in structure.pairs()}


@dataclass(frozen=True)
class Ranking:
    scores: dict
    order: tuple[tuple, ...]   # tie classes, best first

    def rank_of(self, x) -> int:
        for i, group in enumerate(self.order, start=1):
            if x in group:
                return i
        raise KeyError(x)


def net_flow_rule(relation: Mapping[tuple, object], objects: Sequence) -> Ranking:
    """Score each object by Σ_b R(a, b) - R(b, a) and order by descending score."""
    objects = tuple(objects)
    scores = {}
    for a in objects:
        scores[a] = sum((exact(relation[(a, b)]) - exact(relation[(b, a)]) for b in objects if b != a),
                        Fraction(0))
    return Ranking(scores, _weak_order(scores, objects))


def _weak_order(scores: Mapping, objects: Sequence) -> tuple[tuple, ...]:
    groups: dict = {}
    for x in objects:
        groups.setdefault(scores[x], []).append(x)
    return tuple(tuple(groups[s]) for s in sorted(groups, reverse=True))


def net_flow_score_alpha(structure: PreferenceStructure) -> dict:
    """Count-based net flow score over crisp S and Sc."""
    values = list(structure.outranking.values()) + list(structure.non_outranking.values())
    if structure.mode is not Mode.CRISP or any(v not in (0, 1) for v in values):
        raise DomainError("the count-based net flow score needs a crisp structure")
    scores = {}
    for a in structure.objects:
        others = [b for b in structure.objects if b != a]
        scores[a] = (sum(structure.s(a, b) for b in others) + sum(structure.sc(b, a) for b in others)
                     - sum(structure.s(b, a) for b in others) - sum(structure.sc(a, b) for b in others))
    return scores


def crisp_structure(objects: Sequence, outranking: Iterable[tuple], non_outranking: Iterable[tuple] = ()) -> PreferenceStructure:
    """Crisp structure from explicit S and Sc pair lists."""
    structure = PreferenceStructure(tuple(objects), {}, {}, Mode.CRISP)
    for p in structure.pairs():
        structure.outranking[p] = 0
        structure.non_outranking[p] = 0
    for p in outranking:
        structure.outranking[tuple(p)] = 1
    for p in non_outranking:
        structure.non_outranking[tuple(p)] = 1
    return structure


def rank(alternatives: Alternatives, judgments, variant=PctVariant.NOT_CONSISTENT, theta=0,
         objects: Iterable | None = None, mode=Mode.CRISP):
    """Run the whole pipeline; returns ``(pct, rules, structure, relation, ranking)``."""
    pct = build_pct(alternatives, judgments, variant)
    rules = induce_pct_rules(pct, theta)
    structure = apply_rules(rules, alternatives, objects, mode, variant)
    relation = relation_r(structure)
    ranking = net_flow_rule(relation, structure.objects)
    return pct, rules, structure, relation, ranking
