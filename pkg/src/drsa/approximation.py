"""Rough approximations of class unions: classical, generalized, ε- and μ-VC, and IRSA."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from drsa.dominance import Sense, Variant, cone_members, indiscernibility_class
from drsa.errors import DomainError
from drsa.table import ClassUnion, DecisionTable, Direction


def exact(value) -> Fraction:
    """Exact rational for a threshold; floats are read through their shortest repr (0.1 -> 1/10)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    try:
        return Fraction(value)
    except (TypeError, ValueError):
        raise DomainError(f"not a number: {value!r}") from None


class Measure(str, enum.Enum):
    EPSILON = "epsilon"
    MU = "mu"


@dataclass(frozen=True)
class ConsistencyThreshold:
    """Admission threshold for VC lower approximations.

    ε-consistency admits objects whose measure is at most ``value``;
    rough membership μ admits objects whose measure is at least ``value``.
    """

    measure: Measure = Measure.EPSILON
    value: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "measure", Measure(self.measure))
        object.__setattr__(self, "value", exact(self.value))
        if not 0 <= self.value <= 1:
            raise DomainError(f"threshold must lie in [0, 1], got {self.value!r}")

    def admits(self, measure_value) -> bool:
        if self.measure is Measure.EPSILON:
            return measure_value <= self.value
        return measure_value >= self.value


@dataclass(frozen=True)
class UnionApproximation:
    union: ClassUnion
    attributes: tuple[str, ...]
    lower: frozenset
    upper: frozenset
    boundary: frozenset
    consistency: dict = field(default_factory=dict, compare=False)


def _lower_sense(union: ClassUnion) -> Sense:
    # cone tested for inclusion by the generalized lower approximation
    return Sense.INVERSE_DOMINATING if union.upward else Sense.DOMINATED


def _upper_sense(union: ClassUnion) -> Sense:
    # cones whose union over the approximated set gives the upper approximation
    return Sense.DOMINATING if union.upward else Sense.INVERSE_DOMINATED


def _check(table: DecisionTable, attributes, union: ClassUnion, variant: Variant) -> tuple[str, ...]:
    names = tuple(a.name for a in table.resolve(attributes))
    table.check_union(union)
    if variant is Variant.CLASSICAL and table.has_missing(names):
        raise DomainError("classical DRSA requires a table without missing condition values; "
                          "choose a missing-value variant")
    return names


def _all_cones(table, names, variant, sense) -> dict:
    return {x: cone_members(table, x, names, variant, sense) for x in table.objects}


def _epsilon(cone_x: frozenset, complement: frozenset):
    if not complement:
        return Fraction(0)
    return Fraction(len(cone_x & complement), len(complement))


def _mu(cone_x: frozenset, extension: frozenset):
    return Fraction(len(cone_x & extension), len(cone_x))


def _approximate(table, names, union, variant, lower_cones=None, upper_cones=None):
    extension = table.extension(union)
    if lower_cones is None:
        lower_cones = _all_cones(table, names, variant, _lower_sense(union))
    if upper_cones is None:
        upper_cones = _all_cones(table, names, variant, _upper_sense(union))
    lower = frozenset(x for x in table.objects if lower_cones[x] <= extension)
    upper = frozenset().union(*(upper_cones[x] for x in extension)) if extension else frozenset()
    complement = table.universe - extension
    consistency = {x: _epsilon(lower_cones[x], complement) for x in table.ordered(extension)}
    return UnionApproximation(union, names, lower, upper, upper - lower, consistency)


def drsa_approximation(table: DecisionTable, attributes, union: ClassUnion,
                       variant=Variant.CLASSICAL) -> UnionApproximation:
    """Lower/upper approximation of an upward or downward union.

    Upward unions: lower = {x : d+(x) ⊆ Cl}, upper = union of D+(x) over x in Cl.
    Downward unions: lower = {x : D-(x) ⊆ Cl}, upper = union of d-(x) over x in Cl.
    Under the classical variant d and D coincide and these reduce to the
    usual cone-inclusion / cone-intersection definitions.

    ``consistency`` holds the ε value of every union member.
    """
    variant = Variant.parse(variant)
    names = _check(table, attributes, union, variant)
    return _approximate(table, names, union, variant)


def all_unions(table: DecisionTable) -> list[ClassUnion]:
    """Every non-trivial union: upward t=2..n, then downward t=1..n-1."""
    n = table.n_classes
    return ([ClassUnion(t, Direction.UP) for t in range(2, n + 1)]
            + [ClassUnion(t, Direction.DOWN) for t in range(1, n)])


def approximate_all(table: DecisionTable, attributes=None, variant=Variant.CLASSICAL) -> list[UnionApproximation]:
    variant = Variant.parse(variant)
    unions = all_unions(table)
    names = _check(table, attributes, unions[0], variant)
    cones = {s: _all_cones(table, names, variant, s) for s in Sense}
    return [_approximate(table, names, u, variant, cones[_lower_sense(u)], cones[_upper_sense(u)])
            for u in unions]


def _measure_cone(table, names, union, x, variant):
    return cone_members(table, x, names, variant, _lower_sense(union))


def consistency_epsilon(table: DecisionTable, attributes, union: ClassUnion, x,
                        variant=Variant.CLASSICAL) -> Fraction:
    """Share of the union's complement that falls into the cone of ``x``."""
    variant = Variant.parse(variant)
    names = _check(table, attributes, union, variant)
    extension = table.extension(union)
    if x not in extension:
        raise DomainError(f"object {x!r} is not a member of {union.symbol()}")
    complement = table.universe - extension
    if not complement:
        raise DomainError(f"{union.symbol()} has an empty complement; ε is undefined")
    return _epsilon(_measure_cone(table, names, union, x, variant), complement)


def consistency_mu(table: DecisionTable, attributes, union: ClassUnion, x,
                   variant=Variant.CLASSICAL) -> Fraction:
    """Rough membership: share of the cone of ``x`` lying inside the union."""
    variant = Variant.parse(variant)
    names = _check(table, attributes, union, variant)
    extension = table.extension(union)
    if x not in extension:
        raise DomainError(f"object {x!r} is not a member of {union.symbol()}")
    return _mu(_measure_cone(table, names, union, x, variant), extension)


def consistency_values(table: DecisionTable, attributes, union: ClassUnion, measure=Measure.EPSILON,
                       variant=Variant.CLASSICAL) -> dict:
    """Measure value of every union member; ε is 0 when the complement is empty."""
    variant = Variant.parse(variant)
    measure = Measure(measure)
    names = _check(table, attributes, union, variant)
    extension = table.extension(union)
    complement = table.universe - extension
    values = {}
    for x in table.ordered(extension):
        c = _measure_cone(table, names, union, x, variant)
        values[x] = _epsilon(c, complement) if measure is Measure.EPSILON else _mu(c, extension)
    return values


def _as_threshold(threshold) -> ConsistencyThreshold:
    if isinstance(threshold, ConsistencyThreshold):
        return threshold
    return ConsistencyThreshold(Measure.EPSILON, threshold)


def vc_lower(table: DecisionTable, attributes, union: ClassUnion, threshold,
             variant=Variant.CLASSICAL) -> frozenset:
    """Union members whose consistency measure passes ``threshold``.

    A bare number is read as an ε threshold.
    """
    threshold = _as_threshold(threshold)
    values = consistency_values(table, attributes, union, threshold.measure, variant)
    return frozenset(x for x, v in values.items() if threshold.admits(v))


def vc_approximation(table: DecisionTable, attributes, union: ClassUnion, threshold,
                     variant=Variant.CLASSICAL) -> UnionApproximation:
    """VC lower approximation paired with the non-parametric upper approximation."""
    threshold = _as_threshold(threshold)
    base = drsa_approximation(table, attributes, union, variant)
    values = consistency_values(table, attributes, union, threshold.measure, variant)
    lower = frozenset(x for x, v in values.items() if threshold.admits(v))
    return UnionApproximation(union, base.attributes, lower, base.upper, base.upper - lower, values)


def quality_of_approximation(table: DecisionTable, attributes=None, variant=Variant.CLASSICAL) -> Fraction:
    """Fraction of objects outside every upward-union boundary."""
    variant = Variant.parse(variant)
    inconsistent = set()
    for approx in approximate_all(table, attributes, variant):
        if approx.union.upward:
            inconsistent |= approx.boundary
    return Fraction(len(table.universe - inconsistent), len(table))


def irsa_approximation(table: DecisionTable, attributes, target) -> tuple[frozenset, frozenset]:
    """Indiscernibility-based (Pawlak) lower and upper approximation of an object set."""
    target = frozenset(target)
    lower, upper = set(), set()
    for x in table.objects:
        block = indiscernibility_class(table, x, attributes)
        if block <= target:
            lower.add(x)
        if block & target:
            upper.add(x)
    return frozenset(lower), frozenset(upper)
