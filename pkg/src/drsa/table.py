"""Decision tables, attributes and unions of ordered decision classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence

from drsa.errors import DomainError, ValidationError

LOST = "?"
DONT_CARE = "*"
MISSING = (LOST, DONT_CARE)


def is_missing(value: Any) -> bool:
    return isinstance(value, str) and value in MISSING


class Kind(str, enum.Enum):
    REGULAR = "regular"
    GAIN = "gain"
    COST = "cost"


class Direction(str, enum.Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class Attribute:
    """A condition or decision attribute.

    ``values`` is None for numeric attributes; otherwise it enumerates the
    nominal domain (in ascending preference order when the attribute is a
    criterion).
    """

    name: str
    kind: Kind = Kind.REGULAR
    values: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.values is not None:
            values = tuple(self.values)
            if len(set(values)) != len(values):
                raise ValidationError(f"attribute {self.name!r} has duplicate domain values")
            if any(is_missing(v) for v in values):
                raise ValidationError(f"attribute {self.name!r} lists a missing-value marker as a domain value")
            object.__setattr__(self, "values", values)

    @property
    def is_criterion(self) -> bool:
        return self.kind is not Kind.REGULAR

    @property
    def is_numeric(self) -> bool:
        return self.values is None

    @property
    def is_nominal(self) -> bool:
        return self.values is not None

    def rank(self, value):
        """Position of ``value`` on this attribute's scale (the value itself when numeric)."""
        if self.values is None:
            return value
        return self.values.index(value)

    def check_value(self, value) -> None:
        if is_missing(value):
            return
        if self.values is None:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"attribute {self.name!r} expects a number, got {value!r}")
        elif value not in self.values:
            raise ValidationError(f"value {value!r} is not in the domain of {self.name!r}")


def weak_preference(attr: Attribute, v1, v2) -> bool:
    """True when ``v1`` is at least as good as ``v2`` on criterion ``attr``."""
    if not attr.is_criterion:
        raise DomainError(f"{attr.name!r} is a regular attribute, not a criterion")
    if is_missing(v1) or is_missing(v2):
        raise DomainError("weak preference is undefined for missing values")
    a, b = attr.rank(v1), attr.rank(v2)
    return a >= b if attr.kind is Kind.GAIN else a <= b


@dataclass(frozen=True)
class ClassUnion:
    """Upward (``Cl_t^>=``) or downward (``Cl_t^<=``) union of decision classes."""

    t: int
    direction: Direction = Direction.UP

    def __post_init__(self):
        object.__setattr__(self, "direction", Direction(self.direction))
        if isinstance(self.t, bool) or not isinstance(self.t, int):
            raise DomainError(f"class index must be an integer, got {self.t!r}")

    @classmethod
    def parse(cls, text: str) -> "ClassUnion":
        """Parse the ``t:dir`` notation, e.g. ``3:up``."""
        try:
            t, direction = text.split(":")
            return cls(int(t), Direction(direction.strip().lower()))
        except ValueError:
            raise DomainError(f"bad union {text!r}; expected t:up or t:down") from None

    @property
    def upward(self) -> bool:
        return self.direction is Direction.UP

    def contains(self, class_index: int) -> bool:
        return class_index >= self.t if self.upward else class_index <= self.t

    def __str__(self) -> str:
        return f"{self.t}:{self.direction.value}"

    def symbol(self) -> str:
        return f"Cl_{self.t}^{'≥' if self.upward else '≤'}"


class DecisionTable:
    """Immutable decision table: objects evaluated on condition attributes plus one decision.

    Decision labels are mapped to class indices ``1..n`` in ascending order of
    preference. The order comes from ``class_order`` if given, else from the
    decision attribute's enumerated domain, else from sorting the labels
    (descending for a cost-type decision).
    """

    def __init__(
        self,
        attributes: Sequence[Attribute],
        objects: Sequence[Hashable],
        evaluations: Sequence[Sequence],
        decisions: Sequence,
        decision: Attribute | None = None,
        class_order: Sequence | None = None,
    ):
        self.attributes = tuple(attributes)
        self.decision = decision if decision is not None else Attribute("d", Kind.GAIN)
        self.objects = tuple(objects)
        names = [a.name for a in self.attributes] + [self.decision.name]
        if len(set(names)) != len(names):
            raise ValidationError("attribute names must be unique")
        if not self.decision.is_criterion:
            raise ValidationError("the decision attribute must be a criterion (gain or cost)")
        for a in self.attributes:
            if a.is_nominal and a.is_criterion:
                raise ValidationError(f"nominal attribute {a.name!r} must be regular")
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("object identifiers must be unique")
        if len(evaluations) != len(self.objects) or len(decisions) != len(self.objects):
            raise ValidationError("evaluations and decisions must have one entry per object")

        rows = []
        for x, row in zip(self.objects, evaluations):
            row = tuple(row)
            if len(row) != len(self.attributes):
                raise ValidationError(f"object {x!r} has {len(row)} values for {len(self.attributes)} attributes")
            for a, v in zip(self.attributes, row):
                a.check_value(v)
            rows.append(row)
        self._rows = tuple(rows)

        decisions = tuple(decisions)
        if any(is_missing(v) for v in decisions):
            raise ValidationError("decision values may not be missing")
        if class_order is None:
            if self.decision.values is not None:
                class_order = self.decision.values
            else:
                class_order = sorted(set(decisions), reverse=self.decision.kind is Kind.COST)
        self.labels = tuple(class_order)
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("class order lists a label twice")
        if len(self.labels) < 2:
            raise ValidationError("a decision table needs at least two classes")
        position = {label: i + 1 for i, label in enumerate(self.labels)}
        try:
            self._classes = tuple(position[v] for v in decisions)
        except KeyError as exc:
            raise ValidationError(f"decision value {exc.args[0]!r} is not a known class") from None
        self._decisions = decisions
        self._index = {x: i for i, x in enumerate(self.objects)}
        self._attr_index = {a.name: i for i, a in enumerate(self.attributes)}
        self.universe = frozenset(self.objects)
        self._cache: dict = {}

    # -- lookup ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.objects)

    def __repr__(self) -> str:
        return f"DecisionTable({len(self.objects)} objects, {len(self.attributes)} attributes, {self.n_classes} classes)"

    @property
    def n_classes(self) -> int:
        return len(self.labels)

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def attribute(self, name: str) -> Attribute:
        try:
            return self.attributes[self._attr_index[name]]
        except KeyError:
            raise DomainError(f"unknown attribute {name!r}") from None

    def attribute_position(self, name: str) -> int:
        self.attribute(name)
        return self._attr_index[name]

    def position(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise DomainError(f"unknown object {x!r}") from None

    def row(self, x) -> tuple:
        return self._rows[self.position(x)]

    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def value(self, x, q: str):
        return self.row(x)[self.attribute_position(q)]

    def class_of(self, x) -> int:
        return self._classes[self.position(x)]

    def label_of(self, x):
        return self._decisions[self.position(x)]

    def classes(self) -> tuple[int, ...]:
        return self._classes

    def decisions(self) -> tuple:
        return self._decisions

    def members_of_class(self, t: int) -> frozenset:
        return frozenset(x for x, c in zip(self.objects, self._classes) if c == t)

    def resolve(self, attributes: Iterable[str] | None = None) -> tuple[Attribute, ...]:
        """Validate an attribute subset P, defaulting to all condition attributes."""
        if attributes is None:
            resolved = self.attributes
        else:
            names = list(dict.fromkeys(attributes))
            resolved = tuple(self.attribute(n) for n in names)
        if not resolved:
            raise DomainError("the attribute subset P must be non-empty")
        return resolved

    def has_missing(self, attributes: Iterable[str] | None = None) -> bool:
        cols = [self._attr_index[a.name] for a in self.resolve(attributes)]
        return any(is_missing(row[i]) for row in self._rows for i in cols)

    def ordered(self, objects: Iterable) -> list:
        """Objects in declaration order."""
        return sorted(objects, key=self.position)

    def class_union(self, t: int, direction: Direction | str = Direction.UP) -> frozenset:
        return class_union(self, t, direction)

    def extension(self, union: ClassUnion) -> frozenset:
        return class_union(self, union.t, union.direction)

    def check_union(self, union: ClassUnion) -> None:
        if not 1 <= union.t <= self.n_classes:
            raise DomainError(f"class index {union.t} outside 1..{self.n_classes}")

    # -- derived tables -------------------------------------------------

    def with_columns(self, attributes: Sequence[Attribute], evaluations: Sequence[Sequence]) -> "DecisionTable":
        return DecisionTable(attributes, self.objects, evaluations, self._decisions, self.decision, self.labels)

    def with_decisions(self, decisions: Sequence, decision: Attribute | None = None,
                       class_order: Sequence | None = None) -> "DecisionTable":
        return DecisionTable(self.attributes, self.objects, self._rows, decisions,
                             decision or self.decision, class_order)

    def subset(self, objects: Iterable) -> "DecisionTable":
        keep = self.ordered(set(objects))
        idx = [self.position(x) for x in keep]
        return DecisionTable(self.attributes, keep, [self._rows[i] for i in idx],
                             [self._decisions[i] for i in idx], self.decision, self.labels)

    def __eq__(self, other):
        if not isinstance(other, DecisionTable):
            return NotImplemented
        return (self.attributes == other.attributes and self.decision == other.decision
                and self.objects == other.objects and self._rows == other._rows
                and self._decisions == other._decisions and self.labels == other.labels)

    __hash__ = None

    @classmethod
    def from_records(cls, attributes: Sequence[Attribute], records: Mapping[Hashable, tuple], **kwargs):
        """Build from ``{object: (v1, ..., vm, decision)}``."""
        objects = list(records)
        rows = [tuple(records[x][:-1]) for x in objects]
        decisions = [records[x][-1] for x in objects]
        return cls(attributes, objects, rows, decisions, **kwargs)


def class_union(table: DecisionTable, t: int, direction: Direction | str = Direction.UP) -> frozenset:
    """Objects whose class is at least (upward) or at most (downward) ``t``."""
    union = ClassUnion(t, Direction(direction))
    table.check_union(union)
    return frozenset(x for x, c in zip(table.objects, table.classes()) if union.contains(c))
