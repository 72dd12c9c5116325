"""Non-invasive transformation of non-ordinal data into a form DRSA can analyse.

Numeric regular attributes are doubled into a gain twin and a cost twin,
nominal attributes are binarized (one 0/1 indicator per value) and each
indicator is doubled, and a non-ordinal decision is split into one binary
problem per class.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from drsa.errors import DomainError
from drsa.table import Attribute, DecisionTable, Kind, is_missing

GAIN_SUFFIX = "#gain"
COST_SUFFIX = "#cost"


class Action(str, enum.Enum):
    KEEP = "keep"
    DOUBLE = "double"
    BINARIZE = "binarize"


def gain_twin(name: str) -> str:
    return name + GAIN_SUFFIX


def cost_twin(name: str) -> str:
    return name + COST_SUFFIX


def indicator_name(name: str, value) -> str:
    return f"{name}={value}"


def _replace_column(table: DecisionTable, q: str, new_attrs, column_fn) -> DecisionTable:
    pos = table.attribute_position(q)
    attrs = list(table.attributes[:pos]) + list(new_attrs) + list(table.attributes[pos + 1:])
    rows = [row[:pos] + tuple(column_fn(row[pos])) + row[pos + 1:] for row in table.rows()]
    return table.with_columns(attrs, rows)


def double_numeric(table: DecisionTable, q: str) -> DecisionTable:
    """Replace numeric attribute ``q`` by ``q#gain`` and ``q#cost`` carrying the same values."""
    attr = table.attribute(q)
    if not attr.is_numeric:
        raise DomainError(f"{q!r} is nominal; binarize it instead")
    twins = [Attribute(gain_twin(q), Kind.GAIN), Attribute(cost_twin(q), Kind.COST)]
    return _replace_column(table, q, twins, lambda v: (v, v))


def binarize_nominal(table: DecisionTable, q: str) -> DecisionTable:
    """Replace nominal ``q`` with k values by 2k twins ``q=value#gain`` / ``q=value#cost``.

    A missing value of ``q`` stays missing on every indicator.
    """
    attr = table.attribute(q)
    if not attr.is_nominal:
        raise DomainError(f"{q!r} is numeric; double it instead")
    if len(attr.values) < 2:
        raise DomainError(f"{q!r} needs at least two values to be binarized")
    twins = []
    for value in attr.values:
        name = indicator_name(q, value)
        twins += [Attribute(gain_twin(name), Kind.GAIN), Attribute(cost_twin(name), Kind.COST)]

    def column(v):
        out = []
        for value in attr.values:
            bit = v if is_missing(v) else int(v == value)
            out += [bit, bit]
        return out

    return _replace_column(table, q, twins, column)


@dataclass
class TransformPlan:
    actions: dict = field(default_factory=dict)
    decompose: bool = False

    @classmethod
    def for_table(cls, table: DecisionTable, decompose: bool = False) -> "TransformPlan":
        """Double numeric regular attributes, binarize nominal ones, keep criteria."""
        actions = {}
        for a in table.attributes:
            if a.is_criterion:
                actions[a.name] = Action.KEEP
            elif a.is_nominal:
                actions[a.name] = Action.BINARIZE
            else:
                actions[a.name] = Action.DOUBLE
        return cls(actions, decompose)

    def apply(self, table: DecisionTable):
        """Transformed table, or the list of binary tables when ``decompose`` is set."""
        for name, action in self.actions.items():
            action = Action(action)
            if action is Action.DOUBLE:
                table = double_numeric(table, name)
            elif action is Action.BINARIZE:
                table = binarize_nominal(table, name)
        return decompose_binary(table) if self.decompose else table


def transform(table: DecisionTable, decompose: bool = False):
    return TransformPlan.for_table(table, decompose).apply(table)


def decompose_binary(table: DecisionTable) -> list[DecisionTable]:
    """One table per class t with decision 1 for members of class t and 0 otherwise.

    In the t-th table the class coded 1 has index 2, so its upward union at
    index 2 is exactly the original class t.
    """
    decision = Attribute(table.decision.name, Kind.GAIN)
    out = []
    for t in range(1, table.n_classes + 1):
        codes = [int(c == t) for c in table.classes()]
        out.append(table.with_decisions(codes, decision, class_order=[0, 1]))
    return out


def recover(table: DecisionTable, q: str) -> list:
    """Original values of a doubled attribute, read from its gain twin."""
    return [table.value(x, gain_twin(q)) for x in table.objects]
