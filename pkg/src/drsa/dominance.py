"""Dominance and indiscernibility relations, dominance cones, missing-value variants.

Four relation variants are supported. ``classical`` refuses missing values.
``mv1_5`` treats every missing value as lost, ``mv2`` treats every missing
value as "do not care", and ``mv1_5and2`` distinguishes ``?`` (lost) from
``*`` (do not care).

Each variant comes with a dominance relation D (built from ``x >=_q y``) and
an inverse-dominance relation d (built from ``z <=_q x``). For the missing
value variants d is *not* the transpose of D, which is why cones come in four
senses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from drsa.errors import DomainError
from drsa.table import DONT_CARE, LOST, Attribute, DecisionTable, Kind, is_missing


class Variant(str, enum.Enum):
    CLASSICAL = "classical"
    MV1_5 = "1.5"
    MV2 = "2"
    MV1_5AND2 = "1.5+2"

    @classmethod
    def parse(cls, text) -> "Variant":
        if isinstance(text, Variant):
            return text
        aliases = {"mv1_5": cls.MV1_5, "mv2": cls.MV2, "mv1_5and2": cls.MV1_5AND2,
                   "1.5&2": cls.MV1_5AND2}
        try:
            return aliases.get(str(text).lower()) or cls(str(text).lower())
        except ValueError:
            raise DomainError(f"unknown missing-value variant {text!r}") from None


class Sense(str, enum.Enum):
    DOMINATING = "D+"            # {y : y D x}
    DOMINATED = "D-"             # {y : x D y}
    INVERSE_DOMINATING = "d+"    # {y : x d y}
    INVERSE_DOMINATED = "d-"     # {z : z d x}


def _holds(attr: Attribute, a, b) -> bool:
    # a is at least as good as b (equal, for regular attributes); False on missing
    if is_missing(a) or is_missing(b):
        return False
    if attr.kind is Kind.REGULAR:
        return a == b
    a, b = attr.rank(a), attr.rank(b)
    return a >= b if attr.kind is Kind.GAIN else a <= b


def outranks_values(variant: Variant, attr: Attribute, a, b) -> bool:
    """``a >=_q^j b`` for the evaluations ``a`` and ``b`` of two objects."""
    if variant is Variant.CLASSICAL:
        if is_missing(a) or is_missing(b):
            raise DomainError(f"classical dominance is undefined for missing values on {attr.name!r}")
        return _holds(attr, a, b)
    if variant is Variant.MV1_5:
        return _holds(attr, a, b) or is_missing(a)
    if variant is Variant.MV2:
        return _holds(attr, a, b) or is_missing(a) or is_missing(b)
    return a == LOST or _holds(attr, a, b) or a == DONT_CARE or b == DONT_CARE


def inverse_outranks_values(variant: Variant, attr: Attribute, z, x) -> bool:
    """``z <=_q^j x``; for missing-value variants this is not ``x >=_q^j z``."""
    if variant is Variant.CLASSICAL:
        return outranks_values(variant, attr, x, z)
    if variant is Variant.MV1_5:
        return _holds(attr, x, z) or is_missing(z)
    if variant is Variant.MV2:
        return _holds(attr, x, z) or is_missing(z) or is_missing(x)
    return z == LOST or _holds(attr, x, z) or z == DONT_CARE or x == DONT_CARE


def per_criterion_outranks(variant, attr: str | Attribute, x, y, table: DecisionTable) -> bool:
    """Whether object ``x`` outranks object ``y`` on a single condition attribute."""
    variant = Variant.parse(variant)
    name = attr.name if isinstance(attr, Attribute) else attr
    a = table.attribute(name)
    i = table.attribute_position(name)
    return outranks_values(variant, a, table.row(x)[i], table.row(y)[i])


def _columns(table: DecisionTable, attributes) -> list[tuple[int, Attribute]]:
    return [(table.attribute_position(a.name), a) for a in table.resolve(attributes)]


def dominates(table: DecisionTable, x, y, attributes: Iterable[str] | None = None,
              variant=Variant.CLASSICAL) -> bool:
    """``x D_P y``: x outranks y on every attribute of P."""
    variant = Variant.parse(variant)
    rx, ry = table.row(x), table.row(y)
    return all(outranks_values(variant, a, rx[i], ry[i]) for i, a in _columns(table, attributes))


def inverse_dominates(table: DecisionTable, z, x, attributes: Iterable[str] | None = None,
                      variant=Variant.CLASSICAL) -> bool:
    """``z d_P x``: z is dominated by x in the inverse-dominance sense."""
    variant = Variant.parse(variant)
    rz, rx = table.row(z), table.row(x)
    return all(inverse_outranks_values(variant, a, rz[i], rx[i]) for i, a in _columns(table, attributes))


@dataclass(frozen=True)
class DominanceCone:
    anchor: object
    attributes: tuple[str, ...]
    sense: Sense
    members: frozenset

    def __contains__(self, item) -> bool:
        return item in self.members

    def __len__(self) -> int:
        return len(self.members)


def _column(table: DecisionTable, i: int, attr: Attribute) -> tuple[list, list]:
    """Oriented comparison keys and missing markers of one column, cached per table."""
    key = ("column", i)
    if key not in table._cache:
        keys, marks = [], []
        for row in table.rows():
            v = row[i]
            if is_missing(v):
                keys.append(None)
                marks.append(v)
            else:
                r = v if attr.kind is Kind.REGULAR else attr.rank(v)
                keys.append(-r if attr.kind is Kind.COST else r)
                marks.append(None)
        table._cache[key] = (keys, marks)
    return table._cache[key]


def _cell_test(variant: Variant, regular: bool):
    """``test(own_mark, other_mark, a, b)``: the missing-value clause on the own/other
    markers, or the known-value comparison of keys ``a`` and ``b``."""
    def holds(a, b):
        if a is None or b is None:
            return False
        return a == b if regular else a >= b

    if variant is Variant.CLASSICAL:
        return lambda mo, mt, a, b: holds(a, b)
    if variant is Variant.MV1_5:
        return lambda mo, mt, a, b: mo is not None or holds(a, b)
    if variant is Variant.MV2:
        return lambda mo, mt, a, b: mo is not None or mt is not None or holds(a, b)
    return lambda mo, mt, a, b: mo is not None or mt == DONT_CARE or holds(a, b)


def cone_members(table: DecisionTable, x, attributes=None, variant=Variant.CLASSICAL,
                 sense: Sense | str = Sense.DOMINATING) -> frozenset:
    """Members of the requested cone of ``x``, by linear scan over the universe."""
    variant = Variant.parse(variant)
    sense = Sense(sense)
    px = table.position(x)
    # which object owns the missing-value clause, and which key must be at least the other
    own_is_x = sense in (Sense.DOMINATED, Sense.INVERSE_DOMINATING)
    x_first = sense in (Sense.DOMINATED, Sense.INVERSE_DOMINATED)
    alive = list(range(len(table)))
    for i, attr in _columns(table, attributes):
        keys, marks = _column(table, i, attr)
        if variant is Variant.CLASSICAL and any(m is not None for m in marks):
            raise DomainError(f"classical dominance is undefined for missing values on {attr.name!r}")
        test = _cell_test(variant, attr.kind is Kind.REGULAR)
        kx, mx = keys[px], marks[px]
        kept = []
        for j in alive:
            mo, mt = (mx, marks[j]) if own_is_x else (marks[j], mx)
            a, b = (kx, keys[j]) if x_first else (keys[j], kx)
            if test(mo, mt, a, b):
                kept.append(j)
        alive = kept
    return frozenset(table.objects[j] for j in alive)


def cone(table: DecisionTable, x, attributes=None, variant=Variant.CLASSICAL,
         sense: Sense | str = Sense.DOMINATING) -> DominanceCone:
    names = tuple(a.name for a in table.resolve(attributes))
    return DominanceCone(x, names, Sense(sense), cone_members(table, x, names, variant, sense))


def indiscernibility_class(table: DecisionTable, x, attributes=None) -> frozenset:
    """Objects with exactly the same evaluations as ``x`` on P."""
    if table.has_missing(attributes):
        raise DomainError("indiscernibility requires P to have no missing values")
    cols = [i for i, _ in _columns(table, attributes)]
    rx = table.row(x)
    return frozenset(y for y, ry in zip(table.objects, table.rows())
                     if all(ry[i] == rx[i] for i in cols))


def indiscernibility_partition(table: DecisionTable, attributes=None) -> list[frozenset]:
    """Elementary sets of ``I_P`` in order of their first member."""
    seen, blocks = set(), []
    for x in table.objects:
        if x not in seen:
            block = indiscernibility_class(table, x, attributes)
            seen |= block
            blocks.append(block)
    return blocks
