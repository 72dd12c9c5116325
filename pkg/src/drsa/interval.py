"""DRSA for interval evaluations and interval class assignments.

Criteria are stored in gain orientation: a cost interval [l, u] is kept as
[-u, -l]. Decision intervals are over class indices 1..n.
"""

from __future__ import annotations

import enum
from typing import Hashable, Sequence

from drsa.errors import DomainError, ValidationError
from drsa.table import Attribute, DecisionTable, Kind, is_missing


class End(str, enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


class Which(str, enum.Enum):
    LOWER_OF_LOWER_UP = "lower-of-lower-up"
    LOWER_OF_LOWER_DOWN = "lower-of-lower-down"
    UPPER_OF_UPPER_UP = "upper-of-upper-up"
    UPPER_OF_UPPER_DOWN = "upper-of-upper-down"


def _limit_missing(v) -> bool:
    return v is None or is_missing(v)


class IntervalTable:
    """Objects with interval evaluations on criteria and interval class assignments.

    ``intervals[i][j]`` is the ``(l, u)`` pair of object i on criterion j; a
    missing limit (None, ``?`` or ``*``) becomes the smallest (lower) or
    largest (upper) limit seen on that criterion. ``decisions[i]`` is a
    ``(l, u)`` pair of class labels from ``labels`` (ascending preference).
    """

    def __init__(self, criteria: Sequence[Attribute], objects: Sequence[Hashable],
                 intervals: Sequence[Sequence[tuple]], decisions: Sequence[tuple],
                 labels: Sequence | None = None, decision: Attribute | None = None):
        self.criteria = tuple(criteria)
        self.objects = tuple(objects)
        self.decision = decision if decision is not None else Attribute("d", Kind.GAIN)
        names = [c.name for c in self.criteria]
        if len(set(names + [self.decision.name])) != len(names) + 1:
            raise ValidationError("attribute names must be unique")
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("object identifiers must be unique")
        for c in self.criteria:
            if not c.is_criterion or not c.is_numeric:
                raise ValidationError(f"{c.name!r} must be a numeric criterion")
        if len(intervals) != len(self.objects) or len(decisions) != len(self.objects):
            raise ValidationError("intervals and decisions need one entry per object")
        self.raw = tuple(tuple(tuple(cell) for cell in row) for row in intervals)
        for x, row in zip(self.objects, self.raw):
            if len(row) != len(self.criteria):
                raise ValidationError(f"object {x!r} has {len(row)} intervals for {len(self.criteria)} criteria")
        self._cells = self._normalize()

        if labels is None:
            labels = sorted({v for pair in decisions for v in pair})
        self.labels = tuple(labels)
        if len(self.labels) < 2:
            raise ValidationError("an interval table needs at least two classes")
        pos = {label: i + 1 for i, label in enumerate(self.labels)}
        dec = []
        for x, pair in zip(self.objects, decisions):
            try:
                lo, hi = (pos[v] for v in pair)
            except (KeyError, ValueError):
                raise ValidationError(f"object {x!r} has an invalid decision interval {pair!r}") from None
            if lo > hi:
                raise ValidationError(f"object {x!r}: decision interval lower bound exceeds upper bound")
            dec.append((lo, hi))
        self.raw_decisions = tuple(tuple(p) for p in decisions)
        self._decisions = tuple(dec)
        self._index = {x: i for i, x in enumerate(self.objects)}
        self.universe = frozenset(self.objects)

    def _normalize(self):
        limits = []
        for j, c in enumerate(self.criteria):
            known = [v for row in self.raw for v in row[j] if not _limit_missing(v)]
            for v in known:
                c.check_value(v)
            limits.append((min(known), max(known)) if known else (0, 0))
        cells = []
        for x, row in zip(self.objects, self.raw):
            out = []
            for j, (c, cell) in enumerate(zip(self.criteria, row)):
                if len(cell) != 2:
                    raise ValidationError(f"object {x!r}: an interval needs two limits")
                lo = limits[j][0] if _limit_missing(cell[0]) else cell[0]
                hi = limits[j][1] if _limit_missing(cell[1]) else cell[1]
                if lo > hi:
                    raise ValidationError(f"object {x!r}: lower limit exceeds upper limit on {c.name!r}")
                out.append((lo, hi) if c.kind is Kind.GAIN else (-hi, -lo))
            cells.append(tuple(out))
        return tuple(cells)

    def __len__(self) -> int:
        return len(self.objects)

    @property
    def n_classes(self) -> int:
        return len(self.labels)

    def position(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise DomainError(f"unknown object {x!r}") from None

    def interval(self, x, q: str) -> tuple:
        """Gain-oriented interval of ``x`` on ``q``."""
        return self._cells[self.position(x)][self._column(q)]

    def decision_interval(self, x) -> tuple[int, int]:
        return self._decisions[self.position(x)]

    def ordered(self, objects) -> list:
        return sorted(objects, key=self.position)

    def _column(self, q: str) -> int:
        for j, c in enumerate(self.criteria):
            if c.name == q:
                return j
        raise DomainError(f"unknown criterion {q!r}")

    def columns(self, attributes=None) -> list[int]:
        if attributes is None:
            cols = list(range(len(self.criteria)))
        else:
            cols = [self._column(q) for q in dict.fromkeys(attributes)]
        if not cols:
            raise DomainError("the attribute subset P must be non-empty")
        return cols

    def cells(self, x) -> tuple:
        return self._cells[self.position(x)]

    @classmethod
    def from_decision_table(cls, table: DecisionTable) -> "IntervalTable":
        """Degenerate intervals [v, v] built from a complete numeric decision table."""
        for a in table.attributes:
            if not a.is_criterion or not a.is_numeric:
                raise DomainError(f"{a.name!r} is not a numeric criterion")
        if table.has_missing():
            raise DomainError("degenerate intervals need a complete table")
        intervals = [[(v, v) for v in row] for row in table.rows()]
        decisions = [(label, label) for label in table.decisions()]
        return cls(table.attributes, table.objects, intervals, decisions, table.labels, table.decision)


def possible_dominance(tbl: IntervalTable, x, y, attributes=None) -> bool:
    """x possibly dominates y: u(x, q) >= l(y, q) on every q of P."""
    cx, cy = tbl.cells(x), tbl.cells(y)
    return all(cx[j][1] >= cy[j][0] for j in tbl.columns(attributes))


def end_dominance(tbl: IntervalTable, x, y, attributes=None, end=End.LOWER) -> bool:
    """Lower-end (l(x) >= l(y)) or upper-end (u(x) >= u(y)) dominance on every q of P."""
    k = 0 if End(end) is End.LOWER else 1
    cx, cy = tbl.cells(x), tbl.cells(y)
    return all(cx[j][k] >= cy[j][k] for j in tbl.columns(attributes))


def possible_cone(tbl: IntervalTable, x, attributes=None, dominating: bool = True) -> frozenset:
    """{y : y possibly dominates x} or, with ``dominating=False``, {y : x possibly dominates y}."""
    cols = tbl.columns(attributes)
    cx = tbl.cells(x)
    out = []
    for y, cy in zip(tbl.objects, tbl._cells):
        hi, lo = (cy, cx) if dominating else (cx, cy)
        if all(hi[j][1] >= lo[j][0] for j in cols):
            out.append(y)
    return frozenset(out)


def _check_t(tbl: IntervalTable, t: int) -> None:
    if not 1 <= t <= tbl.n_classes:
        raise DomainError(f"class index {t} outside 1..{tbl.n_classes}")


def interval_class_sets(tbl: IntervalTable, t: int) -> tuple[frozenset, frozenset, frozenset, frozenset]:
    """``(certainly >= t, certainly <= t, possibly >= t, possibly <= t)`` by decision interval."""
    _check_t(tbl, t)
    objs = tbl.objects
    d = tbl.decision_interval
    return (frozenset(y for y in objs if d(y)[0] >= t),
            frozenset(y for y in objs if d(y)[1] <= t),
            frozenset(y for y in objs if d(y)[1] >= t),
            frozenset(y for y in objs if d(y)[0] <= t))


def second_order_approximation(tbl: IntervalTable, attributes, t: int, which) -> frozenset:
    """Second-order rough approximation of an interval-induced class set via possible dominance."""
    which = Which(which)
    certain_up, certain_down, possible_up, possible_down = interval_class_sets(tbl, t)
    tbl.columns(attributes)
    out = set()
    for x in tbl.objects:
        if which is Which.LOWER_OF_LOWER_UP:
            ok = possible_cone(tbl, x, attributes, True) <= certain_up
        elif which is Which.LOWER_OF_LOWER_DOWN:
            ok = possible_cone(tbl, x, attributes, False) <= certain_down
        elif which is Which.UPPER_OF_UPPER_UP:
            ok = bool(possible_cone(tbl, x, attributes, False) & possible_up)
        else:
            ok = bool(possible_cone(tbl, x, attributes, True) & possible_down)
        if ok:
            out.add(x)
    return frozenset(out)
