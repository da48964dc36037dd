"""Clause semantics: evaluate a parsed query against one issue.

Semantics notes (the behaviours a live Jira instance leaves implicit):

- Value equality is case-insensitive.
- `=` on a multi-valued field means set-contains; `IN` means the value
  sets intersect.
- `!=` and `NOT IN` are false when the field is empty (three-valued
  negation); same for `!~` on an empty text field.
- `~` is a case-insensitive substring match on the raw field text, with
  no tokenization or stemming; see text_contains below.
- Date expressions resolve against an injected clock, never wall time:
  d = 86,400 s, w = 7 d, startOf* truncates in UTC (weeks start Monday).
- `=` against a calendar date matches the whole UTC day.
"""

from __future__ import annotations

import datetime as dt
from typing import TYPE_CHECKING

from .ast import (
    AbsoluteDate,
    And,
    Clause,
    DateFunction,
    JqlQuery,
    Node,
    Operator,
    Or,
    RelativeDate,
)
from .errors import JqlTypeError
from .schema import DATE, FIELD_BINDINGS, MULTI_CATEGORICAL, TEXT

if TYPE_CHECKING:
    from ..sim.store import Issue

_DAY = dt.timedelta(days=1)


def evaluate(query: JqlQuery, issue: "Issue", now: dt.datetime) -> bool:
    """True iff the issue satisfies the query at clock `now`."""
    return _node(query.root, issue, now)


def _node(node: Node, issue: "Issue", now: dt.datetime) -> bool:
    if isinstance(node, And):
        return all(_node(child, issue, now) for child in node.children)
    if isinstance(node, Or):
        return any(_node(child, issue, now) for child in node.children)
    return evaluate_clause(node, issue, now)


def evaluate_clause(clause: Clause, issue: "Issue", now: dt.datetime) -> bool:
    binding = FIELD_BINDINGS.get(clause.field)
    if binding is None:
        raise JqlTypeError(f"unknown field {clause.field!r}")
    kind, attr = binding
    value = getattr(issue, attr)
    op = clause.op

    if op is Operator.IS_EMPTY:
        return _is_empty(value)
    if op is Operator.IS_NOT_EMPTY:
        return not _is_empty(value)

    if kind == DATE:
        return _date_clause(clause, value, now)
    if kind == TEXT:
        return _text_clause(clause, value)

    operands = clause.operand_strings()
    if kind == MULTI_CATEGORICAL:
        present = frozenset(v.casefold() for v in value)
        hit = any(o.casefold() in present for o in operands)
        if op in (Operator.EQ, Operator.IN):
            return hit
        if op in (Operator.NEQ, Operator.NOT_IN):
            return bool(present) and not hit
        raise JqlTypeError(f"{op.value} unsupported on multi-valued field {clause.field!r}")

    # Scalar categorical / user fields.
    if value is None:
        return False
    folded = value.casefold()
    hit = any(folded == o.casefold() for o in operands)
    if op in (Operator.EQ, Operator.IN):
        return hit
    if op in (Operator.NEQ, Operator.NOT_IN):
        return not hit
    raise JqlTypeError(f"{op.value} unsupported on field {clause.field!r}")


def text_contains(text: str, term: str) -> bool:
    """The `~` predicate: case-insensitive substring over the raw text.

    Isolated here because a live instance may instead apply word-level
    matching; swapping that decision means changing this one function.
    """
    return term.casefold() in text.casefold()


def _text_clause(clause: Clause, text: str | None) -> bool:
    term = clause.values[0]
    if not text:
        return False  # empty text satisfies neither ~ nor !~
    if clause.op is Operator.CONTAINS:
        return text_contains(text, term)
    if clause.op is Operator.NOT_CONTAINS:
        return not text_contains(text, term)
    raise JqlTypeError(f"{clause.op.value} unsupported on text field {clause.field!r}")


def _date_clause(clause: Clause, value: dt.datetime | None, now: dt.datetime) -> bool:
    if value is None:
        return False
    if clause.date is None:
        raise JqlTypeError(f"non-date operand on date field {clause.field!r}")
    bound = resolve_date(clause.date, now)
    op = clause.op
    if op is Operator.EQ:
        if isinstance(clause.date, AbsoluteDate):
            return bound <= value < bound + _DAY
        return value == bound
    if op is Operator.NEQ:
        if isinstance(clause.date, AbsoluteDate):
            return not (bound <= value < bound + _DAY)
        return value != bound
    if op is Operator.GTE:
        return value >= bound
    if op is Operator.LTE:
        return value <= bound
    if op is Operator.GT:
        return value > bound
    if op is Operator.LT:
        return value < bound
    raise JqlTypeError(f"{op.value} unsupported on date field {clause.field!r}")


def resolve_date(expr, now: dt.datetime) -> dt.datetime:
    """Resolve a date expression to an instant, relative to `now` (UTC)."""
    if isinstance(expr, RelativeDate):
        days = expr.amount if expr.unit == "d" else expr.amount * 7
        return now + dt.timedelta(days=days)
    if isinstance(expr, AbsoluteDate):
        return dt.datetime(
            expr.value.year, expr.value.month, expr.value.day, tzinfo=dt.timezone.utc
        )
    if isinstance(expr, DateFunction):
        utc_now = now.astimezone(dt.timezone.utc)
        day = utc_now.date()
        if expr.name == "startOfDay":
            start = day
        elif expr.name == "startOfWeek":
            start = day - dt.timedelta(days=day.weekday())
        elif expr.name == "startOfMonth":
            start = day.replace(day=1)
        else:  # startOfYear
            start = day.replace(month=1, day=1)
        return dt.datetime(start.year, start.month, start.day, tzinfo=dt.timezone.utc)
    raise JqlTypeError(f"unknown date expression {expr!r}")


def _is_empty(value) -> bool:
    if value is None:
        return True
    if isinstance(value, str):
        return value == ""
    if isinstance(value, frozenset):
        return not value
    return False
