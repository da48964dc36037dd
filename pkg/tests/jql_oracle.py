"""Reference interpreter for the engine-equivalence checks.

Deliberately independent of jqlagent.jql.evaluate: it works over the raw
JSONL record dicts (not Issue objects), re-derives all clause semantics
from the documented rules, and recombines leaves with explicit boolean
recursion. Keep this file dumb; its value is being a second opinion.
"""

from __future__ import annotations

import datetime as dt

from jqlagent.jql.ast import (
    AbsoluteDate,
    And,
    Clause,
    DateFunction,
    JqlQuery,
    Or,
    RelativeDate,
)

UTC = dt.timezone.utc

# field -> (record key, shape)
FIELDS = {
    "issuetype": ("issuetype", "scalar"),
    "project": ("project", "scalar"),
    "priority": ("priority", "scalar"),
    "resolution": ("resolution", "scalar"),
    "assignee": ("assignee", "scalar"),
    "component": ("components", "set"),
    "platforms": ("platforms", "set"),
    "labels": ("labels", "set"),
    "fixversion": ("fixVersions", "set"),
    "affectedversion": ("affectedVersions", "set"),
    "summary": ("summary", "text"),
    "description": ("description", "text"),
    "created": ("created", "date"),
    "updated": ("updated", "date"),
    "resolutiondate": ("resolved", "date"),
}


def oracle_matching_keys(query: JqlQuery, records: list[dict], now: dt.datetime) -> list[str]:
    return sorted(
        (r["key"] for r in records if oracle_eval(query.root, r, now)),
        key=_key_order,
    )


def _key_order(key: str):
    project, _, number = key.rpartition("-")
    return (project, int(number))


def oracle_eval(node, record: dict, now: dt.datetime) -> bool:
    if isinstance(node, And):
        result = True
        for child in node.children:
            result = result and oracle_eval(child, record, now)
        return result
    if isinstance(node, Or):
        result = False
        for child in node.children:
            result = result or oracle_eval(child, record, now)
        return result
    return _leaf(node, record, now)


def _leaf(clause: Clause, record: dict, now: dt.datetime) -> bool:
    key, shape = FIELDS[clause.field]
    raw = record.get(key)
    op = clause.op.value

    if op == "IS EMPTY":
        return _empty(raw)
    if op == "IS NOT EMPTY":
        return not _empty(raw)

    if shape == "date":
        if raw is None:
            return False
        stamp = _parse_ts(raw)
        expr = clause.date
        if expr is None:
            raise AssertionError("oracle: non-date operand on date field")
        bound = _resolve(expr, now)
        if op == "=":
            if isinstance(expr, AbsoluteDate):
                return bound <= stamp < bound + dt.timedelta(days=1)
            return stamp == bound
        if op == ">=":
            return stamp >= bound
        if op == "<=":
            return stamp <= bound
        if op == ">":
            return stamp > bound
        if op == "<":
            return stamp < bound
        raise AssertionError(f"oracle: date op {op}")

    if shape == "text":
        text = (raw or "").casefold()
        term = clause.values[0].casefold()
        if not text:
            return False
        if op == "~":
            return term in text
        if op == "!~":
            return term not in text
        raise AssertionError(f"oracle: text op {op}")

    operands = [v.casefold() for v in _operand_texts(clause)]
    if shape == "set":
        have = {v.casefold() for v in (raw or [])}
        hit = any(o in have for o in operands)
        if op in ("=", "IN"):
            return hit
        if op in ("!=", "NOT IN"):
            return bool(have) and not hit
        raise AssertionError(f"oracle: set op {op}")

    # scalar
    if raw is None:
        return False
    value = raw.casefold()
    hit = value in operands
    if op in ("=", "IN"):
        return hit
    if op in ("!=", "NOT IN"):
        return not hit
    raise AssertionError(f"oracle: scalar op {op}")


def _operand_texts(clause: Clause) -> list[str]:
    if clause.date is None:
        return list(clause.values)
    expr = clause.date
    if isinstance(expr, RelativeDate):
        return [f"{expr.amount}{expr.unit}"]
    if isinstance(expr, AbsoluteDate):
        return [expr.value.isoformat()]
    return [f"{expr.name}()"]


def _empty(raw) -> bool:
    return raw is None or raw == [] or raw == ""


def _parse_ts(raw: str) -> dt.datetime:
    return dt.datetime.strptime(raw, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=UTC)


def _resolve(expr, now: dt.datetime) -> dt.datetime:
    if isinstance(expr, RelativeDate):
        step = dt.timedelta(days=1) if expr.unit == "d" else dt.timedelta(days=7)
        return now + step * expr.amount
    if isinstance(expr, AbsoluteDate):
        d = expr.value
        return dt.datetime(d.year, d.month, d.day, tzinfo=UTC)
    assert isinstance(expr, DateFunction)
    today = now.astimezone(UTC).date()
    if expr.name == "startOfDay":
        anchor = today
    elif expr.name == "startOfWeek":
        anchor = today - dt.timedelta(days=today.weekday())
    elif expr.name == "startOfMonth":
        anchor = today.replace(day=1)
    else:
        anchor = today.replace(month=1, day=1)
    return dt.datetime(anchor.year, anchor.month, anchor.day, tzinfo=UTC)
