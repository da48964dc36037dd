"""Canonical JQL rendering.

Canonical form: uppercase keywords, double-quoted string values, IN lists
comma-separated, date expressions in their bare token form, and every
non-leaf child parenthesized so that parse(to_jql(q)) reproduces the tree
exactly.
"""

from __future__ import annotations

from .ast import AbsoluteDate, And, Clause, JqlQuery, Node, Or, EMPTY_OPS, LIST_OPS
from .schema import canonical_field_case


def to_jql(query: JqlQuery | Node) -> str:
    node = query.root if isinstance(query, JqlQuery) else query
    return _render(node)


def _render(node: Node) -> str:
    if isinstance(node, Clause):
        return render_clause(node)
    joiner = " AND " if isinstance(node, And) else " OR "
    parts = []
    for child in node.children:
        text = _render(child)
        if isinstance(child, (And, Or)):
            text = f"({text})"
        parts.append(text)
    return joiner.join(parts)


def render_clause(clause: Clause) -> str:
    field = canonical_field_case(clause.field)
    op = clause.op
    if op in EMPTY_OPS:
        return f"{field} {op.value}"
    if op in LIST_OPS:
        inner = ", ".join(quote(v) for v in clause.values)
        return f"{field} {op.value} ({inner})"
    if clause.date is not None:
        return f"{field} {op.value} {render_date(clause)}"
    return f"{field} {op.value} {quote(clause.values[0])}"


def render_date(clause: Clause) -> str:
    date = clause.date
    assert date is not None
    token = date.token()
    # Absolute dates are conventionally quoted; relative offsets and
    # functions are bare. Both forms re-classify identically on parse.
    if isinstance(date, AbsoluteDate):
        return quote(token)
    return token


def quote(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'
