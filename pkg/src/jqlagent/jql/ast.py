"""AST node types for the JQL subset: Boolean trees over field clauses.

All nodes are immutable; structural equality is dataclass equality, which
is what the print/parse round-trip guarantees are stated against.
"""

from __future__ import annotations

import datetime as dt
import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union


class Operator(enum.Enum):
    EQ = "="
    NEQ = "!="
    IN = "IN"
    NOT_IN = "NOT IN"
    CONTAINS = "~"
    NOT_CONTAINS = "!~"
    GTE = ">="
    LTE = "<="
    GT = ">"
    LT = "<"
    IS_EMPTY = "IS EMPTY"
    IS_NOT_EMPTY = "IS NOT EMPTY"


# Operand arity groups. Text operators keep raw strings and are never
# date-classified; list operators carry one or more strings; the empty
# checks carry nothing.
SINGLE_VALUE_OPS = frozenset(
    {Operator.EQ, Operator.NEQ, Operator.GTE, Operator.LTE, Operator.GT, Operator.LT}
)
TEXT_OPS = frozenset({Operator.CONTAINS, Operator.NOT_CONTAINS})
LIST_OPS = frozenset({Operator.IN, Operator.NOT_IN})
EMPTY_OPS = frozenset({Operator.IS_EMPTY, Operator.IS_NOT_EMPTY})
COMPARISON_OPS = frozenset({Operator.GTE, Operator.LTE, Operator.GT, Operator.LT})


@dataclass(frozen=True)
class RelativeDate:
    """Signed day/week offset from the evaluation clock, e.g. -90d, -4w."""

    amount: int
    unit: str  # "d" or "w"

    def __post_init__(self) -> None:
        if self.unit not in ("d", "w"):
            raise ValueError(f"relative date unit must be 'd' or 'w', got {self.unit!r}")

    def token(self) -> str:
        return f"{self.amount}{self.unit}"


@dataclass(frozen=True)
class AbsoluteDate:
    """A calendar date, interpreted as midnight UTC."""

    value: dt.date

    def token(self) -> str:
        return self.value.isoformat()


@dataclass(frozen=True)
class DateFunction:
    """One of the startOf* clock-truncation functions."""

    name: str  # canonical camelCase, e.g. "startOfDay"

    def __post_init__(self) -> None:
        if self.name not in DATE_FUNCTION_NAMES:
            raise ValueError(f"unknown date function {self.name!r}")

    def token(self) -> str:
        return f"{self.name}()"


DateExpr = Union[RelativeDate, AbsoluteDate, DateFunction]

DATE_FUNCTION_NAMES = ("startOfDay", "startOfWeek", "startOfMonth", "startOfYear")
_CANONICAL_FUNCTION = {name.lower(): name for name in DATE_FUNCTION_NAMES}

_RELATIVE_RE = re.compile(r"^([+-]?\d+)([dw])$", re.IGNORECASE)
_ABSOLUTE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def classify_date_token(raw: str) -> DateExpr | None:
    """Return the DateExpr a raw value token denotes, or None for plain text.

    Applied to operands of =, !=, >=, <=, >, < (never to ~ or IN lists),
    so `created >= "2025-01-01"` and `updated <= -90d` both yield date
    expressions while `summary ~ "2025"` stays a string.
    """
    m = _RELATIVE_RE.match(raw)
    if m:
        return RelativeDate(int(m.group(1)), m.group(2).lower())
    if _ABSOLUTE_RE.match(raw):
        try:
            return AbsoluteDate(dt.date.fromisoformat(raw))
        except ValueError:
            return None
    return None


def canonical_function_name(raw: str) -> str | None:
    return _CANONICAL_FUNCTION.get(raw.lower())


@dataclass(frozen=True)
class Clause:
    """A single field predicate: field, operator, and optional operand."""

    field: str  # stored casefolded; canonical casing is a print concern
    op: Operator
    values: tuple[str, ...] = ()
    date: DateExpr | None = None

    def __post_init__(self) -> None:
        if self.op in EMPTY_OPS:
            if self.values or self.date is not None:
                raise ValueError(f"{self.op.value} takes no operand")
        elif self.op in LIST_OPS:
            if not self.values or self.date is not None:
                raise ValueError(f"{self.op.value} requires a non-empty value list")
        elif self.op in TEXT_OPS:
            if len(self.values) != 1 or self.date is not None:
                raise ValueError(f"{self.op.value} requires exactly one text value")
        else:  # single-value comparisons
            has_value = len(self.values) == 1 and self.date is None
            has_date = not self.values and self.date is not None
            if not (has_value or has_date):
                raise ValueError(f"{self.op.value} requires exactly one value or date")

    def operand_strings(self) -> tuple[str, ...]:
        """Operand rendered as plain strings (date expressions as their tokens)."""
        if self.date is not None:
            return (self.date.token(),)
        return self.values


@dataclass(frozen=True)
class And:
    children: "tuple[Node, ...]"

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("AND node requires at least two children")


@dataclass(frozen=True)
class Or:
    children: "tuple[Node, ...]"

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("OR node requires at least two children")


Node = Union[Clause, And, Or]


@dataclass(frozen=True)
class JqlQuery:
    """A parsed JQL filter. Parenthesisation is preserved as tree shape."""

    root: Node

    def clauses(self) -> Iterator[Clause]:
        yield from iter_clauses(self.root)

    @property
    def clause_count(self) -> int:
        return sum(1 for _ in self.clauses())

    @property
    def fields_used(self) -> tuple[str, ...]:
        seen: list[str] = []
        for clause in self.clauses():
            if clause.field not in seen:
                seen.append(clause.field)
        return tuple(seen)


def iter_clauses(node: Node) -> Iterator[Clause]:
    if isinstance(node, Clause):
        yield node
    else:
        for child in node.children:
            yield from iter_clauses(child)
