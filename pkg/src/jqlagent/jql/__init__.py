"""JQL engine: lex, parse, validate, print, and evaluate the query subset."""

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
    iter_clauses,
)
from .errors import JqlSyntaxError, JqlTypeError
from .evaluate import evaluate, evaluate_clause, resolve_date, text_contains
from .parser import parse
from .printer import render_clause, to_jql
from .schema import (
    DEFAULT_SCHEMA,
    FIELD_ALIASES,
    FIELD_BINDINGS,
    FieldDef,
    InstanceSchema,
    canonical_field_case,
    default_schema,
)
from .validate import ValidationReport, Violation, validate

__all__ = [
    "AbsoluteDate",
    "And",
    "Clause",
    "DateFunction",
    "DEFAULT_SCHEMA",
    "FIELD_ALIASES",
    "FIELD_BINDINGS",
    "FieldDef",
    "InstanceSchema",
    "JqlQuery",
    "JqlSyntaxError",
    "JqlTypeError",
    "Node",
    "Operator",
    "Or",
    "RelativeDate",
    "ValidationReport",
    "Violation",
    "canonical_field_case",
    "default_schema",
    "evaluate",
    "evaluate_clause",
    "iter_clauses",
    "parse",
    "render_clause",
    "resolve_date",
    "text_contains",
    "to_jql",
    "validate",
]
