"""Schema validation for parsed queries.

Violations are data, not exceptions: the simulated search surfaces them
as an error signal naming the offending clause, mirroring how a live
instance pinpoints the clause that failed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import Clause, JqlQuery, LIST_OPS, Operator, SINGLE_VALUE_OPS
from .printer import render_clause
from .schema import DATE, InstanceSchema

UNKNOWN_FIELD = "unknown-field"
OPERATOR_NOT_ALLOWED = "operator-not-allowed"
VALUE_NOT_ALLOWED = "value-not-allowed"
BAD_DATE_VALUE = "bad-date-value"


@dataclass(frozen=True)
class Violation:
    code: str
    clause: str  # canonical rendering of the offending clause
    message: str

    def describe(self) -> str:
        return f"{self.message} in clause [{self.clause}]"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        return "; ".join(v.describe() for v in self.violations)


def validate(query: JqlQuery, schema: InstanceSchema) -> ValidationReport:
    violations: list[Violation] = []
    for clause in query.clauses():
        violations.extend(_check_clause(clause, schema))
    return ValidationReport(tuple(violations))


def _check_clause(clause: Clause, schema: InstanceSchema) -> list[Violation]:
    rendered = render_clause(clause)
    fdef = schema.field(clause.field)
    if fdef is None:
        return [
            Violation(UNKNOWN_FIELD, rendered, f'Unknown field "{clause.field}"')
        ]
    out: list[Violation] = []
    if clause.op not in fdef.operators:
        out.append(
            Violation(
                OPERATOR_NOT_ALLOWED,
                rendered,
                f"Operator {clause.op.value} is not allowed on {fdef.kind} field \"{fdef.key}\"",
            )
        )
    if fdef.kind == DATE:
        if clause.op in SINGLE_VALUE_OPS and clause.date is None:
            out.append(
                Violation(
                    BAD_DATE_VALUE,
                    rendered,
                    f'Field "{fdef.key}" expects a date value '
                    "(YYYY-MM-DD, a relative offset like -5d or -4w, or startOf*())",
                )
            )
        return out
    if fdef.closed and clause.op in (SINGLE_VALUE_OPS | LIST_OPS):
        allowed = {v.casefold() for v in fdef.values}
        for value in clause.operand_strings():
            if value.casefold() not in allowed:
                out.append(
                    Violation(
                        VALUE_NOT_ALLOWED,
                        rendered,
                        f'Value "{value}" does not exist for field "{fdef.key}"',
                    )
                )
    return out
