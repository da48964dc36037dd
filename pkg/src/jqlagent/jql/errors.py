"""Error types shared across the JQL engine."""

from __future__ import annotations


class JqlSyntaxError(ValueError):
    """Raised when a query cannot be tokenized or parsed.

    Carries the character offset of the failure and, when known, a hint
    describing what the parser expected at that point.
    """

    def __init__(self, message: str, offset: int, expected: str | None = None):
        self.offset = offset
        self.expected = expected
        full = f"{message} at offset {offset}"
        if expected:
            full += f" (expected {expected})"
        super().__init__(full)


class JqlTypeError(TypeError):
    """Operand kind conflicts with the field kind during evaluation.

    Unreachable for queries that passed validation against the schema the
    issues were built from.
    """
