"""Recursive-descent parser for the JQL subset.

Grammar (see docs/grammar.md for the full EBNF):

    query    := or_expr EOF
    or_expr  := and_expr (OR and_expr)*
    and_expr := primary (AND primary)*
    primary  := "(" or_expr ")" | clause
    clause   := FIELD single_op operand
              | FIELD [NOT] IN "(" value ("," value)* ")"
              | FIELD IS [NOT] EMPTY

Keywords (AND, OR, IN, NOT, IS, EMPTY) and field names are matched
case-insensitively; field names are stored casefolded. A chain of ANDs
(or ORs) at one level becomes a single variadic node, so parentheses are
the only source of nesting and tree shape survives printing.
"""

from __future__ import annotations

import re

from .ast import (
    And,
    Clause,
    DateFunction,
    JqlQuery,
    Node,
    Operator,
    Or,
    SINGLE_VALUE_OPS,
    canonical_function_name,
    classify_date_token,
)
from .errors import JqlSyntaxError
from .lexer import COMMA, EOF, LPAREN, OP, RPAREN, STRING, Token, WORD, tokenize

_FIELD_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

_TEXT_FOR_OP = {
    "=": Operator.EQ,
    "!=": Operator.NEQ,
    "~": Operator.CONTAINS,
    "!~": Operator.NOT_CONTAINS,
    ">=": Operator.GTE,
    "<=": Operator.LTE,
    ">": Operator.GT,
    "<": Operator.LT,
}

_KEYWORDS = {"AND", "OR", "IN", "NOT", "IS", "EMPTY"}


def parse(text: str) -> JqlQuery:
    """Parse a JQL string into its AST.

    Raises JqlSyntaxError (with character offset and an expected-token
    hint) on malformed input, including trailing garbage.
    """
    if not text or not text.strip():
        raise JqlSyntaxError("empty query", offset=0, expected="a clause")
    return _Parser(text).parse()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # -- token stream helpers ------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise JqlSyntaxError(
                f"unexpected {self._describe(tok)}", offset=tok.pos, expected=expected
            )
        return self.advance()

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == EOF else f"token {tok.value!r}"

    def _is_keyword(self, tok: Token, word: str) -> bool:
        return tok.kind == WORD and tok.value.upper() == word

    # -- grammar -------------------------------------------------------------

    def parse(self) -> JqlQuery:
        root = self.or_expr()
        tok = self.peek()
        if tok.kind != EOF:
            raise JqlSyntaxError(
                f"unexpected {self._describe(tok)}", offset=tok.pos, expected="AND, OR or end of input"
            )
        return JqlQuery(root)

    def or_expr(self) -> Node:
        parts = [self.and_expr()]
        while self._is_keyword(self.peek(), "OR"):
            self.advance()
            parts.append(self.and_expr())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def and_expr(self) -> Node:
        parts = [self.primary()]
        while self._is_keyword(self.peek(), "AND"):
            self.advance()
            parts.append(self.primary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def primary(self) -> Node:
        tok = self.peek()
        if tok.kind == LPAREN:
            self.advance()
            inner = self.or_expr()
            self.expect(RPAREN, "')'")
            return inner
        return self.clause()

    def clause(self) -> Clause:
        tok = self.peek()
        if tok.kind != WORD or not _FIELD_RE.match(tok.value) or tok.value.upper() in _KEYWORDS:
            raise JqlSyntaxError(
                f"unexpected {self._describe(tok)}", offset=tok.pos, expected="a field name"
            )
        field = self.advance().value.casefold()

        tok = self.peek()
        if tok.kind == OP:
            op = _TEXT_FOR_OP[self.advance().value]
            return self._single_operand_clause(field, op)
        if self._is_keyword(tok, "IN"):
            self.advance()
            return Clause(field, Operator.IN, values=self._value_list())
        if self._is_keyword(tok, "NOT"):
            self.advance()
            nxt = self.peek()
            if not self._is_keyword(nxt, "IN"):
                raise JqlSyntaxError(
                    f"unexpected {self._describe(nxt)}", offset=nxt.pos, expected="IN"
                )
            self.advance()
            return Clause(field, Operator.NOT_IN, values=self._value_list())
        if self._is_keyword(tok, "IS"):
            self.advance()
            negated = False
            if self._is_keyword(self.peek(), "NOT"):
                self.advance()
                negated = True
            tok = self.peek()
            if not self._is_keyword(tok, "EMPTY"):
                raise JqlSyntaxError(
                    f"unexpected {self._describe(tok)}", offset=tok.pos, expected="EMPTY"
                )
            self.advance()
            return Clause(field, Operator.IS_NOT_EMPTY if negated else Operator.IS_EMPTY)
        raise JqlSyntaxError(
            f"unexpected {self._describe(tok)}",
            offset=tok.pos,
            expected="an operator (=, !=, ~, !~, >=, <=, >, <, IN, NOT IN, IS [NOT] EMPTY)",
        )

    def _single_operand_clause(self, field: str, op: Operator) -> Clause:
        tok = self.peek()
        if tok.kind == WORD and self.tokens[self.i + 1].kind == LPAREN:
            # Date function call: startOfDay() etc.
            name = canonical_function_name(tok.value)
            if name is None:
                raise JqlSyntaxError(
                    f"unknown date function {tok.value!r}",
                    offset=tok.pos,
                    expected="one of startOfDay, startOfWeek, startOfMonth, startOfYear",
                )
            self.advance()
            self.expect(LPAREN, "'('")
            self.expect(RPAREN, "')'")
            if op not in SINGLE_VALUE_OPS:
                raise JqlSyntaxError(
                    "date function not allowed here", offset=tok.pos, expected="a text value"
                )
            return Clause(field, op, date=DateFunction(name))
        raw = self._value()
        if op in SINGLE_VALUE_OPS:
            date = classify_date_token(raw)
            if date is not None:
                return Clause(field, op, date=date)
        return Clause(field, op, values=(raw,))

    def _value(self) -> str:
        tok = self.peek()
        if tok.kind == STRING:
            return self.advance().value
        if tok.kind == WORD:
            return self.advance().value
        raise JqlSyntaxError(
            f"unexpected {self._describe(tok)}", offset=tok.pos, expected="a value"
        )

    def _value_list(self) -> tuple[str, ...]:
        self.expect(LPAREN, "'('")
        values = [self._value()]
        while self.peek().kind == COMMA:
            self.advance()
            values.append(self._value())
        self.expect(RPAREN, "')' or ','")
        return tuple(values)
