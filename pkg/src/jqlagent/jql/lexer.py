"""Tokenizer for the JQL subset."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import JqlSyntaxError

# Token kinds
STRING = "STRING"
WORD = "WORD"
OP = "OP"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
COMMA = "COMMA"
EOF = "EOF"

_OPERATOR_TEXTS = ("!=", "!~", ">=", "<=", "=", "~", ">", "<")

# Bare (unquoted) tokens: project keys, enum values, relative dates like
# -90d, absolute dates, dotted versions. Anything with spaces or other
# punctuation must be quoted.
_WORD_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_+-")
_WORD_BODY = _WORD_START | set(".")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int  # character offset into the source text


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            value, i = _scan_string(text, i)
            tokens.append(Token(STRING, value, i))
            continue
        if ch == "(":
            tokens.append(Token(LPAREN, "(", i))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token(RPAREN, ")", i))
            i += 1
            continue
        if ch == ",":
            tokens.append(Token(COMMA, ",", i))
            i += 1
            continue
        op = _match_operator(text, i)
        if op is not None:
            tokens.append(Token(OP, op, i))
            i += len(op)
            continue
        if ch in _WORD_START:
            start = i
            i += 1
            while i < n and text[i] in _WORD_BODY:
                i += 1
            tokens.append(Token(WORD, text[start:i], start))
            continue
        raise JqlSyntaxError(f"unexpected character {ch!r}", offset=i)
    tokens.append(Token(EOF, "", n))
    return tokens


def _match_operator(text: str, i: int) -> str | None:
    for op in _OPERATOR_TEXTS:
        if text.startswith(op, i):
            return op
    return None


def _scan_string(text: str, i: int) -> tuple[str, int]:
    """Scan a double-quoted string starting at offset i; returns (value, end)."""
    start = i
    i += 1
    out: list[str] = []
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text):
                raise JqlSyntaxError("unterminated escape in string", offset=i)
            nxt = text[i + 1]
            if nxt in ('"', "\\"):
                out.append(nxt)
                i += 2
                continue
            # Unknown escapes pass through verbatim, backslash included.
            out.append(ch)
            i += 1
            continue
        if ch == '"':
            return "".join(out), i + 1
        out.append(ch)
        i += 1
    raise JqlSyntaxError("unterminated string", offset=start, expected='closing "')
