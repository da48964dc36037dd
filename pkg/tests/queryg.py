"""Seeded random query generators shared by property and acceptance tests."""

from __future__ import annotations

import datetime as dt
import random
import string

from jqlagent.jql.ast import (
    AbsoluteDate,
    And,
    Clause,
    DateFunction,
    JqlQuery,
    Operator,
    Or,
    RelativeDate,
    classify_date_token,
    DATE_FUNCTION_NAMES,
)
from jqlagent.jql.schema import (
    CATEGORICAL,
    DATE,
    MULTI_CATEGORICAL,
    TEXT,
    USER,
)
from jqlagent.sim.search import all_unique_values

_KEYWORDS = {"and", "or", "in", "is", "not", "empty"}

_VALUE_POOL = (
    "Epic",
    "Sub-task",
    "P1: Critical",
    "Core: QString and Unicode",
    "6.5.0 Beta1",
    'quote "inside"',
    "back\\slash",
    "comma, paren (deep)",
    "Ünïcode välue",
    "  padded  ",
    "x",
    "",
    "startOfDay()",
    "project AND priority",
    "0042",
    "2025-13-45",
)


def random_field(rng: random.Random) -> str:
    while True:
        head = rng.choice(string.ascii_lowercase + "_")
        body = "".join(
            rng.choice(string.ascii_lowercase + string.digits + "_")
            for _ in range(rng.randint(0, 8))
        )
        name = head + body
        if name not in _KEYWORDS:
            return name


def random_plain_value(rng: random.Random, allow_date_shaped: bool) -> str:
    value = rng.choice(_VALUE_POOL)
    if rng.random() < 0.3:
        value = "".join(
            rng.choice(string.ascii_letters + string.digits + " .:-_/()")
            for _ in range(rng.randint(1, 12))
        )
    if not allow_date_shaped:
        while classify_date_token(value) is not None:
            value += "x"
    return value


def random_date_expr(rng: random.Random):
    roll = rng.random()
    if roll < 0.4:
        return RelativeDate(rng.randint(-1200, 30), rng.choice("dw"))
    if roll < 0.8:
        base = dt.date(2022, 1, 1) + dt.timedelta(days=rng.randint(0, 1500))
        return AbsoluteDate(base)
    return DateFunction(rng.choice(DATE_FUNCTION_NAMES))


def random_clause(rng: random.Random) -> Clause:
    field = random_field(rng)
    op = rng.choice(list(Operator))
    if op in (Operator.IS_EMPTY, Operator.IS_NOT_EMPTY):
        return Clause(field, op)
    if op in (Operator.IN, Operator.NOT_IN):
        values = tuple(
            random_plain_value(rng, allow_date_shaped=True)
            for _ in range(rng.randint(1, 4))
        )
        return Clause(field, op, values=values)
    if op in (Operator.CONTAINS, Operator.NOT_CONTAINS):
        return Clause(field, op, values=(random_plain_value(rng, allow_date_shaped=True),))
    if rng.random() < 0.4:
        return Clause(field, op, date=random_date_expr(rng))
    return Clause(field, op, values=(random_plain_value(rng, allow_date_shaped=False),))


def random_ast(rng: random.Random, depth: int = 0) -> JqlQuery:
    """Arbitrary canonical-form queries for the print/parse round-trip."""
    return JqlQuery(_random_node(rng, depth))


def _random_node(rng: random.Random, depth: int):
    if depth >= 3 or rng.random() < 0.45:
        return random_clause(rng)
    children = tuple(_random_node(rng, depth + 1) for _ in range(rng.randint(2, 4)))
    return And(children) if rng.random() < 0.5 else Or(children)


# ---------------------------------------------------------------------------
# Schema-valid queries over a concrete store (for engine-vs-oracle checks).


class ValidQueryGen:
    def __init__(self, store, rng: random.Random):
        self.store = store
        self.rng = rng
        self.schema = store.schema
        self._value_cache: dict[str, tuple[str, ...]] = {}

    def _stored_values(self, field_key: str) -> tuple[str, ...]:
        if field_key not in self._value_cache:
            self._value_cache[field_key] = all_unique_values(self.store, field_key)
        return self._value_cache[field_key]

    def query(self) -> JqlQuery:
        rng = self.rng
        leaf_count = rng.randint(1, 6)
        clauses = [self.clause() for _ in range(leaf_count)]
        if len(clauses) == 1:
            return JqlQuery(clauses[0])
        if rng.random() < 0.6:
            return JqlQuery(And(tuple(clauses)))
        # Mixed shape: OR over subgroups of ANDs / leaves.
        split = rng.randint(1, len(clauses) - 1)
        left = clauses[:split]
        right = clauses[split:]
        left_node = left[0] if len(left) == 1 else And(tuple(left))
        right_node = right[0] if len(right) == 1 else And(tuple(right))
        return JqlQuery(Or((left_node, right_node)))

    def clause(self) -> Clause:
        rng = self.rng
        fdef = rng.choice(self.schema.fields)
        op = rng.choice(fdef.operators)
        key = fdef.key.casefold()
        if op in (Operator.IS_EMPTY, Operator.IS_NOT_EMPTY):
            return Clause(key, op)
        if fdef.kind == DATE:
            return Clause(key, op, date=random_date_expr(rng))
        if fdef.kind == TEXT:
            terms = ("crash", "error", "unicode", "build", "zzz-not-there", "Freeze")
            return Clause(key, op, values=(rng.choice(terms),))
        values = self._candidate_values(fdef)
        if op in (Operator.IN, Operator.NOT_IN):
            k = rng.randint(1, min(3, len(values)))
            return Clause(key, op, values=tuple(rng.sample(values, k)))
        return Clause(key, op, values=(rng.choice(values),))

    def _candidate_values(self, fdef) -> list[str]:
        if fdef.closed:
            return list(fdef.values)
        if fdef.kind in (CATEGORICAL, MULTI_CATEGORICAL):
            stored = list(self._stored_values(fdef.key))
            return stored + ["does-not-exist"]
        if fdef.kind == USER:
            stored = sorted(
                {i.assignee for i in self.store.issues if i.assignee is not None}
            )
            return stored + ["nobody.here"]
        return ["does-not-exist"]
