"""Programmatic gold-query generation with non-empty filtering.

Queries are assembled from field-operator-value triples anchored on a
randomly drawn witness issue, so every candidate is satisfiable by
construction; each one is still executed against the store and discarded
unless it returns a non-empty result. Sampling is stratified: clause
counts rotate uniformly through the configured range and each query is
forced to cover a rotating field family (categorical, date, text) so the
set spans value groups, date ranges, and text search.
"""

from __future__ import annotations

import datetime as dt
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from ..fixtures import TEXT_KEYWORDS
from ..jql import AbsoluteDate, And, Clause, JqlQuery, Operator, RelativeDate, parse, to_jql
from ..jql.evaluate import resolve_date
from ..jql.schema import ISSUE_TYPES, PLATFORM_VALUES, PRIORITIES, RESOLUTIONS
from ..sim.search import NON_EMPTY, all_unique_values, search
from ..sim.store import Issue, IssueStore
from .items import BenchmarkItem, SEM_SIMILAR, VARIANTS
from .variants import render_nl


class Exhausted(RuntimeError):
    """The retry budget ran out before enough valid queries were found."""


ClauseFilter = Callable[[Sequence[Clause], dt.datetime], bool]


def no_duplicate_fields(clauses: Sequence[Clause], now: dt.datetime) -> bool:
    fields = [c.field for c in clauses]
    return len(fields) == len(set(fields))


def no_contradictory_equality(clauses: Sequence[Clause], now: dt.datetime) -> bool:
    positive = {c.field for c in clauses if c.op in (Operator.EQ, Operator.IN)}
    negative = {c.field for c in clauses if c.op in (Operator.NEQ, Operator.NOT_IN)}
    return not (positive & negative)


def date_bounds_ordered(clauses: Sequence[Clause], now: dt.datetime) -> bool:
    """Every date lower bound must precede every date upper bound."""
    lowers = [
        resolve_date(c.date, now)
        for c in clauses
        if c.date is not None and c.op in (Operator.GTE, Operator.GT)
    ]
    uppers = [
        resolve_date(c.date, now)
        for c in clauses
        if c.date is not None and c.op in (Operator.LTE, Operator.LT)
    ]
    return all(low <= up for low in lowers for up in uppers)


def curated_text_terms(keywords: Sequence[str]) -> ClauseFilter:
    allowed = {k.casefold() for k in keywords}

    def check(clauses: Sequence[Clause], now: dt.datetime) -> bool:
        return all(
            c.values[0].casefold() in allowed
            for c in clauses
            if c.op in (Operator.CONTAINS, Operator.NOT_CONTAINS)
        )

    return check


@dataclass(frozen=True)
class GenerationRules:
    clause_range: tuple[int, int] = (2, 5)
    text_keywords: tuple[str, ...] = TEXT_KEYWORDS
    max_attempts_per_item: int = 200
    filters: tuple[ClauseFilter, ...] = dc_field(
        default_factory=lambda: (
            no_duplicate_fields,
            no_contradictory_equality,
            date_bounds_ordered,
        )
    )

    def all_filters(self) -> tuple[ClauseFilter, ...]:
        return self.filters + (curated_text_terms(self.text_keywords),)


_CATEGORICAL_FIELDS = (
    "project",
    "issuetype",
    "priority",
    "resolution",
    "platforms",
    "component",
    "labels",
    "fixversion",
    "affectedversion",
    "assignee",
)
_DATE_FIELDS = ("created", "updated", "resolutiondate")
_TEXT_FIELDS = ("summary", "description")
_FAMILIES = ("categorical", "date", "text")

_CLOSED_POOLS = {
    "issuetype": ISSUE_TYPES,
    "priority": PRIORITIES,
    "resolution": RESOLUTIONS,
    "platforms": PLATFORM_VALUES,
}

_MULTI_ATTRS = {
    "platforms": "platforms",
    "component": "components",
    "labels": "labels",
    "fixversion": "fix_versions",
    "affectedversion": "affected_versions",
}


def generate_gold(
    store: IssueStore,
    rules: GenerationRules,
    n: int,
    seed: int,
    now: dt.datetime,
) -> list[BenchmarkItem]:
    """Generate n gold items (variant unset), seed-deterministic.

    Raises Exhausted when an item cannot be produced within the per-item
    retry budget.
    """
    rng = random.Random(seed)
    low, high = rules.clause_range
    counts = list(range(low, high + 1))
    filters = rules.all_filters()
    items: list[BenchmarkItem] = []
    seen: set[str] = set()
    for index in range(n):
        target_count = counts[index % len(counts)]
        family = _FAMILIES[index % len(_FAMILIES)]
        jql = _generate_one(store, rules, rng, target_count, family, filters, now, seen)
        seen.add(jql)
        query = parse(jql)
        items.append(
            BenchmarkItem(
                f"gold-{index:04d}",
                jql,
                None,
                "",
                query.clause_count,
                query.fields_used,
            )
        )
    return items


def _generate_one(
    store: IssueStore,
    rules: GenerationRules,
    rng: random.Random,
    target_count: int,
    family: str,
    filters: tuple[ClauseFilter, ...],
    now: dt.datetime,
    seen: set[str],
) -> str:
    for _ in range(rules.max_attempts_per_item):
        witness = rng.choice(store.issues)
        clauses = _clauses_for_witness(
            store, rng, witness, target_count, family, rules, now
        )
        if clauses is None:
            continue
        if not all(check(clauses, now) for check in filters):
            continue
        root = And(tuple(clauses)) if len(clauses) > 1 else clauses[0]
        jql = to_jql(JqlQuery(root))
        if jql in seen:
            continue
        if search(store, jql, now, max_results=1).signal == NON_EMPTY:
            return jql
    raise Exhausted(
        f"no valid {target_count}-clause query found within "
        f"{rules.max_attempts_per_item} attempts"
    )


def _clauses_for_witness(
    store: IssueStore,
    rng: random.Random,
    witness: Issue,
    target_count: int,
    family: str,
    rules: GenerationRules,
    now: dt.datetime,
) -> list[Clause] | None:
    builders = {
        "categorical": [f for f in _CATEGORICAL_FIELDS],
        "date": [f for f in _DATE_FIELDS],
        "text": [f for f in _TEXT_FIELDS],
    }
    # One field from the required family first, then fill from the rest.
    ordered: list[str] = []
    required = builders[family][:]
    rng.shuffle(required)
    rest = [f for fam in _FAMILIES for f in builders[fam] if fam != family]
    rng.shuffle(rest)
    ordered = required + rest

    clauses: list[Clause] = []
    used: set[str] = set()
    for field_key in ordered:
        if len(clauses) == target_count:
            break
        if field_key in used:
            continue
        clause = _clause_for(store, rng, witness, field_key, rules, now)
        if clause is None:
            continue
        # The first clause must come from the required family.
        if not clauses and field_key not in builders[family]:
            return None
        clauses.append(clause)
        used.add(field_key)
    if len(clauses) != target_count:
        return None
    rng.shuffle(clauses)
    return clauses


def _clause_for(
    store: IssueStore,
    rng: random.Random,
    witness: Issue,
    field_key: str,
    rules: GenerationRules,
    now: dt.datetime,
) -> Clause | None:
    if field_key == "project":
        return _scalar_clause(rng, field_key, witness.project, tuple(store.projects))
    if field_key == "issuetype":
        if witness.issuetype is None:
            return None
        return _scalar_clause(rng, field_key, witness.issuetype, _CLOSED_POOLS[field_key])
    if field_key == "priority":
        if witness.priority is None:
            return Clause(field_key, Operator.IS_EMPTY)
        return _scalar_clause(
            rng, field_key, witness.priority, _CLOSED_POOLS[field_key], allow_empty_ops=True
        )
    if field_key == "resolution":
        if witness.resolution is None:
            return Clause(field_key, Operator.IS_EMPTY)
        return _scalar_clause(
            rng, field_key, witness.resolution, _CLOSED_POOLS[field_key], allow_empty_ops=True
        )
    if field_key == "assignee":
        if witness.assignee is None:
            return Clause(field_key, Operator.IS_EMPTY)
        if rng.random() < 0.3:
            return Clause(field_key, Operator.IS_NOT_EMPTY)
        return Clause(field_key, Operator.EQ, values=(witness.assignee,))
    if field_key in _MULTI_ATTRS:
        values = getattr(witness, _MULTI_ATTRS[field_key])
        if not values:
            return Clause(field_key, Operator.IS_EMPTY)
        value = rng.choice(sorted(values))
        roll = rng.random()
        if roll < 0.15:
            return Clause(field_key, Operator.IS_NOT_EMPTY)
        if roll < 0.55:
            return Clause(field_key, Operator.EQ, values=(value,))
        pool = _CLOSED_POOLS.get(field_key) or all_unique_values(
            store, field_key, [witness.project]
        )
        distractors = [v for v in pool if v != value]
        extra = rng.sample(distractors, k=min(len(distractors), rng.randint(1, 3)))
        return Clause(field_key, Operator.IN, values=tuple(sorted([value, *extra])))
    if field_key in _TEXT_FIELDS:
        text = getattr(witness, field_key).casefold()
        present = [k for k in rules.text_keywords if k.casefold() in text]
        if not present:
            return None
        return Clause(field_key, Operator.CONTAINS, values=(rng.choice(present),))
    if field_key in _DATE_FIELDS:
        attr = "resolved" if field_key == "resolutiondate" else field_key
        stamp = getattr(witness, attr)
        if stamp is None:
            return None
        return _date_clause(rng, field_key, stamp, now)
    return None


def _scalar_clause(
    rng: random.Random,
    field_key: str,
    value: str,
    pool: tuple[str, ...],
    *,
    allow_empty_ops: bool = False,
) -> Clause:
    roll = rng.random()
    if allow_empty_ops and roll < 0.15:
        return Clause(field_key, Operator.IS_NOT_EMPTY)
    if roll < 0.6:
        return Clause(field_key, Operator.EQ, values=(value,))
    distractors = [v for v in pool if v != value]
    extra = rng.sample(distractors, k=min(len(distractors), rng.randint(1, 3)))
    return Clause(field_key, Operator.IN, values=tuple(sorted([value, *extra])))


def _date_clause(
    rng: random.Random, field_key: str, stamp: dt.datetime, now: dt.datetime
) -> Clause:
    age_days = max(0, (now - stamp).days)
    lower = rng.random() < 0.5
    if lower:
        # field >= bound, bound at or before the witness timestamp
        offset = age_days + rng.randint(1, 120)
        if rng.random() < 0.5:
            date = RelativeDate(-offset, "d")
            if offset % 7 == 0:
                date = RelativeDate(-offset // 7, "w")
            return Clause(field_key, Operator.GTE, date=date)
        bound = (stamp - dt.timedelta(days=rng.randint(0, 30))).date()
        return Clause(field_key, Operator.GTE, date=AbsoluteDate(bound))
    # field <= bound, bound at or after the witness timestamp
    if age_days >= 2 and rng.random() < 0.5:
        offset = rng.randint(1, age_days - 1)
        return Clause(field_key, Operator.LTE, date=RelativeDate(-offset, "d"))
    bound = (stamp + dt.timedelta(days=rng.randint(1, 30))).date()
    return Clause(field_key, Operator.LTE, date=AbsoluteDate(bound))


FIELD_VALUE_FIELDS = ("fixVersion", "affectedVersion", "component")


def generate_field_value_set(
    store: IssueStore,
    field_key: str,
    n: int,
    now: dt.datetime,
    seed: int = 0,
) -> list[BenchmarkItem]:
    """Two-clause project+value queries isolating one categorical field.

    Every gold value is drawn from the live unique-value set of its
    project, so each query is non-empty by construction (and verified).
    """
    if field_key not in FIELD_VALUE_FIELDS:
        raise ValueError(
            f"field must be one of {FIELD_VALUE_FIELDS}, got {field_key!r}"
        )
    rng = random.Random(seed)
    pairs: list[tuple[str, str]] = []
    for project in store.projects:
        for value in all_unique_values(store, field_key, [project]):
            pairs.append((project, value))
    if len(pairs) < n:
        raise Exhausted(
            f"only {len(pairs)} distinct (project, {field_key}) pairs available, need {n}"
        )
    chosen = rng.sample(pairs, n)
    items: list[BenchmarkItem] = []
    for index, (project, value) in enumerate(chosen):
        jql = f'project IN ("{project}") AND {field_key} IN ("{value}")'
        response = search(store, jql, now, max_results=1)
        if response.signal != NON_EMPTY:
            raise Exhausted(f"constructed query unexpectedly empty: {jql}")
        items.append(
            BenchmarkItem(
                f"fv-{field_key}-{index:03d}",
                jql,
                SEM_SIMILAR,
                render_nl(jql, SEM_SIMILAR),
                2,
                ("project", field_key.casefold()),
            )
        )
    return items


def build_variant_items(gold_items: Sequence[BenchmarkItem]) -> list[BenchmarkItem]:
    """Expand raw gold items into the four NL variants (deterministic NL)."""
    out: list[BenchmarkItem] = []
    for variant in VARIANTS:
        for item in gold_items:
            out.append(
                BenchmarkItem(
                    f"{item.id}:{variant}",
                    item.gold_jql,
                    variant,
                    render_nl(item.gold_jql, variant),
                    item.clause_count,
                    item.fields_used,
                )
            )
    return out
