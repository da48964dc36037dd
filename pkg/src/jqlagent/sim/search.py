"""JQL search and unique-value enumeration over an issue store.

Search returns one of three signals: a non-empty key page with the full
match count, an explicit zero-results marker, or an error message that
names the clause that failed. Issue keys are ordered ascending by
(project, issue number); the ordering is a convention of this backend.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Iterable

from ..jql import JqlSyntaxError, evaluate, parse, validate
from ..jql.schema import FIELD_BINDINGS, MULTI_CATEGORICAL
from .store import IssueStore

NON_EMPTY = "nonEmpty"
ZERO_RESULTS = "zeroResults"
ERROR = "error"

DEFAULT_MAX_RESULTS = 50
DEFAULT_VALUE_PAGE_SIZE = 100


@dataclass(frozen=True)
class SearchResponse:
    signal: str
    keys: tuple[str, ...] = ()
    total: int = 0
    message: str | None = None

    def to_json(self) -> dict:
        if self.signal == ERROR:
            return {"signal": ERROR, "message": self.message}
        return {"signal": self.signal, "keys": list(self.keys), "total": self.total}


@dataclass(frozen=True)
class ValuePage:
    values: tuple[str, ...]
    total: int

    def to_json(self) -> dict:
        return {"values": list(self.values), "total": self.total}


class NotEnumerable(ValueError):
    """Unique-value enumeration requested for a text/date/user field."""


def search(
    store: IssueStore,
    jql: str,
    now: dt.datetime,
    *,
    start_at: int = 0,
    max_results: int | None = DEFAULT_MAX_RESULTS,
) -> SearchResponse:
    """Parse, validate, and execute a JQL string against the store.

    max_results=None returns the full (unpaged) key list; total always
    reflects the complete match count regardless of paging.
    """
    try:
        query = parse(jql)
    except JqlSyntaxError as exc:
        return SearchResponse(ERROR, message=str(exc))
    report = validate(query, store.schema)
    if not report.ok:
        return SearchResponse(ERROR, message=report.describe())
    keys = [issue.key for issue in store.issues if evaluate(query, issue, now)]
    if not keys:
        return SearchResponse(ZERO_RESULTS)
    page = keys[start_at:] if max_results is None else keys[start_at : start_at + max_results]
    return SearchResponse(NON_EMPTY, keys=tuple(page), total=len(keys))


def unique_values(
    store: IssueStore,
    field: str,
    projects: Iterable[str] | None = None,
    *,
    start_at: int = 0,
    max_results: int = DEFAULT_VALUE_PAGE_SIZE,
) -> ValuePage:
    """One page of the deduplicated, sorted value set of an enumerable field.

    An empty/None project list means all projects. Raises NotEnumerable
    for text, date, and user fields.
    """
    fdef = store.schema.field(field)
    kind_attr = FIELD_BINDINGS.get(field.casefold())
    if fdef is None or kind_attr is None:
        raise NotEnumerable(f"unknown field {field!r}")
    if not fdef.enumerable:
        raise NotEnumerable(f'field "{fdef.key}" ({fdef.kind}) has no enumerable value set')
    _, attr = kind_attr
    collected: set[str] = set()
    for issue in store.in_projects(list(projects) if projects else None):
        value = getattr(issue, attr)
        if kind_attr[0] == MULTI_CATEGORICAL:
            collected.update(value)
        elif value is not None:
            collected.add(value)
    ordered = sorted(collected)
    return ValuePage(tuple(ordered[start_at : start_at + max_results]), len(ordered))


def all_unique_values(
    store: IssueStore,
    field: str,
    projects: Iterable[str] | None = None,
    page_size: int = DEFAULT_VALUE_PAGE_SIZE,
) -> tuple[str, ...]:
    """Full value set collected through the paginated interface."""
    projects = list(projects) if projects else None
    values: list[str] = []
    start = 0
    while True:
        page = unique_values(store, field, projects, start_at=start, max_results=page_size)
        values.extend(page.values)
        start += page_size
        if start >= page.total or not page.values:
            return tuple(values)
