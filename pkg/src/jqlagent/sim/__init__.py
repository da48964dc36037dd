"""Simulated Jira instance: issue store, search, value enumeration, HTTP."""

from .search import (
    DEFAULT_MAX_RESULTS,
    DEFAULT_VALUE_PAGE_SIZE,
    ERROR,
    NON_EMPTY,
    NotEnumerable,
    SearchResponse,
    ValuePage,
    ZERO_RESULTS,
    all_unique_values,
    search,
    unique_values,
)
from .server import BindFailure, ServerHandle, serve_http
from .store import (
    DuplicateKey,
    Issue,
    IssueStore,
    MalformedRecord,
    format_timestamp,
    issue_from_record,
    issue_to_record,
    load_fixture,
    parse_timestamp,
    save_fixture,
)

__all__ = [
    "BindFailure",
    "DEFAULT_MAX_RESULTS",
    "DEFAULT_VALUE_PAGE_SIZE",
    "DuplicateKey",
    "ERROR",
    "Issue",
    "IssueStore",
    "MalformedRecord",
    "NON_EMPTY",
    "NotEnumerable",
    "SearchResponse",
    "ServerHandle",
    "ValuePage",
    "ZERO_RESULTS",
    "all_unique_values",
    "format_timestamp",
    "issue_from_record",
    "issue_to_record",
    "load_fixture",
    "parse_timestamp",
    "save_fixture",
    "search",
    "serve_http",
    "unique_values",
]
