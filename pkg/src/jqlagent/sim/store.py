"""In-memory issue store and the JSONL fixture format.

One issue per line, field names exactly as the wire schema below; set
fields are JSON arrays, timestamps are RFC 3339 strings, and absent
optional fields are simply omitted. The store is immutable after load
and safe for unlimited concurrent readers.
"""

from __future__ import annotations

import datetime as dt
import io
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from ..jql.schema import InstanceSchema, default_schema


class DuplicateKey(ValueError):
    """Two fixture records share one issue key."""


class MalformedRecord(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Issue:
    key: str
    project: str
    summary: str = ""
    description: str = ""
    issuetype: str | None = None
    priority: str | None = None
    resolution: str | None = None
    assignee: str | None = None
    components: frozenset[str] = frozenset()
    labels: frozenset[str] = frozenset()
    fix_versions: frozenset[str] = frozenset()
    affected_versions: frozenset[str] = frozenset()
    platforms: frozenset[str] = frozenset()
    created: dt.datetime | None = None
    updated: dt.datetime | None = None
    resolved: dt.datetime | None = None


# Wire key -> Issue attribute, in canonical record order.
_SCALARS = ("issuetype", "priority", "resolution", "assignee")
_SETS = {
    "components": "components",
    "labels": "labels",
    "fixVersions": "fix_versions",
    "affectedVersions": "affected_versions",
    "platforms": "platforms",
}
_TIMESTAMPS = ("created", "updated", "resolved")

_KEY_RE = re.compile(r"^([A-Z][A-Z0-9]*)-(\d+)$")


class IssueStore:
    """Read-only issue collection indexed by key and by project."""

    def __init__(self, issues: Iterable[Issue]):
        ordered = sorted(issues, key=lambda i: _key_sort(i.key))
        by_key: dict[str, Issue] = {}
        for issue in ordered:
            if issue.key in by_key:
                raise DuplicateKey(f"duplicate issue key {issue.key!r}")
            by_key[issue.key] = issue
        self.issues: tuple[Issue, ...] = tuple(ordered)
        self.by_key = by_key
        self.projects: tuple[str, ...] = tuple(
            sorted({i.project for i in self.issues})
        )
        self.schema: InstanceSchema = default_schema(self.projects)

    def __len__(self) -> int:
        return len(self.issues)

    def in_projects(self, projects: Iterable[str] | None) -> Iterator[Issue]:
        scope = {p.casefold() for p in projects} if projects else None
        for issue in self.issues:
            if scope is None or issue.project.casefold() in scope:
                yield issue


def _key_sort(key: str) -> tuple[str, int]:
    m = _KEY_RE.match(key)
    if not m:
        return (key, 0)
    return (m.group(1), int(m.group(2)))


def issue_from_record(record: dict, line: int = 0) -> Issue:
    if not isinstance(record, dict):
        raise MalformedRecord(line, "record is not a JSON object")
    try:
        key = record["key"]
        project = record["project"]
    except KeyError as exc:
        raise MalformedRecord(line, f"missing required field {exc.args[0]!r}") from None
    if not isinstance(key, str) or not _KEY_RE.match(key):
        raise MalformedRecord(line, f"bad issue key {key!r}")
    if not isinstance(project, str) or not key.startswith(project + "-"):
        raise MalformedRecord(line, f"key {key!r} is not prefixed by project {project!r}")

    kwargs: dict = {"key": key, "project": project}
    for name in ("summary", "description"):
        value = record.get(name, "")
        if not isinstance(value, str):
            raise MalformedRecord(line, f"field {name!r} must be a string")
        kwargs[name] = value
    for name in _SCALARS:
        value = record.get(name)
        if value is not None and not isinstance(value, str):
            raise MalformedRecord(line, f"field {name!r} must be a string or absent")
        kwargs[name] = value
    for wire, attr in _SETS.items():
        value = record.get(wire, [])
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise MalformedRecord(line, f"field {wire!r} must be an array of strings")
        kwargs[attr] = frozenset(value)
    for name in _TIMESTAMPS:
        raw = record.get(name)
        if raw is None:
            kwargs[name] = None
            continue
        try:
            kwargs[name] = parse_timestamp(raw)
        except (TypeError, ValueError):
            raise MalformedRecord(line, f"field {name!r} is not an RFC 3339 timestamp: {raw!r}")

    if kwargs["created"] and kwargs["updated"] and kwargs["created"] > kwargs["updated"]:
        raise MalformedRecord(line, f"{key}: created is after updated")
    return Issue(**kwargs)


def issue_to_record(issue: Issue) -> dict:
    record: dict = {"key": issue.key, "project": issue.project}
    for name in _SCALARS:
        value = getattr(issue, name)
        if value is not None:
            record[name] = value
    for wire, attr in _SETS.items():
        values = getattr(issue, attr)
        if values:
            record[wire] = sorted(values)
    record["summary"] = issue.summary
    record["description"] = issue.description
    for name in _TIMESTAMPS:
        value = getattr(issue, name)
        if value is not None:
            record[name] = format_timestamp(value)
    return record


def parse_timestamp(raw: str) -> dt.datetime:
    value = dt.datetime.fromisoformat(raw.replace("Z", "+00:00"))
    if value.tzinfo is None:
        value = value.replace(tzinfo=dt.timezone.utc)
    return value.astimezone(dt.timezone.utc)


def format_timestamp(value: dt.datetime) -> str:
    return value.astimezone(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def load_fixture(source: str | Path | io.TextIOBase) -> IssueStore:
    """Load a JSONL issue fixture from a path or open text stream."""
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_fixture(fh)
    issues: list[Issue] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source, start=1):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(lineno, f"invalid JSON: {exc}") from None
        issue = issue_from_record(record, lineno)
        if issue.key in seen:
            raise DuplicateKey(f"line {lineno}: duplicate issue key {issue.key!r}")
        seen.add(issue.key)
        issues.append(issue)
    return IssueStore(issues)


def save_fixture(records: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
