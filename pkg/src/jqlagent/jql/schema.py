"""Field schema for the simulated Jira instance.

The default schema describes the 15 queryable fields: their JQL keys,
kinds, allowed operators, enumerated value sets for closed fields, and
the truncation flags for fields whose value sets are too large to embed
in a prompt (component, fixVersion, affectedVersion, labels).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from types import MappingProxyType
from typing import Mapping

from .ast import Operator

# Field kinds
CATEGORICAL = "categorical"
MULTI_CATEGORICAL = "multi-categorical"
TEXT = "text"
DATE = "date"
USER = "user"

CATEGORICAL_OPS = (Operator.EQ, Operator.NEQ, Operator.IN, Operator.NOT_IN)
CATEGORICAL_EMPTY_OPS = CATEGORICAL_OPS + (Operator.IS_EMPTY, Operator.IS_NOT_EMPTY)
TEXT_FIELD_OPS = (Operator.CONTAINS, Operator.NOT_CONTAINS)
DATE_FIELD_OPS = (Operator.GTE, Operator.LTE, Operator.GT, Operator.LT, Operator.EQ)
USER_FIELD_OPS = (Operator.EQ, Operator.NEQ, Operator.IS_EMPTY, Operator.IS_NOT_EMPTY)

ISSUE_TYPES = (
    "Bug",
    "Epic",
    "User Story",
    "Task",
    "Sub-task",
    "Suggestion",
    "Improvement",
    "New Feature",
    "Documentation",
    "Technical task",
    "Change Request",
    "Pre-Release Bug",
    "Test",
    "Vulnerability",
    "Initiative",
)

PRIORITIES = (
    "P0: Blocker",
    "P1: Critical",
    "P2: Important",
    "P3: Somewhat important",
    "P4: Low",
    "P5: Not important",
    "Not Evaluated",
)

RESOLUTIONS = (
    "Fixed",
    "Duplicate",
    "Invalid",
    "Won't Do",
    "Done",
    "Incomplete",
    "Cannot Reproduce",
    "Out of scope",
    "Works as Intended",
)

PLATFORM_VALUES = ("Windows", "Linux", "macOS", "Android", "iOS", "WebAssembly")

DEFAULT_PROJECTS = ("QTBUG", "QDS", "PYSIDE")

# Natural-language mention -> canonical JQL key.
FIELD_ALIASES: Mapping[str, str] = MappingProxyType(
    {
        "issue type": "issuetype",
        "type": "issuetype",
        "components": "component",
        "component/s": "component",
        "fix version": "fixVersion",
        "fix version/s": "fixVersion",
        "affects version": "affectedVersion",
        "affects version/s": "affectedVersion",
        "affected version": "affectedVersion",
        "platform": "platforms",
        "label": "labels",
        "tags": "labels",
        "resolved": "resolutiondate",
        "resolution date": "resolutiondate",
        "title": "summary",
    }
)


@dataclass(frozen=True)
class FieldDef:
    key: str  # canonical JQL key, e.g. "fixVersion"
    name: str  # display name
    kind: str
    operators: tuple[Operator, ...]
    values: tuple[str, ...] = ()  # enumerated values for closed fields
    truncated: bool = False  # value set too large to enumerate in a prompt

    @property
    def enumerable(self) -> bool:
        return self.kind in (CATEGORICAL, MULTI_CATEGORICAL)

    @property
    def closed(self) -> bool:
        """Whether stated values form a closed set value-validation enforces."""
        return self.enumerable and bool(self.values) and not self.truncated


@dataclass(frozen=True)
class InstanceSchema:
    fields: tuple[FieldDef, ...]
    aliases: Mapping[str, str] = dc_field(default_factory=dict)
    projects: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_by_key", {f.key.casefold(): f for f in self.fields}
        )

    def field(self, key: str) -> FieldDef | None:
        return self._by_key.get(key.casefold())

    def with_projects(self, projects: tuple[str, ...]) -> "InstanceSchema":
        fields = tuple(
            FieldDef(f.key, f.name, f.kind, f.operators, projects, f.truncated)
            if f.key == "project"
            else f
            for f in self.fields
        )
        return InstanceSchema(fields, self.aliases, projects)

    def to_json(self) -> dict:
        """Schema document used by the HTTP /schema endpoint and the prompt."""
        rendered = []
        for f in self.fields:
            entry: dict = {
                "key": f.key,
                "name": f.name,
                "kind": f.kind,
                "operators": [op.value for op in f.operators],
            }
            if f.truncated:
                entry["valuesTruncated"] = True
            elif f.values:
                entry["values"] = list(f.values)
            rendered.append(entry)
        return {
            "fields": rendered,
            "aliases": dict(self.aliases),
            "projects": list(self.projects),
        }


def default_schema(projects: tuple[str, ...] = DEFAULT_PROJECTS) -> InstanceSchema:
    fields = (
        FieldDef("issuetype", "Issue Type", CATEGORICAL, CATEGORICAL_OPS, ISSUE_TYPES),
        FieldDef("project", "Project", CATEGORICAL, CATEGORICAL_OPS, projects),
        FieldDef("component", "Components", MULTI_CATEGORICAL, CATEGORICAL_EMPTY_OPS, truncated=True),
        FieldDef("platforms", "Platforms", MULTI_CATEGORICAL, CATEGORICAL_EMPTY_OPS, PLATFORM_VALUES),
        FieldDef("labels", "Labels", MULTI_CATEGORICAL, CATEGORICAL_EMPTY_OPS, truncated=True),
        FieldDef("fixVersion", "Fix Version/s", MULTI_CATEGORICAL, CATEGORICAL_EMPTY_OPS, truncated=True),
        FieldDef("affectedVersion", "Affects Version/s", MULTI_CATEGORICAL, CATEGORICAL_EMPTY_OPS, truncated=True),
        FieldDef("resolution", "Resolution", CATEGORICAL, CATEGORICAL_EMPTY_OPS, RESOLUTIONS),
        FieldDef("priority", "Priority", CATEGORICAL, CATEGORICAL_EMPTY_OPS, PRIORITIES),
        FieldDef("summary", "Summary", TEXT, TEXT_FIELD_OPS),
        FieldDef("description", "Description", TEXT, TEXT_FIELD_OPS),
        FieldDef("assignee", "Assignee", USER, USER_FIELD_OPS),
        FieldDef("created", "Created", DATE, DATE_FIELD_OPS),
        FieldDef("updated", "Updated", DATE, DATE_FIELD_OPS),
        FieldDef("resolutiondate", "Resolved", DATE, DATE_FIELD_OPS),
    )
    return InstanceSchema(fields, FIELD_ALIASES, projects)


DEFAULT_SCHEMA = default_schema()

# Casefolded JQL key -> (kind, Issue attribute name). Fixed map used by the
# evaluator and the store, independent of any bound schema instance.
FIELD_BINDINGS: Mapping[str, tuple[str, str]] = MappingProxyType(
    {
        "issuetype": (CATEGORICAL, "issuetype"),
        "project": (CATEGORICAL, "project"),
        "component": (MULTI_CATEGORICAL, "components"),
        "platforms": (MULTI_CATEGORICAL, "platforms"),
        "labels": (MULTI_CATEGORICAL, "labels"),
        "fixversion": (MULTI_CATEGORICAL, "fix_versions"),
        "affectedversion": (MULTI_CATEGORICAL, "affected_versions"),
        "resolution": (CATEGORICAL, "resolution"),
        "priority": (CATEGORICAL, "priority"),
        "summary": (TEXT, "summary"),
        "description": (TEXT, "description"),
        "assignee": (USER, "assignee"),
        "created": (DATE, "created"),
        "updated": (DATE, "updated"),
        "resolutiondate": (DATE, "resolved"),
    }
)

_CANONICAL_CASE = {f.key.casefold(): f.key for f in DEFAULT_SCHEMA.fields}


def canonical_field_case(field: str) -> str:
    """Canonical casing for known fields (e.g. fixversion -> fixVersion)."""
    return _CANONICAL_CASE.get(field.casefold(), field)
