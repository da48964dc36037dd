"""Tool registry bound to an agent episode.

The registry always carries the live search tool plus 15 inert issue-CRUD
stubs (present so the binding surface matches a full tool server, but
answering NotSupported). The value-resolution tool is bound only when the
episode config enables it; calling an unbound tool is an UnknownToolError,
which the loop records as a backend-class failure.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Callable, Iterable

from ..anchor.resolve import AnchorRequest, resolve
from ..jsonio import dump_json
from ..sim.search import DEFAULT_MAX_RESULTS, NotEnumerable, search
from ..sim.store import IssueStore
from .config import AgentConfig

JIRA_SEARCH = "jira_search"
SEARCH_VALUES = "search_jira_values"

# Inert stand-ins for the rest of a full Jira tool server's surface.
MCP_STUB_NAMES = (
    "jira_get_issue",
    "jira_create_issue",
    "jira_update_issue",
    "jira_delete_issue",
    "jira_add_comment",
    "jira_get_comments",
    "jira_get_transitions",
    "jira_transition_issue",
    "jira_get_projects",
    "jira_get_project",
    "jira_get_fields",
    "jira_get_user",
    "jira_assign_issue",
    "jira_add_attachment",
    "jira_get_sprints",
)


class UnknownToolError(KeyError):
    def __init__(self, name: str):
        self.tool = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"UnknownTool: {self.tool}"


@dataclass(frozen=True)
class ToolSpec:
    name: str
    description: str
    parameters: dict
    handler: Callable[[dict], str]


class ToolRegistry:
    def __init__(self, specs: Iterable[ToolSpec]):
        self._specs = {spec.name: spec for spec in specs}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._specs)

    def __contains__(self, name: str) -> bool:
        return name in self._specs

    def schemas(self) -> list[dict]:
        """Tool definitions in the shape sent to an LLM backend."""
        return [
            {"name": s.name, "description": s.description, "parameters": s.parameters}
            for s in self._specs.values()
        ]

    def execute(self, name: str, arguments: dict) -> str:
        spec = self._specs.get(name)
        if spec is None:
            raise UnknownToolError(name)
        return spec.handler(arguments)


def build_toolset(
    store: IssueStore, now: dt.datetime, cfg: AgentConfig, provider=None
) -> ToolRegistry:
    specs = [_jira_search_spec(store, now)]
    if cfg.anchor_enabled:
        specs.append(_search_values_spec(store, cfg, provider))
    specs.extend(_stub_spec(name) for name in MCP_STUB_NAMES)
    return ToolRegistry(specs)


def _jira_search_spec(store: IssueStore, now: dt.datetime) -> ToolSpec:
    def handler(arguments: dict) -> str:
        jql = arguments.get("jql")
        if not isinstance(jql, str) or not jql.strip():
            return dump_json({"signal": "error", "message": "missing required argument 'jql'"})
        max_results = arguments.get("maxResults", DEFAULT_MAX_RESULTS)
        if not isinstance(max_results, int) or max_results < 0:
            max_results = DEFAULT_MAX_RESULTS
        response = search(store, jql, now, max_results=max_results)
        return dump_json(response.to_json())

    return ToolSpec(
        JIRA_SEARCH,
        "Execute a JQL query against the Jira instance. Returns matching issue "
        "keys and the total count, or an error message for invalid JQL.",
        {
            "type": "object",
            "properties": {
                "jql": {"type": "string", "description": "The JQL query to run."},
                "maxResults": {"type": "integer", "description": "Page size (default 50)."},
            },
            "required": ["jql"],
        },
        handler,
    )


def _search_values_spec(store: IssueStore, cfg: AgentConfig, provider) -> ToolSpec:
    def handler(arguments: dict) -> str:
        field = arguments.get("field")
        query = arguments.get("query")
        if not isinstance(field, str) or not isinstance(query, str) or not query:
            return dump_json(
                {"error": "arguments 'field' and 'query' are required strings"}
            )
        projects = arguments.get("projects") or []
        if not isinstance(projects, list) or not all(isinstance(p, str) for p in projects):
            return dump_json({"error": "argument 'projects' must be a list of strings"})
        try:
            result = resolve(
                AnchorRequest(field, query, tuple(projects)),
                store,
                cfg.anchor_strategy,
                cfg.anchor_k,
                provider,
            )
        except NotEnumerable as exc:
            return dump_json({"error": str(exc)})
        return dump_json(result.to_json())

    return ToolSpec(
        SEARCH_VALUES,
        "Find the exact stored values of a categorical field that best match "
        "a natural-language mention. Returns the top matches with scores.",
        {
            "type": "object",
            "properties": {
                "field": {"type": "string", "description": "JQL field key, e.g. fixVersion."},
                "query": {"type": "string", "description": "Natural-language value mention."},
                "projects": {
                    "type": "array",
                    "items": {"type": "string"},
                    "description": "Optional project keys to scope the search.",
                },
            },
            "required": ["field", "query"],
        },
        handler,
    )


def _stub_spec(name: str) -> ToolSpec:
    def handler(arguments: dict) -> str:
        return dump_json({"error": "NotSupported", "tool": name})

    return ToolSpec(
        name,
        "Not supported by this read-only instance.",
        {"type": "object", "properties": {}},
        handler,
    )
