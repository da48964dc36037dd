"""Schema-grounded system prompt construction.

The prompt carries four blocks: core instructions, field disambiguation
rules, text-search guidance, and the embedded JSON schema with truncated
fields annotated. The tool-usage block and every mention of the value
search tool appear only when the config enables it; with the tool
disabled, the truncated fields' valuesNote switches to the no-tool text.
"""

from __future__ import annotations

import json

from ..jql.schema import InstanceSchema
from .config import (
    AgentConfig,
    EXPERIMENT2_WITH_ANCHOR,
    EXPERIMENT2_WITHOUT_ANCHOR,
)
from .tools import JIRA_SEARCH, SEARCH_VALUES

VALUES_NOTE_WITH_TOOL = f"Use {SEARCH_VALUES} to find exact values"
VALUES_NOTE_WITHOUT_TOOL = "use exact value from user query"

_CORE = f"""You are a Jira assistant. When users ask questions about Jira issues:

1. Generate valid JQL (Jira Query Language) using only fields from the SCHEMA below.
2. ALWAYS use `{JIRA_SEARCH}` to execute the final query - never return JQL as plain text.
3. Don't ask clarifying questions - make reasonable assumptions when details are ambiguous."""

_FIELD_RULES = """FIELD RULES (for ambiguous natural language):

Priority:
- Hierarchy: P0 (Blocker) > P1 (Critical) > P2 (Important) > P3 (Somewhat important) > P4 (Low) > P5 (Not important)
- Exact value names ("P4", "Critical") -> match exactly
- "high priority" / "urgent" -> typically P1 or P2
- "low priority" / "minor" -> typically P4 or P5

Resolution:
- "unresolved" / "open" / "not resolved" -> resolution IS EMPTY
- "resolved" / "closed" / "completed" -> resolution IS NOT EMPTY

Version fields:
- affectedVersion = where the problem was FOUND
- fixVersion = where the fix is TARGETED

Labels vs Component:
- labels = user-applied tags (e.g., tech-debt, needs-triage)
- component = code modules/subsystems (e.g., Network: HTTP, Build tools: Other)"""

_TEXT_SEARCH = f"""TEXT SEARCH (choosing between summary and description):

Step 1: Generate BOTH complete JQL options:
  - JQL A (summary): [full JQL using summary ~ "term"]
  - JQL B (description): [full JQL using description ~ "term"]

Step 2: Compare both to the user's query:
  - summary = short titles, issue names, keywords
  - description = detailed explanations, logs, technical details

Step 3: Use the better JQL in {JIRA_SEARCH}. Never use both fields together."""

_TOOL_USAGE = f"""TOOL USAGE ({SEARCH_VALUES}):

When the user mentions a SPECIFIC value but the exact stored name is unclear:
1. Call {SEARCH_VALUES} to find the exact value name
2. Then call {JIRA_SEARCH} with that exact value in the JQL

CALL {SEARCH_VALUES} when:
- Version numbers: "5.0", "3.2.1" -> search fixVersion/affectedVersion
- Technical terms that could be components: "Networking", "Payments"
- Tag-like terms: "tech-debt", "flaky-test" -> search labels

DO NOT use it for existence checks ("issues without labels" -> labels IS EMPTY)."""


def build_system_prompt(schema: InstanceSchema, cfg: AgentConfig) -> str:
    sections = [_CORE, _FIELD_RULES, _TEXT_SEARCH]
    if cfg.anchor_enabled:
        sections.append(_TOOL_USAGE)
    sections.append("SCHEMA:\n" + json.dumps(_schema_document(schema, cfg), indent=2))
    return "\n\n".join(sections)


def _schema_document(schema: InstanceSchema, cfg: AgentConfig) -> dict:
    document = schema.to_json()
    if _scoped(cfg):
        keep = {"project", cfg.focus_field.casefold()}
        document["fields"] = [
            f for f in document["fields"] if f["key"].casefold() in keep
        ]
        document["aliases"] = {
            mention: key
            for mention, key in document["aliases"].items()
            if key.casefold() in keep
        }
    note = VALUES_NOTE_WITH_TOOL if cfg.anchor_enabled else VALUES_NOTE_WITHOUT_TOOL
    for entry in document["fields"]:
        if entry.get("valuesTruncated"):
            entry["valuesNote"] = note
    return document


def _scoped(cfg: AgentConfig) -> bool:
    return cfg.focus_field is not None and cfg.prompt_variant in (
        EXPERIMENT2_WITH_ANCHOR,
        EXPERIMENT2_WITHOUT_ANCHOR,
    )
