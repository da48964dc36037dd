"""The four NL-variant prompt templates, plus deterministic stand-in NL.

The templates are benchmark data carried verbatim; filling one with a
gold query produces the prompt a generative model would answer to write
that variant's natural language. Live generation needs such a model, so
checked-in datasets instead carry deterministic synthesized NL from
render_nl below - readable, seed-free, and good enough for harness tests
that never interpret the text.
"""

from __future__ import annotations

from ..jql import (
    AbsoluteDate,
    Clause,
    DateFunction,
    JqlQuery,
    Operator,
    RelativeDate,
    canonical_field_case,
    parse,
)
from .items import LONG_NL, SEM_EXACT, SEM_SIMILAR, SHORT_NL

LONG_NL_TEMPLATE = """Task: Convert a JQL query into a longer natural language sentence
or paragraph. Include context or reasoning that someone might give
when discussing the query aloud. Vary the style, making some
responses conversational or explanatory.

Examples:
1. JQL: project = QTBUG AND issuetype = Bug AND status = "Open"
   NL: I'm reviewing all open bugs in the QTBUG project so we
       can track unresolved issues before the next sprint.

2. JQL: created >= -5d AND project = PYSIDE
   NL: I want to look at issues reported in the last 5 days in
       the PYSIDE project to see what's newly come in.

Given this JQL: {jql}

OUTPUT FORMAT:
Only respond with the natural language.
Do not include any additional text or explanations."""

SHORT_NL_TEMPLATE = """Task: Convert a JQL query into a concise natural language phrase,
just a few words. Prefer minimal and direct expressions.

Examples:
1. JQL: project = QDS AND priority = "P0: Blocker"
   NL: QDS blockers

2. JQL: resolution = Duplicate
   NL: Duplicate issues

Given this JQL: {jql}

OUTPUT FORMAT:
Only respond with the natural language.
Do not include any additional text or explanations."""

SEM_SIMILAR_TEMPLATE = """Task: Convert the following JQL query into a natural language
sentence that expresses the same intent, but uses different wording.
Do not directly reuse JQL field names or values. Instead, rephrase
using synonyms, conversational language, or implied meaning. Be
creative, but maintain accuracy.

Examples:
1. JQL: status = "Open"
   NL: Tickets that are still in progress

2. JQL: resolution = Duplicate
   NL: Issues already reported before

Given this JQL: {jql}

OUTPUT FORMAT:
Only respond with the natural language.
Do not include any additional text or explanations."""

SEM_EXACT_TEMPLATE = """Task: Translate a JQL query into a natural language sentence that
mirrors the JQL structure and wording as closely as possible. Do not
paraphrase or add unnecessary context. Use literal conversions of
fields and values, preserving the order and logic.

Examples:
1. JQL: project = QTBUG AND issuetype = Bug AND status = "Open"
   NL: Project is QTBUG, issue type is Bug, and status is Open

2. JQL: priority = "P1: Critical"
   NL: Priority is P1: Critical

Given this JQL: {jql}

OUTPUT FORMAT:
Only respond with the natural language.
Do not include any additional text or explanations."""

TEMPLATES = {
    LONG_NL: LONG_NL_TEMPLATE,
    SHORT_NL: SHORT_NL_TEMPLATE,
    SEM_EXACT: SEM_EXACT_TEMPLATE,
    SEM_SIMILAR: SEM_SIMILAR_TEMPLATE,
}


def render_variant_prompt(gold_jql: str, variant: str) -> str:
    """Fill a variant's template with the gold query, verbatim."""
    template = TEMPLATES.get(variant)
    if template is None:
        raise ValueError(f"unknown variant {variant!r}")
    return template.replace("{jql}", gold_jql)


# ---------------------------------------------------------------------------
# Deterministic stand-in NL for checked-in desk datasets.

_FIELD_PHRASES = {
    "issuetype": "issue type",
    "project": "project",
    "component": "component",
    "platforms": "platform",
    "labels": "label",
    "fixversion": "fix version",
    "affectedversion": "affected version",
    "resolution": "resolution",
    "priority": "priority",
    "summary": "summary",
    "description": "description",
    "assignee": "assignee",
    "created": "created",
    "updated": "updated",
    "resolutiondate": "resolved date",
}

_SIMILAR_PHRASES = {
    "issuetype": "kind of work item",
    "project": "initiative",
    "component": "area of the code",
    "platforms": "operating system",
    "labels": "tag",
    "fixversion": "release it is planned for",
    "affectedversion": "release where it was seen",
    "resolution": "closing state",
    "priority": "urgency",
    "summary": "title",
    "description": "details",
    "assignee": "person working on it",
    "created": "reported",
    "updated": "last touched",
    "resolutiondate": "closed",
}


def render_nl(item_gold_jql: str, variant: str) -> str:
    """Deterministic NL rendering of a gold query for one variant."""
    query = parse(item_gold_jql)
    phrases = [_clause_phrase(c, variant) for c in query.clauses()]
    if variant == SHORT_NL:
        return "; ".join(phrases)
    if variant == SEM_EXACT:
        return _join(phrases).capitalize()
    if variant == LONG_NL:
        return (
            "I'm looking for work items where "
            + _join(phrases)
            + ", so we can review them together."
        )
    return "Show everything whose " + _join(phrases) + "."


def _join(phrases: list[str]) -> str:
    if len(phrases) == 1:
        return phrases[0]
    return ", ".join(phrases[:-1]) + ", and " + phrases[-1]


def _clause_phrase(clause: Clause, variant: str) -> str:
    names = _SIMILAR_PHRASES if variant == SEM_SIMILAR else _FIELD_PHRASES
    name = names.get(clause.field, canonical_field_case(clause.field))
    op = clause.op
    if op is Operator.IS_EMPTY:
        return f"{name} is empty"
    if op is Operator.IS_NOT_EMPTY:
        return f"{name} is not empty"
    operand = " or ".join(clause.operand_strings())
    if clause.date is not None:
        operand = _date_phrase(clause)
    if op in (Operator.EQ, Operator.IN):
        return f"{name} is {operand}"
    if op in (Operator.NEQ, Operator.NOT_IN):
        return f"{name} is not {operand}"
    if op is Operator.CONTAINS:
        return f"{name} mentions {operand}"
    if op is Operator.NOT_CONTAINS:
        return f"{name} does not mention {operand}"
    if op is Operator.GTE:
        return f"{name} on or after {operand}"
    if op is Operator.LTE:
        return f"{name} on or before {operand}"
    if op is Operator.GT:
        return f"{name} after {operand}"
    return f"{name} before {operand}"


def _date_phrase(clause: Clause) -> str:
    date = clause.date
    if isinstance(date, RelativeDate):
        unit = "days" if date.unit == "d" else "weeks"
        return f"{abs(date.amount)} {unit} ago"
    if isinstance(date, AbsoluteDate):
        return date.value.isoformat()
    assert isinstance(date, DateFunction)
    return {
        "startOfDay": "the start of today",
        "startOfWeek": "the start of this week",
        "startOfMonth": "the start of this month",
        "startOfYear": "the start of this year",
    }[date.name]
