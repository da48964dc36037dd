"""Rule-based failure classification into six categories.

Precedence is fixed and documented (reports label the column
"auto-taxonomy"): an incorrect outcome gets the first matching label of

  1. AgentError            - no/invalid query, recursion limit, backend failure
  2. TextFieldSelection    - equal after swapping summary <-> description
  3. VersionConfusion      - equal after swapping affectedVersion <-> fixVersion
  4. IssueTypeInterpretation - a gold text-search term surfaced as a predicted
                               issuetype value (or the inverse)
  5. MissingFields         - predicted clauses are a proper subset of gold's
  6. Other

"Equal" here means equality of canonicalized clause multisets: fields
casefolded, values casefolded and sorted, singleton IN collapsed to =,
so semantics-preserving rewrites never mask the one real difference.
"""

from __future__ import annotations

from collections import Counter

from ..jql import And, Clause, JqlQuery, Node, Operator, Or, to_jql

ISSUE_TYPE_INTERPRETATION = "IssueTypeInterpretation"
TEXT_FIELD_SELECTION = "TextFieldSelection"
VERSION_CONFUSION = "VersionConfusion"
MISSING_FIELDS = "MissingFields"
AGENT_ERROR = "AgentError"
OTHER = "Other"

TAXONOMY_LABELS = (
    ISSUE_TYPE_INTERPRETATION,
    TEXT_FIELD_SELECTION,
    VERSION_CONFUSION,
    MISSING_FIELDS,
    AGENT_ERROR,
    OTHER,
)

_TEXT_SWAP = {"summary": "description", "description": "summary"}
_VERSION_SWAP = {"affectedversion": "fixversion", "fixversion": "affectedversion"}


def classify_failure(
    gold: JqlQuery,
    predicted: JqlQuery | None,
    *,
    agent_failure: bool = False,
) -> str:
    """Label one incorrect outcome. predicted=None means no usable query."""
    if agent_failure or predicted is None:
        return AGENT_ERROR
    if _canonical(swap_fields(predicted, _TEXT_SWAP)) == _canonical(gold):
        return TEXT_FIELD_SELECTION
    if _canonical(swap_fields(predicted, _VERSION_SWAP)) == _canonical(gold):
        return VERSION_CONFUSION
    if _issue_type_interpretation(gold, predicted):
        return ISSUE_TYPE_INTERPRETATION
    if _missing_fields(gold, predicted):
        return MISSING_FIELDS
    return OTHER


def swap_fields(query: JqlQuery, mapping: dict[str, str]) -> JqlQuery:
    return JqlQuery(_swap_node(query.root, mapping))


def _swap_node(node: Node, mapping: dict[str, str]) -> Node:
    if isinstance(node, Clause):
        target = mapping.get(node.field)
        if target is None:
            return node
        return Clause(target, node.op, node.values, node.date)
    children = tuple(_swap_node(child, mapping) for child in node.children)
    return And(children) if isinstance(node, And) else Or(children)


def _canonical(query: JqlQuery):
    """Comparable form: clause multiset for conjunctive trees, else the
    whole canonicalized rendering."""
    clauses = _conjunctive_clauses(query.root)
    if clauses is not None:
        return ("and", Counter(_clause_key(c) for c in clauses))
    return ("tree", to_jql(JqlQuery(_normalize_node(query.root))))


def _conjunctive_clauses(node: Node) -> list[Clause] | None:
    if isinstance(node, Clause):
        return [node]
    if isinstance(node, Or):
        return None
    out: list[Clause] = []
    for child in node.children:
        sub = _conjunctive_clauses(child)
        if sub is None:
            return None
        out.extend(sub)
    return out


def _clause_key(clause: Clause) -> tuple:
    normalized = _normalize_clause(clause)
    return (
        normalized.field,
        normalized.op.value,
        tuple(sorted(v.casefold() for v in normalized.values)),
        normalized.date,
    )


def _normalize_clause(clause: Clause) -> Clause:
    op = clause.op
    # Singleton IN is semantically =, NOT IN is !=.
    if op is Operator.IN and len(clause.values) == 1:
        op = Operator.EQ
    elif op is Operator.NOT_IN and len(clause.values) == 1:
        op = Operator.NEQ
    return Clause(clause.field, op, clause.values, clause.date)


def _normalize_node(node: Node) -> Node:
    if isinstance(node, Clause):
        normalized = _normalize_clause(node)
        return Clause(
            normalized.field,
            normalized.op,
            tuple(sorted(v.casefold() for v in normalized.values)),
            normalized.date,
        )
    children = tuple(
        sorted((_normalize_node(c) for c in node.children), key=to_jql)
    )
    return And(children) if isinstance(node, And) else Or(children)


def _text_terms(query: JqlQuery) -> set[str]:
    return {
        clause.values[0].casefold()
        for clause in query.clauses()
        if clause.op in (Operator.CONTAINS, Operator.NOT_CONTAINS)
    }


def _issuetype_values(query: JqlQuery) -> set[str]:
    out: set[str] = set()
    for clause in query.clauses():
        if clause.field == "issuetype" and clause.op in (
            Operator.EQ,
            Operator.IN,
            Operator.NEQ,
            Operator.NOT_IN,
        ):
            out.update(v.casefold() for v in clause.values)
    return out


def _terms_match(term: str, value: str) -> bool:
    # "bugs" ~ "Bug": casefold equality, tolerating one plural 's'.
    if term == value:
        return True
    return term == value + "s" or value == term + "s"


def _issue_type_interpretation(gold: JqlQuery, predicted: JqlQuery) -> bool:
    gold_terms = _text_terms(gold)
    predicted_types = _issuetype_values(predicted)
    if any(_terms_match(t, v) for t in gold_terms for v in predicted_types):
        return True
    predicted_terms = _text_terms(predicted)
    gold_types = _issuetype_values(gold)
    return any(_terms_match(t, v) for t in predicted_terms for v in gold_types)


def _missing_fields(gold: JqlQuery, predicted: JqlQuery) -> bool:
    gold_clauses = _conjunctive_clauses(gold.root)
    predicted_clauses = _conjunctive_clauses(predicted.root)
    if gold_clauses is None or predicted_clauses is None:
        return False
    gold_counter = Counter(_clause_key(c) for c in gold_clauses)
    predicted_counter = Counter(_clause_key(c) for c in predicted_clauses)
    if predicted_counter == gold_counter:
        return False
    # Proper subset: nothing extra, at least one clause omitted.
    return not (predicted_counter - gold_counter) and bool(gold_counter - predicted_counter)
