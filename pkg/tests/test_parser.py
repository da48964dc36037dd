import random

import pytest
from hypothesis import given, settings, strategies as st

from jqlagent.jql import (
    And,
    Clause,
    JqlQuery,
    JqlSyntaxError,
    Operator,
    Or,
    RelativeDate,
    parse,
    to_jql,
)
from jqlagent.jql.ast import AbsoluteDate, DateFunction

from queryg import random_ast

EXAMPLE_QUERIES = [
    'updated <= -90d AND issuetype in ("Epic")',
    'created >= -4w AND assignee is EMPTY AND issuetype in ("User Story")',
    'updated >= "2025-01-01" AND issuetype in ("Bug") AND priority is not EMPTY AND description ~ "crash"',
    'updated <= "2025-01-01" AND description ~ "error" AND affectedVersion is not EMPTY '
    'AND resolution is EMPTY AND issuetype in ("Epic", "User Story", "Task", "Sub-task")',
    'project IN ("QTBUG") AND component IN ("Core: QString and Unicode")',
]


def test_two_clause_example_ast():
    q = parse('updated <= -90d AND issuetype in ("Epic")')
    assert q.root == And(
        (
            Clause("updated", Operator.LTE, date=RelativeDate(-90, "d")),
            Clause("issuetype", Operator.IN, values=("Epic",)),
        )
    )


def test_single_empty_clause():
    q = parse("resolution is EMPTY")
    assert q.root == Clause("resolution", Operator.IS_EMPTY)
    assert q.clause_count == 1


def test_or_subtree_preserved():
    q = parse('project = QTBUG AND (summary ~ "string" OR summary ~ "unicode")')
    assert isinstance(q.root, And)
    assert isinstance(q.root.children[1], Or)
    assert q.clause_count == 3


def test_keywords_and_fields_case_insensitive():
    a = parse('PROJECT = QTBUG and ISSUETYPE In ("Epic")')
    b = parse('project = QTBUG AND issuetype IN ("Epic")')
    assert a == b


def test_unquoted_value_canonicalized():
    q = parse("project = QTBUG")
    assert q.root == Clause("project", Operator.EQ, values=("QTBUG",))
    assert to_jql(q) == 'project = "QTBUG"'


def test_quoted_strings_with_spaces_and_escapes():
    q = parse('summary ~ "say \\"hi\\" \\\\ done"')
    assert q.root.values == ('say "hi" \\ done',)
    assert parse(to_jql(q)) == q


def test_date_function_value():
    q = parse("created >= startofday()")
    assert q.root == Clause("created", Operator.GTE, date=DateFunction("startOfDay"))
    assert to_jql(q) == "created >= startOfDay()"


def test_quoted_absolute_date_classified():
    q = parse('created >= "2025-01-01"')
    assert isinstance(q.root.date, AbsoluteDate)


def test_malformed_date_stays_string():
    q = parse('labels = "2025-13-45"')
    assert q.root.values == ("2025-13-45",)


def test_text_operand_never_date_classified():
    q = parse('summary ~ "2025-01-01"')
    assert q.root.values == ("2025-01-01",)
    assert q.root.date is None


@pytest.mark.parametrize(
    "text",
    [
        "",
        "   ",
        "project =",
        'project IN ()',
        "project ~",
        "AND project = X",
        "project = X trailing",
        'summary ~ "unterminated',
        "created >= bogusFn()",
        "project == X",
        "(project = X",
        "project NOT LIKE X",
    ],
)
def test_syntax_errors(text):
    with pytest.raises(JqlSyntaxError):
        parse(text)


def test_syntax_error_carries_offset_and_hint():
    with pytest.raises(JqlSyntaxError) as err:
        parse("project = QTBUG AND AND x = 1")
    assert err.value.offset == 20
    assert "expected" in str(err.value)


@pytest.mark.parametrize("jql", EXAMPLE_QUERIES)
def test_example_queries_reprint_reparse(jql):
    q = parse(jql)
    printed = to_jql(q)
    assert parse(printed) == q


def test_round_trip_500_random_asts():
    rng = random.Random(1234)
    for _ in range(500):
        q = random_ast(rng)
        assert parse(to_jql(q)) == q


@given(st.integers(min_value=0, max_value=10**9))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(seed):
    q = random_ast(random.Random(seed))
    assert parse(to_jql(q)) == q


def test_nested_parens_tree_shape():
    q = parse("(a = 1 AND b = 2) AND c = 3")
    assert isinstance(q.root, And)
    assert isinstance(q.root.children[0], And)
    flat = parse("a = 1 AND b = 2 AND c = 3")
    assert q != flat
    assert parse(to_jql(q)) == q
    assert parse(to_jql(flat)) == flat
