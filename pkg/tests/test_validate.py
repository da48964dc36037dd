import pytest

from jqlagent.jql import DEFAULT_SCHEMA, parse, validate
from jqlagent.jql.validate import (
    BAD_DATE_VALUE,
    OPERATOR_NOT_ALLOWED,
    UNKNOWN_FIELD,
    VALUE_NOT_ALLOWED,
)


def codes(jql):
    return [v.code for v in validate(parse(jql), DEFAULT_SCHEMA).violations]


def test_valid_two_clause_query_empty_report():
    report = validate(parse('project = QTBUG AND issuetype IN ("Epic")'), DEFAULT_SCHEMA)
    assert report.ok
    assert report.violations == ()


def test_unknown_field():
    report = validate(parse("foo = 1"), DEFAULT_SCHEMA)
    assert [v.code for v in report.violations] == [UNKNOWN_FIELD]
    assert 'foo' in report.describe()


def test_contains_disallowed_on_categorical():
    assert codes('issuetype ~ "Bug"') == [OPERATOR_NOT_ALLOWED]


def test_value_outside_closed_enumeration():
    assert codes('issuetype = "Gizmo"') == [VALUE_NOT_ALLOWED]
    assert codes('priority IN ("P1: Critical", "P9: Nope")') == [VALUE_NOT_ALLOWED]
    assert codes('resolution = "Fixed"') == []


def test_closed_value_match_is_case_insensitive():
    assert codes('issuetype = "epic"') == []


def test_truncated_fields_accept_any_value():
    assert codes('component = "Anything Goes"') == []
    assert codes('fixVersion IN ("7.0")') == []


def test_date_field_requires_date_operand():
    assert codes('created >= "hello"') == [BAD_DATE_VALUE]
    assert codes("created >= -5d") == []
    assert codes('created >= "2025-01-01"') == []
    assert codes("created >= startOfMonth()") == []


def test_date_shaped_value_fine_on_non_date_field():
    assert codes('labels = "2025-01-01"') == []


def test_empty_check_disallowed_on_always_present_fields():
    assert codes("project IS EMPTY") == [OPERATOR_NOT_ALLOWED]
    assert codes("issuetype IS EMPTY") == [OPERATOR_NOT_ALLOWED]
    assert codes("resolution IS EMPTY") == []
    assert codes("priority IS NOT EMPTY") == []


def test_multiple_violations_all_reported():
    report = validate(parse('foo = 1 AND issuetype ~ "x"'), DEFAULT_SCHEMA)
    assert len(report.violations) == 2


def test_violation_names_the_clause():
    report = validate(parse('project = QTBUG AND bar = 2'), DEFAULT_SCHEMA)
    assert report.violations[0].clause == 'bar = "2"'
