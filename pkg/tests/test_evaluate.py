import datetime as dt
import random

import pytest

from jqlagent.jql import evaluate, parse
from jqlagent.jql.evaluate import resolve_date, text_contains
from jqlagent.jql.ast import DateFunction, RelativeDate
from jqlagent.sim.store import Issue

UTC = dt.timezone.utc
NOW = dt.datetime(2025, 7, 1, tzinfo=UTC)


def make_issue(**kwargs):
    defaults = dict(key="QTBUG-1", project="QTBUG")
    defaults.update(kwargs)
    for name in ("components", "labels", "fix_versions", "affected_versions", "platforms"):
        if name in defaults and not isinstance(defaults[name], frozenset):
            defaults[name] = frozenset(defaults[name])
    return Issue(**defaults)


def test_appendix_two_clause_hand_evaluation():
    # updated 100 days ago satisfies `updated <= -90d`; issuetype Epic
    # satisfies the IN clause; the conjunction is therefore true.
    issue = make_issue(issuetype="Epic", updated=NOW - dt.timedelta(days=100))
    q = parse('updated <= -90d AND issuetype in ("Epic")')
    assert evaluate(q, issue, NOW) is True
    # 10-day-old update fails the date clause.
    fresh = make_issue(issuetype="Epic", updated=NOW - dt.timedelta(days=10))
    assert evaluate(q, fresh, NOW) is False


def test_is_empty_on_present_value():
    issue = make_issue(resolution="Fixed")
    assert evaluate(parse("resolution IS EMPTY"), issue, NOW) is False
    assert evaluate(parse("resolution IS NOT EMPTY"), issue, NOW) is True


def test_set_contains_semantics():
    issue = make_issue(components=["Core: QString and Unicode"])
    assert evaluate(parse('component = "Core: QString and Unicode"'), issue, NOW) is True
    assert evaluate(parse('component = "Core: URL Handling"'), issue, NOW) is False


def test_in_means_set_intersects():
    issue = make_issue(labels=["regression", "ci"])
    assert evaluate(parse('labels IN ("ci", "other")'), issue, NOW) is True
    assert evaluate(parse('labels IN ("other")'), issue, NOW) is False


def test_negation_false_on_empty_field():
    empty = make_issue()
    assert evaluate(parse('component != "X"'), empty, NOW) is False
    assert evaluate(parse('component NOT IN ("X")'), empty, NOW) is False
    assert evaluate(parse('resolution != "Fixed"'), empty, NOW) is False
    having = make_issue(components=["Y"], resolution="Done")
    assert evaluate(parse('component != "X"'), having, NOW) is True
    assert evaluate(parse('resolution != "Fixed"'), having, NOW) is True


def test_value_comparison_case_insensitive():
    issue = make_issue(issuetype="Epic")
    assert evaluate(parse("issuetype = epic"), issue, NOW) is True


def test_contains_substring_case_insensitive():
    issue = make_issue(summary="Crash when Unicode text is rendered")
    assert evaluate(parse('summary ~ "unicode"'), issue, NOW) is True
    assert evaluate(parse('summary ~ "unicorn"'), issue, NOW) is False
    assert evaluate(parse('summary !~ "unicorn"'), issue, NOW) is True


def test_contains_false_on_empty_text():
    issue = make_issue(summary="")
    assert evaluate(parse('summary ~ "x"'), issue, NOW) is False
    assert evaluate(parse('summary !~ "x"'), issue, NOW) is False


def test_text_contains_is_substring_not_word_match():
    assert text_contains("QString rendering", "string")  # substring, not token


def test_absolute_date_comparisons():
    issue = make_issue(created=dt.datetime(2025, 1, 15, 12, tzinfo=UTC))
    assert evaluate(parse('created >= "2025-01-01"'), issue, NOW) is True
    assert evaluate(parse('created <= "2025-01-01"'), issue, NOW) is False
    assert evaluate(parse('created > "2025-01-15"'), issue, NOW) is True  # midday > midnight
    assert evaluate(parse('created = "2025-01-15"'), issue, NOW) is True  # same UTC day
    assert evaluate(parse('created = "2025-01-16"'), issue, NOW) is False


def test_relative_date_units():
    issue = make_issue(updated=NOW - dt.timedelta(days=28))
    assert evaluate(parse("updated <= -4w"), issue, NOW) is True
    assert evaluate(parse("updated <= -29d"), issue, NOW) is False
    assert evaluate(parse("updated >= -28d"), issue, NOW) is True


def test_missing_date_never_matches_comparisons():
    issue = make_issue()
    assert evaluate(parse('created >= "2000-01-01"'), issue, NOW) is False
    assert evaluate(parse("created <= -1d"), issue, NOW) is False


def test_resolve_date_functions_truncate_utc():
    now = dt.datetime(2025, 7, 3, 15, 30, tzinfo=UTC)  # a Thursday
    assert resolve_date(DateFunction("startOfDay"), now) == dt.datetime(2025, 7, 3, tzinfo=UTC)
    assert resolve_date(DateFunction("startOfWeek"), now) == dt.datetime(2025, 6, 30, tzinfo=UTC)
    assert resolve_date(DateFunction("startOfMonth"), now) == dt.datetime(2025, 7, 1, tzinfo=UTC)
    assert resolve_date(DateFunction("startOfYear"), now) == dt.datetime(2025, 1, 1, tzinfo=UTC)
    assert resolve_date(RelativeDate(-2, "w"), now) == now - dt.timedelta(days=14)


def test_monotone_conjunction_property(desk_store, now):
    rng = random.Random(99)
    base = parse('project = QTBUG AND summary ~ "crash"')
    narrowed = parse('project = QTBUG AND summary ~ "crash" AND resolution IS EMPTY')
    base_set = {i.key for i in desk_store.issues if evaluate(base, i, now)}
    narrow_set = {i.key for i in desk_store.issues if evaluate(narrowed, i, now)}
    assert narrow_set <= base_set
    assert base_set  # fixture sanity: the base query matches something


def test_negation_duality_property(desk_store, now):
    # NOT IN matches exactly the non-empty complement of IN.
    in_q = parse('component IN ("Core: QString and Unicode", "GUI: Text handling")')
    not_in_q = parse('component NOT IN ("Core: QString and Unicode", "GUI: Text handling")')
    non_empty = parse("component IS NOT EMPTY")
    in_set = {i.key for i in desk_store.issues if evaluate(in_q, i, now)}
    not_in_set = {i.key for i in desk_store.issues if evaluate(not_in_q, i, now)}
    non_empty_set = {i.key for i in desk_store.issues if evaluate(non_empty, i, now)}
    assert not_in_set == non_empty_set - in_set
