import io
import json

import pytest

from jqlagent.sim import (
    DuplicateKey,
    MalformedRecord,
    NotEnumerable,
    issue_to_record,
    load_fixture,
    search,
    unique_values,
    all_unique_values,
)
from jqlagent.fixtures import DESK_NOW

from jql_oracle import oracle_matching_keys
from jqlagent.jql import parse


def fixture_stream(records):
    return io.StringIO("\n".join(json.dumps(r) for r in records) + "\n")


RECORDS = [
    {"key": "AB-1", "project": "AB", "summary": "first", "created": "2024-01-01T00:00:00Z"},
    {"key": "AB-2", "project": "AB", "summary": "second", "components": ["Core"]},
    {"key": "CD-1", "project": "CD", "summary": "third", "labels": ["x"]},
]


def test_load_three_record_file():
    store = load_fixture(fixture_stream(RECORDS))
    assert len(store) == 3
    assert store.projects == ("AB", "CD")
    assert store.by_key["AB-2"].components == frozenset({"Core"})


def test_duplicate_key_rejected():
    records = RECORDS + [{"key": "AB-1", "project": "AB", "summary": "dup"}]
    with pytest.raises(DuplicateKey):
        load_fixture(fixture_stream(records))


def test_malformed_record_carries_line_number():
    records = RECORDS + [{"key": "EF-9", "project": "XX", "summary": "bad prefix"}]
    with pytest.raises(MalformedRecord) as err:
        load_fixture(fixture_stream(records))
    assert err.value.line == 4


def test_created_after_updated_rejected():
    bad = [
        {
            "key": "AB-1",
            "project": "AB",
            "created": "2024-06-01T00:00:00Z",
            "updated": "2024-01-01T00:00:00Z",
        }
    ]
    with pytest.raises(MalformedRecord):
        load_fixture(fixture_stream(bad))


def test_invalid_json_line_reported():
    stream = io.StringIO('{"key": "AB-1", "project": "AB"}\nnot json\n')
    with pytest.raises(MalformedRecord) as err:
        load_fixture(stream)
    assert err.value.line == 2


def test_keys_ordered_numerically_not_lexically():
    records = [
        {"key": "AB-10", "project": "AB"},
        {"key": "AB-9", "project": "AB"},
        {"key": "AB-1", "project": "AB"},
    ]
    store = load_fixture(fixture_stream(records))
    assert [i.key for i in store.issues] == ["AB-1", "AB-9", "AB-10"]


def test_record_round_trip(desk_store):
    issue = desk_store.issues[0]
    again = fixture_stream([issue_to_record(issue)])
    reloaded = load_fixture(again)
    assert reloaded.issues[0] == issue


def test_desk_fixture_per_project_counts(desk_store, desk_records):
    # Line-count oracle: per-project totals in the store match the file.
    from collections import Counter

    by_project = Counter(r["project"] for r in desk_records)
    assert len(desk_store) == sum(by_project.values()) >= 1000
    for project, count in by_project.items():
        assert sum(1 for i in desk_store.issues if i.project == project) == count


# --- search -----------------------------------------------------------------


def test_search_matches_brute_force(desk_store, desk_records, now):
    jql = 'project = QTBUG AND summary ~ "crash"'
    response = search(desk_store, jql, now, max_results=None)
    assert response.signal == "nonEmpty"
    assert list(response.keys) == oracle_matching_keys(parse(jql), desk_records, now)


def test_search_zero_results_for_absent_version(desk_store, now):
    response = search(desk_store, 'fixVersion = "7.0"', now)
    assert response.signal == "zeroResults"
    assert response.to_json() == {"signal": "zeroResults", "keys": [], "total": 0}


def test_search_error_names_unknown_field(desk_store, now):
    response = search(desk_store, "foo = 1", now)
    assert response.signal == "error"
    assert "foo" in response.message


def test_search_error_names_offending_clause(desk_store, now):
    response = search(desk_store, 'project = QTBUG AND issuetype ~ "Bug"', now)
    assert response.signal == "error"
    assert 'issuetype ~ "Bug"' in response.message


def test_search_syntax_error_reports_offset(desk_store, now):
    response = search(desk_store, "project = ", now)
    assert response.signal == "error"
    assert "offset" in response.message


def test_search_pagination_completeness(desk_store, now):
    jql = "project = QTBUG"
    full = search(desk_store, jql, now, max_results=None)
    pages = []
    start = 0
    while True:
        page = search(desk_store, jql, now, start_at=start, max_results=97)
        if not page.keys:
            break
        assert page.total == full.total
        pages.append(page.keys)
        start += 97
    union = [k for chunk in pages for k in chunk]
    assert union == list(full.keys)
    assert len(set(union)) == len(union)  # disjoint pages


def test_search_default_page_size_is_50(desk_store, now):
    response = search(desk_store, "project = QTBUG", now)
    assert len(response.keys) == 50
    assert response.total > 50


# --- unique_values ----------------------------------------------------------


def test_unique_values_scoped_matches_set_union(desk_store):
    expected = set()
    for issue in desk_store.issues:
        if issue.project == "QTBUG":
            expected.update(issue.components)
    got = all_unique_values(desk_store, "component", ["QTBUG"])
    assert list(got) == sorted(expected)
    assert len(got) == 214


def test_unique_values_empty_scope_means_all_projects(desk_store):
    everything = all_unique_values(desk_store, "fixVersion", [])
    union = set()
    for project in desk_store.projects:
        union.update(all_unique_values(desk_store, "fixVersion", [project]))
    assert set(everything) == union


def test_unique_values_not_enumerable_for_text_field(desk_store):
    with pytest.raises(NotEnumerable):
        unique_values(desk_store, "summary")


def test_unique_values_pagination_stable(desk_store):
    first = unique_values(desk_store, "component", ["QTBUG"], start_at=0, max_results=100)
    second = unique_values(desk_store, "component", ["QTBUG"], start_at=100, max_results=100)
    third = unique_values(desk_store, "component", ["QTBUG"], start_at=200, max_results=100)
    assert first.total == second.total == third.total == 214
    combined = list(first.values) + list(second.values) + list(third.values)
    assert combined == list(all_unique_values(desk_store, "component", ["QTBUG"]))
    assert len(first.values) == len(second.values) == 100
    assert len(third.values) == 14
