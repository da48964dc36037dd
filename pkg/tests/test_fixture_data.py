import json

from jqlagent.fixtures import (
    DESK_SEED,
    QTBUG_COMPONENTS,
    desk_fixture_text,
    make_desk_records,
)


def test_bundled_fixture_matches_generator_byte_for_byte():
    regenerated = "".join(
        json.dumps(record, ensure_ascii=False) + "\n"
        for record in make_desk_records(DESK_SEED)
    )
    assert desk_fixture_text() == regenerated


def test_qtbug_component_vocabulary_is_exactly_214():
    assert len(QTBUG_COMPONENTS) == len(set(QTBUG_COMPONENTS)) == 214


def test_no_bare_seven_oh_anywhere(desk_records):
    # "7.0" must exist only inside "7.0 (Next Major Release)".
    for record in desk_records:
        for field in ("fixVersions", "affectedVersions"):
            for value in record.get(field, []):
                assert value != "7.0"
                if "7.0" in value:
                    assert value == "7.0 (Next Major Release)"


def test_every_component_value_appears_in_some_issue(desk_records):
    seen = set()
    for record in desk_records:
        if record["project"] == "QTBUG":
            seen.update(record.get("components", []))
    assert seen == set(QTBUG_COMPONENTS)


def test_key_prefixes_match_projects(desk_records):
    for record in desk_records:
        assert record["key"].startswith(record["project"] + "-")
