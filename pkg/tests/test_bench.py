from collections import Counter

import pytest

from jqlagent.bench import (
    Exhausted,
    GenerationRules,
    InvalidGold,
    MalformedItem,
    SEM_EXACT,
    SEM_SIMILAR,
    SHORT_NL,
    VARIANTS,
    build_variant_items,
    generate_field_value_set,
    generate_gold,
    load_dataset,
    render_variant_prompt,
    save_dataset,
    variant_counts,
)
from jqlagent.jql import parse
from jqlagent.sim import all_unique_values, search


@pytest.fixture(scope="module")
def gold_items(desk_store, now):
    return generate_gold(desk_store, GenerationRules(), 60, seed=42, now=now)


def test_generated_queries_execute_non_empty(desk_store, now, gold_items):
    for item in gold_items:
        assert search(desk_store, item.gold_jql, now, max_results=1).signal == "nonEmpty"


def test_clause_counts_within_range_and_recorded(gold_items):
    for item in gold_items:
        assert 2 <= item.clause_count <= 5
        assert parse(item.gold_jql).clause_count == item.clause_count


def test_clause_histogram_uniform(gold_items):
    histogram = Counter(item.clause_count for item in gold_items)
    assert histogram == {2: 15, 3: 15, 4: 15, 5: 15}


def test_seed_repeatability(desk_store, now):
    a = generate_gold(desk_store, GenerationRules(), 20, seed=7, now=now)
    b = generate_gold(desk_store, GenerationRules(), 20, seed=7, now=now)
    assert [i.gold_jql for i in a] == [i.gold_jql for i in b]
    c = generate_gold(desk_store, GenerationRules(), 20, seed=8, now=now)
    assert [i.gold_jql for i in a] != [i.gold_jql for i in c]


def test_no_query_uses_a_field_twice(gold_items):
    for item in gold_items:
        query = parse(item.gold_jql)
        fields = [c.field for c in query.clauses()]
        assert len(fields) == len(set(fields)), item.gold_jql


def test_queries_are_unique(gold_items):
    jqls = [i.gold_jql for i in gold_items]
    assert len(set(jqls)) == len(jqls)


def test_exhausted_when_impossible(desk_store, now):
    rules = GenerationRules(clause_range=(5, 5), max_attempts_per_item=3,
                            text_keywords=("no-such-keyword-anywhere",))
    with pytest.raises(Exhausted):
        # Forcing a text clause (family rotation) with an impossible keyword
        # cannot succeed; item index 2 requires the text family.
        generate_gold(desk_store, rules, 3, seed=1, now=now)


# --- field-value set ---------------------------------------------------------


def test_field_value_set_shape(desk_store, now):
    items = generate_field_value_set(desk_store, "component", 73, now, seed=3)
    assert len(items) == 73
    vocabulary = {
        project: set(all_unique_values(desk_store, "component", [project]))
        for project in desk_store.projects
    }
    for item in items:
        query = parse(item.gold_jql)
        clauses = list(query.clauses())
        assert [c.field for c in clauses] == ["project", "component"]
        project = clauses[0].values[0]
        value = clauses[1].values[0]
        assert value in vocabulary[project]
        assert item.variant == SEM_SIMILAR
        assert item.clause_count == 2
        assert search(desk_store, item.gold_jql, now, max_results=1).signal == "nonEmpty"


def test_field_value_set_rejects_text_field(desk_store, now):
    with pytest.raises(ValueError):
        generate_field_value_set(desk_store, "summary", 5, now)


def test_field_value_set_exhausted(desk_store, now):
    with pytest.raises(Exhausted):
        generate_field_value_set(desk_store, "component", 10_000, now)


# --- variant templates and NL -----------------------------------------------


def test_templates_carry_signature_phrases():
    assert "mirrors the JQL structure" in render_variant_prompt("x = 1", SEM_EXACT)
    assert "a few words" in render_variant_prompt("x = 1", SHORT_NL)


def test_rendered_prompt_embeds_jql_once():
    jql = 'project = "QTBUG" AND summary ~ "crash"'
    for variant in VARIANTS:
        prompt = render_variant_prompt(jql, variant)
        assert prompt.count(jql) == 1
        assert "{jql}" not in prompt


def test_build_variant_items_expands_four_ways(gold_items):
    expanded = build_variant_items(gold_items[:5])
    assert len(expanded) == 20
    assert variant_counts(expanded) == {v: 5 for v in VARIANTS}
    assert all(item.nl for item in expanded)


# --- dataset round-trip -----------------------------------------------------


def test_save_load_identity(tmp_path, desk_store, gold_items):
    items = build_variant_items(gold_items[:10])
    path = tmp_path / "data.jsonl"
    save_dataset(items, path)
    loaded = load_dataset(path, desk_store.schema)
    assert loaded == items


def test_load_rejects_unparseable_gold(tmp_path, desk_store):
    path = tmp_path / "bad.jsonl"
    path.write_text(
        '{"id": "x", "gold_jql": "project ===", "variant": null, "nl": "", '
        '"clause_count": 1, "fields_used": []}\n'
    )
    with pytest.raises(InvalidGold):
        load_dataset(path, desk_store.schema)


def test_load_rejects_schema_invalid_gold(tmp_path, desk_store):
    path = tmp_path / "bad.jsonl"
    path.write_text(
        '{"id": "x", "gold_jql": "foo = 1", "variant": null, "nl": "", '
        '"clause_count": 1, "fields_used": ["foo"]}\n'
    )
    with pytest.raises(InvalidGold):
        load_dataset(path, desk_store.schema)


def test_load_rejects_wrong_clause_count(tmp_path, desk_store):
    path = tmp_path / "bad.jsonl"
    path.write_text(
        '{"id": "x", "gold_jql": "project = QTBUG", "variant": null, "nl": "", '
        '"clause_count": 3, "fields_used": ["project"]}\n'
    )
    with pytest.raises(MalformedItem):
        load_dataset(path, desk_store.schema)


def test_load_accepts_single_clause_gold(tmp_path, desk_store):
    # The generator emits 2-5 clauses, but the loader accepts 1-6.
    path = tmp_path / "one.jsonl"
    path.write_text(
        '{"id": "x", "gold_jql": "project = QTBUG", "variant": "ShortNL", "nl": "qtbug", '
        '"clause_count": 1, "fields_used": ["project"]}\n'
    )
    [item] = load_dataset(path, desk_store.schema)
    assert item.clause_count == 1


def test_jackal_1k_shaped_file_counts(tmp_path, desk_store, now):
    gold = generate_gold(desk_store, GenerationRules(), 250, seed=1000, now=now)
    items = build_variant_items(gold)
    path = tmp_path / "bench1k.jsonl"
    assert save_dataset(items, path) == 1000
    loaded = load_dataset(path, desk_store.schema)
    assert variant_counts(loaded) == {v: 250 for v in VARIANTS}
