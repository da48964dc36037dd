"""Benchmark datasets: gold generation, NL variants, and JSONL round-trip."""

from .generate import (
    Exhausted,
    FIELD_VALUE_FIELDS,
    GenerationRules,
    build_variant_items,
    curated_text_terms,
    date_bounds_ordered,
    generate_field_value_set,
    generate_gold,
    no_contradictory_equality,
    no_duplicate_fields,
)
from .items import (
    BenchmarkItem,
    DatasetError,
    InvalidGold,
    LONG_NL,
    MalformedItem,
    SEM_EXACT,
    SEM_SIMILAR,
    SHORT_NL,
    VARIANTS,
    item_for_gold,
    load_dataset,
    save_dataset,
    variant_counts,
)
from .variants import TEMPLATES, render_nl, render_variant_prompt

__all__ = [
    "BenchmarkItem",
    "DatasetError",
    "Exhausted",
    "FIELD_VALUE_FIELDS",
    "GenerationRules",
    "InvalidGold",
    "LONG_NL",
    "MalformedItem",
    "SEM_EXACT",
    "SEM_SIMILAR",
    "SHORT_NL",
    "TEMPLATES",
    "VARIANTS",
    "build_variant_items",
    "curated_text_terms",
    "date_bounds_ordered",
    "generate_field_value_set",
    "generate_gold",
    "item_for_gold",
    "load_dataset",
    "no_contradictory_equality",
    "no_duplicate_fields",
    "render_nl",
    "render_variant_prompt",
    "save_dataset",
    "variant_counts",
]
