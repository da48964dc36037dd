"""Benchmark items and their JSONL dataset format.

Dataset fields, exactly: id, gold_jql, variant, nl, clause_count,
fields_used. The loader validates every gold query against the schema
and accepts clause counts 1-6 (the generator itself targets 2-5).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from ..jql import JqlSyntaxError, parse, validate
from ..jql.schema import InstanceSchema

LONG_NL = "LongNL"
SHORT_NL = "ShortNL"
SEM_EXACT = "SemExact"
SEM_SIMILAR = "SemSimilar"
VARIANTS = (LONG_NL, SHORT_NL, SEM_EXACT, SEM_SIMILAR)

LOADER_CLAUSE_RANGE = (1, 6)


class DatasetError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class MalformedItem(DatasetError):
    pass


class InvalidGold(DatasetError):
    pass


@dataclass(frozen=True)
class BenchmarkItem:
    id: str
    gold_jql: str
    variant: str | None  # one of VARIANTS, or None for raw gold items
    nl: str
    clause_count: int
    fields_used: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "gold_jql": self.gold_jql,
            "variant": self.variant,
            "nl": self.nl,
            "clause_count": self.clause_count,
            "fields_used": list(self.fields_used),
        }


def item_for_gold(
    item_id: str, gold_jql: str, *, variant: str | None = None, nl: str = ""
) -> BenchmarkItem:
    query = parse(gold_jql)
    return BenchmarkItem(
        item_id, gold_jql, variant, nl, query.clause_count, query.fields_used
    )


def save_dataset(items: Iterable[BenchmarkItem], path: str | Path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for item in items:
            fh.write(json.dumps(item.to_json(), ensure_ascii=False) + "\n")
            count += 1
    return count


def load_dataset(path: str | Path, schema: InstanceSchema) -> list[BenchmarkItem]:
    items: list[BenchmarkItem] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise MalformedItem(lineno, f"invalid JSON: {exc}") from None
            items.append(_item_from_record(record, lineno, schema))
    return items


def _item_from_record(record: dict, lineno: int, schema: InstanceSchema) -> BenchmarkItem:
    if not isinstance(record, dict):
        raise MalformedItem(lineno, "record is not a JSON object")
    for name in ("id", "gold_jql", "nl", "clause_count", "fields_used"):
        if name not in record:
            raise MalformedItem(lineno, f"missing field {name!r}")
    variant = record.get("variant")
    if variant is not None and variant not in VARIANTS:
        raise MalformedItem(lineno, f"unknown variant {variant!r}")

    gold = record["gold_jql"]
    try:
        query = parse(gold)
    except JqlSyntaxError as exc:
        raise InvalidGold(lineno, f"gold_jql does not parse: {exc}") from None
    report = validate(query, schema)
    if not report.ok:
        raise InvalidGold(lineno, f"gold_jql is invalid: {report.describe()}")

    count = query.clause_count
    low, high = LOADER_CLAUSE_RANGE
    if not (low <= count <= high):
        raise InvalidGold(lineno, f"clause count {count} outside accepted range {low}-{high}")
    if record["clause_count"] != count:
        raise MalformedItem(
            lineno, f"clause_count {record['clause_count']} does not match parsed count {count}"
        )
    return BenchmarkItem(
        str(record["id"]),
        gold,
        variant,
        record["nl"],
        count,
        tuple(record["fields_used"]),
    )


def variant_counts(items: Iterable[BenchmarkItem]) -> dict[str, int]:
    counts = {variant: 0 for variant in VARIANTS}
    for item in items:
        if item.variant is not None:
            counts[item.variant] += 1
    return counts
