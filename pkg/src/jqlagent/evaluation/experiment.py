"""Full experiment sweeps: run every item under each condition, score,
classify, aggregate, and write transcripts plus CSV/JSON reports.

Each item is evaluated in a single run per condition. Per-item failures
(including invalid gold queries) are recorded and never abort the sweep.
With a scripted backend the whole bundle is byte-deterministic apart
from latency fields.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from ..agent.config import AgentConfig
from ..agent.loop import AgentRunRecord, Outcome, run_episode
from ..agent.tools import build_toolset
from ..bench.items import BenchmarkItem
from ..jql import JqlSyntaxError, parse
from ..sim.store import IssueStore
from .accuracy import EvalOutcome, GoldInvalid, execution_accuracy
from .aggregate import (
    GroupStats,
    MismatchedPairs,
    aggregate,
    format_accuracy,
    format_delta,
    overall,
    paired_deltas,
)
from .taxonomy import classify_failure

BackendProvider = Callable[[str, str], object]  # (query_id, condition) -> LlmBackend

CSV_COLUMNS = (
    "model",
    "condition",
    "variant_or_field",
    "n",
    "accuracy",
    "delta",
    "mean_latency_s",
    "mean_tokens",
    "mean_tool_calls",
)


@dataclass(frozen=True)
class Condition:
    label: str
    cfg: AgentConfig


@dataclass
class ExperimentReport:
    outcomes: list[EvalOutcome]
    records: list[tuple[str, AgentRunRecord]]  # (condition label, episode record)
    skipped: list[dict]
    rows: list[dict]
    out_dir: Path | None = None

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "skipped": self.skipped,
            "outcomes": [o.to_json() for o in self.outcomes],
        }


def run_experiment(
    items: Sequence[BenchmarkItem],
    store: IssueStore,
    backend_provider: BackendProvider,
    conditions: Sequence[Condition],
    now: dt.datetime,
    *,
    model_name: str = "scripted",
    group_by: str = "variant",
    out_dir: str | Path | None = None,
    workers: int = 1,
) -> ExperimentReport:
    outcomes: list[EvalOutcome] = []
    records: list[tuple[str, AgentRunRecord]] = []
    skipped: list[dict] = []

    for condition in conditions:
        results = _run_condition(
            items, store, backend_provider, condition, now, model_name, workers
        )
        for item, record, outcome, skip in results:
            if record is not None:
                records.append((condition.label, record))
            if skip is not None:
                skipped.append(skip)
            if outcome is not None:
                outcomes.append(outcome)

    rows = build_rows(outcomes, conditions, model_name, group_by)
    report = ExperimentReport(outcomes, records, skipped, rows)
    if out_dir is not None:
        report.out_dir = Path(out_dir)
        _write_bundle(report, conditions, model_name)
    return report


def _run_condition(
    items: Sequence[BenchmarkItem],
    store: IssueStore,
    backend_provider: BackendProvider,
    condition: Condition,
    now: dt.datetime,
    model_name: str,
    workers: int,
):
    def one(item: BenchmarkItem):
        backend = backend_provider(item.id, condition.label)
        tools = build_toolset(store, now, condition.cfg)
        record = run_episode(
            item.nl, backend, tools, store, condition.cfg, query_id=item.id
        )
        try:
            outcome = execution_accuracy(
                store, item.gold_jql, record.final_jql, now, item_id=item.id
            )
        except GoldInvalid as exc:
            return item, record, None, {
                "item_id": item.id,
                "condition": condition.label,
                "reason": str(exc),
            }
        outcome.latency_s = record.latency_s
        outcome.tokens_in = record.tokens_in
        outcome.tokens_out = record.tokens_out
        outcome.tool_calls = record.tool_call_count
        outcome.meta = {
            "model": model_name,
            "condition": condition.label,
            "variant": item.variant or "-",
            "field": _focus_field(item),
        }
        if not outcome.correct:
            outcome.failure_category = _classify(item, record, outcome)
        return item, record, outcome, None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, items))
    return [one(item) for item in items]


def _classify(item: BenchmarkItem, record: AgentRunRecord, outcome: EvalOutcome) -> str:
    gold = parse(item.gold_jql)
    agent_failure = record.outcome is not Outcome.CONVERGED or outcome.predicted_error is not None
    predicted = None
    if record.final_jql is not None:
        try:
            predicted = parse(record.final_jql)
        except JqlSyntaxError:
            agent_failure = True
    return classify_failure(gold, predicted, agent_failure=agent_failure)


def _focus_field(item: BenchmarkItem) -> str:
    non_project = [f for f in item.fields_used if f != "project"]
    return non_project[0] if len(non_project) == 1 else "-"


def build_rows(
    outcomes: list[EvalOutcome],
    conditions: Sequence[Condition],
    model_name: str,
    group_by: str,
) -> list[dict]:
    """Report rows: per-condition overall plus per-group, with a delta
    column when exactly two conditions were run."""
    labels = [c.label for c in conditions]
    deltas: dict[str, float] = {}
    overall_delta: float | None = None
    if len(labels) == 2:
        try:
            deltas = paired_deltas(outcomes, group_by, labels[0], labels[1])
            a = overall([o for o in outcomes if o.meta.get("condition") == labels[0]])
            b = overall([o for o in outcomes if o.meta.get("condition") == labels[1]])
            overall_delta = b.accuracy - a.accuracy
        except MismatchedPairs:
            deltas = {}

    rows: list[dict] = []
    for label in labels:
        subset = [o for o in outcomes if o.meta.get("condition") == label]
        is_treatment = len(labels) == 2 and label == labels[1]
        stats = overall(subset)
        rows.append(
            _row(model_name, label, "overall", stats, overall_delta if is_treatment else None)
        )
        for group_stats in aggregate(subset, group_by):
            delta = deltas.get(group_stats.group) if is_treatment else None
            rows.append(_row(model_name, label, group_stats.group, group_stats, delta))
    return rows


def _row(
    model: str, condition: str, group: str, stats: GroupStats, delta: float | None
) -> dict:
    return {
        "model": model,
        "condition": condition,
        "variant_or_field": group,
        "n": stats.n,
        "accuracy": stats.accuracy,
        "accuracy_fmt": format_accuracy(stats.accuracy),
        "delta": delta,
        "delta_fmt": format_delta(delta) if delta is not None else "",
        "mean_latency_s": stats.mean_latency_s,
        "mean_tokens": stats.mean_tokens,
        "mean_tool_calls": stats.mean_tool_calls,
    }


def _write_bundle(
    report: ExperimentReport, conditions: Sequence[Condition], model_name: str
) -> None:
    out = report.out_dir
    assert out is not None
    transcripts = out / "transcripts"
    reports = out / "reports"
    transcripts.mkdir(parents=True, exist_ok=True)
    reports.mkdir(parents=True, exist_ok=True)

    by_condition: dict[str, int] = {}
    for condition_label, record in report.records:
        cdir = transcripts / condition_label
        cdir.mkdir(exist_ok=True)
        path = cdir / f"{record.query_id or 'item'}.json"
        path.write_text(
            json.dumps(record.to_json(), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        by_condition[condition_label] = by_condition.get(condition_label, 0) + 1

    (reports / "report.json").write_text(
        json.dumps(report.to_json(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    with open(reports / "report.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            writer.writerow(
                [
                    row["model"],
                    row["condition"],
                    row["variant_or_field"],
                    row["n"],
                    row["accuracy_fmt"],
                    row["delta_fmt"],
                    f"{row['mean_latency_s']:.3f}",
                    f"{row['mean_tokens']:.1f}",
                    f"{row['mean_tool_calls']:.2f}",
                ]
            )

    (out / "config.json").write_text(
        json.dumps(
            {
                "model": model_name,
                "conditions": [
                    {
                        "label": c.label,
                        "recursion_limit": c.cfg.recursion_limit,
                        "anchor_enabled": c.cfg.anchor_enabled,
                        "prompt_variant": c.cfg.prompt_variant,
                        "focus_field": c.cfg.focus_field,
                        "anchor_strategy": c.cfg.anchor_strategy,
                        "anchor_k": c.cfg.anchor_k,
                    }
                    for c in conditions
                ],
                "transcripts": by_condition,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
