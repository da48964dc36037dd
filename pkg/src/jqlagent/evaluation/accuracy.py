"""Execution accuracy: set equality of gold and predicted issue keys.

A predicted query is correct iff, executed unpaged against the same
store at the same clock, it returns exactly the gold query's key set -
robust to rewrites like Eq/In-singleton swaps, clause reordering, and
quoting differences.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

from ..sim.search import ERROR, search
from ..sim.store import IssueStore


class GoldInvalid(ValueError):
    """The gold query itself failed to execute: a dataset defect."""


@dataclass
class EvalOutcome:
    item_id: str
    correct: bool
    gold_keys: frozenset[str]
    predicted_keys: frozenset[str] | None
    # Set when the prediction was missing or failed to execute; feeds the
    # taxonomy's AgentError rule.
    predicted_error: str | None = None
    failure_category: str | None = None
    latency_s: float = 0.0
    tokens_in: int = 0
    tokens_out: int = 0
    tool_calls: int = 0
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "item_id": self.item_id,
            "correct": self.correct,
            "gold_keys": sorted(self.gold_keys),
            "predicted_keys": sorted(self.predicted_keys)
            if self.predicted_keys is not None
            else None,
            "predicted_error": self.predicted_error,
            "failure_category": self.failure_category,
            "latency_s": self.latency_s,
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "tool_calls": self.tool_calls,
            "meta": dict(self.meta),
        }


def execution_accuracy(
    store: IssueStore,
    gold_jql: str,
    predicted_jql: str | None,
    now: dt.datetime,
    *,
    item_id: str = "",
) -> EvalOutcome:
    """Score one gold/predicted pair. Raises GoldInvalid on a bad gold query."""
    gold = search(store, gold_jql, now, max_results=None)
    if gold.signal == ERROR:
        raise GoldInvalid(f"gold query failed: {gold.message}")
    gold_keys = frozenset(gold.keys)

    if predicted_jql is None:
        return EvalOutcome(
            item_id, False, gold_keys, None, predicted_error="no query produced"
        )
    predicted = search(store, predicted_jql, now, max_results=None)
    if predicted.signal == ERROR:
        return EvalOutcome(
            item_id,
            False,
            gold_keys,
            None,
            predicted_error=f"predicted query failed: {predicted.message}",
        )
    predicted_keys = frozenset(predicted.keys)
    return EvalOutcome(item_id, predicted_keys == gold_keys, gold_keys, predicted_keys)
