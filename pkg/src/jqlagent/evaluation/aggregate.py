"""Accuracy/cost aggregation and the paper-style number formatting.

Accuracies print to three decimals without a leading zero (".487");
condition deltas carry an explicit sign ("+.230", "-.080") with ".000"
for no change.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .accuracy import EvalOutcome

GROUP_KEYS = ("model", "condition", "variant", "field")


class MismatchedPairs(ValueError):
    """A paired delta was requested over groups missing one condition."""


@dataclass(frozen=True)
class GroupStats:
    group: str
    n: int
    correct: int
    accuracy: float
    mean_latency_s: float
    mean_tokens: float
    mean_tool_calls: float

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "n": self.n,
            "correct": self.correct,
            "accuracy": self.accuracy,
            "mean_latency_s": self.mean_latency_s,
            "mean_tokens": self.mean_tokens,
            "mean_tool_calls": self.mean_tool_calls,
        }


def aggregate(outcomes: Sequence[EvalOutcome], group_by: str) -> list[GroupStats]:
    """Per-group accuracy and mean cost, grouped on a meta key.

    group_by is one of model/condition/variant/field; outcomes without
    that key fall into the "-" group. Group sizes always sum to the
    total outcome count.
    """
    if group_by not in GROUP_KEYS:
        raise ValueError(f"group_by must be one of {GROUP_KEYS}, got {group_by!r}")
    groups: dict[str, list[EvalOutcome]] = {}
    for outcome in outcomes:
        key = str(outcome.meta.get(group_by) or "-")
        groups.setdefault(key, []).append(outcome)
    return [_stats(key, members) for key, members in sorted(groups.items())]


def overall(outcomes: Sequence[EvalOutcome], label: str = "overall") -> GroupStats:
    return _stats(label, list(outcomes))


def _stats(group: str, members: list[EvalOutcome]) -> GroupStats:
    n = len(members)
    correct = sum(1 for m in members if m.correct)
    return GroupStats(
        group,
        n,
        correct,
        correct / n if n else 0.0,
        _mean([m.latency_s for m in members]),
        _mean([m.tokens_in + m.tokens_out for m in members]),
        _mean([m.tool_calls for m in members]),
    )


def _mean(values: Iterable[float]) -> float:
    values = list(values)
    return sum(values) / len(values) if values else 0.0


def paired_deltas(
    outcomes: Sequence[EvalOutcome],
    group_by: str,
    baseline: str,
    treatment: str,
) -> dict[str, float]:
    """Per-group accuracy delta (treatment - baseline) across two conditions.

    Raises MismatchedPairs when any group lacks outcomes for one side.
    """
    base = {
        s.group: s
        for s in aggregate([o for o in outcomes if o.meta.get("condition") == baseline], group_by)
    }
    treat = {
        s.group: s
        for s in aggregate([o for o in outcomes if o.meta.get("condition") == treatment], group_by)
    }
    if set(base) != set(treat):
        raise MismatchedPairs(
            f"conditions {baseline!r}/{treatment!r} cover different {group_by} groups: "
            f"{sorted(set(base) ^ set(treat))}"
        )
    if not base:
        raise MismatchedPairs(f"no outcomes for conditions {baseline!r}/{treatment!r}")
    return {group: treat[group].accuracy - base[group].accuracy for group in sorted(base)}


def format_accuracy(value: float) -> str:
    """Three decimals, no leading zero: 0.487 -> ".487", 1.0 -> "1.000"."""
    text = f"{value:.3f}"
    if text.startswith("0."):
        return text[1:]
    if text.startswith("-0."):
        return "-" + text[2:]
    return text


def format_delta(value: float) -> str:
    """Signed three decimals: +.230 / -.080 / .000."""
    if round(abs(value), 3) < 0.0005:
        return ".000"
    sign = "+" if value > 0 else "-"
    return sign + format_accuracy(abs(value))
