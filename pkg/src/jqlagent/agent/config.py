"""Agent episode configuration."""

from __future__ import annotations

from dataclasses import dataclass

from ..anchor.resolve import CASCADE, DEFAULT_K

EXPERIMENT1_AGENTIC = "experiment1-agentic"
EXPERIMENT2_WITH_ANCHOR = "experiment2-with-anchor"
EXPERIMENT2_WITHOUT_ANCHOR = "experiment2-without-anchor"
PROMPT_VARIANTS = (
    EXPERIMENT1_AGENTIC,
    EXPERIMENT2_WITH_ANCHOR,
    EXPERIMENT2_WITHOUT_ANCHOR,
)

DEFAULT_RECURSION_LIMIT = 25


@dataclass(frozen=True)
class AgentConfig:
    recursion_limit: int = DEFAULT_RECURSION_LIMIT
    anchor_enabled: bool = True
    prompt_variant: str = EXPERIMENT1_AGENTIC
    # The experiment2 prompts are scoped to project + one categorical field.
    focus_field: str | None = None
    anchor_strategy: str = CASCADE
    anchor_k: int = DEFAULT_K

    def __post_init__(self) -> None:
        if self.recursion_limit < 2:
            raise ValueError("recursion_limit must be at least 2")
        if self.prompt_variant not in PROMPT_VARIANTS:
            raise ValueError(
                f"unknown prompt variant {self.prompt_variant!r}; expected one of {PROMPT_VARIANTS}"
            )
