"""Chat message and tool-call types shared by backends and the loop."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

SYSTEM = "system"
USER = "user"
ASSISTANT = "assistant"
TOOL = "tool"


@dataclass(frozen=True)
class ToolCall:
    id: str
    name: str
    arguments: dict


@dataclass(frozen=True)
class Message:
    role: str
    content: str = ""
    tool_calls: tuple[ToolCall, ...] = ()
    tool_call_id: str | None = None

    def to_json(self) -> dict:
        out: dict = {"role": self.role, "content": self.content}
        if self.tool_calls:
            out["tool_calls"] = [
                {"id": c.id, "name": c.name, "arguments": c.arguments}
                for c in self.tool_calls
            ]
        if self.tool_call_id is not None:
            out["tool_call_id"] = self.tool_call_id
        return out

    @staticmethod
    def from_json(data: dict) -> "Message":
        calls = tuple(
            ToolCall(c["id"], c["name"], c.get("arguments", {}))
            for c in data.get("tool_calls", [])
        )
        return Message(
            data["role"], data.get("content", ""), calls, data.get("tool_call_id")
        )


def message_chars(message: Message) -> int:
    """Character weight of a message for synthetic token accounting.

    Counts the content plus, for each tool call, the tool name and the
    compact sorted-key JSON of its arguments. Documented in
    docs/transcripts.md; tests recompute the same rule independently.
    """
    total = len(message.content)
    for call in message.tool_calls:
        total += len(call.name)
        total += len(json.dumps(call.arguments, separators=(",", ":"), sort_keys=True))
    return total


def synthetic_tokens(messages: Sequence[Message]) -> int:
    """ceil(total characters / 4), the scripted backend's usage rule."""
    return math.ceil(sum(message_chars(m) for m in messages) / 4)
