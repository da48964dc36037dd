"""LLM backends: the deterministic scripted double and a chat-HTTP client.

The scripted backend replays a fixed list of assistant steps and reports
synthetic usage (ceil(chars/4) per direction), which keeps cost tables
exactly reproducible. The HTTP backend speaks the common
chat-completions-with-tools JSON contract at temperature 0.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import requests

from .messages import ASSISTANT, Message, ToolCall, message_chars, synthetic_tokens


class BackendError(RuntimeError):
    """Any backend failure the harness records instead of raising."""


class ScriptExhausted(BackendError):
    """A scripted backend was invoked past the end of its script."""


@dataclass(frozen=True)
class Completion:
    message: Message
    tokens_in: int
    tokens_out: int


class LlmBackend(Protocol):
    def complete(self, messages: Sequence[Message], tool_schemas: list[dict]) -> Completion:
        ...


def step_to_message(step: dict, call_prefix: str) -> Message:
    """Build an assistant message from one script step.

    A step is {"content": "..."} or {"tool_calls": [{"name", "arguments"}]},
    never both: assistant turns carry tool calls xor terminal content.
    """
    content = step.get("content", "")
    raw_calls = step.get("tool_calls", [])
    if bool(content) == bool(raw_calls):
        raise ValueError("script step must have exactly one of 'content' or 'tool_calls'")
    calls = tuple(
        ToolCall(
            call.get("id", f"{call_prefix}_{i}"),
            call["name"],
            call.get("arguments", {}),
        )
        for i, call in enumerate(raw_calls)
    )
    return Message(ASSISTANT, content, calls)


class ScriptedBackend:
    """Replays scripted assistant steps in order; raises ScriptExhausted
    past the end unless constructed with repeat=True (then it cycles)."""

    def __init__(self, steps: Sequence[dict], repeat: bool = False):
        self._steps = list(steps)
        self._repeat = repeat
        self._cursor = 0

    def complete(self, messages: Sequence[Message], tool_schemas: list[dict]) -> Completion:
        if self._cursor >= len(self._steps):
            if not self._repeat or not self._steps:
                raise ScriptExhausted(
                    f"script exhausted after {len(self._steps)} steps"
                )
            self._cursor = 0
        step = self._steps[self._cursor]
        message = step_to_message(step, call_prefix=f"call_{self._cursor}")
        self._cursor += 1
        tokens_in = synthetic_tokens(messages)
        tokens_out = synthetic_tokens([message])
        return Completion(message, tokens_in, tokens_out)


def load_script(path: str | Path):
    """Load a script file: a JSON list of steps, or an object mapping
    query ids to step lists for per-query sweeps."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, (list, dict)):
        raise ValueError("script file must be a JSON list or object")
    return data


def scripted_provider(script, repeat: bool = False):
    """Per-episode backend factory over a loaded script.

    A list script replays the same steps for every query (fresh cursor
    each episode); a dict script selects steps by query id, raising
    ScriptExhausted immediately for unknown ids. The condition label is
    accepted (and ignored) so one script can serve paired sweeps.
    """

    def make(query_id: str, condition: str = "") -> ScriptedBackend:
        if isinstance(script, dict):
            steps = script.get(query_id, [])
        else:
            steps = script
        return ScriptedBackend(steps, repeat=repeat)

    return make


class HttpBackend:
    """Chat-completions-with-tools client; all decoding at temperature 0."""

    def __init__(
        self,
        url: str,
        model: str = "default",
        *,
        timeout: float = 120.0,
        api_key: str | None = None,
        session: requests.Session | None = None,
    ):
        self.url = url.rstrip("/")
        self.model = model
        self.timeout = timeout
        self.api_key = api_key if api_key is not None else os.environ.get("JQLAGENT_API_KEY")
        self._session = session or requests.Session()

    def complete(self, messages: Sequence[Message], tool_schemas: list[dict]) -> Completion:
        payload = {
            "model": self.model,
            "temperature": 0,
            "messages": [self._wire_message(m) for m in messages],
            "tools": [
                {"type": "function", "function": schema} for schema in tool_schemas
            ],
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        try:
            response = self._session.post(
                f"{self.url}/chat/completions",
                json=payload,
                headers=headers,
                timeout=self.timeout,
            )
        except requests.Timeout as exc:
            raise BackendError(f"timeout: {exc}") from exc
        except requests.RequestException as exc:
            raise BackendError(f"transport: {exc}") from exc
        if response.status_code // 100 != 2:
            raise BackendError(f"http {response.status_code}: {response.text[:200]}")
        try:
            body = response.json()
            choice = body["choices"][0]["message"]
        except (ValueError, KeyError, IndexError) as exc:
            raise BackendError(f"malformed completion response: {exc}") from exc
        usage = body.get("usage", {})
        return Completion(
            self._parse_message(choice),
            int(usage.get("prompt_tokens", 0)),
            int(usage.get("completion_tokens", 0)),
        )

    @staticmethod
    def _wire_message(message: Message) -> dict:
        out: dict = {"role": message.role, "content": message.content}
        if message.tool_calls:
            out["tool_calls"] = [
                {
                    "id": call.id,
                    "type": "function",
                    "function": {
                        "name": call.name,
                        "arguments": json.dumps(call.arguments),
                    },
                }
                for call in message.tool_calls
            ]
        if message.tool_call_id is not None:
            out["tool_call_id"] = message.tool_call_id
        return out

    @staticmethod
    def _parse_message(choice: dict) -> Message:
        calls = []
        for i, call in enumerate(choice.get("tool_calls") or []):
            function = call.get("function", {})
            raw_args = function.get("arguments", "{}")
            try:
                arguments = json.loads(raw_args) if isinstance(raw_args, str) else raw_args
            except json.JSONDecodeError as exc:
                raise BackendError(f"tool call arguments are not valid JSON: {exc}") from exc
            calls.append(
                ToolCall(call.get("id", f"call_{i}"), function.get("name", ""), arguments)
            )
        return Message(ASSISTANT, choice.get("content") or "", tuple(calls))
