"""The two-node agent loop: LLM node alternating with a tool-execution node.

Routing is conditional: an assistant message with tool calls hands
control to the tool node and back; one with none terminates the episode,
the model's implicit accept of the latest execution result. Every node
visit counts one graph step against the recursion limit (parallel tool
calls in one assistant message execute within a single tool step).
Exhausting the budget records the run as a failure with no query.
"""

from __future__ import annotations

import datetime as dt
import json
import re
import time
from dataclasses import dataclass, field
from enum import Enum

from ..jql import JqlSyntaxError, parse
from ..sim.store import IssueStore
from .backends import BackendError, LlmBackend
from .config import AgentConfig
from .messages import ASSISTANT, Message, SYSTEM, TOOL, USER
from .prompt import build_system_prompt
from .tools import JIRA_SEARCH, ToolRegistry, UnknownToolError


class Outcome(str, Enum):
    CONVERGED = "converged"
    RECURSION_LIMIT = "recursionLimit"
    BACKEND_ERROR = "backendError"


@dataclass
class AgentRunRecord:
    query_id: str
    messages: tuple[Message, ...]
    final_jql: str | None
    outcome: Outcome
    tool_call_count: int
    steps: int
    latency_s: float
    tokens_in: int
    tokens_out: int
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "query_id": self.query_id,
            "messages": [m.to_json() for m in self.messages],
            "final_jql": self.final_jql,
            "outcome": self.outcome.value,
            "tool_call_count": self.tool_call_count,
            "steps": self.steps,
            "latency_s": self.latency_s,
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "error": self.error,
        }

    @staticmethod
    def from_json(data: dict) -> "AgentRunRecord":
        return AgentRunRecord(
            data["query_id"],
            tuple(Message.from_json(m) for m in data["messages"]),
            data.get("final_jql"),
            Outcome(data["outcome"]),
            data["tool_call_count"],
            data.get("steps", 0),
            data.get("latency_s", 0.0),
            data.get("tokens_in", 0),
            data.get("tokens_out", 0),
            data.get("error"),
        )


def run_episode(
    nl_request: str,
    backend: LlmBackend,
    tools: ToolRegistry,
    store: IssueStore,
    cfg: AgentConfig,
    *,
    query_id: str = "",
) -> AgentRunRecord:
    """Run one agent episode to completion; never raises backend failures."""
    messages: list[Message] = [
        Message(SYSTEM, build_system_prompt(store.schema, cfg)),
        Message(USER, nl_request),
    ]
    steps = 0
    tokens_in = 0
    tokens_out = 0
    tool_messages = 0
    outcome: Outcome | None = None
    error: str | None = None
    started = time.perf_counter()

    while outcome is None:
        # LLM node
        if steps >= cfg.recursion_limit:
            outcome = Outcome.RECURSION_LIMIT
            break
        try:
            completion = backend.complete(messages, tools.schemas())
        except BackendError as exc:
            outcome = Outcome.BACKEND_ERROR
            error = str(exc)
            break
        steps += 1
        tokens_in += completion.tokens_in
        tokens_out += completion.tokens_out
        assistant = completion.message
        messages.append(assistant)
        if not assistant.tool_calls:
            outcome = Outcome.CONVERGED
            break

        # Tool node: the whole batch of parallel calls is one step.
        if steps >= cfg.recursion_limit:
            outcome = Outcome.RECURSION_LIMIT
            break
        try:
            for call in assistant.tool_calls:
                content = tools.execute(call.name, call.arguments)
                messages.append(Message(TOOL, content, tool_call_id=call.id))
                tool_messages += 1
        except UnknownToolError as exc:
            outcome = Outcome.BACKEND_ERROR
            error = str(exc)
            break
        steps += 1

    latency = time.perf_counter() - started
    final_jql: str | None = None
    if outcome is Outcome.CONVERGED:
        final_jql = extract_final_jql(messages)
        if final_jql is None:
            outcome = Outcome.BACKEND_ERROR
            error = "NoQuery: transcript contains no executable JQL"
    return AgentRunRecord(
        query_id,
        tuple(messages),
        final_jql,
        outcome,
        tool_messages,
        steps,
        latency,
        tokens_in,
        tokens_out,
        error,
    )


_FENCED_RE = re.compile(r"```(?:[A-Za-z0-9_-]*\n)?(.*?)```", re.DOTALL)
_QUOTED_RE = re.compile(r'"([^"\n]+)"|`([^`\n]+)`')


def extract_final_jql(messages) -> str | None:
    """The query an episode actually answered with.

    Primary rule: the jql argument of the last jira_search call whose
    response signal was not an error. Fallback: the last fenced or quoted
    span in the terminal assistant message that parses as JQL.
    """
    responses = {
        m.tool_call_id: m for m in messages if m.role == TOOL and m.tool_call_id
    }
    best: str | None = None
    for message in messages:
        if message.role != ASSISTANT:
            continue
        for call in message.tool_calls:
            if call.name != JIRA_SEARCH:
                continue
            jql = call.arguments.get("jql")
            if not isinstance(jql, str):
                continue
            response = responses.get(call.id)
            if response is None:
                continue
            try:
                signal = json.loads(response.content).get("signal")
            except (ValueError, AttributeError):
                continue
            if signal != "error":
                best = jql
    if best is not None:
        return best

    terminal = next(
        (
            m
            for m in reversed(messages)
            if m.role == ASSISTANT and m.content and not m.tool_calls
        ),
        None,
    )
    if terminal is None:
        return None
    candidates = [m.group(1) for m in _FENCED_RE.finditer(terminal.content)]
    candidates += [m.group(1) or m.group(2) for m in _QUOTED_RE.finditer(terminal.content)]
    for candidate in reversed(candidates):
        text = candidate.strip()
        if not text:
            continue
        try:
            parse(text)
        except JqlSyntaxError:
            continue
        return text
    return None
