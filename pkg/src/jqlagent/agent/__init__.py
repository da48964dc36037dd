"""Tool-calling agent loop, prompt construction, backends, and tools."""

from .backends import (
    BackendError,
    Completion,
    HttpBackend,
    LlmBackend,
    ScriptExhausted,
    ScriptedBackend,
    load_script,
    scripted_provider,
    step_to_message,
)
from .config import (
    AgentConfig,
    EXPERIMENT1_AGENTIC,
    EXPERIMENT2_WITH_ANCHOR,
    EXPERIMENT2_WITHOUT_ANCHOR,
    PROMPT_VARIANTS,
)
from .loop import AgentRunRecord, Outcome, extract_final_jql, run_episode
from .messages import (
    ASSISTANT,
    Message,
    SYSTEM,
    TOOL,
    ToolCall,
    USER,
    message_chars,
    synthetic_tokens,
)
from .prompt import (
    VALUES_NOTE_WITH_TOOL,
    VALUES_NOTE_WITHOUT_TOOL,
    build_system_prompt,
)
from .tools import (
    JIRA_SEARCH,
    MCP_STUB_NAMES,
    SEARCH_VALUES,
    ToolRegistry,
    ToolSpec,
    UnknownToolError,
    build_toolset,
)

__all__ = [
    "ASSISTANT",
    "AgentConfig",
    "AgentRunRecord",
    "BackendError",
    "Completion",
    "EXPERIMENT1_AGENTIC",
    "EXPERIMENT2_WITH_ANCHOR",
    "EXPERIMENT2_WITHOUT_ANCHOR",
    "HttpBackend",
    "JIRA_SEARCH",
    "LlmBackend",
    "MCP_STUB_NAMES",
    "Message",
    "Outcome",
    "PROMPT_VARIANTS",
    "SEARCH_VALUES",
    "SYSTEM",
    "ScriptExhausted",
    "ScriptedBackend",
    "TOOL",
    "ToolCall",
    "ToolRegistry",
    "ToolSpec",
    "USER",
    "UnknownToolError",
    "VALUES_NOTE_WITHOUT_TOOL",
    "VALUES_NOTE_WITH_TOOL",
    "build_system_prompt",
    "build_toolset",
    "extract_final_jql",
    "load_script",
    "message_chars",
    "run_episode",
    "scripted_provider",
    "step_to_message",
    "synthetic_tokens",
]
