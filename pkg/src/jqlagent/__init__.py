"""jqlagent: a text-to-JQL agent stack over a simulated Jira instance.

Subpackages:
    jql        - the query language: parse, validate, print, evaluate
    sim        - in-memory issue store, search, value enumeration, HTTP
    anchor     - semantic field-value resolution (top-K ranking)
    agent      - two-node tool-calling loop, prompts, backends
    bench      - gold-query generation and dataset handling
    evaluation - execution accuracy, failure taxonomy, experiment sweeps
"""

from . import agent, anchor, bench, evaluation, fixtures, jql, sim

__version__ = "0.1.0"

__all__ = ["agent", "anchor", "bench", "evaluation", "fixtures", "jql", "sim", "__version__"]
