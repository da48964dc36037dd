"""Per-candidate scoring functions: exact, regex, approximate, embedding.

All scores live in [0, 1]; comparisons are case-insensitive throughout.
"""

from __future__ import annotations

import re
from typing import Callable, Sequence

from .embedding import EmbeddingProvider


def score_exact(query: str, candidate: str) -> float:
    """1.0 on case-insensitive equality, 0.9 on substring containment, else 0."""
    q = query.casefold()
    c = candidate.casefold()
    if q == c:
        return 1.0
    if q and q in c:
        return 0.9
    return 0.0


def compile_regex(pattern: str) -> tuple[Callable[[str], float], bool]:
    """Build a candidate scorer from a regex pattern.

    Invalid patterns degrade to a case-insensitive literal substring test
    instead of failing; the second return value reports that fallback so
    callers can flag the result.
    """
    try:
        compiled = re.compile(pattern, re.IGNORECASE)
    except re.error:
        literal = pattern.casefold()

        def literal_score(candidate: str) -> float:
            return 1.0 if literal and literal in candidate.casefold() else 0.0

        return literal_score, True

    def regex_score(candidate: str) -> float:
        return 1.0 if compiled.search(candidate) else 0.0

    return regex_score, False


def score_regex(pattern: str, candidate: str) -> float:
    scorer, _ = compile_regex(pattern)
    return scorer(candidate)


def levenshtein(a: str, b: str) -> int:
    """Classic edit distance (insert/delete/substitute), two-row DP."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a):
        current = [i + 1]
        for j, cb in enumerate(b):
            current.append(
                min(previous[j + 1] + 1, current[j] + 1, previous[j] + (ca != cb))
            )
        previous = current
    return previous[-1]


def score_approx(query: str, candidate: str) -> float:
    """1 - normalized edit distance over case-folded strings.

    Either side empty scores 0.0 by convention (the resolver never sends
    an empty query; candidates can legitimately never be empty strings).
    """
    q = query.casefold()
    c = candidate.casefold()
    if not q or not c:
        return 0.0
    longest = max(len(q), len(c))
    return 1.0 - levenshtein(q, c) / longest


def score_embedding(
    provider: EmbeddingProvider, query: str, candidates: Sequence[str]
) -> list[tuple[float, float]]:
    """Per-candidate (mapped score, raw cosine).

    Cosine is mapped to [0, 1] via (1 + cos) / 2 for ranking stability;
    the raw value is kept for transcript fidelity.
    """
    vectors = provider.embed([query, *candidates])
    query_vec = vectors[0]
    out = []
    for row in vectors[1:]:
        raw = float(query_vec @ row)
        out.append(((1.0 + raw) / 2.0, raw))
    return out
