"""Two-stage field-value resolution.

Stage 1 pulls the field's full unique-value set from the store through
the paginated interface, optionally scoped to projects. Stage 2 scores
every candidate under the chosen strategy and returns the top-K, sorted
by score descending with lexicographic tie-breaks, so identical inputs
always produce identical output.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..sim.search import all_unique_values
from ..sim.store import IssueStore
from .embedding import DEFAULT_PROVIDER, EmbeddingProvider
from .scoring import compile_regex, score_approx, score_embedding, score_exact

DEFAULT_K = 10

EXACT = "exact"
REGEX = "regex"
APPROX = "approx"
EMBEDDING = "embedding"
CASCADE = "cascade"  # exact first; embedding only when nothing matches exactly
STRATEGIES = (EXACT, REGEX, APPROX, EMBEDDING, CASCADE)


@dataclass(frozen=True)
class AnchorRequest:
    field: str
    query: str
    projects: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.query:
            raise ValueError("anchor query must be non-empty")


@dataclass(frozen=True)
class AnchorMatch:
    value: str
    score: float
    raw_cosine: float | None = None


@dataclass(frozen=True)
class AnchorResult:
    matches: tuple[AnchorMatch, ...]
    strategy: str
    candidates_scanned: int
    warnings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "matches": [{"value": m.value, "score": round(m.score, 6)} for m in self.matches],
            "strategy": self.strategy,
        }


def resolve(
    request: AnchorRequest,
    store: IssueStore,
    strategy: str = CASCADE,
    k: int = DEFAULT_K,
    provider: EmbeddingProvider | None = None,
) -> AnchorResult:
    """Rank a field's stored values against a natural-language mention.

    Propagates NotEnumerable for non-enumerable fields; an empty value
    set yields an empty result, not an error. An unavailable embedding
    provider downgrades to the approx strategy and flags the result.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    candidates = all_unique_values(store, request.field, request.projects or None)
    if not candidates:
        return AnchorResult((), strategy, 0)

    warnings: list[str] = []
    scored = _score_all(request.query, candidates, strategy, provider, warnings)
    scored.sort(key=lambda m: (-m.score, m.value))
    return AnchorResult(tuple(scored[:k]), strategy, len(candidates), tuple(warnings))


def _score_all(
    query: str,
    candidates: tuple[str, ...],
    strategy: str,
    provider: EmbeddingProvider | None,
    warnings: list[str],
) -> list[AnchorMatch]:
    if strategy == EXACT:
        return [AnchorMatch(c, score_exact(query, c)) for c in candidates]
    if strategy == REGEX:
        scorer, fell_back = compile_regex(query)
        if fell_back:
            warnings.append("invalid regex pattern; matched as a literal substring")
        return [AnchorMatch(c, scorer(c)) for c in candidates]
    if strategy == APPROX:
        return [AnchorMatch(c, score_approx(query, c)) for c in candidates]
    if strategy == CASCADE:
        exact = [AnchorMatch(c, score_exact(query, c)) for c in candidates]
        if any(m.score > 0.0 for m in exact):
            return exact
        return _embedding_matches(query, candidates, provider, warnings)
    return _embedding_matches(query, candidates, provider, warnings)


def _embedding_matches(
    query: str,
    candidates: tuple[str, ...],
    provider: EmbeddingProvider | None,
    warnings: list[str],
) -> list[AnchorMatch]:
    try:
        pairs = score_embedding(provider or DEFAULT_PROVIDER, query, candidates)
    except Exception as exc:  # ProviderUnavailable or any transport failure
        warnings.append(f"embedding provider unavailable ({exc}); fell back to approx")
        return [AnchorMatch(c, score_approx(query, c)) for c in candidates]
    return [
        AnchorMatch(c, mapped, raw) for c, (mapped, raw) in zip(candidates, pairs)
    ]
