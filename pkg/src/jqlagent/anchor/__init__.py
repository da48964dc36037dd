"""Semantic field-value resolution against the live value sets."""

from .embedding import (
    DEFAULT_PROVIDER,
    EmbeddingProvider,
    ProviderUnavailable,
    TrigramHashProvider,
    cosine,
)
from .resolve import (
    APPROX,
    AnchorMatch,
    AnchorRequest,
    AnchorResult,
    CASCADE,
    DEFAULT_K,
    EMBEDDING,
    EXACT,
    REGEX,
    STRATEGIES,
    resolve,
)
from .scoring import (
    compile_regex,
    levenshtein,
    score_approx,
    score_embedding,
    score_exact,
    score_regex,
)

__all__ = [
    "APPROX",
    "AnchorMatch",
    "AnchorRequest",
    "AnchorResult",
    "CASCADE",
    "DEFAULT_K",
    "DEFAULT_PROVIDER",
    "EMBEDDING",
    "EXACT",
    "EmbeddingProvider",
    "ProviderUnavailable",
    "REGEX",
    "STRATEGIES",
    "TrigramHashProvider",
    "compile_regex",
    "cosine",
    "levenshtein",
    "resolve",
    "score_approx",
    "score_embedding",
    "score_exact",
    "score_regex",
]
