"""Embedding providers for semantic value ranking.

The built-in provider hashes character trigrams into a fixed 256-dim
vector: fully deterministic, dependency-light, and good enough to rank
"Unicode support" near "Core: QString and Unicode" on a desk fixture.
Anything implementing embed() with unit-norm rows of one shared width
can be swapped in.
"""

from __future__ import annotations

import zlib
from typing import Protocol, Sequence

import numpy as np


class ProviderUnavailable(RuntimeError):
    """The embedding provider cannot serve requests."""


class EmbeddingProvider(Protocol):
    def embed(self, texts: Sequence[str]) -> np.ndarray:
        """Rows of unit-norm vectors, one per input text, all one dimension."""
        ...


class TrigramHashProvider:
    """Bag-of-character-trigrams hashed into `dim` buckets, L2-normalized.

    Deterministic for identical input: the bucket hash is crc32, never
    Python's salted hash(). Texts shorter than three characters use the
    whole text as a single gram; an empty text embeds to the zero vector.
    """

    def __init__(self, dim: int = 256):
        self.dim = dim

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for row, text in enumerate(texts):
            for gram in self._grams(text):
                out[row, zlib.crc32(gram.encode("utf-8")) % self.dim] += 1.0
            norm = np.linalg.norm(out[row])
            if norm > 0:
                out[row] /= norm
        return out

    @staticmethod
    def _grams(text: str) -> list[str]:
        folded = " ".join(text.casefold().split())
        if not folded:
            return []
        if len(folded) < 3:
            return [folded]
        return [folded[i : i + 3] for i in range(len(folded) - 2)]


DEFAULT_PROVIDER = TrigramHashProvider()


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    denom = float(np.linalg.norm(a) * np.linalg.norm(b))
    if denom == 0.0:
        return 0.0
    return float(np.dot(a, b) / denom)
