"""Tokenization and extractive-fragment analysis (coverage and density)."""

from __future__ import annotations

import unicodedata
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import EmptySummary


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    original_text: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, item):
        return self.tokens[item]

    def __iter__(self):
        return iter(self.tokens)


@dataclass(frozen=True)
class Fragment:
    summary_start: int
    article_start: int
    length: int


@dataclass(frozen=True)
class FragmentDecomposition:
    fragments: tuple[Fragment, ...]
    summary_len: int
    article_len: int


@dataclass(frozen=True)
class ExtractivenessMetrics:
    coverage: float
    density: float
    summary_len: int
    article_len: int = 0


TokensLike = Union[TokenSequence, Sequence[str]]


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def _strip_punct(word: str) -> str:
    start, end = 0, len(word)
    while start < end and _is_punct(word[start]):
        start += 1
    while end > start and _is_punct(word[end - 1]):
        end -= 1
    return word[start:end]


def tokenize(text: str) -> TokenSequence:
    """Lowercase, split on whitespace, strip edge punctuation, drop empties.

    >>> tokenize("Drink plenty of water.").tokens
    ('drink', 'plenty', 'of', 'water')
    """
    tokens = []
    for word in text.lower().split():
        word = _strip_punct(word)
        if word:
            tokens.append(word)
    return TokenSequence(tuple(tokens), text)


def _as_tuple(seq: TokensLike) -> tuple[str, ...]:
    if isinstance(seq, TokenSequence):
        return seq.tokens
    return tuple(seq)


def greedy_fragments(article: TokensLike, summary: TokensLike) -> FragmentDecomposition:
    """Left-to-right greedy parse of ``summary`` into spans copied from ``article``.

    At each summary position the longest contiguous article match is taken
    (smallest article start on ties) and the cursor jumps past it; a summary
    token that does not occur in the article is skipped.
    """
    art = _as_tuple(article)
    summ = _as_tuple(summary)
    if not summ:
        raise EmptySummary("summary has no tokens")

    # start positions per token; candidates for a match beginning at summ[i]
    starts: dict[str, list[int]] = defaultdict(list)
    for j, tok in enumerate(art):
        starts[tok].append(j)

    n_art, n_sum = len(art), len(summ)
    fragments = []
    i = 0
    while i < n_sum:
        best_len, best_start = 0, -1
        for j in starts.get(summ[i], ()):
            # cannot beat best_len from here
            if n_art - j <= best_len:
                break
            k = 1
            while i + k < n_sum and j + k < n_art and summ[i + k] == art[j + k]:
                k += 1
            if k > best_len:
                best_len, best_start = k, j
                if i + k == n_sum:
                    break
        if best_len:
            fragments.append(Fragment(i, best_start, best_len))
            i += best_len
        else:
            i += 1
    return FragmentDecomposition(tuple(fragments), n_sum, n_art)


def metrics_from_fragments(decomp: FragmentDecomposition) -> ExtractivenessMetrics:
    n = decomp.summary_len
    total = sum(f.length for f in decomp.fragments)
    squares = sum(f.length * f.length for f in decomp.fragments)
    return ExtractivenessMetrics(total / n, squares / n, n, decomp.article_len)


def extractiveness(article: TokensLike, summary: TokensLike) -> ExtractivenessMetrics:
    return metrics_from_fragments(greedy_fragments(article, summary))


def extractiveness_text(article: str, summary: str) -> ExtractivenessMetrics:
    """Convenience wrapper: tokenize both strings, then measure."""
    return extractiveness(tokenize(article), tokenize(summary))


def novelty_spans(article: TokensLike, summary: TokensLike) -> list[tuple[int, int]]:
    """Maximal half-open summary index ranges not covered by any fragment."""
    decomp = greedy_fragments(article, summary)
    spans = []
    cursor = 0
    for frag in decomp.fragments:
        if frag.summary_start > cursor:
            spans.append((cursor, frag.summary_start))
        cursor = frag.summary_start + frag.length
    if cursor < decomp.summary_len:
        spans.append((cursor, decomp.summary_len))
    return spans
