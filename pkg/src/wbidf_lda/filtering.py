"""IDF vocabulary filtering, popularity selection, and document weighting.

The pipeline stages here turn raw posts into the weighted, id-encoded
corpus the sampler consumes:

1. IDF is computed over the full corpus and the vocabulary is trimmed at
   both ends (ubiquitous terms below ``idf_min``, ultra-rare terms above
   ``idf_max``).
2. The top-k posts by popularity (likes + comments + retweets) are kept.
3. Each surviving post gets an engagement weight
   ``1 + ln(1+likes) + 2*ln(1+comments) + 4*ln(1+retweets)``, realized as
   an integer replication count (round half up).

All logarithms are natural.  All functions are pure; inputs are never
mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import EmptyVocabularyError, EncodedDoc, Post, Vocabulary


class EmptyCorpusError(ValueError):
    """No document survived encoding against the filtered vocabulary."""


@dataclass
class IdfTable:
    """Per-term-id IDF values plus the thresholds chosen for filtering.

    idf[t] = ln(n_docs / (1 + doc_freq[t])) + 1.  Thresholds are unset
    until configuration fills them.
    """

    idf: np.ndarray
    idf_min_threshold: float | None = None
    idf_max_threshold: float | None = None


@dataclass(frozen=True)
class WeightedDoc:
    """An encoded document with its popularity and replication weight."""

    doc: EncodedDoc
    popularity: int
    raw_weight: float
    replication: int


@dataclass
class WeightedCorpus:
    """Filtered, encoded documents with replication weights.

    With ``weighting_enabled=False`` every replication is 1 and the
    corpus is the plain unweighted encoding of the same posts.
    """

    docs: list[WeightedDoc]
    vocab: Vocabulary
    weighting_enabled: bool

    @property
    def total_replicas(self) -> int:
        return sum(d.replication for d in self.docs)

    @property
    def total_tokens(self) -> int:
        """Token count of the replicated corpus."""
        return sum(d.replication * len(d.doc) for d in self.docs)


def compute_idf(vocab: Vocabulary) -> IdfTable:
    """Smoothed inverse document frequency for every term in ``vocab``."""
    if len(vocab) == 0:
        raise EmptyVocabularyError("cannot compute IDF of an empty vocabulary")
    df = np.asarray(vocab.doc_freq, dtype=np.float64)
    idf = np.log(vocab.n_docs / (1.0 + df)) + 1.0
    return IdfTable(idf=idf)


def default_idf_thresholds(n_docs: int) -> tuple[float, float]:
    """Default band: drop terms in every document and terms in a single one.

    idf_min = 1.0 removes terms whose document frequency reaches n_docs;
    idf_max = ln(n_docs/3) + 1 removes terms with document frequency 1.
    """
    return 1.0, math.log(n_docs / 3.0) + 1.0


def filter_vocabulary(
    vocab: Vocabulary, idf: IdfTable, idf_min: float, idf_max: float
) -> Vocabulary:
    """Retain terms with idf_min <= idf <= idf_max, reassigning dense ids.

    Relative id order is preserved, so an all-pass filter returns a
    vocabulary identical to the input.  doc_freq and n_docs carry over
    for the retained terms.
    """
    if not idf_min < idf_max:
        raise ValueError(f"idf_min ({idf_min}) must be < idf_max ({idf_max})")
    kept = Vocabulary(n_docs=vocab.n_docs)
    for old_id, term in enumerate(vocab.id_to_term):
        if idf_min <= idf.idf[old_id] <= idf_max:
            kept.term_to_id[term] = len(kept.id_to_term)
            kept.id_to_term.append(term)
            kept.doc_freq.append(vocab.doc_freq[old_id])
    if not kept.id_to_term:
        raise EmptyVocabularyError("empty vocabulary after IDF filter")
    return kept


def popularity(post: Post) -> int:
    """Sum of likes, comments, and retweets."""
    return post.likes + post.comments + post.retweets


def select_top_popular(posts: list[Post], k: int) -> list[Post]:
    """The k most popular posts, descending; ties keep input order.

    Returns the whole corpus (sorted) when k exceeds its size.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    indexed = sorted(enumerate(posts), key=lambda pair: (-popularity(pair[1]), pair[0]))
    return [post for _, post in indexed[:k]]


def compute_weight(post: Post) -> float:
    """Engagement weight: 1 + ln(1+l) + 2*ln(1+c) + 4*ln(1+r).

    Monotone in each count; retweets weigh most, likes least.  Equals 1
    exactly when all three counts are zero.
    """
    return (
        1.0
        + math.log1p(post.likes)
        + 2.0 * math.log1p(post.comments)
        + 4.0 * math.log1p(post.retweets)
    )


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def build_weighted_corpus(
    posts: list[Post], vocab: Vocabulary, weighting_enabled: bool = True
) -> WeightedCorpus:
    """Encode posts against the filtered vocabulary and attach weights.

    Out-of-vocabulary tokens are dropped; posts whose encoding ends up
    empty are excluded.  Replication is the rounded weight when enabled,
    else 1.
    """
    docs = []
    for post in posts:
        term_ids = tuple(vocab.term_to_id[t] for t in post.tokens if t in vocab.term_to_id)
        if not term_ids:
            continue
        if weighting_enabled:
            raw_weight = compute_weight(post)
            replication = max(1, _round_half_up(raw_weight))
        else:
            raw_weight = 1.0
            replication = 1
        docs.append(
            WeightedDoc(
                doc=EncodedDoc(post_id=post.id, term_ids=term_ids),
                popularity=popularity(post),
                raw_weight=raw_weight,
                replication=replication,
            )
        )
    if not docs:
        raise EmptyCorpusError("no document survived encoding against the vocabulary")
    return WeightedCorpus(docs=docs, vocab=vocab, weighting_enabled=weighting_enabled)
