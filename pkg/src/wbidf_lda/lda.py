"""Collapsed Gibbs sampling for LDA over a weighted corpus.

Each weighted document is physically expanded into ``replication``
identical virtual documents before sampling, so the sampler itself never
sees weights.  After burn-in the count matrices are averaged over every
retained sweep, and the smoothed estimates are

    phi[k][w]   = (mean n_kw + beta) / (mean n_k + V*beta)
    theta[d][k] = mean over d's replicas of (mean n_dk + alpha) / (len_d + K*alpha)

with theta reported per original document.  Fixing the seed fixes every
bit of phi and theta.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import gammaln

from . import _sampler
from .corpus import Vocabulary
from .filtering import EmptyCorpusError, WeightedCorpus

FORMAT_VERSION = 1


@dataclass
class LdaConfig:
    """Sampler hyperparameters. ``alpha=None`` resolves to 50/k."""

    k: int = 30
    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 200
    seed: int = 42

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.alpha is None:
            self.alpha = 50.0 / self.k
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError(
                f"burn_in ({self.burn_in}) must lie in [0, iterations ({self.iterations}))"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "alpha": self.alpha,
            "beta": self.beta,
            "iterations": self.iterations,
            "burn_in": self.burn_in,
            "seed": self.seed,
        }


@dataclass
class SamplerState:
    """Token-level assignments plus the count matrices they induce.

    ``doc_ids``/``word_ids`` flatten the (replicated-document,
    token-position) grid; ``z[i]`` is token i's topic.
    """

    doc_ids: np.ndarray
    word_ids: np.ndarray
    z: np.ndarray
    n_dk: np.ndarray
    n_kw: np.ndarray
    n_k: np.ndarray

    @property
    def n_topics(self) -> int:
        return self.n_k.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.n_kw.shape[1]

    def validate(self) -> None:
        """Recompute all counts from z and compare; raise on any mismatch."""
        n_docs, n_topics = self.n_dk.shape
        vocab_size = self.n_kw.shape[1]
        dk = np.zeros((n_docs, n_topics), dtype=np.int64)
        np.add.at(dk, (self.doc_ids, self.z), 1)
        if not np.array_equal(dk, self.n_dk):
            raise ValueError("inconsistent counts: n_dk does not match assignments")
        kw = np.zeros((n_topics, vocab_size), dtype=np.int64)
        np.add.at(kw, (self.z, self.word_ids), 1)
        if not np.array_equal(kw, self.n_kw):
            raise ValueError("inconsistent counts: n_kw does not match assignments")
        if not np.array_equal(self.n_kw.sum(axis=1), self.n_k):
            raise ValueError("inconsistent counts: n_k does not match n_kw row sums")
        if self.n_k.sum() != self.z.shape[0]:
            raise ValueError("inconsistent counts: topic totals do not match token count")


class GibbsSampler:
    """Collapsed Gibbs chain over flat token arrays.

    Low-level entry point: :func:`fit` drives it for weighted corpora,
    tests drive it directly for oracle comparisons and benchmarks.
    """

    def __init__(
        self,
        doc_ids: np.ndarray,
        word_ids: np.ndarray,
        n_docs: int,
        vocab_size: int,
        config: LdaConfig,
    ):
        if doc_ids.shape != word_ids.shape:
            raise ValueError("doc_ids and word_ids must have equal length")
        self.doc_ids = np.ascontiguousarray(doc_ids, dtype=np.int32)
        self.word_ids = np.ascontiguousarray(word_ids, dtype=np.int32)
        self.n_docs = n_docs
        self.vocab_size = vocab_size
        self.config = config
        self._rng_state = np.uint64(config.seed)
        z, n_dk, n_kw, n_k, self._rng_state = _sampler.init_assignments(
            self.doc_ids, self.word_ids, n_docs, config.k, vocab_size, self._rng_state
        )
        self.state = SamplerState(
            doc_ids=self.doc_ids, word_ids=self.word_ids, z=z, n_dk=n_dk, n_kw=n_kw, n_k=n_k
        )

    def sweep(self) -> None:
        """Resample every token once."""
        s = self.state
        self._rng_state = _sampler.gibbs_sweep(
            s.doc_ids,
            s.word_ids,
            s.z,
            s.n_dk,
            s.n_kw,
            s.n_k,
            np.float64(self.config.alpha),
            np.float64(self.config.beta),
            self._rng_state,
        )


@dataclass
class LdaModel:
    """Fitted topic model: row-stochastic phi (topics x vocab) and theta
    (original documents x topics), plus what is needed to rank topics."""

    phi: np.ndarray
    theta: np.ndarray
    config: LdaConfig
    vocab: Vocabulary
    post_ids: list[str] = field(default_factory=list)
    replications: list[int] = field(default_factory=list)
    rng_algorithm: str = _sampler.RNG_ALGORITHM

    @property
    def n_topics(self) -> int:
        return self.phi.shape[0]


def _expand_replicas(corpus: WeightedCorpus):
    """Flatten the corpus into token arrays, one virtual doc per replica."""
    doc_ids = []
    word_ids = []
    replica_lengths = []
    replica_owner = []  # replica index -> original doc index
    replica = 0
    for orig, wdoc in enumerate(corpus.docs):
        ids = list(wdoc.doc.term_ids)
        for _ in range(wdoc.replication):
            doc_ids.extend([replica] * len(ids))
            word_ids.extend(ids)
            replica_lengths.append(len(ids))
            replica_owner.append(orig)
            replica += 1
    return (
        np.asarray(doc_ids, dtype=np.int32),
        np.asarray(word_ids, dtype=np.int32),
        np.asarray(replica_lengths, dtype=np.int64),
        np.asarray(replica_owner, dtype=np.int64),
    )


def fit(corpus: WeightedCorpus, config: LdaConfig, check_every_sweep: bool = False) -> LdaModel:
    """Run the Gibbs chain on the replicated corpus and estimate phi, theta.

    ``check_every_sweep`` validates count conservation after each sweep
    (slow; meant for tests).  Without it, the state is validated once
    after initialization and once at the end.
    """
    if not corpus.docs:
        raise EmptyCorpusError("cannot fit on an empty corpus")
    doc_ids, word_ids, replica_lengths, replica_owner = _expand_replicas(corpus)
    n_tokens = word_ids.shape[0]
    if config.k > n_tokens:
        warnings.warn(
            f"k={config.k} exceeds the replicated corpus's {n_tokens} tokens; "
            "some topics will stay empty",
            stacklevel=2,
        )

    vocab_size = len(corpus.vocab)
    sampler = GibbsSampler(doc_ids, word_ids, len(replica_lengths), vocab_size, config)
    sampler.state.validate()

    acc_dk = np.zeros_like(sampler.state.n_dk, dtype=np.float64)
    acc_kw = np.zeros_like(sampler.state.n_kw, dtype=np.float64)
    acc_k = np.zeros_like(sampler.state.n_k, dtype=np.float64)
    retained = 0
    for it in range(config.iterations):
        sampler.sweep()
        if check_every_sweep:
            sampler.state.validate()
        if it >= config.burn_in:
            acc_dk += sampler.state.n_dk
            acc_kw += sampler.state.n_kw
            acc_k += sampler.state.n_k
            retained += 1
    sampler.state.validate()

    mean_dk = acc_dk / retained
    mean_kw = acc_kw / retained
    mean_k = acc_k / retained

    phi = (mean_kw + config.beta) / (mean_k[:, None] + vocab_size * config.beta)
    theta_replica = (mean_dk + config.alpha) / (
        replica_lengths[:, None] + config.k * config.alpha
    )
    n_orig = len(corpus.docs)
    theta = np.zeros((n_orig, config.k), dtype=np.float64)
    np.add.at(theta, replica_owner, theta_replica)
    replications = np.asarray([d.replication for d in corpus.docs], dtype=np.float64)
    theta /= replications[:, None]

    return LdaModel(
        phi=phi,
        theta=theta,
        config=config,
        vocab=corpus.vocab,
        post_ids=[d.doc.post_id for d in corpus.docs],
        replications=[d.replication for d in corpus.docs],
    )


def log_joint(state: SamplerState, config: LdaConfig) -> float:
    """Log of the collapsed joint p(tokens, assignments | alpha, beta).

    Closed form as a ratio of Dirichlet normalizers, usable as a
    convergence diagnostic.  Validates the state first and raises on
    inconsistent counts.
    """
    state.validate()
    alpha, beta = config.alpha, config.beta
    n_topics = state.n_topics
    vocab_size = state.vocab_size
    doc_lengths = state.n_dk.sum(axis=1)

    doc_side = (
        state.n_dk.shape[0] * gammaln(n_topics * alpha)
        - gammaln(doc_lengths + n_topics * alpha).sum()
        + gammaln(state.n_dk + alpha).sum()
        - state.n_dk.size * gammaln(alpha)
    )
    word_side = (
        n_topics * gammaln(vocab_size * beta)
        - gammaln(state.n_k + vocab_size * beta).sum()
        + gammaln(state.n_kw + beta).sum()
        - state.n_kw.size * gammaln(beta)
    )
    return float(doc_side + word_side)


def top_words(model: LdaModel, topic: int, n: int) -> list[tuple[str, float]]:
    """The n highest-probability terms of a topic, descending.

    Ties break toward the smaller term id.  Asking for more terms than
    the vocabulary holds returns all of them.
    """
    if not 0 <= topic < model.n_topics:
        raise ValueError(f"topic {topic} out of range [0, {model.n_topics})")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    row = model.phi[topic]
    n = min(n, row.shape[0])
    order = sorted(range(row.shape[0]), key=lambda w: (-row[w], w))
    return [(model.vocab.id_to_term[w], float(row[w])) for w in order[:n]]


def topic_rank(model: LdaModel) -> list[int]:
    """Topics ordered by corpus-level probability, descending.

    Corpus-level probability of a topic is the replication-weighted mean
    of the theta column; ties break toward the smaller topic id.
    """
    weights = np.asarray(model.replications, dtype=np.float64)
    if weights.size == 0 or weights.sum() == 0:
        weights = np.ones(model.theta.shape[0])
    mass = (model.theta * weights[:, None]).sum(axis=0) / weights.sum()
    return sorted(range(model.n_topics), key=lambda k: (-mass[k], k))


def save_model(model: LdaModel, path: str | Path) -> None:
    """Serialize the model to versioned JSON.

    Floats are written with ``repr`` precision, so a load reproduces the
    matrices bit for bit.
    """
    payload = {
        "format_version": FORMAT_VERSION,
        "rng_algorithm": model.rng_algorithm,
        "config": model.config.to_dict(),
        "vocabulary": {
            "terms": model.vocab.id_to_term,
            "doc_freq": model.vocab.doc_freq,
            "n_docs": model.vocab.n_docs,
        },
        "post_ids": model.post_ids,
        "replications": model.replications,
        "phi": model.phi.tolist(),
        "theta": model.theta.tolist(),
    }
    with Path(path).open("w", encoding="utf-8") as f:
        json.dump(payload, f, ensure_ascii=False, separators=(",", ":"))
        f.write("\n")


def load_model(path: str | Path) -> LdaModel:
    """Load a model written by :func:`save_model`."""
    with Path(path).open("r", encoding="utf-8") as f:
        payload = json.load(f)
    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {version!r}")
    vocab = Vocabulary(
        term_to_id={t: i for i, t in enumerate(payload["vocabulary"]["terms"])},
        id_to_term=list(payload["vocabulary"]["terms"]),
        doc_freq=list(payload["vocabulary"]["doc_freq"]),
        n_docs=payload["vocabulary"]["n_docs"],
    )
    return LdaModel(
        phi=np.asarray(payload["phi"], dtype=np.float64),
        theta=np.asarray(payload["theta"], dtype=np.float64),
        config=LdaConfig(**payload["config"]),
        vocab=vocab,
        post_ids=list(payload["post_ids"]),
        replications=list(payload["replications"]),
        rng_algorithm=payload["rng_algorithm"],
    )
