"""Compiled collapsed-Gibbs kernels over flat token arrays.

Layout: every token of the (replicated) corpus occupies one slot of three
parallel arrays, ``doc_ids``, ``word_ids``, ``z``.  Count matrices are
``n_dk`` (docs x topics), ``n_kw`` (topics x vocab), ``n_k`` (topics).
A sweep resamples each token's topic from

    p(z=k | rest) ~ (n_dk[d,k] + alpha) * (n_kw[k,w] + beta) / (n_k[k] + V*beta)

with the token's own assignment removed from the counts; the constant
per-document denominator is dropped.

Randomness comes from an inline splitmix64 generator so that runs are
bit-reproducible for a given 64-bit seed on any platform.  State is
threaded through the kernels explicitly (numba cannot mutate scalars in
place).
"""

from __future__ import annotations

import numpy as np
from numba import njit

RNG_ALGORITHM = "splitmix64"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV_2_53 = np.float64(1.0 / 9007199254740992.0)  # 2**-53


@njit(cache=True)
def _next_uniform(state):
    """Advance splitmix64 once; return (u, state) with u in [0, 1)."""
    state = state + _GOLDEN
    z = state
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return np.float64(z >> _S11) * _INV_2_53, state


@njit(cache=True)
def init_assignments(doc_ids, word_ids, n_docs, n_topics, vocab_size, state):
    """Draw uniform initial topics and build the count matrices."""
    n_tokens = doc_ids.shape[0]
    z = np.empty(n_tokens, dtype=np.int32)
    n_dk = np.zeros((n_docs, n_topics), dtype=np.int32)
    n_kw = np.zeros((n_topics, vocab_size), dtype=np.int32)
    n_k = np.zeros(n_topics, dtype=np.int64)
    for i in range(n_tokens):
        u, state = _next_uniform(state)
        k = int(u * n_topics)
        if k >= n_topics:  # guard against top-of-range rounding
            k = n_topics - 1
        z[i] = k
        n_dk[doc_ids[i], k] += 1
        n_kw[k, word_ids[i]] += 1
        n_k[k] += 1
    return z, n_dk, n_kw, n_k, state


@njit(cache=True)
def gibbs_sweep(doc_ids, word_ids, z, n_dk, n_kw, n_k, alpha, beta, state):
    """One full sweep: resample every token in order. Mutates counts and z."""
    n_tokens = doc_ids.shape[0]
    n_topics = n_k.shape[0]
    vbeta = np.float64(n_kw.shape[1]) * beta
    p = np.empty(n_topics, dtype=np.float64)
    for i in range(n_tokens):
        d = doc_ids[i]
        w = word_ids[i]
        k = z[i]
        n_dk[d, k] -= 1
        n_kw[k, w] -= 1
        n_k[k] -= 1
        total = 0.0
        for t in range(n_topics):
            pt = (n_dk[d, t] + alpha) * (n_kw[t, w] + beta) / (n_k[t] + vbeta)
            p[t] = pt
            total += pt
        u, state = _next_uniform(state)
        r = u * total
        acc = 0.0
        k = n_topics - 1
        for t in range(n_topics):
            acc += p[t]
            if r < acc:
                k = t
                break
        z[i] = k
        n_dk[d, k] += 1
        n_kw[k, w] += 1
        n_k[k] += 1
    return state
