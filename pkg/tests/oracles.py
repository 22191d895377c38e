"""Brute-force reference implementations used only by the test suite.

Nothing here imports the code under test.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from fractions import Fraction


def window_talk_oracle(utterances, party_of, parties, start, end):
    """Per-party talk inside [start, end) by explicit interval intersection."""
    out = {p: 0.0 for p in parties}
    for u in utterances:
        lo = max(u.start, start)
        hi = min(u.end, end)
        if hi > lo:
            out[party_of[u.speaker]] += hi - lo
    return out


def flips_oracle(labels: str) -> int:
    """Run-length count over a label string such as ``"BRBGR"``."""
    kept = labels.replace("G", "")
    runs = [k for k, _ in itertools.groupby(kept)]
    return max(len(runs) - 1, 0)


def midranks_oracle(values):
    return [
        1 + sum(1 for y in values if y < x) + (sum(1 for y in values if y == x) - 1) / 2
        for x in values
    ]


def mwu_exact_p(a, b):
    """Two-sided exact p by enumerating every split of the pooled ranks."""
    pooled = list(a) + list(b)
    ranks = midranks_oracle(pooled)
    na = len(a)
    obs = sum(ranks[:na])
    lo = hi = total = 0
    for combo in itertools.combinations(range(len(pooled)), na):
        s = sum(ranks[i] for i in combo)
        total += 1
        lo += s <= obs + 1e-9
        hi += s >= obs - 1e-9
    return min(1.0, 2 * min(lo, hi) / total)


def wilcoxon_exact_p(pairs):
    """Two-sided exact p by enumerating every sign pattern."""
    diffs = [y - x for x, y in pairs if y != x]
    ranks = midranks_oracle([abs(d) for d in diffs])
    obs = sum(r for r, d in zip(ranks, diffs) if d > 0)
    lo = hi = total = 0
    for signs in itertools.product((0, 1), repeat=len(diffs)):
        s = sum(r for r, keep in zip(ranks, signs) if keep)
        total += 1
        lo += s <= obs + 1e-9
        hi += s >= obs - 1e-9
    return min(1.0, 2 * min(lo, hi) / total)


def binomial_upper(successes, n):
    return Fraction(sum(math.comb(n, k) for k in range(successes, n + 1)), 2**n)


def binomial_lower(successes, n):
    return Fraction(sum(math.comb(n, k) for k in range(0, successes + 1)), 2**n)


def fightin_words_oracle(tok_docs_a, tok_docs_b, ngram_max, alpha):
    """z per n-gram by direct formula evaluation over pre-tokenized documents."""

    def count(docs):
        c = Counter()
        for toks in docs:
            for n in range(1, ngram_max + 1):
                for i in range(len(toks) - n + 1):
                    c[tuple(toks[i : i + n])] += 1
        return c

    ca, cb = count(tok_docs_a), count(tok_docs_b)
    vocab = set(ca) | set(cb)
    n1, n2 = sum(ca.values()), sum(cb.values())
    a0 = alpha * len(vocab)
    z = {}
    for g in vocab:
        y1, y2 = ca[g], cb[g]
        delta = (
            math.log(y1 + alpha) - math.log(n1 + a0 - y1 - alpha)
            - math.log(y2 + alpha) + math.log(n2 + a0 - y2 - alpha)
        )
        z[g] = delta / math.sqrt(1 / (y1 + alpha) + 1 / (y2 + alpha))
    return z


def ms_sweep_prf(reference, hypothesis):
    """PRF on a 1 ms grid for integer-millisecond intervals."""
    def cover(ivs):
        s = set()
        for a, b in ivs:
            s.update(range(round(a * 1000), round(b * 1000)))
        return s

    r, h = cover(reference), cover(hypothesis)
    o = len(r & h)
    p = o / len(h) if h else 0.0
    rc = o / len(r) if r else 0.0
    f = 0.0 if o == 0 else 2 * p * rc / (p + rc)
    return p, rc, f


def kappa_oracle(table):
    """Cohen's kappa from a square contingency table (list of rows)."""
    n = sum(sum(r) for r in table)
    po = Fraction(sum(table[i][i] for i in range(len(table))), n)
    rows = [sum(r) for r in table]
    cols = [sum(table[i][j] for i in range(len(table))) for j in range(len(table))]
    pe = Fraction(sum(r * c for r, c in zip(rows, cols)), n * n)
    return (po - pe) / (1 - pe)
