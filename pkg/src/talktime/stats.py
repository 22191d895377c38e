"""Corpus statistics: Fightin' Words, rank tests, bootstrap, agreement, matching.

The rank tests switch between an exact null distribution (small samples)
and a normal approximation (corpus scale). Exact distributions are built by
dynamic programming over doubled midranks, which keeps ties exact.
"""

from __future__ import annotations

import logging
import math
import re
import statistics
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .model import DEFAULT_MAX_ENJOYMENT, SurveyRecord

log = logging.getLogger(__name__)

EXACT_MAX_N_MWU = 20
EXACT_MAX_N_WILCOXON = 25


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    method: str
    n: tuple[int, ...]

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict:
        return {"statistic": self.statistic, "p_value": self.p_value, "method": self.method, "n": list(self.n)}


# ---------------------------------------------------------------- Fightin' Words

_APOSTROPHES = re.compile(r"['‘’ʼ`]")
_NON_WORD = re.compile(r"[^\w\s]|_")


def tokenize(text: str) -> list[str]:
    """Lowercase, delete apostrophes in place, split on everything else.

    ``"I'm sure it didn't"`` becomes ``["im", "sure", "it", "didnt"]``.
    """
    text = _APOSTROPHES.sub("", text.lower())
    return _NON_WORD.sub(" ", text).split()


def ngrams(tokens: Sequence[str], n_max: int) -> Iterable[tuple[str, ...]]:
    for n in range(1, n_max + 1):
        for i in range(len(tokens) - n + 1):
            yield tuple(tokens[i : i + n])


def ngram_counts(docs: Iterable[str], n_max: int) -> Counter:
    counts: Counter = Counter()
    for doc in docs:
        counts.update(ngrams(tokenize(doc), n_max))
    return counts


@dataclass(frozen=True)
class FightinWordsEntry:
    ngram: tuple[str, ...]
    count_a: int
    count_b: int
    z: float

    @property
    def phrase(self) -> str:
        return " ".join(self.ngram)


def fightin_words(
    docs_a: Sequence[str],
    docs_b: Sequence[str],
    ngram_max: int = 3,
    alpha: float = 0.01,
) -> list[FightinWordsEntry]:
    """Weighted log-odds ratio with a symmetric Dirichlet prior.

    Each n-gram gets pseudo-count ``alpha`` and the prior total is
    ``alpha * |V|``. Positive z means the n-gram is relatively more frequent
    in ``docs_a``. Entries are ranked by z, descending.
    """
    if not docs_a or not docs_b:
        raise ValueError("both corpora must be non-empty")
    if ngram_max < 1 or not alpha > 0:
        raise ValueError("ngram_max must be >= 1 and alpha positive")
    ca = ngram_counts(docs_a, ngram_max)
    cb = ngram_counts(docs_b, ngram_max)
    vocab = set(ca) | set(cb)
    if not vocab:
        raise ValueError("empty vocabulary")
    if len(vocab) < 2:
        # the complement count n + a0 - y - alpha is zero, so the odds are undefined
        raise ValueError("vocabulary needs at least two distinct n-grams")
    n1, n2 = sum(ca.values()), sum(cb.values())
    if n1 == 0 or n2 == 0:
        raise ValueError("one corpus contains no tokens")
    a0 = alpha * len(vocab)
    out = []
    for g in vocab:
        y1, y2 = ca[g], cb[g]
        delta = math.log((y1 + alpha) / (n1 + a0 - y1 - alpha)) - math.log(
            (y2 + alpha) / (n2 + a0 - y2 - alpha)
        )
        var = 1.0 / (y1 + alpha) + 1.0 / (y2 + alpha)
        out.append(FightinWordsEntry(g, y1, y2, delta / math.sqrt(var)))
    out.sort(key=lambda e: (-e.z, e.ngram))
    return out


# ---------------------------------------------------------------- rank tests

def midranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with ties given the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        r = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    return ranks


def _tie_term(values: Iterable[float]) -> int:
    return sum(t**3 - t for t in Counter(values).values())


def _norm_two_sided(z: float) -> float:
    return min(1.0, math.erfc(abs(z) / math.sqrt(2)))


def _subset_sum_counts(weights: Sequence[int], k: int) -> dict[int, int]:
    """Number of size-``k`` subsets of ``weights`` achieving each sum."""
    # dp[j] maps sum -> count over subsets of size j seen so far
    dp: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    dp[0][0] = 1
    for w in weights:
        for j in range(min(k, len(weights)), 0, -1):
            prev = dp[j - 1]
            if not prev:
                continue
            cur = dp[j]
            for s, c in prev.items():
                cur[s + w] = cur.get(s + w, 0) + c
    return dp[k]


def _two_sided_from_counts(counts: Mapping[int, int], observed: int) -> float:
    total = sum(counts.values())
    lo = sum(c for s, c in counts.items() if s <= observed)
    hi = sum(c for s, c in counts.items() if s >= observed)
    return min(1.0, 2 * min(lo, hi) / total)


def mann_whitney_u(a: Sequence[float], b: Sequence[float], method: str = "auto") -> TestResult:
    """Two-sided Mann-Whitney U test; ``statistic`` is U for sample ``a``.

    ``method`` is ``"exact"`` (conditional permutation distribution, ties
    included), ``"normal"`` (tie- and continuity-corrected approximation) or
    ``"auto"``, which goes exact when the pooled size is at most
    ``EXACT_MAX_N_MWU``.
    """
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        raise ValueError("both samples must be non-empty")
    pooled = list(a) + list(b)
    n = na + nb
    ranks = midranks(pooled)
    rank_sum = sum(ranks[:na])
    u = rank_sum - na * (na + 1) / 2
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_N_MWU else "normal"
    if len(set(pooled)) == 1:
        return TestResult(u, 1.0, f"mann-whitney-{method}", (na, nb))
    if method == "exact":
        doubled = [int(round(2 * r)) for r in ranks]
        counts = _subset_sum_counts(doubled, na)
        p = _two_sided_from_counts(counts, int(round(2 * rank_sum)))
    elif method == "normal":
        mu = na * nb / 2
        var = na * nb / 12 * ((n + 1) - _tie_term(pooled) / (n * (n - 1)))
        if var <= 0:
            p = 1.0
        else:
            z = max(abs(u - mu) - 0.5, 0.0) / math.sqrt(var)
            p = _norm_two_sided(z)
    else:
        raise ValueError(f"unknown method {method!r}")
    return TestResult(u, p, f"mann-whitney-{method}", (na, nb))


def wilcoxon_signed_rank(pairs: Sequence[tuple[float, float]], method: str = "auto") -> TestResult:
    """Two-sided Wilcoxon signed-rank test on paired observations.

    Differences are ``second - first``; zero differences are dropped (no
    Pratt adjustment). ``statistic`` is ``min(W+, W-)``.
    """
    diffs = [y - x for x, y in pairs if y - x != 0]
    if not diffs:
        raise ValueError("all differences are zero")
    n = len(diffs)
    absd = [abs(d) for d in diffs]
    ranks = midranks(absd)
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    total = n * (n + 1) / 2
    w = min(w_plus, total - w_plus)
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_N_WILCOXON else "normal"
    if method == "exact":
        doubled = [int(round(2 * r)) for r in ranks]
        # Each rank enters W+ independently with probability 1/2.
        dist: dict[int, int] = {0: 1}
        for r in doubled:
            nxt: dict[int, int] = {}
            for s, c in dist.items():
                nxt[s] = nxt.get(s, 0) + c
                nxt[s + r] = nxt.get(s + r, 0) + c
            dist = nxt
        p = _two_sided_from_counts(dist, int(round(2 * w_plus)))
    elif method == "normal":
        mu = total / 2
        var = n * (n + 1) * (2 * n + 1) / 24 - _tie_term(absd) / 48
        p = 1.0 if var <= 0 else _norm_two_sided((w - mu) / math.sqrt(var))
    else:
        raise ValueError(f"unknown method {method!r}")
    return TestResult(w, p, f"wilcoxon-{method}", (n,))


def sign_test(successes: int, n: int, tail: str = "two") -> TestResult:
    """Exact binomial sign test with success probability 1/2.

    One-tailed p is ``P(X >= successes)``. Ties must be removed by the
    caller before counting ``n``.
    """
    if n < 1:
        raise ValueError("sign test needs n >= 1")
    if not (0 <= successes <= n):
        raise ValueError("successes must be in [0, n]")
    denom = 2**n
    upper = sum(math.comb(n, k) for k in range(successes, n + 1))
    if tail == "one":
        p = upper / denom
    elif tail == "two":
        lower = sum(math.comb(n, k) for k in range(0, successes + 1))
        p = min(1.0, 2 * min(lower, upper) / denom)
    else:
        raise ValueError("tail must be 'one' or 'two'")
    return TestResult(float(successes), p, f"sign-{tail}-tailed", (n,))


# ---------------------------------------------------------------- bootstrap

def bootstrap_ci(
    samples: Sequence[float],
    statistic: str = "mean",
    level: float = 0.95,
    n_resamples: int = 2000,
    seed: int = 0,
    max_value: Optional[float] = None,
) -> tuple[float, float]:
    """Percentile bootstrap interval for the mean or the share at ``max_value``.

    ``statistic="proportion_max"`` measures the fraction of observations equal
    to ``max_value`` (e.g. the top enjoyment score).
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("samples must be non-empty")
    if not (0 < level < 1):
        raise ValueError("level must be in (0, 1)")
    if statistic == "proportion_max":
        if max_value is None:
            raise ValueError("proportion_max needs max_value")
        x = (x == max_value).astype(float)
    elif statistic != "mean":
        raise ValueError(f"unknown statistic {statistic!r}")
    rng = np.random.default_rng(seed)
    stats = np.empty(n_resamples)
    chunk = max(1, 2_000_000 // x.size)
    for lo in range(0, n_resamples, chunk):
        hi = min(n_resamples, lo + chunk)
        idx = rng.integers(0, x.size, size=(hi - lo, x.size))
        stats[lo:hi] = x[idx].mean(axis=1)
    tail = (1 - level) / 2
    q_lo, q_hi = np.quantile(stats, [tail, 1 - tail])
    return float(q_lo), float(q_hi)


# ---------------------------------------------------------------- agreement

def cohens_kappa(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    if len(labels_a) != len(labels_b):
        raise ValueError("label lists differ in length")
    n = len(labels_a)
    if n == 0:
        raise ValueError("need at least one label pair")
    p_o = sum(x == y for x, y in zip(labels_a, labels_b)) / n
    ca, cb = Counter(labels_a), Counter(labels_b)
    p_e = sum(ca[c] * cb[c] for c in ca) / (n * n)
    if p_e == 1:
        if p_o == 1:
            return 1.0
        raise ValueError("kappa undefined: chance agreement is 1")
    return (p_o - p_e) / (1 - p_e)


# ---------------------------------------------------------------- matching

def match_pairs(
    group_a: Sequence[tuple[Hashable, Sequence[float]]],
    group_b: Sequence[tuple[Hashable, Sequence[float]]],
    tolerance: Union[float, Sequence[float]],
) -> list[tuple[Hashable, Hashable]]:
    """Greedy cross-group pairing of items whose keys agree within tolerance.

    Candidate pairs are visited by increasing max componentwise distance
    (ties in input order) and accepted when every component is within its
    tolerance and neither item is taken yet.
    """
    if not group_a or not group_b:
        return []
    dim = len(group_a[0][1])
    tol = [float(tolerance)] * dim if isinstance(tolerance, (int, float)) else list(tolerance)
    if len(tol) != dim:
        raise ValueError("tolerance dimension mismatch")
    cands = []
    for i, (_, ka) in enumerate(group_a):
        for j, (_, kb) in enumerate(group_b):
            if len(ka) != dim or len(kb) != dim:
                raise ValueError("key vectors differ in dimension")
            diffs = [abs(x - y) for x, y in zip(ka, kb)]
            if all(d <= t for d, t in zip(diffs, tol)):
                cands.append((max(diffs), i, j))
    cands.sort()
    used_a, used_b, out = set(), set(), []
    for _, i, j in cands:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        out.append((group_a[i][0], group_b[j][0]))
    return out


# ---------------------------------------------------------------- intervals

Interval = tuple[float, float]


def union_intervals(intervals: Iterable[Interval]) -> list[Interval]:
    merged: list[list[float]] = []
    for s, e in sorted(intervals):
        if merged and s <= merged[-1][1]:
            if e > merged[-1][1]:
                merged[-1][1] = e
        else:
            merged.append([s, e])
    return [(s, e) for s, e in merged]


def total_length(intervals: Iterable[Interval]) -> float:
    return sum(e - s for s, e in intervals)


def intersection_length(a: Sequence[Interval], b: Sequence[Interval]) -> float:
    """Overlap of two already-unioned, sorted interval lists."""
    i = j = 0
    total = 0.0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if hi > lo:
            total += hi - lo
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return total


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def interval_prf(reference: Iterable[Interval], hypothesis: Iterable[Interval]) -> PRF:
    """Temporal precision/recall/F1 of ``hypothesis`` against ``reference``.

    Both lists are unioned first, so self-overlaps never double count.
    """
    for s, e in list(reference) + list(hypothesis):
        if not e > s:
            raise ValueError(f"invalid interval ({s}, {e})")
    ref = union_intervals(reference)
    hyp = union_intervals(hypothesis)
    r_len, h_len = total_length(ref), total_length(hyp)
    overlap = intersection_length(ref, hyp)
    if h_len == 0:
        log.warning("empty hypothesis; precision reported as 0")
        precision = 0.0
    else:
        precision = overlap / h_len
    if r_len == 0:
        log.warning("empty reference; recall reported as 0")
        recall = 0.0
    else:
        recall = overlap / r_len
    f1 = 0.0 if overlap == 0 else 2 * precision * recall / (precision + recall)
    return PRF(precision, recall, f1)


# ---------------------------------------------------------------- summaries

@dataclass(frozen=True)
class GroupSummary:
    mean_enjoyment: float
    pct_max: float
    n: int

    def to_dict(self) -> dict:
        return {"mean_enjoyment": self.mean_enjoyment, "pct_max": self.pct_max, "n": self.n}


def group_summary(
    records: Iterable[Union[SurveyRecord, int]], max_score: int = DEFAULT_MAX_ENJOYMENT
) -> GroupSummary:
    scores = [r.enjoyment if isinstance(r, SurveyRecord) else r for r in records]
    if not scores:
        raise ValueError("empty group")
    return GroupSummary(
        mean_enjoyment=statistics.fmean(scores),
        pct_max=sum(1 for s in scores if s == max_score) / len(scores),
        n=len(scores),
    )


@dataclass
class CrosstabRow:
    n: int
    counts: dict[str, int] = field(default_factory=dict)
    shares: dict[str, float] = field(default_factory=dict)
    low_n: bool = False

    def to_dict(self) -> dict:
        return {"n": self.n, "counts": self.counts, "shares": self.shares, "low_n": self.low_n}


def crosstab(
    rows: Iterable[tuple[Hashable, Optional[str]]], min_n: int = 30
) -> dict[str, CrosstabRow]:
    """Outcome shares per stereotype; rows with fewer than ``min_n`` cases are flagged."""
    grouped: dict[str, Counter] = {}
    dropped = 0
    for stereo, outcome in rows:
        if outcome is None or outcome == "":
            dropped += 1
            continue
        key = getattr(stereo, "value", stereo)
        grouped.setdefault(str(key), Counter())[str(outcome)] += 1
    if dropped:
        log.warning("crosstab: excluded %d row(s) with empty outcome", dropped)
    outcomes = sorted({o for c in grouped.values() for o in c})
    table = {}
    for key in sorted(grouped):
        c = grouped[key]
        n = sum(c.values())
        table[key] = CrosstabRow(
            n=n,
            counts={o: c[o] for o in outcomes},
            shares={o: c[o] / n for o in outcomes},
            low_n=n < min_n,
        )
    return table


def quartile_cuts(values: Sequence[float]) -> tuple[float, float]:
    """Lower and upper quartiles (inclusive method)."""
    if len(values) == 1:
        return values[0], values[0]
    q = statistics.quantiles(values, n=4, method="inclusive")
    return q[0], q[2]
