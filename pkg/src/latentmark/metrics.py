"""Shared evaluation statistics.

All functions are pure and operate on plain arrays. AUC uses the
Mann-Whitney rank formulation with half-credit for ties; TPR@FPR uses the
conservative step-function convention (no interpolation); MMD^2 is the
standard unbiased U-statistic with an RBF kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special
from scipy.stats import rankdata

from .errors import ConfigError, DimensionError, SingleClassError


@dataclass(frozen=True)
class ScoredSample:
    """One detection score with its ground-truth label (True = watermarked)."""

    score: float
    label: bool


def _split_by_label(scores, labels):
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise DimensionError("scores and labels must be equal-length 1-d arrays")
    if not np.isfinite(scores).all():
        raise ConfigError("scores must be finite")
    pos = scores[labels]
    neg = scores[~labels]
    if pos.size == 0 or neg.size == 0:
        raise SingleClassError("need at least one positive and one negative sample")
    return pos, neg


def auc(scores, labels) -> float:
    """Area under the ROC curve: P(pos > neg) + 0.5 * P(pos == neg).

    Computed from average ranks, so ties contribute exactly 1/2.
    """
    pos, neg = _split_by_label(scores, labels)
    ranks = rankdata(np.concatenate([pos, neg]), method="average")
    rank_sum = ranks[: pos.size].sum()
    u_statistic = rank_sum - pos.size * (pos.size + 1) / 2.0
    return float(u_statistic / (pos.size * neg.size))


def tpr_at_fpr(scores, labels, fpr_target: float = 0.01) -> float:
    """TPR at the smallest threshold whose FPR is <= fpr_target.

    Classification is score >= threshold; the threshold sweeps the observed
    score values (step function, no interpolation).
    """
    if not 0 <= fpr_target < 1:
        raise ConfigError("fpr_target must be in [0, 1)")
    pos, neg = _split_by_label(scores, labels)
    best_tpr = 0.0
    for threshold in np.unique(np.concatenate([pos, neg])):
        fpr = np.mean(neg >= threshold)
        if fpr <= fpr_target:
            best_tpr = float(np.mean(pos >= threshold))
            break  # unique() is ascending: the first admissible threshold is the smallest
    return best_tpr


def bit_accuracy(a, b) -> float:
    """Fraction of equal positions between two bit sequences."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape or a.ndim != 1 or a.size == 0:
        raise DimensionError("bit sequences must be non-empty and of equal length")
    return float(np.mean(a == b))


def rbf_kernel(x: np.ndarray, y: np.ndarray, bandwidth: float) -> np.ndarray:
    """exp(-||x - y||^2 / (2 * bandwidth^2)) for all row pairs."""
    if bandwidth <= 0:
        raise ConfigError("bandwidth must be positive")
    sq = (
        np.sum(x * x, axis=1)[:, None]
        + np.sum(y * y, axis=1)[None, :]
        - 2.0 * (x @ y.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.exp(-sq / (2.0 * bandwidth * bandwidth))


def median_heuristic_bandwidth(x: np.ndarray, y: np.ndarray) -> float:
    """Median pairwise Euclidean distance over the pooled sample (1.0 if zero)."""
    pooled = np.vstack([np.atleast_2d(x), np.atleast_2d(y)])
    sq = (
        np.sum(pooled * pooled, axis=1)[:, None]
        + np.sum(pooled * pooled, axis=1)[None, :]
        - 2.0 * (pooled @ pooled.T)
    )
    np.maximum(sq, 0.0, out=sq)
    upper = sq[np.triu_indices(pooled.shape[0], k=1)]
    med = float(np.median(np.sqrt(upper))) if upper.size else 0.0
    return med if med > 0 else 1.0


def mmd2_unbiased(x, y, bandwidth: float) -> float:
    """Unbiased MMD^2 U-statistic with an RBF kernel; may be slightly negative.

    Clamping at zero is left to the reporting layer so the estimator's
    distribution stays untouched for statistical use.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    m, n = x.shape[0], y.shape[0]
    if m < 2 or n < 2:
        raise ConfigError("need at least two samples per set")
    kxx = rbf_kernel(x, x, bandwidth)
    kyy = rbf_kernel(y, y, bandwidth)
    kxy = rbf_kernel(x, y, bandwidth)
    term_x = (kxx.sum() - np.trace(kxx)) / (m * (m - 1))
    term_y = (kyy.sum() - np.trace(kyy)) / (n * (n - 1))
    return float(term_x + term_y - 2.0 * kxy.mean())


def majority_error(p: float, votes: int) -> float:
    """P[Binomial(votes, p) >= ceil(votes/2)]: chance a majority vote is wrong.

    Summed in log space (gammaln-based log pmf + logsumexp) so tiny tails
    come out accurate instead of underflowing.
    """
    if not 0.0 <= p <= 1.0:
        raise ConfigError("p must be in [0, 1]")
    if votes < 1 or votes % 2 == 0:
        raise ConfigError("votes must be odd and >= 1")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    k = np.arange((votes + 1) // 2, votes + 1, dtype=np.float64)
    log_comb = special.gammaln(votes + 1) - special.gammaln(k + 1) - special.gammaln(votes - k + 1)
    log_terms = log_comb + k * np.log(p) + (votes - k) * np.log1p(-p)
    return float(np.exp(special.logsumexp(log_terms)))


def ks_test_standard_normal(values) -> tuple:
    """Kolmogorov-Smirnov test of a sample against N(0, 1).

    Returns (statistic, asymptotic p-value). The p-value uses the limiting
    Kolmogorov distribution, which is accurate at the sample sizes used here
    (n >= 1000).
    """
    values = np.sort(np.asarray(values, dtype=np.float64))
    n = values.size
    if n < 2:
        raise ConfigError("need at least two samples")
    cdf = special.ndtr(values)
    upper = np.max(np.arange(1, n + 1) / n - cdf)
    lower = np.max(cdf - np.arange(0, n) / n)
    stat = max(upper, lower)
    pvalue = float(special.kolmogorov(np.sqrt(n) * stat))
    return float(stat), pvalue
