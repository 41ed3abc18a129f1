"""Consecutive residue/nonresidue patterns, twin-prime pairs and gap
statistics over [1, p-1] for a small prime p.

Gap convention: a "pair start" is an r with r and r+1 both in the chosen
class; the gap between two events at r and r+d is d-1 (d >= 2).  Runs of
three or more same-class elements create overlapping starts, so statistics
are reported under two readings: maximal runs collapsed to single events
(primary), and raw starts with the d = 1 differences dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bigmod import jacobi, prime_mask, primes_up_to, von_mangoldt
from .errors import DomainError, ResourceError
from .residues import Verdict

_CENSUS_LIMIT = 10**7

PAIR_KEYS = ("RR", "RN", "NR", "NN")
REFINED_KEYS = ("RpRp", "RpRc", "RcRp", "RcRc", "NpNp", "NpNc", "NcNp", "NcNc")


@dataclass(frozen=True)
class GapStats:
    """Gap statistics for one class; absent=True when fewer than two events
    exist (statistics are then NaN/empty, reported rather than raised)."""

    which: Verdict
    starts: int
    events: int
    mean_gap: float
    max_gap: int
    histogram: dict[int, int]
    raw_mean_gap: float
    raw_max_gap: int
    raw_histogram: dict[int, int]
    ks_uniform: float
    absent: bool


@dataclass(frozen=True)
class PatternCensus:
    p: int
    pair_counts: dict[str, int]
    refined_counts: dict[str, int]
    twin_qualifying: int
    twin_total: int
    gap_residue: GapStats
    gap_nonresidue: GapStats


@dataclass(frozen=True)
class WeightedPatternSum:
    """Both evaluation forms of the weighted consecutive-nonresidue sum;
    they are algebraically identical and must agree to 1e-9."""

    p: int
    x: int
    quarter_product_form: float
    indicator_form: float
    skipped: int


@dataclass(frozen=True)
class TwinDensity:
    count: int
    total: int
    fraction: float | None


def _residue_mask(p: int) -> np.ndarray:
    """mask[n] = n is a nonzero quadratic residue mod p, for n in [0, p)."""
    squares = np.unique(np.arange(1, p, dtype=np.int64) ** 2 % p)
    mask = np.zeros(p, dtype=bool)
    mask[squares] = True
    return mask


def _gap_stats_from_starts(starts: np.ndarray, p: int, which: Verdict) -> GapStats:
    n_starts = len(starts)
    if n_starts == 0:
        return GapStats(which=which, starts=0, events=0, mean_gap=math.nan, max_gap=0,
                        histogram={}, raw_mean_gap=math.nan, raw_max_gap=0,
                        raw_histogram={}, ks_uniform=math.nan, absent=True)

    # collapse maximal runs of consecutive starts to single events
    keep = np.ones(n_starts, dtype=bool)
    keep[1:] = np.diff(starts) > 1
    events = starts[keep]

    def summarize(xs: np.ndarray):
        d = np.diff(xs)
        gaps = d[d >= 2] - 1
        if len(gaps) == 0:
            return math.nan, 0, {}
        sizes, counts = np.unique(gaps, return_counts=True)
        hist = {int(s): int(c) for s, c in zip(sizes, counts)}
        return float(gaps.mean()), int(gaps.max()), hist

    mean_g, max_g, hist = summarize(events)
    raw_mean, raw_max, raw_hist = summarize(starts)

    # Kolmogorov-Smirnov distance of start positions against uniform on [1, p-1]
    ecdf = np.arange(1, n_starts + 1) / n_starts
    uniform = starts / (p - 1)
    ks = float(np.max(np.maximum(np.abs(ecdf - uniform), np.abs(ecdf - 1 / n_starts - uniform))))

    absent = len(events) < 2
    return GapStats(which=which, starts=n_starts, events=len(events),
                    mean_gap=mean_g, max_gap=max_g, histogram=hist,
                    raw_mean_gap=raw_mean, raw_max_gap=raw_max, raw_histogram=raw_hist,
                    ks_uniform=ks, absent=absent)


def gap_statistics(p: int, which: Verdict) -> GapStats:
    """Gap statistics of consecutive same-class pairs in [1, p-1]."""
    if p > _CENSUS_LIMIT:
        raise ResourceError(f"census budget is p <= {_CENSUS_LIMIT}")
    rmask = _residue_mask(p)
    cls = rmask if which is Verdict.RESIDUE else ~rmask
    n = np.arange(1, p - 1)
    starts = n[cls[n] & cls[n + 1]]
    return _gap_stats_from_starts(starts, p, which)


def pattern_census(p: int) -> PatternCensus:
    """Single pass over [1, p-1]: binary pair patterns, prime/composite
    refinements of RR and NN, twin-nonresidue stats and gap statistics."""
    if p > _CENSUS_LIMIT:
        raise ResourceError(f"census budget is p <= {_CENSUS_LIMIT}")
    if p < 5:
        raise DomainError("census needs p >= 5")
    rmask = _residue_mask(p)
    pmask = prime_mask(p - 1)

    n = np.arange(1, p - 1)
    left_r = rmask[n]
    right_r = rmask[n + 1]
    code = (~left_r).astype(np.int64) * 2 + (~right_r).astype(np.int64)
    counts = np.bincount(code, minlength=4)
    pair_counts = {key: int(counts[i]) for i, key in enumerate(PAIR_KEYS)}

    refined = {}
    left_p = pmask[n]
    right_p = pmask[n + 1]
    for base, sel in (("R", left_r & right_r), ("N", ~left_r & ~right_r)):
        for lp in (True, False):
            for rp in (True, False):
                key = f"{base}{'p' if lp else 'c'}{base}{'p' if rp else 'c'}"
                m = sel & (left_p == lp) & (right_p == rp)
                refined[key] = int(m.sum())

    twins = twin_nonresidue_density(p, p - 1)

    return PatternCensus(
        p=p,
        pair_counts=pair_counts,
        refined_counts=refined,
        twin_qualifying=twins.count,
        twin_total=twins.total,
        gap_residue=_gap_stats_from_starts(n[left_r & right_r], p, Verdict.RESIDUE),
        gap_nonresidue=_gap_stats_from_starts(n[~left_r & ~right_r], p, Verdict.NONRESIDUE),
    )


def weighted_pattern_sum(p: int, x: int, pattern: str = "NN_weighted") -> WeightedPatternSum:
    """(1/4) sum (1 - (n|p)) (1 - (n+1|p)) Lambda(n) over 2 <= n <= x, and the
    same sum through the 0/1 nonresidue indicators; n with p | n(n+1) are
    skipped and counted."""
    if pattern != "NN_weighted":
        raise DomainError(f"unknown pattern {pattern!r}")
    if x > p:
        raise DomainError(f"need x <= p, got x={x}, p={p}")
    quarter = 0.0
    indicator = 0.0
    skipped = 0
    for n in range(2, x + 1):
        if n % p == 0 or (n + 1) % p == 0:
            skipped += 1
            continue
        lam = von_mangoldt(n)
        if lam == 0.0:
            continue
        s1 = jacobi(n, p)
        s2 = jacobi(n + 1, p)
        quarter += 0.25 * (1 - s1) * (1 - s2) * lam
        indicator += (s1 == -1) * (s2 == -1) * lam
    return WeightedPatternSum(p=p, x=x, quarter_product_form=quarter,
                              indicator_form=indicator, skipped=skipped)


def twin_nonresidue_density(p: int, x: int) -> TwinDensity:
    """Among twin-prime pairs (n, n+2) with n+2 <= x, the fraction with both
    members quadratic nonresidues mod p.  fraction is None when no twin pair
    exists below x."""
    if x > p:
        raise DomainError(f"need x <= p, got x={x}, p={p}")
    primes = primes_up_to(x)
    if len(primes) < 2:
        return TwinDensity(0, 0, None)
    lead = primes[:-1][np.diff(primes) == 2]
    total = 0
    count = 0
    for n in lead:
        n = int(n)
        if n % p == 0 or (n + 2) % p == 0:
            continue
        total += 1
        if jacobi(n, p) == -1 and jacobi(n + 2, p) == -1:
            count += 1
    if total == 0:
        return TwinDensity(0, 0, None)
    return TwinDensity(count, total, count / total)
