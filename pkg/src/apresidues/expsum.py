"""Desk-scale laboratory for exponential-sum estimates and fiber counts.

Everything here is exact complex arithmetic over a small prime field; bounds
of the form sqrt(p) * log(p)**2 are measured, never assumed.  Ratios above 1
are findings to report, not assertion failures -- the implied constants are
unspecified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .bigmod import jacobi
from .errors import DomainError, ResourceError
from .residues import SmallFieldTable

_EXPSUM_LIMIT = 10**6
_UHAT_LIMIT = 10**4
_FIBER_LIMIT = 10**5


def theoretical_bound(p: int) -> float:
    """The measuring stick sqrt(p) * log(p)**2."""
    return math.sqrt(p) * math.log(p) ** 2


@dataclass(frozen=True)
class ExpSumSample:
    """One incomplete exponential sum sum_{n<=x} e(b * tau**n / p) with its
    magnitude measured against sqrt(p) * log(p)**2."""

    p: int
    tau: int
    b: int
    x_cutoff: int
    value: complex
    magnitude: float
    bound: float
    ratio: float


@dataclass(frozen=True)
class UHatSample:
    """The double sum over b of e(-a*b/p) * sum over the nonresidue
    enumeration of e(b * tau**(2n+1) / p), for a quadratic residue a.

    identity_residual = value + half_sum is the quantity the decomposition
    identity bounds by O(sqrt(p) log(p)**2); half_sum is the b = 1 inner sum.
    """

    p: int
    a: int
    value: complex
    half_sum: complex
    identity_residual: complex
    bound: float
    ratio: float


@dataclass(frozen=True)
class FiberHistogram:
    """Fiber-size census of one of the error-term maps over its finite domain.

    histogram maps fiber size -> number of nonzero targets attaining it;
    zero_hits counts domain points landing on 0, so
    sum(size * count) + zero_hits == domain_size.
    """

    p: int
    x: int
    map_name: str
    histogram: dict[int, int]
    zero_hits: int
    domain_size: int
    max_fiber: int


def incomplete_expsum(b: int, x_cutoff: int, table: SmallFieldTable) -> ExpSumSample:
    """Evaluate sum_{n=1}^{x} e(2*pi*i * b * tau**n / p) by incremental powers."""
    p = table.p
    if p > _EXPSUM_LIMIT:
        raise ResourceError(f"incomplete sums are limited to p <= {_EXPSUM_LIMIT}")
    if b % p == 0:
        raise DomainError("b must be nonzero mod p")
    if not 1 <= x_cutoff <= p - 1:
        raise DomainError(f"x_cutoff must be in [1, p-1], got {x_cutoff}")
    value = kernels.incomplete_sum(b % p, x_cutoff, table.tau, p, table.roots())
    magnitude = abs(value)
    bound = theoretical_bound(p)
    return ExpSumSample(
        p=p, tau=table.tau, b=b % p, x_cutoff=x_cutoff,
        value=value, magnitude=magnitude, bound=bound, ratio=magnitude / bound,
    )


def max_ratio_table(table: SmallFieldTable) -> np.ndarray:
    """For every b in [1, p-1], the largest |partial sum| over all cutoffs
    x in [1, p-1], divided by sqrt(p) * log(p)**2.

    Returns a float array indexed by b-1; its max is the empirical constant
    for the incomplete-sum bound at this prime.
    """
    p = table.p
    if p > _EXPSUM_LIMIT:
        raise ResourceError(f"incomplete sums are limited to p <= {_EXPSUM_LIMIT}")
    maxima = kernels.prefix_max_abs(table.powers[1:].copy(), p, table.roots())
    return maxima / theoretical_bound(p)


def halfsums(table: SmallFieldTable) -> np.ndarray:
    """S[b] = sum over the quadratic nonresidue enumeration tau**(2n+1) of
    e(2*pi*i * b * u / p), for every b in [0, p)."""
    p = table.p
    if p > _UHAT_LIMIT:
        raise ResourceError(f"half-sum tables are limited to p <= {_UHAT_LIMIT}")
    return kernels.halfsums(table.nonresidue_coset(2), p, table.roots())


def _require_residue(a: int, table: SmallFieldTable) -> int:
    p = table.p
    a %= p
    if a == 0:
        raise DomainError("a must be nonzero mod p")
    if jacobi(a, p) != 1:
        raise DomainError(f"a={a} is a quadratic nonresidue; the hypothesis needs a residue")
    return a


def fourier_U_hat(a: int, table: SmallFieldTable) -> UHatSample:
    """Literal double-sum evaluation (outer b, inner nonresidue enumeration)."""
    p = table.p
    if p > _UHAT_LIMIT:
        raise ResourceError(f"the U-hat double sum is limited to p <= {_UHAT_LIMIT}")
    a = _require_residue(a, table)
    coset = table.nonresidue_coset(2)
    value = kernels.uhat_literal(a, coset, p, table.roots())
    half = complex(table.roots()[coset % p].sum())
    bound = theoretical_bound(p)
    return UHatSample(
        p=p, a=a, value=value, half_sum=half,
        identity_residual=value + half, bound=bound, ratio=abs(value) / bound,
    )


def fourier_U_hat_swapped(a: int, table: SmallFieldTable) -> complex:
    """The same double sum with the loop order exchanged (finite-sum
    commutativity check)."""
    p = table.p
    if p > _UHAT_LIMIT:
        raise ResourceError(f"the U-hat double sum is limited to p <= {_UHAT_LIMIT}")
    a = _require_residue(a, table)
    return kernels.uhat_swapped(a, table.nonresidue_coset(2), p, table.roots())


def uhat_all_residues(table: SmallFieldTable) -> tuple[np.ndarray, np.ndarray]:
    """|U-hat(a)| for every quadratic residue a, via the shared inner sums.

    The inner b-indexed half sums do not depend on a, so they are evaluated
    literally once and combined per a; agreement with the per-a literal path
    is covered by tests.  Returns (residues a ascending, magnitudes).
    """
    p = table.p
    s = halfsums(table)
    roots = table.roots()
    a_vals = np.sort(table.residue_coset(2))
    b = np.arange(1, p, dtype=np.int64)
    mags = np.empty(len(a_vals), dtype=np.float64)
    for i, a in enumerate(a_vals):
        mags[i] = abs((roots[(-int(a) * b) % p] * s[1:]).sum())
    return a_vals, mags


def complete_exponential_sum(c: int, p: int) -> complex:
    """sum_{s=0}^{p-1} e(2*pi*i * c * s / p), evaluated term by term."""
    s = np.arange(p, dtype=np.int64)
    return complex(np.exp(2j * np.pi * ((c % p) * s % p) / p).sum())


def _histogram(targets: np.ndarray, p: int, map_name: str, x: int, domain_size: int) -> FiberHistogram:
    counts = np.bincount(targets, minlength=p)
    zero_hits = int(counts[0])
    sizes = counts[1:]
    sizes = sizes[sizes > 0]
    hist_sizes, hist_counts = np.unique(sizes, return_counts=True)
    return FiberHistogram(
        p=p, x=x, map_name=map_name,
        histogram={int(s): int(c) for s, c in zip(hist_sizes, hist_counts)},
        zero_hits=zero_hits,
        domain_size=domain_size,
        max_fiber=int(hist_sizes.max()) if len(hist_sizes) else 0,
    )


def fiber_histograms(x: int, k: int, table: SmallFieldTable) -> tuple[FiberHistogram, FiberHistogram]:
    """Exhaustive fiber censuses of the two error-term maps.

    alpha(m, n) = tau**(k*m+1) - n over m in [0, (p-1)/k), n in [2, x]:
    every nonzero fiber should have at most x-1 elements.
    beta(u, v) = u*v over u in [1, x], v in [1, p-1]: every nonzero fiber
    has exactly x elements.
    """
    p = table.p
    if p > _FIBER_LIMIT:
        raise ResourceError(f"fiber censuses are limited to p <= {_FIBER_LIMIT}")
    if not 2 <= x < p:
        raise DomainError(f"need 2 <= x < p, got x={x}")
    coset = table.nonresidue_coset(k).astype(np.int64)
    n = np.arange(2, x + 1, dtype=np.int64)
    alpha_targets = ((coset[:, None] - n[None, :]) % p).ravel()
    alpha = _histogram(alpha_targets, p, "alpha", x, len(coset) * len(n))

    u = np.arange(1, x + 1, dtype=np.int64)
    v = np.arange(1, p, dtype=np.int64)
    beta_targets = ((u[:, None] * v[None, :]) % p).ravel()
    beta = _histogram(beta_targets, p, "beta", x, len(u) * len(v))
    return alpha, beta
