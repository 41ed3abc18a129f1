"""Least prime residues/nonresidues in arithmetic progressions, weighted
counting functions with main-term predictions, and density sweeps.

Search targets:

* RESIDUE / NONRESIDUE -- the Euler-criterion dichotomy n**((p-1)/k) == 1,
  consistent with the residues module everywhere.
* GENERATOR -- primes whose multiplicative order mod p is exactly (p-1)/k,
  i.e. generators of the index-k subgroup.  These are the elements the
  published numerical tables for k >= 3 actually list (under an inverted
  "nonresidue" label); the target needs the full factorisation of p-1.

Default epsilon is 0 so the bound x reproduces the published example values;
it is configurable everywhere it appears.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .bigmod import (
    OddPrimeContext,
    ResidueClass,
    euler_totient,
    is_prime,
    jacobi,
    multiplicative_order,
    prime_mask,
    primes_up_to,
    von_mangoldt,
)
from .errors import DomainError, ResourceError

_SCAN_CAP = 10**8
_SIEVE_SCAN = 10**7
_COUNT_CAP = 10**8


class Target(enum.Enum):
    RESIDUE = "residue"
    NONRESIDUE = "nonresidue"
    GENERATOR = "generator"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a least-prime search.  found_n is None when nothing
    qualified up to scan_limit, so a truncated scan can never masquerade
    as a bound violation."""

    target: Target
    k: int
    cls: ResidueClass
    found_n: int | None
    bound_x: float
    within_bound: bool
    scan_limit: int


@dataclass(frozen=True)
class CountReport:
    k: int
    cls: ResidueClass
    x: float
    target: Target
    weighted_count: float
    unweighted_count: int
    main_term: float
    error_term: float
    density_estimate: float
    progression_prime_count: int
    skipped_multiples_of_p: int


@dataclass(frozen=True)
class DensitySample:
    """observed_fraction = (primes <= x in the class with the target verdict)
    / (all primes <= x, p excluded), so correction_estimate = fraction * k *
    phi(q) estimates the correction factor in density = c / (k * phi(q))."""

    p: int
    k: int
    cls: ResidueClass
    x: float
    observed_fraction: float
    correction_estimate: float
    qualifying: int
    total: int


@dataclass(frozen=True)
class DensitySweepResult:
    samples: list
    skipped_primes: int


def bound_x(ctx: OddPrimeContext, k: int, epsilon: float = 0.0) -> float:
    """log(p) * loglog(p)**(3+eps) for k = 2, exponent 4+eps for k >= 3."""
    if epsilon < 0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    return ctx.bound_x((3 if k == 2 else 4) + epsilon)


def main_term_prediction(k: int, q: int, x: float) -> float:
    """x / (k * phi(q)); for k = 2 this is the x/(2*phi(q)) main term."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    return x / (k * euler_totient(q))


@dataclass(frozen=True)
class UnweightedPrediction:
    """Main term rescaled to an unweighted prime count, under the two
    conventions the published examples use; neither is canonical.

    by_loglog = main_term / loglog(p) reproduces every printed coefficient
    (222.39, 667, 822); by_logx = main_term / log(x) is the standard
    partial-summation rescaling, reported side by side.
    """

    main_term: float
    by_loglog: float
    by_logx: float


def unweighted_prediction(ctx: OddPrimeContext, k: int, q: int, epsilon: float = 0.0) -> UnweightedPrediction:
    x = bound_x(ctx, k, epsilon)
    main = main_term_prediction(k, q, x)
    return UnweightedPrediction(main_term=main, by_loglog=main / ctx.loglog_p, by_logx=main / math.log(x))


def _verdict_matches(n: int, target: Target, k: int, ctx: OddPrimeContext, p_minus_1_factors) -> bool:
    p = ctx.p
    if target is Target.GENERATOR:
        return multiplicative_order(n, p, p_minus_1_factors) == (p - 1) // k
    if k == 2:
        sign = jacobi(n, p)
        return (sign == 1) == (target is Target.RESIDUE)
    witness = pow(n % p, (p - 1) // k, p)
    return (witness == 1) == (target is Target.RESIDUE)


def least_prime_with_verdict(
    target: Target,
    k: int,
    cls: ResidueClass,
    ctx: OddPrimeContext,
    scan_limit: int,
    epsilon: float = 0.0,
    p_minus_1_factors=None,
) -> SearchOutcome:
    """First prime n = a + q*m (ascending, p not dividing n) with the target
    verdict, or an Absent outcome carrying the scan cap."""
    p = ctx.p
    if (p - 1) % k != 0:
        raise DomainError(f"k={k} does not divide p-1")
    if scan_limit < cls.q + cls.a:
        raise DomainError(f"scan_limit {scan_limit} below first candidate {cls.q + cls.a}")
    if scan_limit > _SCAN_CAP:
        raise ResourceError(f"scan cap is {_SCAN_CAP}")
    if target is Target.GENERATOR and p_minus_1_factors is None:
        raise DomainError("GENERATOR target needs the factorisation of p-1")

    bx = bound_x(ctx, k, epsilon)
    found = None
    if scan_limit <= _SIEVE_SCAN:
        for n in primes_up_to(scan_limit):
            n = int(n)
            if not cls.contains(n) or n % p == 0:
                continue
            if _verdict_matches(n, target, k, ctx, p_minus_1_factors):
                found = n
                break
    else:
        n = cls.a if cls.a >= 2 else cls.a + cls.q
        while n <= scan_limit:
            if n % p != 0 and is_prime(n) and _verdict_matches(n, target, k, ctx, p_minus_1_factors):
                found = n
                break
            n += cls.q
    return SearchOutcome(
        target=target, k=k, cls=cls, found_n=found, bound_x=bx,
        within_bound=(found is not None and found <= bx), scan_limit=scan_limit,
    )


def weighted_count(
    target: Target,
    k: int,
    cls: ResidueClass,
    x: float,
    ctx: OddPrimeContext,
    p_minus_1_factors=None,
) -> CountReport:
    """Sum of von Mangoldt weights over qualifying n in [2, x], plus the
    unweighted prime count, main-term prediction and extracted error.

    Prime powers carry their log-p weight in the weighted sum; the
    unweighted count (and the density denominator) restrict to primes.
    """
    p = ctx.p
    if (p - 1) % k != 0:
        raise DomainError(f"k={k} does not divide p-1")
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x}")
    if x > _COUNT_CAP:
        raise ResourceError(f"count budget is {_COUNT_CAP}")
    if target is Target.GENERATOR and p_minus_1_factors is None:
        raise DomainError("GENERATOR target needs the factorisation of p-1")

    limit = math.floor(x)
    weighted = 0.0
    unweighted = 0
    progression_primes = 0
    skipped = 0
    pmask = prime_mask(limit)
    start = cls.a if cls.a >= 2 else cls.a + cls.q
    for n in range(start, limit + 1, cls.q):
        if n % p == 0:
            skipped += 1
            continue
        lam = von_mangoldt(n)
        if lam == 0.0:
            continue
        n_is_prime = bool(pmask[n])
        if n_is_prime:
            progression_primes += 1
        if _verdict_matches(n, target, k, ctx, p_minus_1_factors):
            weighted += lam
            if n_is_prime:
                unweighted += 1
    main = main_term_prediction(k, cls.q, x)
    density = unweighted / progression_primes if progression_primes else math.nan
    return CountReport(
        k=k, cls=cls, x=x, target=target,
        weighted_count=weighted, unweighted_count=unweighted,
        main_term=main, error_term=weighted - main,
        density_estimate=density,
        progression_prime_count=progression_primes,
        skipped_multiples_of_p=skipped,
    )


def parse_x_rule(rule: str):
    """Parse a per-prime x rule: "bound", "prime", or "fixed:<value>"."""
    rule = rule.strip().lower()
    if rule in ("bound", "prime"):
        return (rule, None)
    if rule.startswith("fixed:"):
        return ("fixed", float(rule.split(":", 1)[1]))
    raise DomainError(f"unknown x rule {rule!r}")


def density_sweep(
    k: int,
    cls: ResidueClass,
    prime_range: tuple[int, int],
    x_rule: str = "prime",
    target: Target = Target.NONRESIDUE,
    epsilon: float = 0.0,
    max_primes: int | None = None,
) -> DensitySweepResult:
    """Observed fraction of progression primes up to x with the target
    verdict, for every conforming prime p in the range (k | p-1); skipped
    nonconforming primes are counted, never silently dropped."""
    lo, hi = prime_range
    if hi > 10**9:
        raise ResourceError("prime range is limited to 1e9")
    if target is Target.GENERATOR:
        raise DomainError("density sweeps support RESIDUE/NONRESIDUE targets only")
    rule, fixed_x = parse_x_rule(x_rule)
    samples = []
    skipped = 0
    for p in primes_up_to(hi):
        p = int(p)
        if p < max(lo, 3):
            continue
        if (p - 1) % k != 0:
            skipped += 1
            continue
        ctx = OddPrimeContext.for_prime(p, allow_small=True)
        if rule == "prime":
            x = float(p)
        elif rule == "bound":
            x = bound_x(ctx, k, epsilon)
        else:
            x = fixed_x
        qualifying = 0
        total = 0
        exp = (p - 1) // k
        for n in primes_up_to(math.floor(x)):
            n = int(n)
            if n % p == 0:
                continue
            total += 1
            if not cls.contains(n):
                continue
            if k == 2:
                hit = jacobi(n, p) == 1
            else:
                hit = pow(n, exp, p) == 1
            if hit == (target is Target.RESIDUE):
                qualifying += 1
        frac = qualifying / total if total else math.nan
        samples.append(
            DensitySample(
                p=p, k=k, cls=cls, x=x,
                observed_fraction=frac,
                correction_estimate=frac * k * euler_totient(cls.q),
                qualifying=qualifying, total=total,
            )
        )
        if max_primes is not None and len(samples) >= max_primes:
            break
    return DensitySweepResult(samples=samples, skipped_primes=skipped)
