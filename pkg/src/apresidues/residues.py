"""Residue characters modulo an odd prime.

Two evaluation paths are maintained deliberately: the Euler criterion
(one modular exponentiation, works for primes of any size) and a literal
complex exponential-sum indicator restricted to small p.  The second is an
analytic device, not an efficient algorithm -- it exists as an independent
oracle for the first, so the two must never be collapsed into one route.

Indicator conventions, with tau the least primitive root mod p and k | p-1:

* residue indicator: sum over the subgroup enumeration tau**(k*m),
  0 <= m < (p-1)/k.  Equals 1 exactly when a is a kth power residue.
* nonresidue indicator: sum over every tau**j with k not dividing j.  For
  k = 2 this is exactly the classical odd-exponent enumeration tau**(2n+1);
  for k >= 3 the single coset tau**(k*m+1) covers only 1/(k-1) of the
  nonresidues, so the full-complement enumeration is what actually equals
  the Euler-criterion dichotomy (the single coset stays available as
  coset_indicator and is verified to have exactly (p-1)/k members).

Each enumeration lists every group element exactly once: exponent ranges are
half-open at (p-1)/k, since letting the index reach p/k would repeat the
exponent-1 element (tau**p = tau) and break the 0/1 property.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bigmod import OddPrimeContext, divisors, factorize, is_prime
from .errors import DomainError, IntegrityError, ResourceError

_TABLE_LIMIT = 10**6
_ORACLE_LIMIT = 10**5
_INTEGRALITY_TOL = 1e-6

RESIDUE_INDICATOR = "residue_indicator"
NONRESIDUE_INDICATOR = "nonresidue_indicator"


class Verdict(enum.Enum):
    RESIDUE = "Residue"
    NONRESIDUE = "Nonresidue"


@dataclass(frozen=True)
class CharacterVerdict:
    """Outcome of a kth power residue test: verdict plus the Euler witness
    n**((p-1)/k) mod p (witness == 1 exactly for residues)."""

    n: int
    k: int
    verdict: Verdict
    witness: int


def quadratic_verdict(n: int, ctx: OddPrimeContext) -> CharacterVerdict:
    """Quadratic residue verdict by the Euler criterion."""
    return kth_power_verdict(n, 2, ctx)


def kth_power_verdict(n: int, k: int, ctx: OddPrimeContext) -> CharacterVerdict:
    """Residue iff n**((p-1)/k) = 1 mod p; requires k | p-1 and p not dividing n."""
    p = ctx.p
    if k < 1 or (p - 1) % k != 0:
        raise DomainError(f"k={k} does not divide p-1={p - 1}")
    if n % p == 0:
        raise DomainError(f"{n} is divisible by p={p}; zero elements are excluded")
    witness = pow(n % p, (p - 1) // k, p)
    verdict = Verdict.RESIDUE if witness == 1 else Verdict.NONRESIDUE
    return CharacterVerdict(n=n, k=k, verdict=verdict, witness=witness)


@dataclass(frozen=True)
class SmallFieldTable:
    """Primitive-root enumeration of F_p* with residue sets for every k | p-1.

    powers[j] = tau**j mod p for j in [0, p-1); dlog inverts it on [1, p-1].
    The least primitive root is chosen so tables are reproducible across runs.
    """

    p: int
    tau: int
    powers: np.ndarray
    dlog: np.ndarray
    residue_sets: dict[int, frozenset]
    nonresidue_sets: dict[int, frozenset]
    _roots: np.ndarray = field(repr=False, default=None)

    def roots(self) -> np.ndarray:
        return self._roots

    def residue_coset(self, k: int) -> np.ndarray:
        """[tau**(k*m) for 0 <= m < (p-1)/k] -- the kth power residues."""
        self._check_k(k)
        return self.powers[::k].copy()

    def nonresidue_coset(self, k: int) -> np.ndarray:
        """[tau**(k*m+1) for 0 <= m < (p-1)/k] -- one coset of nonresidues.

        For k = 2 this is all of them; for k >= 3 it is a proper subset.
        """
        self._check_k(k)
        return self.powers[1::k].copy()

    def nonresidues_all(self, k: int) -> np.ndarray:
        """All tau**j with k not dividing j -- every kth power nonresidue."""
        self._check_k(k)
        j = np.arange(self.p - 1)
        return self.powers[j % k != 0].copy()

    def _check_k(self, k: int):
        if k < 1 or (self.p - 1) % k != 0:
            raise DomainError(f"k={k} does not divide p-1={self.p - 1}")


def least_primitive_root(p: int, p_minus_1_factors=None) -> int:
    """Least g in [2, p) generating F_p*, certified against every maximal
    proper divisor of p-1."""
    if p == 2:
        return 1
    factors = p_minus_1_factors or factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise DomainError(f"no primitive root found; {p} is not prime")


def build_small_field_table(p: int) -> SmallFieldTable:
    """Construct the full enumeration table for a small prime p <= 1e6."""
    if p > _TABLE_LIMIT:
        raise ResourceError(f"small-field tables are limited to p <= {_TABLE_LIMIT}")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    factors = factorize(p - 1)
    tau = least_primitive_root(p, factors)
    powers = kernels.pow_table(tau, p)
    dlog = np.empty(p, dtype=np.int64)
    dlog[0] = -1
    dlog[powers] = np.arange(p - 1)
    residue_sets = {}
    nonresidue_sets = {}
    everything = frozenset(range(1, p))
    for k in divisors(p - 1):
        rs = frozenset(int(v) for v in powers[::k])
        residue_sets[k] = rs
        nonresidue_sets[k] = everything - rs
    return SmallFieldTable(
        p=p,
        tau=tau,
        powers=powers,
        dlog=dlog,
        residue_sets=residue_sets,
        nonresidue_sets=nonresidue_sets,
        _roots=kernels.roots_table(p),
    )


def _oracle_enumeration(k: int, table: SmallFieldTable, which: str) -> np.ndarray:
    if which == RESIDUE_INDICATOR:
        return table.residue_coset(k)
    if which == NONRESIDUE_INDICATOR:
        return table.nonresidues_all(k)
    raise DomainError(f"unknown indicator {which!r}")


def _round_indicator(value: complex, where: str) -> int:
    nearest = round(value.real)
    err = abs(value - nearest)
    if err > _INTEGRALITY_TOL or nearest not in (0, 1):
        raise IntegrityError(f"{where}: pre-rounding value {value} is not near 0/1 (err={err:.3e})")
    return int(nearest)


def char_function_oracle(a: int, k: int, table: SmallFieldTable, which: str) -> int:
    """Literal complex double-sum indicator, rounded to {0, 1}.

    The pre-rounding value must sit within 1e-6 of the integer; a larger
    residue is a logic bug and raises IntegrityError.
    """
    p = table.p
    if p > _ORACLE_LIMIT:
        raise ResourceError(f"double-sum oracle is limited to p <= {_ORACLE_LIMIT}")
    if not 1 <= a % p <= p - 1:
        raise DomainError(f"a={a} is 0 mod p")
    enum_set = _oracle_enumeration(k, table, which)
    value = kernels.char_sum_one(a % p, enum_set, p, table.roots())
    return _round_indicator(value, f"char oracle p={p} k={k} a={a}")


def coset_indicator(a: int, k: int, table: SmallFieldTable) -> int:
    """Literal double sum over the single coset tau**(k*m+1) only.

    Equals the nonresidue indicator for k = 2; for k >= 3 it flags membership
    in that one coset (a strict subset of the nonresidues).
    """
    p = table.p
    if p > _ORACLE_LIMIT:
        raise ResourceError(f"double-sum oracle is limited to p <= {_ORACLE_LIMIT}")
    if not 1 <= a % p <= p - 1:
        raise DomainError(f"a={a} is 0 mod p")
    value = kernels.char_sum_one(a % p, table.nonresidue_coset(k), p, table.roots())
    return _round_indicator(value, f"coset indicator p={p} k={k} a={a}")


def char_function_values(k: int, table: SmallFieldTable, which: str) -> tuple[np.ndarray, float]:
    """Indicator values for every a in [1, p-1] plus the worst integrality residue.

    Same literal double sum as char_function_oracle: the complete inner sums
    over s are evaluated term by term, once per distinct difference, then
    combined per a.  Intended for exhaustive small-p verification sweeps.
    """
    p = table.p
    if p > _ORACLE_LIMIT:
        raise ResourceError(f"double-sum oracle is limited to p <= {_ORACLE_LIMIT}")
    enum_set = _oracle_enumeration(k, table, which).astype(np.int64)
    inner = kernels.inner_complete_sums(p, table.roots())
    a = np.arange(1, p, dtype=np.int64)
    values = np.empty(p - 1, dtype=np.complex128)
    for a0 in range(0, p - 1, 64):
        blk = a[a0 : a0 + 64]
        values[a0 : a0 + len(blk)] = inner[(enum_set[None, :] - blk[:, None]) % p].sum(axis=1)
    values /= p
    rounded = np.round(values.real)
    worst = float(np.abs(values - rounded).max())
    if worst > _INTEGRALITY_TOL:
        raise IntegrityError(f"batch char values p={p} k={k}: worst residue {worst:.3e}")
    out = rounded.astype(np.int64)
    if not np.isin(out, (0, 1)).all():
        raise IntegrityError(f"batch char values p={p} k={k}: non-indicator value")
    return out, worst
