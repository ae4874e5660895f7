"""Sum-based primality criteria for Mersenne and Fibonacci numbers.

Each criterion gets a fast evaluation path (divisor-class closed forms, small
moduli only) and a slow direct path (full-width terms), plus the supporting
number theory: totient, Legendre symbol, a deterministic 64-bit primality
oracle, primitive prime divisors, and the Fibonacci rank of apparition.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

from .errors import (
    CapExceeded,
    InternalInvariantViolation,
    NotOddPrime,
    OutOfRange,
    Unsupported,
    UnsupportedDiscriminant,
    WrongResidueClass,
)
from .residues import ResidueClass, exact_div
from .sequences import FIBONACCI_PARAMS, LucasParams, _u_term, u_pair_mod


class BitWidthProbe:
    """Records the widest integer routed through instrumented arithmetic.

    Purely observational; pass one into a sum evaluator to measure how wide
    its intermediates actually get.
    """

    __slots__ = ("max_bits",)

    def __init__(self) -> None:
        self.max_bits = 0

    def observe(self, *values: int) -> None:
        for v in values:
            bits = v.bit_length()
            if bits > self.max_bits:
                self.max_bits = bits


# ---------------------------------------------------------------------------
# Supporting number theory
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_ORACLE_LIMIT = 1 << 64
_TRIAL_LIMIT = 1 << 16


def is_prime_oracle(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64.

    Trial division for small n; otherwise a strong-pseudoprime battery over
    the first twelve primes, which is exact far beyond 64 bits.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n >= _ORACLE_LIMIT:
        raise OutOfRange(f"{n} exceeds the deterministic range 2**64")
    if n < 2:
        return False
    if n < _TRIAL_LIMIT:
        if n % 2 == 0:
            return n == 2
        f = 3
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factorize(n: int, cap: Optional[int] = None) -> dict[int, int]:
    """Prime factorization by trial division.

    With a cap, a cofactor that cannot be certified prime raises CapExceeded
    instead of risking a wrong answer.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    factors: dict[int, int] = {}
    remaining = n
    divisor = 2
    while divisor * divisor <= remaining:
        if cap is not None and divisor > cap:
            raise CapExceeded(
                f"no factor of {remaining} at or below the trial-division cap {cap}"
            )
        while remaining % divisor == 0:
            factors[divisor] = factors.get(divisor, 0) + 1
            remaining //= divisor
        divisor += 1 if divisor == 2 else 2
    if remaining > 1:
        factors[remaining] = factors.get(remaining, 0) + 1
    return factors


def euler_phi(n: int) -> int:
    """Euler's totient: how many of 1..n are coprime to n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    result = n
    for p in _factorize(n):
        result -= result // p
    return result


def proper_divisors(n: int) -> list[int]:
    """All divisors d of n with 1 <= d < n, ascending."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    small: list[int] = []
    large: list[int] = []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            other = n // d
            if other != d and other != n:
                large.append(other)
    return small + large[::-1]


def legendre_symbol(a: int, p: int) -> int:
    """The Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p == 2 or not is_prime_oracle(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# ---------------------------------------------------------------------------
# Mersenne sum criterion
# ---------------------------------------------------------------------------


def mersenne_sum_residue_direct(n: int, probe: BitWidthProbe | None = None) -> ResidueClass:
    """Sum over 1 <= k < n of the exact quotient (2^{kn}-1)/(2^k-1), mod 2^n - 1.

    The honest slow path: each term is materialized at full kn-bit width and
    exactly divided (zero remainder asserted) before reduction.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    modulus = (1 << n) - 1
    total = 0
    for k in range(1, n):
        dividend = (1 << (k * n)) - 1
        quotient = exact_div(dividend, (1 << k) - 1)
        if probe is not None:
            probe.observe(dividend, quotient)
        total = (total + quotient) % modulus
    return ResidueClass(total, modulus)


def mersenne_sum_residue_fast(n: int, probe: BitWidthProbe | None = None) -> ResidueClass:
    """Divisor-class form of the same sum: phi(n/d) copies of d*(2^n-1)/(2^d-1).

    The k < n with gcd(n, k) = d all contribute the same residue, so the sum
    collapses to one term per proper divisor and no intermediate grows past
    about 2n bits.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    modulus = (1 << n) - 1
    total = 0
    for d in proper_divisors(n):
        quotient = exact_div(modulus, (1 << d) - 1)
        scaled = d * quotient
        weighted = euler_phi(n // d) * (scaled % modulus)
        total = (total + weighted) % modulus
        if probe is not None:
            probe.observe(quotient, scaled, weighted, total)
    return ResidueClass(total, modulus)


@dataclass(frozen=True)
class PrimalityVerdict:
    """One criterion run: the computed residue, the claim, and the ground truth."""

    n: int
    method: str
    sum_residue: ResidueClass
    criterion_says_prime: bool
    oracle_says_prime: bool
    agree: bool
    elapsed: float


def mersenne_primality_test(n: int, path: str = "fast") -> PrimalityVerdict:
    """Run the Mersenne sum criterion (residue 0 iff n prime) against the oracle."""
    if path not in ("fast", "direct"):
        raise ValueError(f"path must be 'fast' or 'direct', got {path!r}")
    started = time.perf_counter()
    if path == "fast":
        residue = mersenne_sum_residue_fast(n)
    else:
        residue = mersenne_sum_residue_direct(n)
    elapsed = time.perf_counter() - started
    criterion = residue.value == 0
    oracle = is_prime_oracle(n)
    return PrimalityVerdict(
        n=n,
        method="mersenne-sum" if path == "fast" else "mersenne-sum-direct",
        sum_residue=residue,
        criterion_says_prime=criterion,
        oracle_says_prime=oracle,
        agree=criterion == oracle,
        elapsed=elapsed,
    )


@dataclass(frozen=True)
class DivisorSumTerm:
    divisor: int
    phi: int
    contribution: Fraction


@dataclass(frozen=True)
class DivisorSumBreakdown:
    """The criterion sum in exact rational form, one term per proper divisor."""

    n: int
    terms: tuple[DivisorSumTerm, ...]
    total: Fraction
    is_integer: bool


def divisor_sum_breakdown(n: int) -> DivisorSumBreakdown:
    """Exact rational sum of d*phi(n/d)/(2^d - 1) over proper divisors d of n.

    Integral iff n is prime; for prime n the single term is n - 1. Exact
    rationals replace a common-denominator construction whose denominator
    grows explosively, without changing the integrality verdict.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    terms = []
    for d in proper_divisors(n):
        phi = euler_phi(n // d)
        terms.append(DivisorSumTerm(d, phi, Fraction(d * phi, (1 << d) - 1)))
    total = sum((t.contribution for t in terms), Fraction(0))
    return DivisorSumBreakdown(n, tuple(terms), total, total.denominator == 1)


# ---------------------------------------------------------------------------
# Fibonacci sum criterion
# ---------------------------------------------------------------------------


def _fib(j: int) -> int:
    return _u_term(FIBONACCI_PARAMS, j)


def fibonacci_sum_residue_direct(n: int, probe: BitWidthProbe | None = None) -> ResidueClass:
    """Sum over 1 <= k < n of F_{kn}/F_k, mod F_n, without full-width terms.

    F_{kn} is computed only mod F_k*F_n by index doubling; because F_k divides
    F_{kn}, that residue is divisible by F_k (asserted on every term) and the
    quotient is exactly F_{kn}/F_k mod F_n.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3 so the modulus F_n exceeds 1, got {n}")
    f_n = _fib(n)
    total = 0
    for k in range(1, n):
        f_k = _fib(k)
        joint = f_k * f_n
        rem, _ = u_pair_mod(FIBONACCI_PARAMS, k * n, joint)
        if rem % f_k:
            raise InternalInvariantViolation(
                f"F_({k}*{n}) mod F_{k}*F_{n} = {rem} is not divisible by F_{k} = {f_k}"
            )
        if probe is not None:
            probe.observe(joint, rem)
        total = (total + rem // f_k) % f_n
    return ResidueClass(total, f_n)


def fibonacci_sum_residue_exact(n: int) -> ResidueClass:
    """Secondary oracle for the same sum: full-width terms and exact division.

    Terms grow like 0.2*k*n digits, so keep n modest (the tests stay at or
    below 60).
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    f_n = _fib(n)
    total = 0
    for k in range(1, n):
        total = (total + exact_div(_fib(k * n), _fib(k))) % f_n
    return ResidueClass(total, f_n)


def fibonacci_sum_residue_fast(n: int) -> ResidueClass:
    """Divisor-class form of the Fibonacci sum for n = 1 mod 4.

    In that residue class the sign (-1)^{(kn-k-n+d)/2} collapses to
    (-1)^{(n-d)/2}, constant across each gcd class, so the sum becomes
    phi(n/d)*d*(F_n/F_d) with that sign, one term per proper divisor.
    """
    if n % 4 != 1:
        raise WrongResidueClass(f"n = {n} is not congruent to 1 mod 4")
    if n < 5:
        raise ValueError(f"n must be >= 5, got {n}")
    f_n = _fib(n)
    total = 0
    for d in proper_divisors(n):
        term = d * exact_div(f_n, _fib(d)) % f_n
        if ((n - d) // 2) & 1:
            term = -term % f_n
        total = (total + euler_phi(n // d) * term) % f_n
    return ResidueClass(total, f_n)


def fibonacci_primality_test(n: int, path: str = "fast") -> PrimalityVerdict:
    """Run the Fibonacci sum criterion against the oracle.

    The criterion is an iff only for n = 1 mod 4 with n not in {9, 25}; those
    hypotheses are hard preconditions, not skips, so violating them raises
    Unsupported rather than producing a verdict.
    """
    if path not in ("fast", "direct"):
        raise ValueError(f"path must be 'fast' or 'direct', got {path!r}")
    if n % 4 != 1 or n < 5 or n in (9, 25):
        raise Unsupported(
            f"the Fibonacci sum criterion requires n = 1 mod 4, n >= 5, "
            f"n not in {{9, 25}}; got {n}"
        )
    started = time.perf_counter()
    if path == "fast":
        residue = fibonacci_sum_residue_fast(n)
    else:
        residue = fibonacci_sum_residue_direct(n)
    elapsed = time.perf_counter() - started
    criterion = residue.value == 0
    oracle = is_prime_oracle(n)
    return PrimalityVerdict(
        n=n,
        method="fib-sum" if path == "fast" else "fib-sum-direct",
        sum_residue=residue,
        criterion_says_prime=criterion,
        oracle_says_prime=oracle,
        agree=criterion == oracle,
        elapsed=elapsed,
    )


def remark_check(n: int) -> bool:
    """True iff the Fibonacci sum vanishes mod F_n, for n = 3 mod 4.

    In that residue class the sum should vanish whether or not n is prime, so
    any False here is a mismatch worth reporting.
    """
    if n % 4 != 3:
        raise WrongResidueClass(f"n = {n} is not congruent to 3 mod 4")
    return fibonacci_sum_residue_direct(n).value == 0


# ---------------------------------------------------------------------------
# Primitive prime divisors and rank of apparition
# ---------------------------------------------------------------------------


def _apparition_index(params: LucasParams, p: int, limit: int) -> Optional[int]:
    """Least 1 <= m <= limit with p | U_m, walking the sequence mod p."""
    a, b = 0, 1
    for m in range(1, limit + 1):
        a, b = b, (params.p_coeff * b - params.q_coeff * a) % p
        if a == 0:
            return m
    return None


def primitive_prime_divisor(
    params: LucasParams, n: int, cap: int = 1_000_000
) -> Optional[int]:
    """Smallest prime dividing U_n but no earlier positive-index term, or None.

    Requires a positive discriminant. Factorization is plain trial division
    up to `cap`; an uncertifiable cofactor raises CapExceeded rather than
    guessing.
    """
    if params.discriminant <= 0:
        raise UnsupportedDiscriminant(
            f"needs P^2 - 4Q > 0, got {params.discriminant}"
        )
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    target = abs(_u_term(params, n))
    if target <= 1:
        return None
    for p in sorted(_factorize(target, cap=cap)):
        if _apparition_index(params, p, n) == n:
            return p
    return None


def rank_of_apparition_fib(p: int) -> int:
    """Least n >= 1 with p | F_n, verified to divide p - (5/p)."""
    if p in (2, 5):
        raise Unsupported(f"rank of apparition is not handled for p = {p}")
    if p % 2 == 0 or not is_prime_oracle(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    rank = _apparition_index(FIBONACCI_PARAMS, p, p + 1)
    if rank is None:
        raise InternalInvariantViolation(
            f"no Fibonacci index at or below {p + 1} is divisible by {p}"
        )
    bound = p - legendre_symbol(5, p)
    if bound % rank:
        raise InternalInvariantViolation(
            f"rank {rank} of p = {p} does not divide {bound}"
        )
    return rank
