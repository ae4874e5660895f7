"""Lucas sequences of the first and second kind.

Exact term evaluation by the defining recurrence, fast modular evaluation by
index doubling, and the classical identities the sequences satisfy, exposed
as exact checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import BadModulus, CoprimalityViolation, ZeroPair


@dataclass(frozen=True)
class LucasParams:
    """Coefficient pair (P, Q) of the recurrence a_{j+1} = P*a_j - Q*a_{j-1}.

    P and Q must be coprime, which makes the U-sequence a strong divisibility
    sequence. The discriminant P^2 - 4Q is derived, never passed in.
    """

    p_coeff: int
    q_coeff: int
    discriminant: int = field(init=False)

    def __post_init__(self) -> None:
        if self.p_coeff == 0 and self.q_coeff == 0:
            raise ZeroPair("(P, Q) = (0, 0) defines no usable sequence")
        if gcd(abs(self.p_coeff), abs(self.q_coeff)) != 1:
            raise CoprimalityViolation(
                f"P = {self.p_coeff} and Q = {self.q_coeff} share a factor; "
                "coprime coefficients are required"
            )
        object.__setattr__(self, "discriminant", self.p_coeff**2 - 4 * self.q_coeff)


def make_params(p: int, q: int) -> LucasParams:
    """Validate and build the coefficient pair for U_n(P, Q) and V_n(P, Q)."""
    return LucasParams(p, q)


class OpCounter:
    """Mutable tally of big-int multiplications, for complexity assertions in tests."""

    __slots__ = ("mults",)

    def __init__(self) -> None:
        self.mults = 0

    def add(self, k: int = 1) -> None:
        self.mults += k


def u_at(params: LucasParams, n: int, counter: OpCounter | None = None) -> int:
    """U_n by direct recurrence from (U_0, U_1) = (0, 1); exact, O(n) multiplications."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, params.p_coeff * b - params.q_coeff * a
        if counter is not None:
            counter.add(2)
    return a


def v_at(params: LucasParams, n: int, counter: OpCounter | None = None) -> int:
    """V_n by direct recurrence from (V_0, V_1) = (2, P); exact."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    a, b = 2, params.p_coeff
    for _ in range(n):
        a, b = b, params.p_coeff * b - params.q_coeff * a
        if counter is not None:
            counter.add(2)
    return a


def u_pair_mod(
    params: LucasParams, n: int, m: int, counter: OpCounter | None = None
) -> tuple[int, int]:
    """(U_n mod m, U_{n+1} mod m) by index doubling, O(log n) modular multiplications.

    Doubling steps, everything reduced mod m:

        U_{2j}   = U_j * (2*U_{j+1} - P*U_j)
        U_{2j+1} = U_{j+1}^2 - Q*U_j^2

    The first uses V_j expressed through consecutive U-terms, so the whole
    walk needs only the (U_j, U_{j+1}) window.
    """
    if m <= 1:
        raise BadModulus(f"modulus must exceed 1, got {m}")
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    p, q = params.p_coeff, params.q_coeff
    a, b = 0, 1
    for i in range(n.bit_length() - 1, -1, -1):
        doubled = a * (2 * b - p * a) % m
        succ = (b * b - q * a * a) % m
        if counter is not None:
            counter.add(5)
        if (n >> i) & 1:
            a, b = succ, (p * succ - q * doubled) % m
            if counter is not None:
                counter.add(2)
        else:
            a, b = doubled, succ
    return a, b


@lru_cache(maxsize=None)
def _u_term(params: LucasParams, n: int) -> int:
    """Cached exact U_n; the congruence and primality layers hit the same small indices often."""
    return u_at(params, n)


FIBONACCI_PARAMS = make_params(1, -1)
MERSENNE_PARAMS = make_params(3, 2)  # U_n(3, 2) = 2^n - 1


def check_addition_identity(params: LucasParams, m: int, n: int) -> bool:
    """Exact check of U_{m+n} = U_m*V_n - Q^n * U_{m-n}, for n <= m."""
    if n > m:
        raise ValueError(f"need n <= m, got n = {n}, m = {m}")
    lhs = u_at(params, m + n)
    rhs = u_at(params, m) * v_at(params, n) - params.q_coeff**n * u_at(params, m - n)
    return lhs == rhs


def check_v_from_u(params: LucasParams, n: int) -> bool:
    """Exact check of V_n = 2*U_{n+1} - P*U_n."""
    return v_at(params, n) == 2 * u_at(params, n + 1) - params.p_coeff * u_at(params, n)


def check_norm_identity(params: LucasParams, n: int) -> bool:
    """Exact check of V_n^2 - D*U_n^2 = 4*Q^n."""
    lhs = v_at(params, n) ** 2 - params.discriminant * u_at(params, n) ** 2
    return lhs == 4 * params.q_coeff**n


def check_strong_divisibility(params: LucasParams, x: int, y: int) -> bool:
    """Exact check of gcd(|U_x|, |U_y|) = |U_{gcd(x, y)}|, for x, y >= 1."""
    if x < 1 or y < 1:
        raise ValueError(f"indices must be >= 1, got {x}, {y}")
    return gcd(abs(u_at(params, x)), abs(u_at(params, y))) == abs(
        u_at(params, gcd(x, y))
    )
