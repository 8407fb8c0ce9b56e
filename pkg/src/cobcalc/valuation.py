"""Exact l-adic valuations and multinomial arithmetic.

All quantities are computed with arbitrary-precision integers.  Valuations
of factorial-sized numbers additionally have a Legendre-formula path
(`nu_factorial`, `nu_multinomial`) that never builds the big integer, so
valuations stay cheap even where the factorials would not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def is_odd_prime(ell: int) -> bool:
    if ell < 3 or ell % 2 == 0:
        return False
    f = 3
    while f * f <= ell:
        if ell % f == 0:
            return False
        f += 2
    return True


def _require_odd_prime(ell: int) -> None:
    if not is_odd_prime(ell):
        raise ValueError(f"{ell} is not an odd prime")


def nu(n: int, ell: int) -> int:
    """Largest e such that ell**e divides n.

    Raises ValueError for n == 0: a vanishing quantity has no valuation,
    and callers must treat it as an immediate rejection rather than as
    "infinite valuation".
    """
    _require_odd_prime(ell)
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def nu_factorial(n: int, ell: int) -> int:
    """nu(n!) by Legendre's formula, sum of floor(n / ell**i)."""
    _require_odd_prime(ell)
    if n < 0:
        raise ValueError("factorial of a negative integer")
    total = 0
    q = n // ell
    while q:
        total += q
        q //= ell
    return total


def multinomial(n: int, parts: list[int] | tuple[int, ...]) -> int:
    """n! / prod(parts_i!), exactly.  Requires sum(parts) == n."""
    if any(p < 0 for p in parts):
        raise ValueError("multinomial parts must be nonnegative")
    if sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected {n}")
    result = math.factorial(n)
    for p in parts:
        result //= math.factorial(p)
    return result


def nu_multinomial(n: int, parts: list[int] | tuple[int, ...], ell: int) -> int:
    """Valuation of multinomial(n, parts) without constructing it."""
    if sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected {n}")
    return nu_factorial(n, ell) - sum(nu_factorial(p, ell) for p in parts)


@dataclass(frozen=True)
class LadicDigits:
    """Base-ell expansion, least significant digit first, no trailing zeros."""

    prime: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _require_odd_prime(self.prime)
        if any(not (0 <= d < self.prime) for d in self.digits):
            raise ValueError("digit out of range")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("trailing zero digit")

    def value(self) -> int:
        return sum(d * self.prime**i for i, d in enumerate(self.digits))

    def digit_sum(self) -> int:
        return sum(self.digits)


def ladic_digits(n: int, ell: int) -> LadicDigits:
    _require_odd_prime(ell)
    if n < 0:
        raise ValueError("expansion of a negative integer")
    digits = []
    while n:
        n, d = divmod(n, ell)
        digits.append(d)
    return LadicDigits(ell, tuple(digits))
