"""Integer utilities: divisibility (with the 0|0 convention), gcd, s-adic
valuation, divisor enumeration, deterministic 64-bit primality, binomials."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


def divides(a: int, b: int) -> bool:
    """True iff b = k*a for some integer k; in particular 0 | 0."""
    if a == 0:
        return b == 0
    return b % a == 0


def gcd(a: int, b: int) -> int:
    """Nonnegative gcd; (0, 0) is outside the domain."""
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


@dataclass(frozen=True)
class Valuation:
    """s-adic valuation: exponent k, or None for the infinite case (m = 0)."""

    exponent: int | None

    @property
    def is_infinite(self) -> bool:
        return self.exponent is None


INFINITE = Valuation(None)


def valuation(m: int, s: int) -> Valuation:
    """Largest k with s^k | m; infinite exactly when m = 0.  Requires s >= 2."""
    if s <= 1:
        raise DomainError(f"valuation base must be >= 2, got {s}")
    if m == 0:
        return INFINITE
    k = 0
    m = abs(m)
    while m % s == 0:
        m //= s
        k += 1
    return Valuation(k)


def positive_divisors(m: int) -> list[int]:
    """Sorted positive divisors of |m|; m = 0 is an error (infinite set)."""
    if m == 0:
        raise DomainError("0 has infinitely many divisors")
    m = abs(m)
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


# Strong-probable-prime witnesses proven sufficient below 2^64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(s: int) -> bool:
    """Deterministic primality for 0 <= s < 2^64 (Miller-Rabin, fixed bases)."""
    if s < 2:
        return False
    for p in _MR_BASES:
        if s % p == 0:
            return s == p
    d = s - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, s)
        if x == 1 or x == s - 1:
            continue
        for _ in range(r - 1):
            x = x * x % s
            if x == s - 1:
                break
        else:
            return False
    return True


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); 0 when k > n."""
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be nonnegative")
    if k > n:
        return 0
    return math.comb(n, k)
