"""Exact and modular evaluation of <p,q>-Fibonacci sequences.

The sequence is G_0 = 0, G_1 = 1, G_n = p*G_{n-1} + q*G_{n-2}.  Alongside G
we keep the companion integers A_n, B_n defined by

    A_n + B_n*sqrt(r) = (p + sqrt(r))^n,    r = p^2 + 4q,

which satisfy B_n = 2^(n-1) * G_n and A_n^2 - r*B_n^2 = (-4q)^n.  All exact
arithmetic is arbitrary precision; the modular kernels are O(log n) in the
index and accept indices given as decimal strings of any length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InputError, ResourceLimitError

DEFAULT_MAX_TERMS = 10**6


@dataclass(frozen=True)
class SequenceParams:
    """The recurrence coefficients (p, q); r = p^2 + 4q is derived."""

    p: int
    q: int

    @property
    def r(self) -> int:
        return self.p * self.p + 4 * self.q


@dataclass(frozen=True)
class ABPair:
    """Companion integers (A_n, B_n) at index n."""

    n: int
    a: int
    b: int


def _parse_index(n) -> int:
    """Accept a nonnegative int or decimal string, arbitrary width."""
    if isinstance(n, bool):
        raise InputError("index must be an integer, not bool")
    if isinstance(n, str):
        text = n.strip()
        sign = 1
        if text[:1] in ("+", "-"):
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        if not text.isdigit():
            raise InputError(f"malformed decimal index: {n!r}")
        value = sign * int(text)
    elif isinstance(n, int):
        value = n
    else:
        raise InputError(f"index must be int or decimal string, got {type(n).__name__}")
    if value < 0:
        raise InputError(f"index must be nonnegative, got {value}")
    return value


def g_exact(params: SequenceParams, n: int) -> int:
    """Exact G_n by a linear pass."""
    n = _parse_index(n)
    p, q = params.p, params.q
    a, b = 0, 1  # G_0, G_1
    for _ in range(n):
        a, b = b, p * b + q * a
    return a


def g_range(params: SequenceParams, n_max: int, *, max_terms: int = DEFAULT_MAX_TERMS) -> list[int]:
    """[G_0, ..., G_{n_max}]; refuses to allocate beyond max_terms terms."""
    n_max = _parse_index(n_max)
    if n_max + 1 > max_terms:
        raise ResourceLimitError(f"g_range of {n_max + 1} terms exceeds ceiling {max_terms}")
    p, q = params.p, params.q
    out = [0, 1]
    for _ in range(n_max - 1):
        out.append(p * out[-1] + q * out[-2])
    return out[: n_max + 1]


def ab_exact(params: SequenceParams, n: int) -> ABPair:
    """Exact (A_n, B_n) via the coupled step A' = pA + rB, B' = A + pB."""
    n = _parse_index(n)
    p, r = params.p, params.r
    a, b = 1, 0  # A_0, B_0
    for _ in range(n):
        a, b = p * a + r * b, a + p * b
    return ABPair(n=n, a=a, b=b)


def _pair_mod(p: int, q: int, n: int, m: int) -> tuple[int, int]:
    """(U_n, U_{n+1}) mod m for U_0=0, U_1=1, U_j = p*U_{j-1} + q*U_{j-2}.

    Fast doubling: U_{2j} = U_j*(2*U_{j+1} - p*U_j), U_{2j+1} = U_{j+1}^2 + q*U_j^2.
    """
    p %= m
    q %= m
    a, b = 0, 1 % m
    if n == 0:
        return a, b
    for i in range(n.bit_length() - 1, -1, -1):
        even = a * ((2 * b - p * a) % m) % m
        odd = (b * b + q * a * a) % m
        if (n >> i) & 1:
            a = odd
            b = (p * odd + q * even) % m
        else:
            a = even
            b = odd
    return a, b


def g_mod(params: SequenceParams, n, m: int) -> int:
    """G_n mod m in O(log n) multiplications; n may be a decimal string."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    n = _parse_index(n)
    return _pair_mod(params.p, params.q, n, m)[0]


def ab_mod(params: SequenceParams, n, m: int) -> tuple[int, int]:
    """(A_n mod m, B_n mod m); n may be a decimal string.

    B obeys the doubled recurrence X_j = 2p*X_{j-1} + 4q*X_{j-2} with B_0=0,
    B_1=1, and A_n = B_{n+1} - p*B_n.
    """
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    n = _parse_index(n)
    b, b1 = _pair_mod(2 * params.p, 4 * params.q, n, m)
    return (b1 - params.p * b) % m, b


def g_is_zero(params: SequenceParams, n) -> bool:
    """Whether G_n = 0, decidable for astronomically large n.

    For q != 0 the positive-index zeros, when they exist, are exactly the
    multiples of the smallest one, and that smallest zero index is at most 6
    (the root ratio is then a root of unity in a field of degree <= 2).
    """
    n = _parse_index(n)
    if n == 0:
        return True
    if params.q == 0:
        # G_n = p^(n-1) for n >= 1
        return params.p == 0 and n >= 2
    for n0 in range(1, 7):
        if g_exact(params, n0) == 0:
            return n % n0 == 0
    return False
