"""Exact integer and rational primitives shared by the rest of the package.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator, so ``==`` is structural.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd as _gcd, isqrt

ExactRational = Fraction

__all__ = [
    "ExactRational",
    "gcd",
    "bezout",
    "kronecker",
    "divisors",
    "divisor_pairs",
    "sigma",
    "factorize",
    "sl2_index",
    "euler_phi",
    "is_square",
    "square_part",
]


def gcd(a: int, b: int) -> int:
    """Non-negative generator of the ideal aZ + bZ; gcd(0, 0) == 0."""
    return _gcd(a, b)


def bezout(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    if a == 0 and b == 0:
        raise ValueError("bezout(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a | n) for n >= 0."""
    if n < 0:
        raise ValueError("kronecker symbol only implemented for n >= 0")
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0

    result = 1
    # peel off the factors of 2 in n using the (a | 2) rule
    while n % 2 == 0:
        n //= 2
        if a % 8 in (3, 5):
            result = -result

    # n is now odd and positive: Jacobi symbol by quadratic reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization of ``n >= 1`` as ``((p, e), ...)``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """Sorted positive divisors of ``n >= 1``."""
    if n < 1:
        raise ValueError(f"divisors need a positive integer, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def divisor_pairs(n: int) -> list[tuple[int, int]]:
    """All ordered factorizations ``(a, d)`` with ``a * d == n``, sorted by ``a``."""
    return [(a, n // a) for a in divisors(n)]


def sigma(n: int) -> int:
    """Sum of the positive divisors of n."""
    return sum(divisors(n))


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"phi needs a positive integer, got {n}")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def sl2_index(M: int) -> int:
    """Index of Gamma_0(M) in SL_2(Z): M * prod_{p | M} (1 + 1/p)."""
    if M < 1:
        raise ValueError(f"level must be positive, got {M}")
    index = M
    for p, _ in factorize(M):
        index = index // p * (p + 1)
    return index


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def square_part(n: int) -> int:
    """Largest f with f**2 dividing n (so n // f**2 is square-free)."""
    f = 1
    for p, e in factorize(n):
        f *= p ** (e // 2)
    return f
