"""Cusps of Gamma_0(M) and the generalized Atkin-Lehner matrices W_m.

A cusp is given either as a Fraction or as the sentinel ``INFINITY``.
Every class is labelled by its scaled representative m/M with 0 <= m < M;
i-infinity is the class of 1/M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .arith import bezout, divisors, gcd, square_part
from .qform import IntMatrix2

__all__ = [
    "INFINITY",
    "Cusp",
    "CuspClass",
    "ScaledMatrix",
    "CuspPartition",
    "cusp_equivalent",
    "cusps",
    "cusp_class_of",
    "gen_atkin_lehner",
    "normalizes_gamma0",
    "normalizes_g0",
    "normalizes_gamma0_Mprime",
    "epsilon_e",
    "width_gcd",
    "classify_cusps",
]


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"


INFINITY = _Infinity()
Cusp = Union[Fraction, int, _Infinity]


def _as_pair(s: Cusp) -> tuple[int, int]:
    """Lowest-terms (l, n) with n >= 0; infinity is (1, 0)."""
    if s is INFINITY:
        return 1, 0
    s = Fraction(s)
    return s.numerator, s.denominator


def cusp_equivalent(M: int, s: Cusp, t: Cusp) -> bool:
    """Whether Gamma_0(M) s = Gamma_0(M) t.

    Writing s = l/n and t = l'/n' in lowest terms, this holds iff some d
    coprime to M has n' = d n mod M and d l' = l mod gcd(M, n).
    """
    l, n = _as_pair(s)
    l2, n2 = _as_pair(t)
    g = gcd(M, n)
    for d in range(1, M + 1):
        if gcd(d, M) != 1:
            continue
        if (n2 - d * n) % M == 0 and (d * l2 - l) % g == 0:
            return True
    return False


@dataclass(frozen=True)
class CuspClass:
    """One Gamma_0(M)-orbit of cusps.

    ``n`` is the denominator stratum, ``l_residue`` the unit l mod (n, M/n),
    and ``m`` the smallest 0 <= m < M with m/M in the class.
    """

    level: int
    n: int
    l_residue: int
    m: int

    @property
    def width_gcd(self) -> int:
        return gcd(self.n, self.level // self.n)

    @property
    def lowest_terms(self) -> tuple[int, int]:
        """A representative l/n of the class with gcd(l, n) = 1."""
        l = self.l_residue
        while gcd(l, self.n) != 1:
            l += self.width_gcd
        return l, self.n

    @property
    def value(self) -> Cusp:
        if self.n == self.level:
            return INFINITY
        return Fraction(self.m, self.level)

    @property
    def label(self) -> str:
        if self.n == self.level:
            return "inf"
        return str(Fraction(self.m, self.level))

    def __str__(self) -> str:
        return self.label


def cusps(M: int) -> list[CuspClass]:
    """All cusp classes of Gamma_0(M), ordered by stratum n then residue."""
    if M < 1:
        raise ValueError(f"level must be positive, got {M}")
    out = []
    for n in divisors(M):
        w = gcd(n, M // n)
        for r in range(1, w + 1) if w > 1 else (0,):
            if w > 1 and gcd(r, w) != 1:
                continue
            l = r if r else 1
            while gcd(l, n) != 1:
                l += w
            m = next(
                k for k in range(M) if cusp_equivalent(M, Fraction(k, M), Fraction(l, n))
            )
            out.append(CuspClass(M, n, r % w if w > 1 else 0, m))
    out.sort(key=_display_order)
    return out


def _display_order(c: CuspClass) -> tuple[int, int, int]:
    # infinity first, then 0, then the rest by stratum and residue
    if c.n == c.level:
        return (0, 0, 0)
    return (1, c.n, c.m)


def cusp_class_of(M: int, s: Cusp) -> CuspClass:
    for c in cusps(M):
        if cusp_equivalent(M, c.value, s):
            return c
    raise AssertionError(f"{s} matched no cusp of level {M}")


@dataclass(frozen=True)
class ScaledMatrix:
    """The real matrix mat / sqrt(scale), kept exact as an integer matrix."""

    mat: IntMatrix2
    scale: int

    def __post_init__(self) -> None:
        if self.mat.det != self.scale:
            raise ValueError(f"det {self.mat.det} does not match scale {self.scale}")

    @property
    def cusp_image(self) -> Cusp:
        """Image of i-infinity: p/r."""
        if self.mat.r == 0:
            return INFINITY
        return Fraction(self.mat.p, self.mat.r)


def gen_atkin_lehner(M: int, m: int) -> ScaledMatrix:
    """W_m = (1/sqrt(D)) (m, u; M, (M,m) v) with D = (M, m^2).

    u is the smallest positive solution of (M,m) m v - M u = D.
    """
    if not 0 <= m < M:
        raise ValueError(f"m = {m} outside 0 <= m < {M}")
    if m == 0:
        return ScaledMatrix(IntMatrix2(0, -1, M, 0), M)
    g = gcd(M, m)
    D = gcd(M, m * m)
    h, x, _ = bezout(g * m, M)
    assert h == D
    # v = x + (M/D) t and u = (g m v - D)/M; step u by g m / D
    step_u = g * m // D
    u0 = (g * m * x - D) // M
    u = u0 % step_u or step_u
    v = (D + M * u) // (g * m)
    return ScaledMatrix(IntMatrix2(m, u, M, g * v), D)


def _f(M: int) -> int:
    return square_part(M)


def width_gcd(M: int, m: int) -> int:
    """(n, M/n) for the cusp m/M = l/n in lowest terms.

    This is the quantity the normalizer criteria depend on. It agrees with
    (f, m) except at a few levels, e.g. m = 9 at M = 18 where (f, m) = 3 but
    the cusp 1/2 has width gcd 1 and W_9 does normalize G_0(18).
    """
    n = M // gcd(M, m)
    return gcd(n, M // n)


def normalizes_gamma0(M: int, m: int) -> bool:
    """W_m normalizes Gamma_0(M) iff w | (f, 24), where M = f^2 * squarefree
    and w is the width gcd of m/M."""
    return gcd(_f(M), 24) % width_gcd(M, m) == 0


def normalizes_g0(M: int, m: int) -> bool:
    """W_m normalizes G_0(M) iff w | (f, 2)."""
    return gcd(_f(M), 2) % width_gcd(M, m) == 0


def normalizes_gamma0_Mprime(M: int, Mprime: int, m: int) -> bool:
    """W_m normalizes Gamma_0^{(M')}(M) iff w | (f, M', 2M/M')."""
    if M % Mprime:
        raise ValueError(f"{Mprime} does not divide {M}")
    f = _f(M)
    return gcd(gcd(f, Mprime), 2 * M // Mprime) % width_gcd(M, m) == 0


def epsilon_e(M: int) -> tuple[int, int]:
    return gcd(M, 24), gcd(M, 2)


@dataclass(frozen=True)
class CuspPartition:
    both: tuple[CuspClass, ...]
    gamma0_only: tuple[CuspClass, ...]
    neither: tuple[CuspClass, ...]


def classify_cusps(M: int) -> CuspPartition:
    """Split cusps by which normalizers carry i-infinity onto them.

    The cusp m/M is W_m(i-infinity), and whether W_m normalizes Gamma_0(M)
    or G_0(M) depends only on its width gcd, so the split is by stratum.
    """
    both, only, neither = [], [], []
    for c in cusps(M):
        if normalizes_g0(M, c.m):
            both.append(c)
        elif normalizes_gamma0(M, c.m):
            only.append(c)
        else:
            neither.append(c)
    return CuspPartition(tuple(both), tuple(only), tuple(neither))
