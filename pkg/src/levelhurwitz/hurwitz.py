"""Hurwitz class numbers H(D) and their level-M analogues H^M(D)."""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

from .arith import kronecker, sl2_index
from .qform import QForm, automorph_order, forms_in_range, representatives

__all__ = [
    "GENUS_ZERO_LEVELS",
    "PRIME_LEVELS",
    "COMPOSITE_LEVELS",
    "check_level",
    "hurwitz_classical",
    "hurwitz_level",
    "choi_kim",
]

GENUS_ZERO_LEVELS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25)
PRIME_LEVELS = (2, 3, 5, 7, 13)
COMPOSITE_LEVELS = (4, 6, 8, 9, 10, 12, 16, 18, 25)


def check_level(M: int) -> None:
    if M not in GENUS_ZERO_LEVELS:
        raise ValueError(f"level not genus zero: {M}")


def _class_weight(forms, M: int) -> Fraction:
    return sum((Fraction(2, automorph_order(Q, M)) for Q in forms), Fraction(0))


@lru_cache(maxsize=None)
def hurwitz_classical(D: int) -> Fraction:
    """H(D), with H(0) = -1/12."""
    if D < 0:
        raise ValueError(f"negative discriminant argument {D}")
    if D == 0:
        return Fraction(-1, 12)
    if D % 4 in (1, 2):
        return Fraction(0)
    return _class_weight(representatives(1, D), 1)


def choi_kim(p: int, D: int) -> Fraction:
    """Prime-level class number (1 + (-D|p)) (H(D) + p H(D/p^2))."""
    if p not in PRIME_LEVELS:
        raise ValueError(f"prime level formula only covers {PRIME_LEVELS}, got {p}")
    if D <= 0 or D % 4 in (1, 2):
        raise ValueError(f"D = {D} is not a positive discriminant")
    factor = 1 + kronecker(-D, p)
    if factor == 0:
        return Fraction(0)
    inner = hurwitz_classical(D)
    if D % (p * p) == 0:
        inner += p * hurwitz_classical(D // (p * p))
    return factor * inner


class _LevelTable:
    """H^M(D) for all D up to a sweep limit, grown by doubling.

    Lookups below the limit are plain dict reads; growth happens under a lock
    so concurrent callers never sweep the same range twice.
    """

    def __init__(self, M: int):
        self.M = M
        self.limit = 0
        self.values: dict[int, Fraction] = {}
        self._lock = threading.Lock()

    def get(self, D: int) -> Fraction:
        if D > self.limit:
            with self._lock:
                if D > self.limit:
                    self._extend(max(D, 2 * self.limit, 128))
        return self.values.get(D, Fraction(0))

    def _extend(self, new_limit: int) -> None:
        M = self.M
        fresh: dict[int, Fraction] = {}
        for a, b, c in forms_in_range(M, self.limit + 1, new_limit):
            Q = QForm(M * a, b, c)
            D = -Q.disc
            fresh[D] = fresh.get(D, Fraction(0)) + Fraction(2, automorph_order(Q, M))
        self.values.update(fresh)
        self.limit = new_limit


_tables = {M: _LevelTable(M) for M in COMPOSITE_LEVELS}


def hurwitz_level(M: int, D: int) -> Fraction:
    """H^M(D) for a genus-zero level M, with H^M(0) = -[SL_2(Z) : Gamma_0(M)]/12."""
    check_level(M)
    if D < 0:
        raise ValueError(f"negative discriminant argument {D}")
    if D == 0:
        return Fraction(-sl2_index(M), 12)
    if D % 4 in (1, 2):
        return Fraction(0)
    if M == 1:
        return hurwitz_classical(D)
    if M in PRIME_LEVELS:
        return choi_kim(M, D)
    return _tables[M].get(D)
