"""Binary quadratic forms, the right action of 2x2 integer matrices, and
complete systems of Gamma_0(M)-representatives for the composite
genus-zero levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, isqrt, sqrt
from typing import Callable, Iterator

from .arith import gcd

__all__ = [
    "QForm",
    "IntMatrix2",
    "act",
    "automorph_order",
    "representatives",
    "REPRESENTATIVE_LEVELS",
    "enumeration_bound",
    "forms_in_range",
]


@dataclass(frozen=True, order=True)
class QForm:
    """The form a X^2 + b XY + c Y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"

    @classmethod
    def of_level(cls, M: int, a: int, b: int, c: int) -> "QForm":
        """Build [M*a, b, c], checking it is positive definite."""
        form = cls(M * a, b, c)
        if a <= 0 or form.disc >= 0:
            raise ValueError(f"{form} is not a positive definite form of level {M}")
        return form


@dataclass(frozen=True)
class IntMatrix2:
    """The matrix (p q; r s)."""

    p: int
    q: int
    r: int
    s: int

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def in_gamma0(self, M: int) -> bool:
        return self.det == 1 and self.r % M == 0


def act(Q: QForm, g: IntMatrix2) -> QForm:
    """Right action (Q o g)(X, Y) = Q(pX + qY, rX + sY)."""
    if g.det != 1:
        raise ValueError(f"matrix {g} does not have determinant 1")
    a, b, c = Q.a, Q.b, Q.c
    p, q, r, s = g.p, g.q, g.r, g.s
    return QForm(
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def automorph_order(Q: QForm, M: int) -> int:
    """Order of the stabilizer of Q in Gamma_0(M), counting -1."""
    if Q.a <= 0 or Q.disc >= 0:
        raise ValueError(f"{Q} is not positive definite")
    # Automorphs only see the primitive part: [2,2,2] is fixed by an order-6
    # group even though t^2 + 12u^2 = 4 has no solution with u != 0.
    g = Q.content
    a, b, c = Q.a // g, Q.b // g, Q.c // g
    D = -(b * b - 4 * a * c)
    sols = [(2, 0), (-2, 0)]
    if D == 4:
        sols += [(0, 1), (0, -1)]
    elif D == 3:
        sols += [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    count = 0
    for t, u in sols:
        # the matrix ((t - bu)/2, -cu; au, (t + bu)/2) fixes Q
        if (t - b * u) % 2 == 0 and (a * u) % M == 0:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Fundamental-domain data.
#
# A form [Ma, b, c] corresponds to the point w = (-b + sqrt(-D)) / (2Ma).
# Each wall is a geodesic of the domain, written as sign * b <= (p*a + q*c)/den.
# A form is kept when it satisfies every wall strictly or sits on walls and
# also passes the level's boundary filter, which picks one side of each
# identified pair of edges.


@dataclass(frozen=True)
class _Wall:
    sign: int
    p: int
    q: int
    den: int = 1

    def slack(self, a: int, b: int, c: int) -> int:
        """Non-negative iff the wall holds; zero exactly on it."""
        return self.p * a + self.q * c - self.den * self.sign * b


def _both(p: int, q: int, den: int = 1) -> tuple[_Wall, _Wall]:
    return _Wall(1, p, q, den), _Wall(-1, p, q, den)


@dataclass(frozen=True)
class _Domain:
    walls: tuple[_Wall, ...]
    on_boundary: Callable[[int, int], bool]
    bound: Fraction
    bound_shift: int = 0

    def accepts(self, a: int, b: int, c: int) -> bool:
        touching = False
        for wall in self.walls:
            s = wall.slack(a, b, c)
            if s < 0:
                return False
            if s == 0:
                touching = True
        return not touching or self.on_boundary(a, b)


def _boundary_8(a: int, b: int) -> bool:
    return -4 * a <= b


def _boundary_10(a: int, b: int) -> bool:
    return 3 * b >= 20 * a or abs(b) <= 6 * a


def _boundary_12(a: int, b: int) -> bool:
    return -4 * a <= b <= 12 * a


def _boundary_16(a: int, b: int) -> bool:
    return abs(b) <= 8 * a or 3 * b >= 32 * a or (-12 * a <= b and 3 * b <= -32 * a)


def _boundary_18(a: int, b: int) -> bool:
    return (
        abs(b) <= 6 * a
        or 36 * a <= 5 * b <= 45 * a
        or 12 * a <= abs(b) < 18 * a
        or b == 18 * a
    )


def _boundary_25(a: int, b: int) -> bool:
    return abs(b) <= 10 * a or 14 * a <= abs(b) <= 20 * a or b == 25 * a


def _nonnegative(a: int, b: int) -> bool:
    return b >= 0


_DOMAINS: dict[int, _Domain] = {
    4: _Domain(
        (*_both(4, 0), *_both(0, 4)),
        _nonnegative,
        Fraction(1, 8),
        bound_shift=1,
    ),
    6: _Domain(
        (*_both(6, 0), *_both(0, 6), *_both(12, 12, 5)),
        _nonnegative,
        Fraction(25, 24),
    ),
    8: _Domain(
        (
            *_both(8, 0),
            _Wall(1, 0, 4),
            _Wall(-1, 0, 8),
            _Wall(-1, 16, 24, 7),
            _Wall(-1, 16, 12, 5),
        ),
        _boundary_8,
        Fraction(245, 96),
    ),
    9: _Domain(
        (*_both(9, 0), *_both(0, 6), *_both(18, 12, 5)),
        _nonnegative,
        Fraction(25, 72),
    ),
    10: _Domain(
        (*_both(10, 0), *_both(0, 6), *_both(40, 30, 11), *_both(40, 20, 9)),
        _boundary_10,
        Fraction(121, 35),
    ),
    12: _Domain(
        (
            *_both(12, 0),
            *_both(24, 12, 5),
            *_both(24, 24, 7),
            _Wall(1, 0, 8),
            _Wall(-1, 0, 12),
            _Wall(-1, 24, 60, 11),
            _Wall(-1, 24, 40, 9),
        ),
        _boundary_12,
        Fraction(1573, 240),
    ),
    16: _Domain(
        (
            *_both(16, 0),
            *_both(0, 8),
            *_both(32, 24, 7),
            _Wall(1, 32, 12, 5),
            _Wall(-1, 96, 48, 17),
            _Wall(-1, 192, 80, 31),
            _Wall(-1, 64, 20, 9),
        ),
        _boundary_16,
        Fraction(5, 4),
    ),
    18: _Domain(
        (
            *_both(18, 0),
            *_both(0, 12),
            *_both(36, 60, 11),
            *_both(72, 90, 19),
            *_both(36, 24, 7),
            *_both(36, 12, 5),
            *_both(72, 72, 17),
        ),
        _boundary_18,
        Fraction(361, 45),
    ),
    25: _Domain(
        (
            *_both(25, 0),
            *_both(0, 10),
            *_both(50, 40, 9),
            *_both(50, 24, 7),
            *_both(100, 30, 11),
            *_both(100, 20, 9),
        ),
        _boundary_25,
        Fraction(968, 175),
    ),
}

REPRESENTATIVE_LEVELS = (1, *sorted(_DOMAINS))


def enumeration_bound(M: int, D: int) -> int:
    """Largest a (and c) that the level-M enumeration visits at discriminant -D."""
    if M == 1:
        return isqrt(D // 3)
    dom = _DOMAINS[M]
    return (dom.bound.numerator * (D + dom.bound_shift)) // dom.bound.denominator


def _reduced_classical(D: int) -> list[QForm]:
    """SL_2(Z)-reduced forms: -a < b <= a <= c, and b >= 0 when a == c."""
    out = []
    for a in range(1, isqrt(D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            out.append(QForm(a, b, c))
    return out


def _c_windows(
    dom: _Domain, M: int, dmin: int, dmax: int, a: int, sign: int, cmax: int
) -> Iterator[range]:
    """Ranges of c that can host some b of the given sign inside every wall
    for a discriminant in [-dmax, -dmin].

    Only a float pre-filter: every range is widened by one on each side and
    the exact predicate runs afterwards.
    """
    m4a = 4 * M * a
    lo = max(1, -(-dmin // m4a))
    hi = cmax
    holes: list[tuple[float, float]] = []
    for w in dom.walls:
        if w.sign != sign:
            continue
        # some b with b^2 >= 4Mac - dmax must fit: den^2 (4Mac - dmax) <= (p a + q c)^2
        d2 = w.den * w.den
        if w.q == 0:
            hi = min(hi, (w.p * w.p * a * a + d2 * dmax) // (d2 * m4a) + 1)
            continue
        A = w.q * w.q
        B = 2 * w.p * a * w.q - d2 * m4a
        C = w.p * w.p * a * a + d2 * dmax
        disc = B * B - 4 * A * C
        if disc <= 0:
            continue
        root = sqrt(disc)
        holes.append(((-B - root) / (2 * A) + 1, (-B + root) / (2 * A) - 1))
    if lo > hi:
        return
    holes.sort()
    start = lo
    for h0, h1 in holes:
        if h1 <= h0:
            continue
        stop = min(hi, floor(h0))
        if stop >= start:
            yield range(start, stop + 1)
        start = max(start, ceil(h1))
        if start > hi:
            return
    if start <= hi:
        yield range(start, hi + 1)


def forms_in_range(M: int, dmin: int, dmax: int) -> Iterator[tuple[int, int, int]]:
    """Yield (a, b, c) for every representative [Ma, b, c] with dmin <= D <= dmax.

    Each a and c is capped by the level's enumeration bound at dmax.
    """
    dom = _DOMAINS[M]
    bound = enumeration_bound(M, dmax)
    walls = {s: [w for w in dom.walls if w.sign == s] for s in (1, -1)}
    for a in range(1, bound + 1):
        m4a = 4 * M * a
        for sign in (1, -1):
            side = walls[sign]
            for window in _c_windows(dom, M, dmin, dmax, a, sign, bound):
                for c in window:
                    top = m4a * c - dmin
                    if top < 0:
                        continue
                    low = m4a * c - dmax
                    bmin = 0 if low <= 0 else isqrt(low - 1) + 1
                    if sign < 0:
                        bmin = max(bmin, 1)
                    bmax = isqrt(top)
                    if bmin > bmax:
                        continue
                    bmax = min(bmax, *((w.p * a + w.q * c) // w.den for w in side))
                    for mag in range(bmin, bmax + 1):
                        b = sign * mag
                        if dom.accepts(a, b, c):
                            yield a, b, c


def representatives(M: int, D: int) -> list[QForm]:
    """One form [Ma, b, c] from each Gamma_0(M)-class of discriminant -D.

    Supported levels are 1 and the composite genus-zero levels; prime levels
    have no enumeration here.
    """
    if M not in REPRESENTATIVE_LEVELS:
        raise ValueError(f"no representative system for level {M}")
    if D <= 0:
        raise ValueError(f"discriminant -{D} is not negative")
    if D % 4 in (1, 2):
        return []
    if M == 1:
        return _reduced_classical(D)
    return [QForm(M * a, b, c) for a, b, c in sorted(forms_in_range(M, D, D))]
