from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from levelhurwitz.arith import divisor_pairs, gcd, is_square
from levelhurwitz.cusps import cusps
from levelhurwitz.hurwitz import GENUS_ZERO_LEVELS
from levelhurwitz.intersect import (
    affine_intersection,
    class_number_sum,
    cusp_multiplicity,
    decomposition_check,
    delta_cusp_pair,
    delta_M,
    global_intersection,
    hurwitz_eichler_rhs,
    s_table,
    verify_conjecture,
    verify_identity,
)

from brute import hecke_images
from oracle import oracle_hurwitz

LEVELS = [M for M in GENUS_ZERO_LEVELS if M > 1]


def cusp(M, label):
    return next(c for c in cusps(M) if c.label == label)


def published_delta(M, N1, N2):
    """The case table for delta_M, keyed on congruences of N1 and N2."""
    if M == 1:
        return 0
    if M in (2, 3, 5, 7, 13):
        return 1
    if M == 4:
        return 2
    if M in (6, 8, 10):
        return 3
    if M == 9:
        return 3 if (N1 - N2) % 3 == 0 else 1
    if M == 12:
        return 5
    if M == 16:
        return 5 if (N1 - N2) % 4 == 0 else 3
    if M == 18:
        if N1 % 6 == N2 % 6 == 1:
            return 7
        if N1 % 6 == N2 % 6 == 5:
            return 5  # misprint, see test_delta_18_minus_one_row
        return 3
    if M == 25:
        return 1
    raise AssertionError(M)


def valid_pair(M, N1, N2):
    return gcd(N1, M) == 1 and gcd(N2, M) == 1 and not is_square(N1 * N2)


def test_delta_cusp_pair_examples():
    for M in GENUS_ZERO_LEVELS:
        for s in cusps(M):
            assert delta_cusp_pair(M, s, s, 1) == 1
    for N in (2, 5, 8, 11):
        assert delta_cusp_pair(9, cusp(9, "1/3"), cusp(9, "2/3"), N) == 1
    for N in (3, 7, 11):
        assert delta_cusp_pair(16, cusp(16, "1/4"), cusp(16, "3/4"), N) == 1
    for N in (1, 3, 5):
        assert delta_cusp_pair(2, cusp(2, "inf"), cusp(2, "0"), N) == 0
    with pytest.raises(ValueError):
        delta_cusp_pair(6, cusp(6, "inf"), cusp(6, "inf"), 2)


def _brute_key(c):
    from brute import cusp_key

    M = c.level
    return cusp_key(M, None if c.n == M else Fraction(c.m, M))


@pytest.mark.parametrize("M", GENUS_ZERO_LEVELS)
def test_delta_cusp_pair_against_hecke_images(M):
    cs = cusps(M)
    for N in range(1, 41):
        if gcd(N, M) != 1:
            continue
        for s in cs:
            start = None if s.n == M else Fraction(s.m, M)
            images = hecke_images(M, start, N)
            for t in cs:
                assert delta_cusp_pair(M, s, t, N) == (_brute_key(t) in images), (M, s, t, N)


def test_cusp_multiplicity_examples():
    assert cusp_multiplicity(2, cusp(2, "inf"), cusp(2, "inf"), 1, 3) == 2
    assert cusp_multiplicity(6, cusp(6, "1/2"), cusp(6, "1/2"), 1, 5) == 2
    assert cusp_multiplicity(13, cusp(13, "0"), cusp(13, "0"), 2, 3) == 6
    with pytest.raises(ValueError):
        cusp_multiplicity(6, cusp(6, "0"), cusp(6, "0"), 2, 8)


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6, 7, 8, 10, 12, 13])
def test_diagonal_multiplicity(M):
    for N in range(2, 60):
        if gcd(N, M) != 1 or is_square(N):
            continue
        expected = 2 * sum(d for a, d in divisor_pairs(N) if a > d)
        for s in cusps(M):
            if delta_cusp_pair(M, s, s, N):
                assert cusp_multiplicity(M, s, s, 1, N) == expected


def test_global_intersection():
    assert global_intersection(1, 3) == 8
    assert global_intersection(1, 1) == 2
    assert global_intersection(2, 3) == 24


def test_delta_M_examples():
    assert delta_M(4, 1, 3) == 2
    assert delta_M(18, 1, 7) == 7
    assert delta_M(9, 1, 2) == 1
    assert delta_M(1, 2, 3) == 0
    with pytest.raises(ValueError):
        delta_M(25, 1, 11)
    with pytest.raises(ValueError):
        delta_M(25, 2, 3)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(GENUS_ZERO_LEVELS), st.integers(1, 200), st.integers(1, 200))
def test_delta_M_case_table(M, N1, N2):
    if not valid_pair(M, N1, N2):
        return
    if M == 25 and ((N1 - N2) % 5 == 0 or (N1 + N2) % 5 == 0):
        return
    if M == 18 and N1 % 6 == N2 % 6 == 5:
        return
    assert delta_M(M, N1, N2) == published_delta(M, N1, N2)


@pytest.mark.parametrize("N1,N2", [(5, 11), (5, 17), (11, 17), (5, 23), (11, 23)])
def test_delta_18_minus_one_row(N1, N2):
    """For N1 = N2 = -1 mod 6 at level 18 the cusp count gives 7, not the
    published 5, and the oracle class-number sum agrees with 7."""
    assert delta_M(18, N1, N2) == 7
    P = 4 * N1 * N2
    lhs = oracle_hurwitz(18, P) + 2 * sum(
        (oracle_hurwitz(18, P - x * x) for x in range(1, isqrt(P - 1) + 1)), Fraction(0)
    )
    pairs = [(a1 * d2, a2 * d1) for a1, d1 in divisor_pairs(N1) for a2, d2 in divisor_pairs(N2)]
    assert lhs == 2 * sum(x - 7 * y for x, y in pairs if x > y)
    assert lhs != 2 * sum(x - 5 * y for x, y in pairs if x > y)


def test_affine_examples():
    assert affine_intersection(2, 1, 3) == 4
    assert affine_intersection(12, 1, 5) == 0
    assert affine_intersection(25, 1, 4) == 6


def test_class_number_sum_examples():
    assert class_number_sum(2, 1, 3) == 4
    assert class_number_sum(6, 1, 5) == 4
    assert class_number_sum(4, 1, 3) == 2


def test_class_number_sum_uses_common_divisors():
    # N1 = N2 k: the d | (N1, N2, x) terms are nontrivial
    M, N1, N2 = 5, 2, 6
    P = 4 * N1 * N2
    direct = Fraction(0)
    for x in range(-isqrt(P), isqrt(P) + 1):
        if x * x >= P:
            continue
        for d in (1, 2):
            if x % d == 0:
                direct += d * oracle_hurwitz(M, (P - x * x) // (d * d))
    assert class_number_sum(M, N1, N2) == direct


@pytest.mark.parametrize(
    "M,N,value",
    [(2, 3, 4), (9, 4, 2), (18, 7, 0), (25, 2, 2), (25, 4, 6), (4, 3, 2), (12, 5, 0), (16, 3, 0), (16, 5, 0)],
)
def test_hurwitz_eichler_rhs(M, N, value):
    assert hurwitz_eichler_rhs(M, N)[0] == value


def test_hurwitz_eichler_rhs_rejects():
    for args in [(1, 3), (4, 2), (6, 3), (11, 3)]:
        with pytest.raises(ValueError):
            hurwitz_eichler_rhs(*args)


def test_verify_identity_examples():
    r = verify_identity(2, 1, 3)
    assert r.passed and r.lhs == r.rhs == 4
    r = verify_identity(25, 1, 2)
    assert r.passed and r.case_label == "delta_M = 1"
    # N1 = 2 shares a factor with 6, outside the identity's hypotheses
    with pytest.raises(ValueError, match="not coprime"):
        verify_identity(6, 2, 5)
    assert verify_identity(6, 5, 7).passed
    r = verify_identity(25, 1, 6)
    assert r.passed and "25" in r.case_label
    with pytest.raises(ValueError, match="not proper"):
        verify_identity(25, 1, 4)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(LEVELS), st.integers(1, 40), st.integers(1, 40))
def test_identity_random_pairs(M, N1, N2):
    if not valid_pair(M, N1, N2):
        return
    assert verify_identity(M, N1, N2).passed


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(GENUS_ZERO_LEVELS), st.integers(1, 40), st.integers(1, 40))
def test_decomposition_random_pairs(M, N1, N2):
    if not valid_pair(M, N1, N2):
        return
    assert decomposition_check(M, N1, N2).passed


@pytest.mark.parametrize("M", LEVELS)
def test_sum_agrees_with_closed_form(M):
    for N in range(2, 80):
        if gcd(N, M) == 1 and not is_square(N):
            assert s_table(M, N)[-1][1] == hurwitz_eichler_rhs(M, N)[0]


def test_s_table_examples():
    assert s_table(0, 2) == [(1, 1), (2, 4)]
    assert dict(s_table(9, 9))[9] == 44
    # the published value 139 comes from the misprinted H^12(48) = 7 and
    # H^12(96) = 10; the class numbers are 8 and 12
    assert s_table(12, 12)[-1] == (12, 140)
    with pytest.raises(ValueError):
        s_table(11, 5)
    with pytest.raises(ValueError):
        s_table(4, 0)


@pytest.mark.parametrize("M", [1, 4, 12, 16, 25])
def test_s_table_folds_both_signs(M):
    for N, value in s_table(M, 25):
        r = isqrt(4 * N)
        direct = sum((oracle_hurwitz(M, 4 * N - x * x) for x in range(-r, r + 1)), Fraction(0))
        assert value == direct


def test_conjecture_examples():
    assert verify_conjecture(2, 9).lhs == 16
    assert verify_conjecture(6, 25).lhs == 34
    r = verify_conjecture(25, 4)
    assert r.lhs == -2 and "25" in r.case_label
    with pytest.raises(ValueError):
        verify_conjecture(4, 8)
