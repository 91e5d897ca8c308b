"""The bundled reference tables: shape, and where they disagree with the code."""

from fractions import Fraction
from math import isqrt

import pytest

from levelhurwitz import fixtures
from levelhurwitz.hurwitz import GENUS_ZERO_LEVELS, hurwitz_level
from levelhurwitz.intersect import _s_value

from oracle import oracle_hurwitz

# (level, D): (printed, true). True values agree with the independent oracle.
MISPRINTED_H = {
    (4, 48): (7, 8),
    (4, 87): (0, 12),
    (12, 48): (7, 8),
    (12, 96): (10, 12),
    (16, 79): (0, 10),
    (16, 80): (24, 0),
    (16, 92): (36, 24),
    (16, 95): (32, 16),
    (16, 96): (12, 0),
}

# (level, N): (printed, true)
MISPRINTED_S = {
    (4, 12): (83, 84), (4, 13): (20, 22), (4, 16): (118, 120),
    (4, 21): (38, 40), (4, 22): (60, 84), (4, 24): (196, 220),
    (12, 12): (139, 140), (12, 13): (14, 16), (12, 16): (90, 92),
    (12, 21): (62, 64), (12, 24): (370, 372), (12, 25): (16, 20),
    (16, 20): (104, 100), (16, 21): (64, 16), (16, 22): (64, 84),
    (16, 23): (52, 40), (16, 24): (308, 192), (16, 25): (44, 20),
}


@pytest.fixture(scope="module")
def h_cells():
    return fixtures.class_number_cells()


@pytest.fixture(scope="module")
def s_cells():
    return fixtures.sum_cells()


def test_shape(h_cells, s_cells):
    assert fixtures.FIXTURE_VERSION == 1
    assert {c.level for c in h_cells} == set(GENUS_ZERO_LEVELS)
    assert len(h_cells) == 15 * 51
    assert sorted({c.key for c in h_cells}) == [D for D in range(101) if D % 4 in (0, 3)]
    assert len(s_cells) == 15 * 25
    assert {c.key for c in s_cells} == set(range(1, 26))


def test_files_are_lf_utf8():
    for name in fixtures.CLASS_NUMBER_FILES + fixtures.SUM_FILES:
        raw = (fixtures.default_dir() / name).read_bytes()
        raw.decode("utf-8")
        assert b"\r" not in raw and raw.endswith(b"\n")


def test_bad_header_rejected(tmp_path):
    for name in fixtures.CLASS_NUMBER_FILES:
        (tmp_path / name).write_text("d,level,num,den\n3,1,1,3\n")
    with pytest.raises(ValueError, match="unexpected header"):
        fixtures.class_number_cells(tmp_path)


def test_class_number_cells(h_cells):
    wrong = {}
    for c in h_cells:
        got = hurwitz_level(c.level, c.key)
        if got != c.value:
            wrong[(c.level, c.key)] = (c.value, got)
    assert wrong == MISPRINTED_H


@pytest.mark.parametrize("cell", sorted(MISPRINTED_H))
def test_misprinted_h_against_oracle(cell):
    M, D = cell
    assert oracle_hurwitz(M, D) == MISPRINTED_H[cell][1]


def test_sum_cells(s_cells):
    wrong = {}
    for c in s_cells:
        got = _s_value(c.level, c.key)
        if got != c.value:
            wrong[(c.level, c.key)] = (c.value, got)
    assert wrong == MISPRINTED_S


def test_printed_sums_follow_from_printed_class_numbers(h_cells, s_cells):
    """The sum misprints are what the class-number misprints produce."""
    printed = {(c.level, c.key): c.value for c in h_cells}

    def S(M, N):
        r = isqrt(4 * N)
        return printed[(M, 4 * N)] + 2 * sum(
            (printed.get((M, 4 * N - x * x), Fraction(0)) for x in range(1, r + 1)), Fraction(0)
        )

    for (M, N), (value, _) in MISPRINTED_S.items():
        assert S(M, N) == value
