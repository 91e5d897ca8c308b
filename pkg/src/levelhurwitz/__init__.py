"""Level-M Hurwitz class numbers and modular correspondences on genus-zero X_0(M)."""

from .cusps import classify_cusps, cusps, gen_atkin_lehner
from .hurwitz import GENUS_ZERO_LEVELS, hurwitz_classical, hurwitz_level
from .intersect import (
    affine_intersection,
    class_number_sum,
    delta_M,
    s_table,
    verify_conjecture,
    verify_identity,
)
from .qform import QForm, representatives

__version__ = "0.1.0"

__all__ = [
    "GENUS_ZERO_LEVELS",
    "QForm",
    "affine_intersection",
    "class_number_sum",
    "classify_cusps",
    "cusps",
    "delta_M",
    "gen_atkin_lehner",
    "hurwitz_classical",
    "hurwitz_level",
    "representatives",
    "s_table",
    "verify_conjecture",
    "verify_identity",
]
