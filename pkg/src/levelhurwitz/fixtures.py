"""Reference class-number and sum tables shipped with the package.

Four CSV files: class numbers and sums, each split into levels 1-8 and 9-25.
Class-number files have the header ``disc,level,num,den``; sum files have
``n,level,num,den``. Level 1 stands for the classical H and S columns. The
values are transcribed as printed, misprints included.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

FIXTURE_VERSION = 1

CLASS_NUMBER_FILES = ("class_numbers_levels_1_8.csv", "class_numbers_levels_9_25.csv")
SUM_FILES = ("sums_levels_1_8.csv", "sums_levels_9_25.csv")


@dataclass(frozen=True)
class TableCell:
    source: str
    key: int
    level: int
    value: Fraction


def default_dir() -> Path:
    return Path(str(resources.files("levelhurwitz") / "data"))


def _read(path: Path, key: str) -> list[TableCell]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != [key, "level", "num", "den"]:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [
            TableCell(
                path.name,
                int(row[key]),
                int(row["level"]),
                Fraction(int(row["num"]), int(row["den"])),
            )
            for row in reader
        ]


def class_number_cells(directory: Path | None = None) -> list[TableCell]:
    d = directory or default_dir()
    return [c for name in CLASS_NUMBER_FILES for c in _read(d / name, "disc")]


def sum_cells(directory: Path | None = None) -> list[TableCell]:
    d = directory or default_dir()
    return [c for name in SUM_FILES for c in _read(d / name, "n")]
