"""Mode labels, mode pairs and witness criteria shared across the package."""
from __future__ import annotations

import enum
from itertools import combinations


class Mode(enum.IntEnum):
    A = 0  # pump
    B = 1  # Stokes
    C = 2  # phonon
    D = 3  # anti-Stokes

    @property
    def label(self) -> str:
        return self.name.lower()


class Criterion(str, enum.Enum):
    HZ1 = "HZ1"
    HZ2 = "HZ2"
    DUAN = "Duan"


class ModePair(tuple):
    """Unordered pair of distinct modes, canonically ordered (``ab`` not ``ba``)."""

    def __new__(cls, first, second=None):
        if second is None:  # ModePair("ac")
            text = str(first).strip().lower()
            if len(text) != 2:
                raise ValueError(f"mode pair must be two letters, got {first!r}")
            first, second = Mode[text[0].upper()], Mode[text[1].upper()]
        first, second = Mode(first), Mode(second)
        if first == second:
            raise ValueError("a mode pair needs two different modes")
        return super().__new__(cls, sorted((first, second)))

    @property
    def first(self) -> Mode:
        return self[0]

    @property
    def second(self) -> Mode:
        return self[1]

    @property
    def label(self) -> str:
        return self[0].label + self[1].label

    def __getnewargs__(self):
        return (self.label,)

    def __repr__(self) -> str:
        return f"ModePair({self.label!r})"

    def __str__(self) -> str:
        return self.label


ALL_PAIRS = tuple(ModePair(x, y) for x, y in combinations(Mode, 2))
ALL_CRITERIA = (Criterion.HZ1, Criterion.HZ2, Criterion.DUAN)
