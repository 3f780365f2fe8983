"""Gaṇa notation: trisyllabic feet and their integer codes.

Letters follow the binary order of the feet read most-significant-first,
so ``GANAS.index(letter)`` is the decimal value of its three bits::

    000 n   001 s   010 j   011 y   100 b   101 r   110 t   111 m

"b" stands for the bh-gaṇa. Leftover syllables are written "l" / "g".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

GANAS = "nsjybrtm"
GANA_BITS = {g: tuple((i >> s) & 1 for s in (2, 1, 0)) for i, g in enumerate(GANAS)}
BITS_GANA = {bits: g for g, bits in GANA_BITS.items()}
SINGLE = {0: "l", 1: "g"}
SINGLE_BIT = {"l": 0, "g": 1}


@dataclass(frozen=True)
class GanaSequence:
    ganas: str
    remainder: tuple[int, ...] = ()

    def __str__(self) -> str:
        return self.ganas + "".join(SINGLE[b] for b in self.remainder)

    def __len__(self) -> int:
        return 3 * len(self.ganas) + len(self.remainder)

    def bits(self) -> tuple[int, ...]:
        out: list[int] = []
        for g in self.ganas:
            out.extend(GANA_BITS[g])
        out.extend(self.remainder)
        return tuple(out)

    @classmethod
    def parse(cls, notation: str) -> "GanaSequence":
        """Inverse of ``str``: ``"ttjgg"`` -> ganas "ttj", remainder (1, 1)."""
        head = notation.rstrip("lg")
        tail = notation[len(head):]
        if len(tail) > 2 or any(c not in GANA_BITS for c in head):
            raise ValueError(f"not a gaṇa sequence: {notation!r}")
        return cls(head, tuple(SINGLE_BIT[c] for c in tail))


def to_ganas(bits: Sequence[int]) -> GanaSequence:
    """Group weights in threes from the left; one or two bits may remain."""
    n = len(bits) - len(bits) % 3
    ganas = "".join(BITS_GANA[tuple(bits[i:i + 3])] for i in range(0, n, 3))
    return GanaSequence(ganas, tuple(bits[n:]))


def gana_code(letter: str) -> int:
    """4-bit code of a gaṇa: a leading 1 bit prepended to its 3-bit value.

    The leading bit keeps "mn" and "nm" (or any run of n-gaṇas of different
    lengths) from collapsing to the same number.
    """
    if letter not in GANA_BITS:
        raise ValueError(f"unknown gaṇa {letter!r}")
    return 8 + GANAS.index(letter)


def lg_to_bits(pattern: str) -> tuple[int, ...]:
    return tuple(1 if c in "Gg" else 0 for c in pattern)


def bits_to_lg(bits: Sequence[int]) -> str:
    return "".join("G" if b else "L" for b in bits)
