"""Guru/laghu scansion of a phoneme stream.

Each vowel yields one bit (0 = laghu, 1 = guru). Positions where a guru is
caused only by an optional cluster (pr, br, kr, or a cluster opening with h)
are flagged as exceptions; the stored bit stays 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from . import stats
from .errors import InvalidVariant, MalformedText
from .translit import CONSONANT_KINDS, DANDA_KINDS, GAP_KINDS, Kind, Phoneme

log = logging.getLogger(__name__)

OPTIONAL_CLUSTERS = frozenset({("p", "r"), ("b", "r"), ("k", "r")})

#: flagged positions beyond this are not permuted
MAX_EXCEPTIONS = 16


@dataclass(frozen=True)
class WeightSequence:
    bits: tuple[int, ...]
    exceptions: frozenset[int] = frozenset()
    #: per bit, (first, last + 1) phoneme indices of the syllable
    syllable_spans: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @classmethod
    def from_string(cls, bits: str, exceptions: Sequence[int] = ()) -> "WeightSequence":
        return cls(tuple(int(b) for b in bits), frozenset(exceptions))

    def slice(self, start: int, stop: int) -> "WeightSequence":
        """Bits ``start:stop`` with exception positions re-based."""
        return WeightSequence(
            self.bits[start:stop],
            frozenset(p - start for p in self.exceptions if start <= p < stop),
            self.syllable_spans[start:stop],
        )


def scan(phonemes: Sequence[Phoneme]) -> WeightSequence:
    """Weight every vowel of ``phonemes`` in a single left-to-right pass.

    Spaces, line feeds and avagraha are transparent when looking for a
    following cluster; a daṇḍa stops the look-ahead.
    """
    stats.passes["scan"] += 1
    bits: list[int] = []
    exceptions: set[int] = set()
    vowel_at: list[int] = []
    n = len(phonemes)
    for i, ph in enumerate(phonemes):
        kind = ph.kind
        if kind in (Kind.ANUSVARA, Kind.VISARGA):
            if i == 0 or not phonemes[i - 1].is_vowel:
                raise MalformedText(ph.source_span[0], f"stray {kind.value.lower()}")
            continue
        if kind is Kind.LONG_VOWEL:
            vowel_at.append(i)
            bits.append(1)
            continue
        if kind is not Kind.SHORT_VOWEL:
            continue
        vowel_at.append(i)
        following: list[Phoneme] = []
        j = i + 1
        while j < n and len(following) < 2:
            nxt = phonemes[j]
            if nxt.kind in GAP_KINDS:
                j += 1
                continue
            if nxt.kind in (Kind.ANUSVARA, Kind.VISARGA) and not following:
                following.append(nxt)
                break
            if nxt.kind not in CONSONANT_KINDS:
                break
            following.append(nxt)
            j += 1
        if following and following[0].kind in (Kind.ANUSVARA, Kind.VISARGA):
            bits.append(1)
        elif len(following) == 2:
            bits.append(1)
            first, second = following
            if (first.surface, second.surface) in OPTIONAL_CLUSTERS or first.kind is Kind.ASPIRATE:
                exceptions.add(len(bits) - 1)
        else:
            bits.append(0)
    return WeightSequence(tuple(bits), frozenset(exceptions), _syllable_spans(phonemes, vowel_at))


def _syllable_spans(phonemes: Sequence[Phoneme], vowel_at: list[int]) -> tuple[tuple[int, int], ...]:
    """Partition the phonemes around each vowel into display syllables.

    Between two vowels the cut goes at the last word gap if there is one,
    otherwise before the final consonant (so it opens the next syllable).
    Anusvāra and visarga always close the preceding syllable.
    """
    if not vowel_at:
        return ()
    cuts = [0]
    for a, b in zip(vowel_at, vowel_at[1:]):
        gap = [k for k in range(a + 1, b) if phonemes[k].kind in GAP_KINDS or phonemes[k].kind in DANDA_KINDS]
        if gap:
            cuts.append(gap[-1] + 1)
            continue
        cons = [k for k in range(a + 1, b) if phonemes[k].kind in CONSONANT_KINDS]
        cuts.append(cons[-1] if cons else b)
    cuts.append(len(phonemes))
    return tuple(zip(cuts[:-1], cuts[1:]))


def check_variant(w: WeightSequence, variant: Mapping[int, int] | None) -> dict[int, int]:
    if not variant:
        return {}
    for pos, bit in variant.items():
        if pos not in w.exceptions:
            raise InvalidVariant(f"position {pos} is not an exception position")
        if bit not in (0, 1):
            raise InvalidVariant(f"bit for position {pos} must be 0 or 1, got {bit!r}")
    return dict(variant)


def apply_variant(w: WeightSequence, variant: Mapping[int, int] | None) -> tuple[int, ...]:
    variant = check_variant(w, variant)
    if not variant:
        return w.bits
    return tuple(variant.get(i, b) for i, b in enumerate(w.bits))


def matra_of(w: WeightSequence, variant: Mapping[int, int] | None = None) -> int:
    """Mātrā count: laghu counts 1, guru counts 2."""
    return sum(1 + b for b in apply_variant(w, variant))


def exception_variants(w: WeightSequence, cap: int = MAX_EXCEPTIONS) -> Iterator[dict[int, int]]:
    """Lazily yield every assignment of the exception positions.

    The all-guru base form comes first, then forms with one position read
    laghu, then two, and so on. Above ``cap`` flagged positions only the
    base form is produced.
    """
    positions = sorted(w.exceptions)
    base = {p: 1 for p in positions}
    yield base
    if len(positions) > cap:
        log.warning("%d exception positions exceed the cap of %d; trying base form only",
                    len(positions), cap)
        return
    for size in range(1, len(positions) + 1):
        for shortened in combinations(positions, size):
            variant = dict(base)
            for p in shortened:
                variant[p] = 0
            yield variant
