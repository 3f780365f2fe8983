"""Devanagari to IAST conversion and IAST phoneme segmentation.

One Sanskrit sound may be written with several Latin characters ("kh", "ai",
"ṭh"), so everything downstream works on :class:`Phoneme` units rather than
on characters.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable

from . import stats
from .errors import UnknownCharacter

DEVANAGARI_RANGE = (0x0900, 0x097F)

# Table of letter sets. "ṁ" is the canonical anusvāra spelling.
SHORT_VOWELS = frozenset({"a", "i", "u", "ṛ", "ḷ"})
LONG_VOWELS = frozenset({"ā", "ī", "ū", "ṝ", "ḹ", "e", "ai", "o", "au"})
VOWELS = SHORT_VOWELS | LONG_VOWELS
CONSONANTS = frozenset(
    "k kh g gh ṅ c ch j jh ñ ṭ ṭh ḍ ḍh ṇ t th d dh n p ph b bh m".split()
)
SEMIVOWELS = frozenset({"y", "r", "l", "v"})
SIBILANTS = frozenset({"ś", "ṣ", "s"})
ASPIRATE = frozenset({"h"})
ANUSVARA = frozenset({"ṁ"})
VISARGA = frozenset({"ḥ"})
COLUMNS_1_AND_3 = frozenset({"k", "g", "c", "j", "ṭ", "ḍ", "t", "d", "p", "b"})
COLUMNS_2_AND_4 = frozenset({"kh", "gh", "ch", "jh", "ṭh", "ḍh", "th", "dh", "ph", "bh"})
FULL_STOP = frozenset({"|", "||"})

PHONEME_CLASSES: dict[str, frozenset[str]] = {
    "ShortVowels": SHORT_VOWELS,
    "LongVowels": LONG_VOWELS,
    "Vowels": VOWELS,
    "Consonants": CONSONANTS,
    "SemiVowels": SEMIVOWELS,
    "Sibilants": SIBILANTS,
    "Aspirate": ASPIRATE,
    "Anusvara": ANUSVARA,
    "Visarga": VISARGA,
    "Columns1and3": COLUMNS_1_AND_3,
    "Columns2and4": COLUMNS_2_AND_4,
    "FullStop": FULL_STOP,
}


class Kind(str, Enum):
    SHORT_VOWEL = "ShortVowel"
    LONG_VOWEL = "LongVowel"
    CONSONANT = "Consonant"
    SEMIVOWEL = "SemiVowel"
    SIBILANT = "Sibilant"
    ASPIRATE = "Aspirate"
    ANUSVARA = "Anusvara"
    VISARGA = "Visarga"
    AVAGRAHA = "Avagraha"
    DANDA = "Danda"
    DOUBLE_DANDA = "DoubleDanda"
    SPACE = "Space"
    LINE_FEED = "LineFeed"


VOWEL_KINDS = frozenset({Kind.SHORT_VOWEL, Kind.LONG_VOWEL})
CONSONANT_KINDS = frozenset({Kind.CONSONANT, Kind.SEMIVOWEL, Kind.SIBILANT, Kind.ASPIRATE})
GAP_KINDS = frozenset({Kind.SPACE, Kind.LINE_FEED, Kind.AVAGRAHA})
DANDA_KINDS = frozenset({Kind.DANDA, Kind.DOUBLE_DANDA})


@dataclass(frozen=True)
class Phoneme:
    kind: Kind
    surface: str
    source_span: tuple[int, int] = (0, 0)

    @property
    def is_vowel(self) -> bool:
        return self.kind in VOWEL_KINDS

    @property
    def is_consonant(self) -> bool:
        return self.kind in CONSONANT_KINDS

    @property
    def aspirated(self) -> bool:
        return self.surface in COLUMNS_2_AND_4

    def __repr__(self) -> str:
        return f"[{self.surface}]" if self.kind not in (Kind.SPACE, Kind.LINE_FEED) else f"[{self.kind.value}]"


def _surface_table() -> dict[str, tuple[Kind, str]]:
    table: dict[str, tuple[Kind, str]] = {}
    for kind, members in (
        (Kind.SHORT_VOWEL, SHORT_VOWELS),
        (Kind.LONG_VOWEL, LONG_VOWELS),
        (Kind.CONSONANT, CONSONANTS),
        (Kind.SEMIVOWEL, SEMIVOWELS),
        (Kind.SIBILANT, SIBILANTS),
        (Kind.ASPIRATE, ASPIRATE),
        (Kind.VISARGA, VISARGA),
    ):
        for s in members:
            table[s] = (kind, s)
    # anusvāra spellings, all normalised to "ṁ"
    for s in ("ṁ", "ṃ", "m̐"):
        table[s] = (Kind.ANUSVARA, "ṁ")
    for s in ("'", "’", "ʼ"):
        table[s] = (Kind.AVAGRAHA, "'")
    table["|"] = (Kind.DANDA, "|")
    table["।"] = (Kind.DANDA, "|")
    table["||"] = (Kind.DOUBLE_DANDA, "||")
    table["॥"] = (Kind.DOUBLE_DANDA, "||")
    table[" "] = (Kind.SPACE, " ")
    table["\t"] = (Kind.SPACE, " ")
    table["\n"] = (Kind.LINE_FEED, "\n")
    return table


SURFACES = _surface_table()
MAX_SURFACE = max(len(s) for s in SURFACES)

# break longest match without emitting anything; "·" forces a cluster reading
SEPARATORS = frozenset({"·", "-", "\r", "‌", "‍"})


def _normalised_chars(text: str) -> list[tuple[str, int, int]]:
    """Lower-cased NFC characters, each tagged with its span in ``text``."""
    out: list[tuple[str, int, int]] = []
    i, n = 0, len(text)
    while i < n:
        j = i + 1
        while j < n and unicodedata.combining(text[j]):
            j += 1
        cluster = unicodedata.normalize("NFC", text[i:j]).lower()
        if cluster == "m̐":
            out.append(("m̐", i, j))
        else:
            for k, ch in enumerate(cluster):
                if unicodedata.combining(ch):
                    raise UnknownCharacter(min(i + k, j - 1), ch)
                out.append((ch, i, j))
        i = j
    return out


def tokenize(text: str) -> list[Phoneme]:
    """Segment IAST text into phonemes by longest match.

    >>> [p.surface for p in tokenize("atha")]
    ['a', 'th', 'a']
    """
    stats.passes["tokenize"] += 1
    chars = _normalised_chars(text)
    out: list[Phoneme] = []
    i, n = 0, len(chars)
    while i < n:
        ch, start, end = chars[i]
        if ch in SEPARATORS:
            i += 1
            continue
        for width in range(min(MAX_SURFACE, n - i), 0, -1):
            cand = "".join(c for c, _, _ in chars[i:i + width])
            hit = SURFACES.get(cand)
            if hit is not None:
                kind, surface = hit
                out.append(Phoneme(kind, surface, (start, chars[i + width - 1][2])))
                i += width
                break
        else:
            raise UnknownCharacter(start, ch)
    return out


def render(phonemes: Iterable[Phoneme]) -> str:
    return "".join(p.surface for p in phonemes)


@lru_cache(maxsize=None)
def devanagari_table() -> dict[str, tuple[str, str]]:
    """Code point -> (IAST surface, category), read from the shipped data file."""
    table: dict[str, tuple[str, str]] = {}
    data = resources.files("chandas").joinpath("data/devanagari.tsv").read_text(encoding="utf-8")
    for line in data.splitlines():
        if not line or line.startswith("#"):
            continue
        hexcode, surface, category = line.split("\t")
        table[chr(int(hexcode, 16))] = (surface, category)
    return table


def is_devanagari(text: str) -> bool:
    lo, hi = DEVANAGARI_RANGE
    return any(lo <= ord(c) <= hi for c in text)


_PASSTHROUGH = frozenset(" \t\n\r|'-")
_IGNORED = frozenset({"‌", "‍"})


def devanagari_to_latin(text: str) -> str:
    """Convert Devanagari text to IAST.

    An interpunct is emitted where the Latin spelling would otherwise fuse
    two letters into one (अइ -> "a·i", क्ह -> "k·h").

    >>> devanagari_to_latin("हरिः")
    'hariḥ'
    """
    table = devanagari_table()
    out: list[str] = []
    pending = False  # consonant emitted, inherent vowel not yet decided
    bare = ""  # last consonant closed by a virāma

    def flush() -> None:
        nonlocal pending
        if pending:
            out.append("a")
            pending = False

    for offset, ch in enumerate(text):
        entry = table.get(ch)
        if entry is None:
            if ch in _IGNORED:
                continue
            if ch in _PASSTHROUGH or ch.isspace():
                flush()
                bare = ""
                out.append(ch)
                continue
            raise UnknownCharacter(offset, ch)
        surface, category = entry
        if category == "consonant":
            flush()
            if bare in COLUMNS_1_AND_3 and surface == "h":
                out.append("·")
            out.append(surface)
            pending = True
            bare = ""
        elif category == "nukta":
            continue
        elif category == "virama":
            if pending:
                bare = out[-1]
            pending = False
        elif category == "sign":
            pending = False
            bare = ""
            out.append(surface)
        elif category == "vowel":
            flush()
            if out and out[-1].endswith("a") and surface in ("i", "u"):
                out.append("·")
            out.append(surface)
            bare = ""
        else:  # mark, punct
            flush()
            bare = ""
            out.append(surface)
    flush()
    return "".join(out)


def to_latin(text: str, fmt: str = "auto") -> str:
    """Return IAST for ``text`` given as ``deva``, ``iast`` or ``auto``-detected."""
    if fmt == "deva" or (fmt == "auto" and is_devanagari(text)):
        return devanagari_to_latin(text)
    if fmt not in ("auto", "iast", "deva"):
        raise ValueError(f"unknown input format {fmt!r}")
    return text

