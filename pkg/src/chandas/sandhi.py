"""Repair of missing euphonic junctions that change syllable weights.

Only word junctions joined by plain spaces are touched; line feeds and
daṇḍas are treated as pauses. Handled cases::

    hariḥ iha    -> haririha      (visarga after i/ī/u/ū before a vowel)
    phalaṁ ahaṁ  -> phalamaham    (anusvāra before a vowel or at a pause)
    gacchan iti  -> gacchanniti   (n after a short vowel before a vowel)
    rāmaḥ iti    -> rāma iti      (visarga after a/ā dropped, vowels kept apart)

Other suspicious junctions are reported by :func:`sandhi_warnings`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .translit import DANDA_KINDS, Kind, Phoneme, render


class Rule(str, Enum):
    VISARGA_TO_R = "VisargaToR"
    VISARGA_VOWEL_ELISION = "VisargaVowelElision"
    ANUSVARA_TO_M = "AnusvaraToM"
    FINAL_N_DOUBLING = "FinalNDoubling"


@dataclass(frozen=True)
class SandhiCorrection:
    rule_id: Rule
    span: tuple[int, int]
    before: str
    after: str

    def to_dict(self) -> dict:
        return {"rule": self.rule_id.value, "span": list(self.span), "before": self.before, "after": self.after}


@dataclass(frozen=True)
class SandhiWarning:
    span: tuple[int, int]
    text: str
    message: str


R_AFTER = frozenset({"i", "ī", "u", "ū"})
ELIDE_AFTER = frozenset({"a", "ā"})


def _junction(phonemes: Sequence[Phoneme], i: int) -> int | None:
    """Index of the word-initial phoneme after the space run following ``i``."""
    j = i + 1
    while j < len(phonemes) and phonemes[j].kind is Kind.SPACE:
        j += 1
    if j == i + 1 or j == len(phonemes):
        return None
    return j


def _at_pause(phonemes: Sequence[Phoneme], i: int) -> bool:
    j = i + 1
    while j < len(phonemes) and phonemes[j].kind in (Kind.SPACE, Kind.LINE_FEED):
        j += 1
    return j == len(phonemes) or phonemes[j].kind in DANDA_KINDS


def _span(phonemes: Sequence[Phoneme], start: int, stop: int) -> tuple[int, int]:
    return phonemes[start].source_span[0], phonemes[stop - 1].source_span[1]


def correct_verse(phonemes: Sequence[Phoneme]) -> tuple[list[Phoneme], list[SandhiCorrection]]:
    """Apply the junction repairs; returns the new stream and what changed."""
    out: list[Phoneme] = []
    corrections: list[SandhiCorrection] = []
    n = len(phonemes)
    i = 0
    while i < n:
        ph = phonemes[i]
        prev = phonemes[i - 1] if i else None
        j = _junction(phonemes, i)
        before_vowel = j is not None and phonemes[j].is_vowel
        replacement: list[Phoneme] | None = None
        rule = None
        stop = i + 1
        if ph.kind is Kind.VISARGA and before_vowel and prev is not None:
            if prev.surface in R_AFTER:
                rule, stop = Rule.VISARGA_TO_R, j
                replacement = [Phoneme(Kind.SEMIVOWEL, "r", ph.source_span)]
            elif prev.surface in ELIDE_AFTER and not (prev.surface == "a" and phonemes[j].surface == "a"):
                # aḥ + a takes the o-form instead; left alone
                rule, stop = Rule.VISARGA_VOWEL_ELISION, i + 1
                replacement = []
        elif ph.kind is Kind.ANUSVARA and (before_vowel or _at_pause(phonemes, i)):
            rule = Rule.ANUSVARA_TO_M
            stop = j if before_vowel else i + 1
            replacement = [Phoneme(Kind.CONSONANT, "m", ph.source_span)]
        elif (ph.surface == "n" and before_vowel and prev is not None
              and prev.kind is Kind.SHORT_VOWEL):
            rule, stop = Rule.FINAL_N_DOUBLING, j
            replacement = [ph, Phoneme(Kind.CONSONANT, "n", ph.source_span)]
        if replacement is None:
            out.append(ph)
            i += 1
            continue
        corrections.append(SandhiCorrection(
            rule, _span(phonemes, i, stop), render(phonemes[i:stop]), render(replacement)))
        out.extend(replacement)
        i = stop
    return out, corrections


def correct_text(text: str) -> str:
    """Convenience wrapper over IAST text."""
    from .translit import tokenize

    return render(correct_verse(tokenize(text))[0])


def sandhi_warnings(phonemes: Sequence[Phoneme]) -> list[SandhiWarning]:
    """Junctions that look unjoined but are outside the repaired cases."""
    warnings: list[SandhiWarning] = []
    for i, ph in enumerate(phonemes):
        j = _junction(phonemes, i)
        if j is None or not phonemes[j].is_vowel:
            continue
        text = render(phonemes[max(0, i - 1):j + 1])
        if ph.is_vowel:
            msg = "vowel hiatus across words"
        elif ph.kind is Kind.VISARGA and i and phonemes[i - 1].surface == "a" and phonemes[j].surface == "a":
            msg = "aḥ before a (expected o')"
        elif ph.kind is Kind.VISARGA and i and phonemes[i - 1].surface not in R_AFTER | ELIDE_AFTER:
            msg = "visarga before a vowel"
        else:
            continue
        warnings.append(SandhiWarning(_span(phonemes, i, j + 1), text, msg))
    return warnings
