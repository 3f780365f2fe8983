"""Varṇa classification of a whole verse, with jāti as fallback.

The verse is split at its daṇḍas into two halves. For each exception
variant (base form first) the half lengths decide which metre classes are
possible:

* equal even halves: sama (equal pāda split), then ardhasama, then viṣama
* equal odd halves: ardhasama, then viṣama
* unequal halves: viṣama only

Candidate pāda splits for ardhasama and viṣama come from the ALT and VLT
tables of the index rather than from all integer splits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import reduce
from operator import xor
from typing import Iterator, Sequence

from .errors import ExtraDanda, MissingDanda
from .gana import GanaSequence, to_ganas
from .jati import JatiResult, classify_jati
from .metredb import MetreClass, MetreIndex, MetreRecord, canonical, pattern_key
from .sandhi import SandhiCorrection, SandhiWarning, correct_verse, sandhi_warnings
from .scansion import MAX_EXCEPTIONS, WeightSequence, apply_variant, exception_variants, scan
from .translit import Kind, Phoneme, render, to_latin, tokenize

log = logging.getLogger(__name__)

Bits = tuple[int, ...]


@dataclass(frozen=True)
class VerseHalves:
    P1: tuple[Phoneme, ...]
    P2: tuple[Phoneme, ...]
    B1: WeightSequence
    B2: WeightSequence
    N1: int
    N2: int
    #: B1 followed by B2, exception positions counted over the whole verse
    weights: WeightSequence


@dataclass(frozen=True)
class ClassifyOptions:
    max_exceptions: int = MAX_EXCEPTIONS
    all_matches: bool = False

    def __post_init__(self) -> None:
        if self.max_exceptions < 0:
            raise ValueError("max_exceptions must be >= 0")


@dataclass(frozen=True)
class ClassificationResult:
    metre: MetreRecord
    split: tuple[int, int, int, int]
    #: pāda weights as scanned under the chosen variant (before anceps)
    pada_bits: tuple[Bits, Bits, Bits, Bits]
    gana_forms: tuple[GanaSequence, ...]
    #: exception positions read laghu in the chosen variant
    lambda_choice: dict[int, int]
    #: pādas (0..3) whose final laghu was read guru
    anceps_used: tuple[int, ...]
    yati: tuple[tuple[int, ...], ...]
    sandhi_corrections: tuple[SandhiCorrection, ...] = ()
    #: per-pāda sama metres when the match is a mixture
    pada_metres: tuple[str, ...] = ()

    @property
    def name(self) -> str:
        return self.metre.name


@dataclass
class VerseReport:
    text: str
    latin: str
    phonemes: list[Phoneme]
    halves: VerseHalves
    corrections: list[SandhiCorrection] = field(default_factory=list)
    warnings: list[SandhiWarning] = field(default_factory=list)
    matches: list[ClassificationResult] = field(default_factory=list)
    jati: list[JatiResult] = field(default_factory=list)
    variants_tried: int = 0
    diagnostics: dict = field(default_factory=dict)

    @property
    def result(self) -> ClassificationResult | None:
        return self.matches[0] if self.matches else None

    @property
    def matched(self) -> bool:
        return bool(self.matches or self.jati)


# --- halves -------------------------------------------------------------------


def split_halves(phonemes: Sequence[Phoneme], weights: WeightSequence | None = None) -> VerseHalves:
    """Split at the single interior daṇḍa; the verse must end with a double daṇḍa.

    ``weights`` is the scan of ``phonemes``; it is computed here if absent.
    """
    singles = [i for i, p in enumerate(phonemes) if p.kind is Kind.DANDA]
    doubles = [i for i, p in enumerate(phonemes) if p.kind is Kind.DOUBLE_DANDA]
    if not doubles:
        raise MissingDanda("verse must end with '||'")
    if not singles:
        raise MissingDanda("no '|' between the two halves")
    if len(singles) > 1 or singles[0] > doubles[0]:
        raise ExtraDanda(f"expected one '|' before '||', found {len(singles)}")
    end = doubles[0]
    if len(doubles) > 1 or any(p.kind not in (Kind.SPACE, Kind.LINE_FEED) for p in phonemes[end + 1:]):
        raise ExtraDanda("text after the closing '||'")
    mid = singles[0]
    if weights is None:
        weights = scan(phonemes)
    n1 = sum(1 for p in phonemes[:mid] if p.is_vowel)
    n = len(weights)
    return VerseHalves(tuple(phonemes[:mid]), tuple(phonemes[mid + 1:end]),
                       weights.slice(0, n1), weights.slice(n1, n), n1, n - n1, weights)


# --- varṇa matching -----------------------------------------------------------


def xor_filter(padas: Sequence[Bits]) -> bool:
    """Necessary condition for equal pādas: their bitwise XOR is all zero.

    Not sufficient (a, a, b, b also passes); a lookup must decide.
    """
    return not any(reduce(xor, column) for column in zip(*padas))


def _cut(bits: Bits, split: Sequence[int]) -> tuple[Bits, ...]:
    out, start = [], 0
    for n in split:
        out.append(bits[start:start + n])
        start += n
    return tuple(out)


def _resolve_yati(rec: MetreRecord, index: MetreIndex, pada_metres: Sequence[str]) -> tuple[tuple[int, ...], ...]:
    if pada_metres:
        return tuple(index.by_name[(MetreClass.SAMA, m)].pada_yati(0) for m in pada_metres)
    return tuple(rec.pada_yati(k) for k in range(4))


def _candidates(index: MetreIndex, n1: int, n2: int, bits: Bits
                ) -> Iterator[tuple[MetreRecord, tuple[int, int, int, int], tuple[str, ...]]]:
    """(record, split, per-pāda metres) for every match, in the preferred order."""
    if n1 == n2 and n1 % 2 == 0 and n1 > 0:
        h = n1 // 2
        split = (h, h, h, h)
        padas = tuple(canonical(p) for p in _cut(bits, split))
        if xor_filter(padas):
            keys = {pattern_key(p) for p in padas}
            if len(keys) == 1:
                rec = index.lookup_sama(h, keys.pop())
                if rec is not None:
                    yield rec, split, ()
    if n1 == n2:
        for a, b in index.alt.get(n1, ()):
            split = (a, b, a, b)
            p11, p12, p21, p22 = (canonical(p) for p in _cut(bits, split))
            if p11 == p21 and p12 == p22:
                rec = index.lookup_ardhasama(a, b, pattern_key(p11), pattern_key(p12))
                if rec is not None:
                    yield rec, split, ()
    splits = index.vlt.get((n1, n2), ())
    cut = {s: tuple(canonical(p) for p in _cut(bits, s)) for s in splits}
    for s in splits:
        rec = index.lookup_visama(s, [pattern_key(p) for p in cut[s]])
        if rec is not None:
            yield rec, s, ()
    for s in splits:
        if len(set(s)) == 1:
            members = [index.lookup_sama(s[0], pattern_key(p)) for p in cut[s]]
            if all(members):
                rec = index.match_mixture(members)  # type: ignore[arg-type]
                if rec is not None:
                    yield rec, s, tuple(m.name for m in members)  # type: ignore[union-attr]
    for s in splits:
        rec = index.match_pattern(_cut(bits, s))
        if rec is not None:
            yield rec, s, ()


def classify_varna(halves: VerseHalves, index: MetreIndex, opts: ClassifyOptions = ClassifyOptions(),
                   corrections: Sequence[SandhiCorrection] = ()) -> tuple[list[ClassificationResult], int]:
    """Matches (first only unless ``opts.all_matches``) and the number of variants tried."""
    results: list[ClassificationResult] = []
    seen: set[tuple[str, MetreClass, tuple[int, ...]]] = set()
    tried = 0
    for variant in exception_variants(halves.weights, opts.max_exceptions):
        tried += 1
        bits = apply_variant(halves.weights, variant)
        for rec, split, members in _candidates(index, halves.N1, halves.N2, bits):
            ident = (rec.name, rec.metre_class, split)
            if ident in seen:
                continue
            seen.add(ident)
            padas = _cut(bits, split)
            results.append(ClassificationResult(
                metre=rec,
                split=split,
                pada_bits=padas,  # type: ignore[arg-type]
                gana_forms=tuple(to_ganas(canonical(p)) for p in padas),
                lambda_choice={p: b for p, b in variant.items() if b == 0},
                anceps_used=tuple(k for k, p in enumerate(padas) if p and p[-1] == 0),
                yati=_resolve_yati(rec, index, members),
                sandhi_corrections=tuple(corrections),
                pada_metres=members,
            ))
            if not opts.all_matches:
                return results, tried
    return results, tried


# --- whole pipeline -----------------------------------------------------------


def _diagnostics(index: MetreIndex, halves: VerseHalves) -> dict:
    lengths = sorted({len(r.patterns[0]) for r in index.sama_records()})
    target = halves.N1 / 2
    nearest = min(lengths, key=lambda n: (abs(n - target), n)) if lengths else None
    return {
        "N1": halves.N1,
        "N2": halves.N2,
        "nearest_sama_length": nearest,
        "nearest_sama": [r.name for r in index.sama_records() if len(r.patterns[0]) == nearest][:5],
    }


def classify_verse(text: str, index: MetreIndex, opts: ClassifyOptions = ClassifyOptions(),
                   fmt: str = "auto", apply_sandhi: bool = True) -> VerseReport:
    """Transliterate, repair sandhi, scan once, then try varṇa and jāti matching.

    Jāti rules are tried when no varṇa metre matches, or always in
    all-matches mode.
    """
    latin = to_latin(text, fmt)
    original = tokenize(latin)
    warnings = sandhi_warnings(original)
    if apply_sandhi:
        phonemes, corrections = correct_verse(original)
    else:
        phonemes, corrections = list(original), []
    weights = scan(phonemes)
    halves = split_halves(phonemes, weights)
    matches, tried = classify_varna(halves, index, opts, corrections)
    jati: list[JatiResult] = []
    if not matches or opts.all_matches:
        found = classify_jati(halves, index.jati_rules, opts.max_exceptions)
        if found is not None:
            jati.append(found)
    report = VerseReport(text, latin, phonemes, halves, corrections, warnings, matches, jati, tried)
    if not report.matched:
        report.diagnostics = _diagnostics(index, halves)
    return report


def annotate(report: VerseReport, marker: str = "¦") -> str:
    """The (corrected) verse with ``marker`` at each caesura of the first match."""
    res = report.result
    spans = report.halves.weights.syllable_spans
    if res is None or not spans:
        return render(report.phonemes)
    cuts = set()
    offset = 0
    for n, ys in zip(res.split, res.yati):
        for y in ys:
            cuts.add(spans[offset + y][0])
        offset += n
    out = []
    for i, ph in enumerate(report.phonemes):
        if i in cuts:
            out.append(marker)
        out.append(render([ph]))
    return "".join(out)
