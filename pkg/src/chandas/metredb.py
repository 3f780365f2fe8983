"""Metre database: file format, validation, and the exact-key lookup index.

Sama metres sit in 26 buckets by syllable count. Within a bucket the key of
a pāda is an integer built from its gaṇa codes, so a lookup is one dict
probe and at most one record comparison. Ardhasama and viṣama metres are
keyed on their pāda lengths plus per-pāda keys. The split tables ALT
(half length -> ardhasama pāda splits) and VLT (half lengths -> viṣama
pāda splits) are derived from the records at load time.

Every pāda's final syllable is forced to guru before its key is computed,
on both the record side and the query side (pāda-final anceps).
"""

from __future__ import annotations

import logging
import re
import shlex
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (BadYati, DatabaseError, DuplicateName, DuplicatePattern,
                     LengthOutOfRange, ParseError, PatternTooLong)
from .gana import gana_code, lg_to_bits, to_ganas
from .jati import MatraRule

log = logging.getLogger(__name__)

MAX_SYLLABLES = 26
FIELD_ORDER = ("name", "class", "patterns", "yati", "special", "members", "rule", "source", "notes")


class MetreClass(str, Enum):
    SAMA = "sama"
    ARDHASAMA = "ardhasama"
    VISAMA = "visama"
    JATI = "jati"


PATTERN_COUNT = {MetreClass.SAMA: 1, MetreClass.ARDHASAMA: 2, MetreClass.VISAMA: 4}


@dataclass(frozen=True)
class MetreRecord:
    name: str
    metre_class: MetreClass
    patterns: tuple[str, ...] = ()
    yati: tuple[tuple[int, ...], ...] = ()
    special: str | None = None
    members: tuple[str, ...] = ()
    jati_rule: MatraRule | None = None
    source: str = ""
    notes: str = ""
    line: int = field(default=0, compare=False)

    @property
    def pada_patterns(self) -> tuple[str, str, str, str]:
        """The four pāda patterns (sama repeated, ardhasama alternated)."""
        p = self.patterns
        if len(p) == 1:
            return (p[0],) * 4
        if len(p) == 2:
            return (p[0], p[1], p[0], p[1])
        return tuple(p)  # type: ignore[return-value]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.pada_patterns) if self.patterns else ()

    def pada_yati(self, k: int) -> tuple[int, ...]:
        if not self.yati:
            return ()
        if len(self.yati) == 1:
            return self.yati[0]
        return self.yati[k % len(self.yati)]


def canonical(bits: Sequence[int]) -> tuple[int, ...]:
    """``bits`` with the pāda-final syllable read guru."""
    return tuple(bits[:-1]) + (1,) if bits else ()


def pattern_key(bits: Sequence[int]) -> int:
    """Integer key of a pāda weight pattern.

    Base-16 digits are the gaṇa codes (8..15) left to right, followed by one
    base-4 digit per leftover syllable (2 = laghu, 3 = guru).

    >>> pattern_key((1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1)) == ((0xEEA * 4 + 3) * 4 + 3)
    True
    """
    if not 1 <= len(bits) <= MAX_SYLLABLES:
        raise LengthOutOfRange(f"pāda length {len(bits)} outside 1..{MAX_SYLLABLES}")
    g = to_ganas(bits)
    key = 0
    for letter in g.ganas:
        key = key * 16 + gana_code(letter)
    for b in g.remainder:
        key = key * 4 + 2 + b
    return key


def pattern_matches(pattern: str, bits: Sequence[int]) -> bool:
    """Match an L/G/X pattern against weights, final syllable anceps."""
    if len(pattern) != len(bits):
        return False
    last = len(bits) - 1
    return all(c == "X" or i == last or (c == "G") == bool(b) for i, (c, b) in enumerate(zip(pattern, bits)))


# --- file format --------------------------------------------------------------

_BARE = re.compile(r"[^\s\"'\\=#]+")


def _quote(value: str) -> str:
    if _BARE.fullmatch(value):
        return value
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _parse_yati(text: str, line: int) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(
            tuple(int(x) for x in part.split(",") if x.strip())
            for part in text.split("/")
        )
    except ValueError:
        raise ParseError(line, f"bad yati {text!r}") from None


def parse_record(text: str, line: int = 0) -> MetreRecord:
    try:
        tokens = shlex.split(text)
    except ValueError as exc:
        raise ParseError(line, str(exc)) from None
    fields: dict[str, str] = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in FIELD_ORDER:
            raise ParseError(line, f"unexpected token {tok!r}")
        if key in fields:
            raise ParseError(line, f"field {key!r} given twice")
        fields[key] = value
    name = fields.get("name", "").strip()
    if not name:
        raise ParseError(line, "missing name")
    try:
        cls = MetreClass(fields.get("class", ""))
    except ValueError:
        raise ParseError(line, f"bad or missing class for {name!r}") from None

    special = fields.get("special") or None
    patterns = tuple(p.strip().upper() for p in fields["patterns"].split("/")) if fields.get("patterns") else ()
    members = tuple(m.strip() for m in fields["members"].split(",")) if fields.get("members") else ()
    rule = None

    if cls is MetreClass.JATI:
        if patterns or "rule" not in fields:
            raise ParseError(line, f"jāti record {name!r} needs a rule and no patterns")
        try:
            rule = MatraRule.parse(name, fields["rule"])
        except ValueError as exc:
            raise ParseError(line, f"{name}: {exc}") from None
    elif special == "mixture":
        if cls is not MetreClass.VISAMA or patterns or len(members) < 2:
            raise ParseError(line, f"mixture {name!r} must be viṣama with ≥2 members and no patterns")
    elif special not in (None, "pattern"):
        raise ParseError(line, f"unknown special kind {special!r}")
    else:
        if "rule" in fields:
            raise ParseError(line, f"varṇa record {name!r} cannot carry a jāti rule")
        if special == "pattern" and cls is not MetreClass.VISAMA:
            raise ParseError(line, f"pattern special {name!r} must be viṣama")
        want = PATTERN_COUNT[cls] if special is None else 4
        if len(patterns) != want:
            raise ParseError(line, f"{name!r}: {cls.value} needs {want} pattern(s), got {len(patterns)}")
        allowed = set("LGX") if special == "pattern" else set("LG")
        for p in patterns:
            if not p:
                raise ParseError(line, f"{name!r}: empty pattern")
            if not set(p) <= allowed:
                raise ParseError(line, f"{name!r}: bad pattern characters in {p!r}")
            if len(p) > MAX_SYLLABLES:
                raise PatternTooLong(f"{name}: {len(p)} syllables per pāda (daṇḍaka metres are not supported)")

    yati = _parse_yati(fields["yati"], line) if fields.get("yati") else ()
    if yati:
        if not patterns or len(yati) not in (1, len(patterns)):
            raise BadYati(f"{name}: yati needs one list or one per pattern")
        for k, ys in enumerate(yati):
            n = len(patterns[k if len(yati) > 1 else 0]) if len(yati) > 1 else min(len(p) for p in patterns)
            if any(b <= a for a, b in zip(ys, ys[1:])) or any(not 1 <= y < n for y in ys):
                raise BadYati(f"{name}: yati {list(ys)} must increase strictly within 1..{n - 1}")

    return MetreRecord(name, cls, patterns, yati, special, members, rule,
                       fields.get("source", ""), fields.get("notes", ""), line)


def dump_record(rec: MetreRecord) -> str:
    values = {
        "name": rec.name,
        "class": rec.metre_class.value,
        "patterns": "/".join(rec.patterns),
        "yati": "/".join(",".join(map(str, ys)) for ys in rec.yati),
        "special": rec.special or "",
        "members": ",".join(rec.members),
        "rule": str(rec.jati_rule) if rec.jati_rule else "",
        "source": rec.source,
        "notes": rec.notes,
    }
    return " ".join(f"{k}={_quote(values[k])}" for k in FIELD_ORDER if values[k])


def parse_records(text: str) -> list[MetreRecord]:
    records = []
    for no, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        records.append(parse_record(stripped, no))
    return records


def dump_records(records: Iterable[MetreRecord]) -> str:
    return "".join(dump_record(r) + "\n" for r in records)


def default_database_text() -> str:
    return resources.files("chandas").joinpath("data/metres.db").read_text(encoding="utf-8")


def load_database(path: str | Path | None = None) -> "MetreIndex":
    """Parse, validate and index a metre file (the shipped seed if ``path`` is None)."""
    text = default_database_text() if path is None else Path(path).read_text(encoding="utf-8")
    return MetreIndex(parse_records(text))


# --- index --------------------------------------------------------------------


class MetreIndex:
    """Immutable lookup structure over a validated list of records."""

    def __init__(self, records: Sequence[MetreRecord]):
        self.records: tuple[MetreRecord, ...] = tuple(records)
        self.sama_buckets: list[dict[int, MetreRecord]] = [{} for _ in range(MAX_SYLLABLES)]
        self.ardhasama_index: dict[tuple[int, ...], MetreRecord] = {}
        self.visama_index: dict[tuple[int, ...], MetreRecord] = {}
        self.mixtures: list[MetreRecord] = []
        self.pattern_specials: list[MetreRecord] = []
        self.jati_rules: list[MatraRule] = []
        self.by_name: dict[tuple[MetreClass, str], MetreRecord] = {}
        alt: dict[int, set[tuple[int, int]]] = defaultdict(set)
        vlt: dict[tuple[int, int], set[tuple[int, int, int, int]]] = defaultdict(set)
        self._member_lengths: dict[str, int] = {}

        for rec in self.records:
            ident = (rec.metre_class, rec.name)
            if ident in self.by_name:
                raise DuplicateName(f"{rec.name!r} appears twice in class {rec.metre_class.value}")
            self.by_name[ident] = rec

        for rec in self.records:
            cls = rec.metre_class
            if any(p.endswith("L") for p in rec.patterns):
                log.debug("%s: pāda-final laghu is read as anceps", rec.name)
            if cls is MetreClass.JATI:
                self.jati_rules.append(rec.jati_rule)  # type: ignore[arg-type]
            elif rec.special == "mixture":
                self._add_mixture(rec, vlt)
            elif rec.special == "pattern":
                a, b, c, d = rec.lengths
                vlt[(a + b, c + d)].add((a, b, c, d))
                self.pattern_specials.append(rec)
            elif cls is MetreClass.SAMA:
                bits = lg_to_bits(rec.patterns[0])
                self._put(self.sama_buckets[len(bits) - 1], pattern_key(canonical(bits)), rec)
            elif cls is MetreClass.ARDHASAMA:
                p1, p2 = (lg_to_bits(p) for p in rec.patterns)
                key = (len(p1), len(p2), pattern_key(canonical(p1)), pattern_key(canonical(p2)))
                self._put(self.ardhasama_index, key, rec)
                alt[len(p1) + len(p2)].add((len(p1), len(p2)))
            else:
                pads = [lg_to_bits(p) for p in rec.patterns]
                lengths = tuple(len(p) for p in pads)
                self._put(self.visama_index, lengths + tuple(pattern_key(canonical(p)) for p in pads), rec)
                a, b, c, d = lengths
                vlt[(a + b, c + d)].add(lengths)

        self.alt: dict[int, tuple[tuple[int, int], ...]] = {k: tuple(sorted(v)) for k, v in sorted(alt.items())}
        self.vlt: dict[tuple[int, int], tuple[tuple[int, int, int, int], ...]] = {
            k: tuple(sorted(v)) for k, v in sorted(vlt.items())}

    @staticmethod
    def _put(table: dict, key, rec: MetreRecord) -> None:
        other = table.get(key)
        if other is not None:
            raise DuplicatePattern(f"{rec.name!r} has the same pattern as {other.name!r} (final syllable is anceps)")
        table[key] = rec

    def _add_mixture(self, rec: MetreRecord, vlt) -> None:
        lengths = set()
        for m in rec.members:
            member = self.by_name.get((MetreClass.SAMA, m))
            if member is None:
                raise DatabaseError(f"{rec.name}: member {m!r} is not a sama metre in this database")
            lengths.add(len(member.patterns[0]))
        if len(lengths) != 1:
            raise DatabaseError(f"{rec.name}: members differ in syllable count")
        n = lengths.pop()
        self._member_lengths[rec.name] = n
        vlt[(2 * n, 2 * n)].add((n, n, n, n))
        self.mixtures.append(rec)

    # lookups

    def lookup_sama(self, n: int, key: int) -> MetreRecord | None:
        if not 1 <= n <= MAX_SYLLABLES:
            return None
        return self.sama_buckets[n - 1].get(key)

    def lookup_ardhasama(self, n11: int, n12: int, key1: int, key2: int) -> MetreRecord | None:
        return self.ardhasama_index.get((n11, n12, key1, key2))

    def lookup_visama(self, lengths: Sequence[int], keys: Sequence[int]) -> MetreRecord | None:
        return self.visama_index.get(tuple(lengths) + tuple(keys))

    def match_mixture(self, pada_metres: Sequence[MetreRecord]) -> MetreRecord | None:
        """Special viṣama whose member list covers every pāda's sama metre."""
        names = {m.name for m in pada_metres}
        for rec in self.mixtures:
            if names <= set(rec.members):
                return rec
        return None

    def match_pattern(self, padas: Sequence[Sequence[int]]) -> MetreRecord | None:
        for rec in self.pattern_specials:
            if all(pattern_matches(p, bits) for p, bits in zip(rec.pada_patterns, padas)):
                return rec
        return None

    def sama_records(self) -> list[MetreRecord]:
        return [r for r in self.records if r.metre_class is MetreClass.SAMA]

    def __len__(self) -> int:
        return len(self.records)
