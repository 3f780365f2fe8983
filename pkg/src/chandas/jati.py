"""Mātrā-based (jāti) metre matching.

A jāti rule lists, for each half (or each quarter), the sizes of the mātrā
groups that must tile it, optionally with a constraint on the syllables
inside a group. Rule text looks like::

    half: 4:not-j 4 4:not-j 4 4:not-j 4:one-of=LGL,LLLL 4:not-j 2:guru / ...

i.e. the unit, then one group list per unit separated by "/".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Callable, Mapping, Sequence

from .gana import bits_to_lg, lg_to_bits
from .scansion import MAX_EXCEPTIONS, WeightSequence, apply_variant, exception_variants

if TYPE_CHECKING:
    from .classify import VerseHalves

ALLOWED_SIZES = frozenset({1, 2, 3, 4, 6, 8, 10})

PREDICATES: dict[str, Callable[[tuple[int, ...]], bool]] = {
    "any": lambda bits: True,
    "laghu": lambda bits: bits == (0,),
    "guru": lambda bits: bits == (1,),
    "all-laghu": lambda bits: not any(bits),
    "not-j": lambda bits: bits != (0, 1, 0),
    "ends-guru": lambda bits: bool(bits) and bits[-1] == 1,
}


class Unit(str, Enum):
    HALF = "half"
    QUARTER = "quarter"


@dataclass(frozen=True)
class MatraGroup:
    size: int
    constraint: str = "any"

    def accepts(self, bits: tuple[int, ...]) -> bool:
        if self.constraint.startswith("one-of="):
            allowed = {lg_to_bits(p) for p in self.constraint[len("one-of="):].split(",")}
            return bits in allowed
        return PREDICATES[self.constraint](bits)

    def __str__(self) -> str:
        return str(self.size) if self.constraint == "any" else f"{self.size}:{self.constraint}"

    @classmethod
    def parse(cls, token: str) -> "MatraGroup":
        size, _, constraint = token.partition(":")
        group = cls(int(size), constraint or "any")
        if group.size not in ALLOWED_SIZES:
            raise ValueError(f"group size {group.size} not in {sorted(ALLOWED_SIZES)}")
        if group.constraint.startswith("one-of="):
            pats = group.constraint[len("one-of="):].split(",")
            if not all(p and set(p) <= set("LG") for p in pats):
                raise ValueError(f"bad one-of patterns in {token!r}")
            if any(sum(1 + b for b in lg_to_bits(p)) != group.size for p in pats):
                raise ValueError(f"one-of pattern mātrās differ from group size in {token!r}")
        elif group.constraint not in PREDICATES:
            raise ValueError(f"unknown group constraint {group.constraint!r}")
        return group


@dataclass(frozen=True)
class MatraRule:
    name: str
    unit: Unit
    groups: tuple[tuple[MatraGroup, ...], ...]

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(sum(g.size for g in unit) for unit in self.groups)

    def half_groups(self, half: int) -> tuple[MatraGroup, ...]:
        if self.unit is Unit.HALF:
            return self.groups[half]
        return self.groups[2 * half] + self.groups[2 * half + 1]

    def __str__(self) -> str:
        return f"{self.unit.value}: " + " / ".join(" ".join(map(str, u)) for u in self.groups)

    @classmethod
    def parse(cls, name: str, text: str) -> "MatraRule":
        unit_name, sep, body = text.partition(":")
        if not sep:
            raise ValueError("rule must start with 'half:' or 'quarter:'")
        unit = Unit(unit_name.strip())
        groups = tuple(
            tuple(MatraGroup.parse(tok) for tok in part.split())
            for part in body.split("/")
        )
        expected = 2 if unit is Unit.HALF else 4
        if len(groups) != expected or not all(groups):
            raise ValueError(f"{unit.value} rule needs {expected} non-empty group lists")
        return cls(name, unit, groups)


@dataclass(frozen=True)
class MatraSequence:
    values: tuple[int, ...]
    syllable_spans: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class JatiResult:
    rule: MatraRule
    #: per half, cumulative syllable counts at which each group ends
    boundaries: tuple[tuple[int, ...], ...]
    lambda_choice: dict[int, int]
    anceps_used: tuple[int, ...]
    matra: tuple[int, ...]

    @property
    def name(self) -> str:
        return self.rule.name


def to_matra_sequence(w: WeightSequence, variant: Mapping[int, int] | None = None) -> MatraSequence:
    return MatraSequence(tuple(1 + b for b in apply_variant(w, variant)), w.syllable_spans)


def segment_groups(values: Sequence[int], groups: Sequence[int]) -> tuple[int, ...] | None:
    """Syllable boundaries at which the running mātrā sum hits each group total.

    Every group must end exactly on a syllable boundary (a guru cannot be
    shared by two groups) and the groups must cover the whole sequence.

    >>> segment_groups([1, 1, 2, 1], [2, 3])
    (2, 4)
    """
    bounds: list[int] = []
    total = 0
    target = 0
    k = 0
    for size in groups:
        target += size
        while total < target and k < len(values):
            total += values[k]
            k += 1
        if total != target:
            return None
        bounds.append(k)
    return tuple(bounds) if k == len(values) else None


def _match_half(bits: tuple[int, ...], groups: tuple[MatraGroup, ...]) -> tuple[int, ...] | None:
    bounds = segment_groups([1 + b for b in bits], [g.size for g in groups])
    if bounds is None:
        return None
    start = 0
    for group, stop in zip(groups, bounds):
        if not group.accepts(bits[start:stop]):
            return None
        start = stop
    return bounds


def classify_jati(halves: "VerseHalves", rules: Sequence[MatraRule],
                  max_exceptions: int = MAX_EXCEPTIONS) -> JatiResult | None:
    """First rule (in order) that tiles both halves, trying the base form first.

    The last syllable of each half is always read guru.
    """
    if not rules:
        return None
    for variant in exception_variants(halves.weights, max_exceptions):
        bits = apply_variant(halves.weights, variant)
        parts = [list(bits[:halves.N1]), list(bits[halves.N1:])]
        anceps = []
        for h, part in enumerate(parts):
            if part and part[-1] == 0:
                part[-1] = 1
                anceps.append(h)
        parts_t = [tuple(p) for p in parts]
        matra = tuple(sum(1 + b for b in p) for p in parts_t)
        for rule in rules:
            if tuple(sum(g.size for g in rule.half_groups(h)) for h in (0, 1)) != matra:
                continue
            found = []
            for h in (0, 1):
                bounds = _match_half(parts_t[h], rule.half_groups(h))
                if bounds is None:
                    break
                found.append(bounds)
            else:
                shown = {p: b for p, b in variant.items() if b == 0}
                return JatiResult(rule, tuple(found), shown, tuple(anceps), matra)
    return None


def describe(bits: Sequence[int], bounds: Sequence[int]) -> str:
    """``LL G | G G`` style rendering of a segmented half."""
    out, start = [], 0
    for stop in bounds:
        out.append(bits_to_lg(bits[start:stop]))
        start = stop
    return " | ".join(out)
