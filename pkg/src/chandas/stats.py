"""Pass counters for the text-level stages (tokenize, scan)."""

from collections import Counter

passes: Counter = Counter()


def reset() -> None:
    passes.clear()
