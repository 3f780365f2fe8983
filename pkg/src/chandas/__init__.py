"""Sanskrit metre (chandas) and caesura (yati) identification.

>>> from chandas import classify_verse, load_database
>>> report = classify_verse("syād indravajrā yadi tau jagau gaḥ syād indravajrā yadi tau jagau gaḥ | "
...                         "syād indravajrā yadi tau jagau gaḥ syād indravajrā yadi tau jagau gaḥ ||",
...                         load_database())
>>> report.result.name, str(report.result.gana_forms[0])
('Indravajrā', 'ttjgg')
"""

from .classify import ClassificationResult, ClassifyOptions, VerseReport, classify_verse, split_halves
from .metredb import MetreIndex, MetreRecord, load_database
from .sandhi import correct_verse
from .scansion import WeightSequence, scan
from .translit import to_latin, tokenize

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "ClassifyOptions",
    "MetreIndex",
    "MetreRecord",
    "VerseReport",
    "WeightSequence",
    "classify_verse",
    "correct_verse",
    "load_database",
    "scan",
    "split_halves",
    "to_latin",
    "tokenize",
]
