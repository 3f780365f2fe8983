"""Command-line front end.

    chandas classify [--format auto|deva|iast] [--db PATH] [--all] [--json] FILE|-
    chandas scan [--format auto|deva|iast] TEXT|-
    chandas translit [--format auto|deva|iast] TEXT|-
    chandas db validate [--db PATH]
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .classify import ClassifyOptions, VerseReport, annotate, classify_verse
from .errors import ChandasError, DatabaseError
from .jati import describe
from .metredb import MetreIndex, load_database
from .scansion import MAX_EXCEPTIONS, scan
from .translit import render, to_latin, tokenize

EXIT_OK, EXIT_NOMATCH, EXIT_ERROR = 0, 1, 2

_END = r"(?:\|\||॥|।।)"
_VERSE_NUMBER = re.compile(_END + r"\s*[0-9०-९][0-9०-९.]*\s*" + _END)
_VERSE = re.compile(r".*?" + _END, re.S)


@dataclass(frozen=True)
class RunConfig:
    input_format: str = "auto"
    db_path: str | None = None
    apply_sandhi: bool = True
    all_matches: bool = False
    output: str = "text"
    max_exceptions: int = MAX_EXCEPTIONS
    jobs: int = 1

    @property
    def options(self) -> ClassifyOptions:
        return ClassifyOptions(self.max_exceptions, self.all_matches)


def split_verses(text: str) -> list[str]:
    """Cut a corpus into "||"-terminated verses, dropping "|| 12 ||" numbering."""
    text = _VERSE_NUMBER.sub("||", text)
    verses = []
    end = 0
    for m in _VERSE.finditer(text):
        verses.append(m.group().strip())
        end = m.end()
    tail = text[end:].strip()
    if tail:
        verses.append(tail)
    return verses


def report_to_dict(report: VerseReport, all_matches: bool = False) -> dict:
    res = report.result
    h = report.halves
    out: dict = {
        "verse": report.text,
        "metre": res.name if res else None,
        "class": res.metre.metre_class.value if res else None,
        "split": list(res.split) if res else None,
        "ganas": [str(g) for g in res.gana_forms] if res else None,
        "yati": [list(y) for y in res.yati] if res else None,
        "matra": [sum(1 + b for b in h.B1.bits), sum(1 + b for b in h.B2.bits)],
        "corrections": [c.to_dict() for c in report.corrections],
        "variants_tried": report.variants_tried,
        "jati": None,
        "status": "ok" if report.matched else "NoMatch",
    }
    if res and res.lambda_choice:
        out["lambda"] = {str(k): v for k, v in sorted(res.lambda_choice.items())}
    if report.jati:
        j = report.jati[0]
        bits = (h.weights.bits[:h.N1], h.weights.bits[h.N1:])
        out["jati"] = {
            "metre": j.name,
            "matra": list(j.matra),
            "groups": [describe(b, bounds) for b, bounds in zip(bits, j.boundaries)],
        }
    if all_matches:
        out["matches"] = [{"metre": m.name, "class": m.metre.metre_class.value, "split": list(m.split)}
                          for m in report.matches]
    if report.diagnostics:
        out["diagnostics"] = report.diagnostics
    return out


def error_to_dict(verse: str, exc: Exception) -> dict:
    return {"verse": verse, "metre": None, "status": "error", "error": f"{type(exc).__name__}: {exc}"}


def report_to_text(report: VerseReport) -> str:
    lines = []
    for res in report.matches:
        lines.append(f"{res.name} [{res.metre.metre_class.value}] {' '.join(str(g) for g in res.gana_forms)}")
        if res.pada_metres:
            lines.append("  pādas: " + ", ".join(res.pada_metres))
    for j in report.jati:
        lines.append(f"{j.name} [jati] mātrā {'+'.join(map(str, j.matra))}")
    if not report.matched:
        lines.append(f"NoMatch (halves of {report.halves.N1} and {report.halves.N2} syllables)")
    lines.append("  " + annotate(report).strip())
    for c in report.corrections:
        lines.append(f"  sandhi {c.rule_id.value}: {c.before!r} -> {c.after!r}")
    return "\n".join(lines)


# --- worker side --------------------------------------------------------------

_worker_index: MetreIndex | None = None
_worker_config: RunConfig | None = None


def _init_worker(config: RunConfig) -> None:
    global _worker_index, _worker_config
    _worker_config = config
    _worker_index = load_database(config.db_path)


def _classify_one(verse: str, index: MetreIndex, config: RunConfig) -> tuple[int, dict, str]:
    try:
        report = classify_verse(verse, index, config.options, config.input_format, config.apply_sandhi)
    except ChandasError as exc:
        d = error_to_dict(verse, exc)
        return EXIT_ERROR, d, f"error: {d['error']}"
    code = EXIT_OK if report.matched else EXIT_NOMATCH
    return code, report_to_dict(report, config.all_matches), report_to_text(report)


def _worker(verse: str) -> tuple[int, dict, str]:
    assert _worker_index is not None and _worker_config is not None
    return _classify_one(verse, _worker_index, _worker_config)


def run_classify(config: RunConfig, text: str, out=None) -> int:
    """Classify every verse of ``text``, writing reports to ``out`` (stdout) in input order."""
    out = out or sys.stdout
    verses = split_verses(text)
    if config.jobs > 1 and len(verses) > 1:
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=(config,)) as pool:
            results: Iterable = pool.map(_worker, verses, chunksize=max(1, len(verses) // (4 * config.jobs)))
            results = list(results)
    else:
        index = load_database(config.db_path)
        results = [_classify_one(v, index, config) for v in verses]
    status = EXIT_OK
    for code, as_dict, as_text in results:
        status = max(status, code)
        if config.output == "json":
            out.write(json.dumps(as_dict, ensure_ascii=False, sort_keys=False) + "\n")
        else:
            out.write(as_text + "\n\n")
    return status


# --- argument handling --------------------------------------------------------


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def _non_negative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chandas", description="Sanskrit metre and caesura identification")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and debug output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="identify the metre of each verse")
    p.add_argument("source", metavar="FILE", help="input file, or - for stdin")
    p.add_argument("--format", choices=("auto", "deva", "iast"), default="auto")
    p.add_argument("--db", dest="db_path", help="metre database (default: bundled seed)")
    p.add_argument("--all", dest="all_matches", action="store_true", help="report every match")
    p.add_argument("--apply-sandhi", action=argparse.BooleanOptionalAction, default=True,
                   help="repair unjoined word junctions before scanning")
    p.add_argument("--json", action="store_true", help="JSON-lines output")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--max-exceptions", type=_non_negative, default=MAX_EXCEPTIONS)

    p = sub.add_parser("scan", help="print the guru/laghu bit string")
    p.add_argument("text", help="verse text, or - for stdin")
    p.add_argument("--format", choices=("auto", "deva", "iast"), default="auto")

    p = sub.add_parser("translit", help="convert to IAST")
    p.add_argument("text", help="text, or - for stdin")
    p.add_argument("--format", choices=("auto", "deva", "iast"), default="auto")

    p = sub.add_parser("db", help="metre database tools")
    dbsub = p.add_subparsers(dest="db_command", required=True)
    v = dbsub.add_parser("validate", help="check the database and print ALT/VLT")
    v.add_argument("--db", dest="db_path")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "classify":
            config = RunConfig(args.format, args.db_path, args.apply_sandhi, args.all_matches,
                               "json" if args.json else "text", args.max_exceptions, max(1, args.jobs))
            return run_classify(config, _read(args.source))
        if args.command == "scan":
            src = args.text if args.text != "-" else sys.stdin.read()
            phonemes = tokenize(to_latin(src, args.format))
            w = scan(phonemes)
            print(w)
            if w.exceptions:
                print("exceptions:", " ".join(map(str, sorted(w.exceptions))))
            for k, (bit, (a, b)) in enumerate(zip(w.bits, w.syllable_spans)):
                flag = " *" if k in w.exceptions else ""
                print(f"{k:3d} {'G' if bit else 'L'} {render(phonemes[a:b]).strip()}{flag}")
            return EXIT_OK
        if args.command == "translit":
            src = args.text if args.text != "-" else sys.stdin.read()
            print(to_latin(src, args.format))
            return EXIT_OK
        index = load_database(args.db_path)
        print(f"ok: {len(index)} records")
        for n, splits in index.alt.items():
            print(f"ALT {n}: " + " ".join(f"{a}+{b}" for a, b in splits))
        for (n1, n2), splits in index.vlt.items():
            print(f"VLT {n1},{n2}: " + " ".join("+".join(map(str, s)) for s in splits))
        return EXIT_OK
    except (OSError, DatabaseError, ChandasError) as exc:
        print(f"chandas: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
