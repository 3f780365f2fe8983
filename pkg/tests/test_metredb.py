import random

import pytest

from chandas.errors import BadYati, DuplicateName, DuplicatePattern, LengthOutOfRange, ParseError, PatternTooLong
from chandas.gana import lg_to_bits
from chandas.metredb import (MetreClass, MetreIndex, canonical, default_database_text, dump_record, dump_records,
                             load_database, parse_record, parse_records, pattern_key, pattern_matches)

from oracles import fits, linear_lookup


def test_golden_key():
    digits = (14, 14, 10)
    expected = 0
    for d in digits:
        expected = expected * 16 + d
    expected = (expected * 4 + 3) * 4 + 3
    assert pattern_key((1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1)) == expected


def test_shortest_key():
    assert pattern_key((1,)) == 3
    assert pattern_key((0,)) == 2


def test_n_runs_distinct():
    assert pattern_key((0,) * 9) != pattern_key((0,) * 6)


def test_key_bounds():
    with pytest.raises(LengthOutOfRange):
        pattern_key(())
    with pytest.raises(LengthOutOfRange):
        pattern_key((1,) * 27)


def test_key_injective_per_length():
    for n in range(1, 13):
        keys = {pattern_key(tuple((i >> k) & 1 for k in range(n))) for i in range(2 ** n)}
        assert len(keys) == 2 ** n


def test_seed_loads(index):
    classes = {c: sum(r.metre_class is c for r in index.records) for c in MetreClass}
    assert classes[MetreClass.SAMA] >= 60
    assert classes[MetreClass.ARDHASAMA] >= 9
    assert classes[MetreClass.VISAMA] >= 6
    assert classes[MetreClass.JATI] >= 4


def test_alt_vlt_from_records(index):
    alt, vlt = {}, {}
    for r in index.records:
        if r.metre_class is MetreClass.ARDHASAMA:
            a, b = map(len, r.patterns)
            alt.setdefault(a + b, set()).add((a, b))
        elif r.metre_class is MetreClass.VISAMA and r.special != "mixture":
            a, b, c, d = map(len, r.patterns)
            vlt.setdefault((a + b, c + d), set()).add((a, b, c, d))
    for r in index.mixtures:
        n = len(index.by_name[(MetreClass.SAMA, r.members[0])].patterns[0])
        vlt.setdefault((2 * n, 2 * n), set()).add((n,) * 4)
    assert {k: set(v) for k, v in index.alt.items()} == alt
    assert {k: set(v) for k, v in index.vlt.items()} == vlt


def test_alt_vlt_witnesses(index):
    """Dropping a record changes ALT/VLT iff it was the only witness of its split."""
    for i, rec in enumerate(index.records):
        if rec.metre_class not in (MetreClass.ARDHASAMA, MetreClass.VISAMA):
            continue
        rebuilt = MetreIndex(index.records[:i] + index.records[i + 1:])
        others = [r for r in rebuilt.records if r.metre_class is rec.metre_class]
        if rec.special == "mixture":
            continue
        same_split = [r for r in others if r.special != "mixture" and r.lengths == rec.lengths]
        if rec.metre_class is MetreClass.VISAMA:
            n = rec.lengths[0]
            same_split += [r for r in rebuilt.mixtures if set(rec.lengths) == {n}
                           and len(rebuilt.by_name[(MetreClass.SAMA, r.members[0])].patterns[0]) == n]
        changed = (rebuilt.alt, rebuilt.vlt) != (index.alt, index.vlt)
        assert changed == (not same_split), rec.name


def test_every_record_reachable(index):
    for rec in index.records:
        if rec.metre_class is MetreClass.SAMA:
            bits = canonical(lg_to_bits(rec.patterns[0]))
            assert index.lookup_sama(len(bits), pattern_key(bits)) is rec
        elif rec.metre_class is MetreClass.ARDHASAMA:
            p1, p2 = (canonical(lg_to_bits(p)) for p in rec.patterns)
            assert index.lookup_ardhasama(len(p1), len(p2), pattern_key(p1), pattern_key(p2)) is rec
        elif rec.metre_class is MetreClass.VISAMA and rec.special is None:
            pads = [canonical(lg_to_bits(p)) for p in rec.patterns]
            assert index.lookup_visama([len(p) for p in pads], [pattern_key(p) for p in pads]) is rec
        elif rec.special == "pattern":
            pads = [tuple(random.Random(0).choice((0, 1)) if c == "X" else int(c == "G") for c in p)
                    for p in rec.patterns]
            assert index.match_pattern(pads) is rec
        elif rec.special == "mixture":
            members = [index.by_name[(MetreClass.SAMA, m)] for m in rec.members]
            assert index.match_mixture(members) is rec


def test_indravajra_lookup(index):
    bits = lg_to_bits("GGLGGLLGLGG")
    assert index.lookup_sama(11, pattern_key(bits)).name == "Indravajrā"
    assert index.lookup_sama(11, pattern_key((0,) * 10 + (1,))) is None
    assert linear_lookup(index, [(0,) * 11] * 4) == []


def test_final_syllable_anceps(index):
    assert index.lookup_sama(11, pattern_key(canonical(lg_to_bits("GGLGGLLGLGL")))).name == "Indravajrā"
    assert pattern_matches("GGLGGLLGLGG", lg_to_bits("GGLGGLLGLGL"))
    assert fits("GGLGGLLGLGG", lg_to_bits("GGLGGLLGLGL"))


def test_dump_round_trip():
    text = default_database_text()
    records = parse_records(text)
    body = "".join(line + "\n" for line in text.splitlines() if line.strip() and not line.startswith("#"))
    assert dump_records(records) == body
    assert parse_records(dump_records(records)) == records


def test_quoting_round_trip():
    rec = parse_record('name="Odd \\"name\\" = #1" class=sama patterns=GGG notes="a b"')
    assert rec.name == 'Odd "name" = #1'
    assert parse_record(dump_record(rec)) == rec


@pytest.mark.parametrize("line, error", [
    ("name=X class=sama patterns=" + "G" * 27, PatternTooLong),
    ("name=X class=sama patterns=GGG yati=3", BadYati),
    ("name=X class=sama patterns=GGGG yati=2,1", BadYati),
    ("name=X class=sama patterns=GGGG yati=0", BadYati),
    ("name=X class=sama patterns=GGQ", ParseError),
    ("name=X class=sama", ParseError),
    ("name=X class=ardhasama patterns=GGG", ParseError),
    ("name=X class=poem patterns=GGG", ParseError),
    ("class=sama patterns=GGG", ParseError),
    ("name=X class=sama patterns=GGG bogus=1", ParseError),
    ("name=X class=jati rule=\"half: 5 / 4\"", ParseError),
    ("name=X class=jati rule=\"half: 4\"", ParseError),
    ("name=X class=visama special=mixture members=A", ParseError),
    ('name="X class=sama', ParseError),
])
def test_bad_records(line, error):
    with pytest.raises(error):
        parse_record(line)


def test_parse_error_line_number():
    with pytest.raises(ParseError) as err:
        parse_records("# header\n\nname=A class=sama patterns=GG\nname=B class=sama patterns=G?\n")
    assert err.value.line == 4


def test_duplicate_name():
    recs = parse_records("name=Indravajrā class=sama patterns=GGLGGLLGLGG\n"
                         "name=Indravajrā class=sama patterns=LGLGGLLGLGG\n")
    with pytest.raises(DuplicateName):
        MetreIndex(recs)


def test_same_name_other_class_ok():
    MetreIndex(parse_records("name=A class=sama patterns=GG\nname=A class=ardhasama patterns=GG/LG\n"))


def test_duplicate_pattern_after_anceps():
    recs = parse_records("name=A class=sama patterns=GGL\nname=B class=sama patterns=GGG\n")
    with pytest.raises(DuplicatePattern):
        MetreIndex(recs)


def test_unknown_mixture_member():
    recs = parse_records("name=U class=visama special=mixture members=A,B\n")
    with pytest.raises(Exception, match="member"):
        MetreIndex(recs)


def test_load_path(tmp_path):
    p = tmp_path / "tiny.db"
    p.write_text("name=Kanyā class=sama patterns=GGGG\n", encoding="utf-8")
    ix = load_database(p)
    assert len(ix) == 1 and ix.alt == {} and ix.vlt == {}
    with pytest.raises(OSError):
        load_database(tmp_path / "missing.db")
