from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chandas.gana import GanaSequence, bits_to_lg, gana_code, lg_to_bits, to_ganas

from oracles import GANA_TABLE


@pytest.mark.parametrize("letter", sorted(GANA_TABLE))
def test_table_rows(letter):
    bits, value = GANA_TABLE[letter]
    assert str(to_ganas(bits)) == letter
    assert gana_code(letter) == 8 + value


def test_golden():
    g = to_ganas((1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1))
    assert (g.ganas, g.remainder, str(g)) == ("ttj", (1, 1), "ttjgg")


def test_codes():
    assert [gana_code(c) for c in "nsjybrtm"] == list(range(8, 16))
    assert gana_code("n") == 8 and gana_code("m") == 15 and gana_code("j") == 10
    with pytest.raises(ValueError):
        gana_code("x")


def test_mn_nm_differ():
    assert (gana_code("m"), gana_code("n")) != (gana_code("n"), gana_code("m"))


def test_parse():
    assert GanaSequence.parse("ttjgg") == to_ganas((1, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1))
    assert GanaSequence.parse("g") == GanaSequence("", (1,))
    with pytest.raises(ValueError):
        GanaSequence.parse("tqg")
    with pytest.raises(ValueError):
        GanaSequence.parse("tlgg")


def test_exhaustive_bijection_to_12():
    for n in range(1, 13):
        for bits in product((0, 1), repeat=n):
            g = to_ganas(bits)
            assert g.bits() == bits
            assert len(g) == n and len(g.remainder) == n % 3
            assert GanaSequence.parse(str(g)) == g


@given(st.lists(st.integers(0, 1), min_size=13, max_size=26).map(tuple))
def test_bijection_long(bits):
    assert to_ganas(bits).bits() == bits


def test_lg():
    assert lg_to_bits("GGLgl") == (1, 1, 0, 1, 0)
    assert bits_to_lg((1, 0)) == "GL"
