import pytest
from hypothesis import given
from hypothesis import strategies as st

from ehtorus.words import EXPONENT, MapClassWord, WordParseError, word

letters = st.text(alphabet="aAbBdD", max_size=12)


def test_parse_powers_and_groups():
    assert str(word("(aba)^2 B a")) == "abaabaBa"
    assert str(word("a^3")) == "aaa"
    assert str(word("a^-2 b")) == "AAb"
    assert str(word("(ab)^0")) == ""


def test_free_reduction():
    assert str(word("aA")) == ""
    assert str(word("dD")) == ""
    assert str(word("abBA")) == ""


@pytest.mark.parametrize("text,pos", [("a(b", 1), ("ax", 1), ("a^", 2), (")", 0)])
def test_parse_error_positions(text, pos):
    with pytest.raises(WordParseError) as e:
        word(text)
    assert e.value.position == pos


def test_long_names():
    assert word("aBd").long_form() == ["A1+", "A2-", "D+"]


@given(letters)
def test_text_round_trip(s):
    w = word(s)
    assert word(str(w)) == w


@given(letters, letters)
def test_inverse_and_exponent_sum(s, t):
    u, v = word(s), word(t)
    assert str(u * u.inverse()) == ""
    assert (u * v).exponent_sum() == u.exponent_sum() + v.exponent_sum()
    assert u.exponent_sum() == sum(EXPONENT[c] for c in u.letters)


def test_unknown_letter_rejected():
    with pytest.raises(ValueError):
        MapClassWord(("x",))
