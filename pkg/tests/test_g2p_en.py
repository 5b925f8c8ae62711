import pytest
from hypothesis import given, strategies as st

from clskit.charmap import CMU_PHONES, cmu_to_cls
from clskit.errors import NonLatinInput
from clskit.g2p_en import default_lexicon, default_lts, g2p, g2p_is_lexical


def test_first_pronunciation_wins():
    lex = default_lexicon()
    assert len(lex.entries["read"]) > 1
    assert g2p("read") == [p.rstrip("012") for p in lex.entries["read"][0]]


def test_lexicon_examples():
    assert g2p("a") == ["AH"]
    assert g2p("action") == ["AE", "K", "SH", "AH", "N"]
    assert g2p("ACTION") == g2p("action")
    assert g2p_is_lexical("action")


def test_fallback():
    out = g2p("zzqx")
    assert out and all(p in CMU_PHONES for p in out)
    assert not g2p_is_lexical("zzqx")


@pytest.mark.parametrize("bad", ["", "कमल", "abc1", "a b", None])
def test_non_latin(bad):
    with pytest.raises(NonLatinInput):
        g2p(bad)
    with pytest.raises(NonLatinInput):
        g2p_is_lexical(bad)


def test_hyphen_and_apostrophe():
    assert g2p("don't")
    assert g2p("log-in") == g2p("log") + g2p("in")


def test_longest_match_rule():
    assert default_lts()("tion") == ["SH", "AH", "N"]


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=15))
def test_total_and_valid(word):
    out = g2p(word)
    assert out and all(p in CMU_PHONES for p in out)
    assert cmu_to_cls(out)


def test_composition_over_lexicon():
    lex = default_lexicon()
    n = 0
    for prons in lex.entries.values():
        for pron in prons:
            cmu_to_cls([p.rstrip("012") for p in pron])
            n += 1
    assert n > 100_000
