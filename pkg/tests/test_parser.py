import shutil
import unicodedata

import pytest

from clskit.charmap import cmu_to_cls, default_inventory
from clskit.errors import (NoNucleus, TableFormatError, UnknownRuleName, UnmappedCodepoint,
                           UnsupportedScript, WordError)
from clskit.g2p_en import g2p
from clskit.parser import (POST_RULES, LanguageId, apply_post_rules, parse_rule_table,
                           parse_text, parse_word, raw_phones, rule_table, syllabify)
from clskit._data import data_path
from clskit.script import AksharaKind, segment_aksharas

from conftest import LANGS, lexicon

COGNATES = [
    {"hi": "राम", "mr": "राम", "gu": "રામ"},
    {"hi": "नाम", "mr": "नाम", "gu": "નામ"},
    {"hi": "दिन", "mr": "दिन", "gu": "દિન"},
    {"hi": "भारत", "mr": "भारत", "gu": "ભારત"},
    {"hi": "माता", "bn": "মাতা", "gu": "માતા", "or": "ମାତା", "te": "మాతా"},
    {"hi": "गीता", "bn": "গীতা", "or": "ଗୀତା", "te": "గీతా"},
    {"bn": "কমলা", "te": "కమలా", "ta": "கமலா"},
    {"hi": "अम्मा", "ta": "அம்மா", "te": "అమ్మా"},
]


def test_parse_word_examples():
    assert parse_word("अ", "hi") == ["a"]
    assert parse_word("कमल", "hi") == ["k", "a", "m", "a", "l"]
    assert parse_word("அம்மா", "ta") == ["a", "m", "m", "aa"]


def test_devanagari_defaults_to_hindi():
    assert parse_word("कमल") == parse_word("कमल", "hi")
    assert parse_word("कमल", "mr") == ["k", "a", "m", "a", "l"]


def test_script_language_mismatch():
    with pytest.raises(UnsupportedScript):
        parse_word("कमल", "ta")
    with pytest.raises(UnsupportedScript):
        parse_word("action", "hi")


def test_unmapped_codepoint():
    with pytest.raises(UnmappedCodepoint):
        parse_word("क१", "hi")
    with pytest.raises(UnmappedCodepoint):
        parse_word("ऄ", "hi")


def test_visarga():
    assert parse_word("नमः", "hi") == ["n", "a", "m", "a", "h"]
    assert parse_word("నమః", "te") == ["n", "a", "m", "a", "h", "a"]


def test_doubled_anusvara_resolves_in_one_pass():
    once = apply_post_rules(["a", "mq", "mq", "m", "a"], "mr")
    assert apply_post_rules(once, "mr") == once


def test_anusvara_is_homorganic():
    assert parse_word("अंक", "hi") == ["a", "ng", "k"]
    assert parse_word("कंबल", "hi")[:3] == ["k", "a", "m"]


def test_schwa_deletion_examples():
    assert apply_post_rules(["k", "a", "m", "a", "l", "a"], "hi",
                            enabled={"SchwaDeletion"}) == ["k", "a", "m", "a", "l"]
    assert apply_post_rules(["k", "a", "m", "a", "l", "a"], "or") == ["k", "a", "m", "a", "l", "a"]
    # medial: VC(a)CV -> VCCV
    assert parse_word("कमला", "hi") == ["k", "a", "m", "l", "aa"]
    assert parse_word("কমলা", "bn") == ["k", "a", "m", "a", "l", "aa"]


def test_geminate_correction():
    assert apply_post_rules(["a", "t", "t", "t", "a"], "hi",
                            enabled={"GeminateCorrection"}) == ["a", "t", "t", "a"]
    assert apply_post_rules(["a", "t", "t", "a"], "hi",
                            enabled={"GeminateCorrection"}) == ["a", "t", "t", "a"]


def test_unknown_rule_name():
    with pytest.raises(UnknownRuleName):
        apply_post_rules(["a"], "hi", enabled={"Metathesis"})


def test_post_rule_names_are_from_fixed_set():
    for lang in LANGS:
        assert set(rule_table(lang).rule_names()) <= set(POST_RULES)


def test_parse_text():
    assert parse_text("अ अ") == [("अ", ["a"]), ("अ", ["a"])]
    assert parse_text("") == []
    assert parse_text("कमल action", "hi") == [
        ("कमल", ["k", "a", "m", "a", "l"]),
        ("action", cmu_to_cls(g2p("action"))),
    ]
    assert parse_text("कमल, (अ)।") == [("कमल", ["k", "a", "m", "a", "l"]), ("अ", ["a"])]


def test_parse_text_error_policy():
    with pytest.raises(WordError) as info:
        parse_text("कमल क१ अ", "hi")
    assert info.value.index == 1
    errors = []
    assert parse_text("कमल क१ अ", "hi", strict=False, errors=errors) == [
        ("कमल", ["k", "a", "m", "a", "l"]), ("अ", ["a"])]
    assert [e.word for e in errors] == ["क१"]


def test_syllabify():
    assert syllabify(["k", "a", "m", "a", "l"]) == [["k", "a"], ["m", "a", "l"]]
    assert syllabify(["a"]) == [["a"]]
    with pytest.raises(NoNucleus):
        syllabify(["k", "k"])


@pytest.mark.parametrize("group", COGNATES, ids=lambda g: "-".join(g))
def test_cross_language_convergence(group):
    parses = {tuple(parse_word(w, lang)) for lang, w in group.items()}
    assert len(parses) == 1


def _has_vowel_akshara(word, script):
    # a lone dead consonant ("क्") spells no vowel at all
    for ak in segment_aksharas(word, script):
        if ak.kind is AksharaKind.INDEPENDENT_VOWEL:
            return True
        if ak.kind is AksharaKind.CONSONANT_CLUSTER and \
                not unicodedata.name(ak.text[-1], "").endswith("VIRAMA"):
            return True
    return False


@pytest.mark.parametrize("lang", LANGS)
def test_lexicon_invariants(lang):
    table = rule_table(lang)
    inv = default_inventory()
    words = lexicon(lang)
    assert len(words) >= 500
    for word in words:
        raw = raw_phones(word, table)
        if _has_vowel_akshara(word, table.script):
            assert any(inv.is_vowel(p) for p in raw), word
        phones = parse_word(word, lang)
        assert apply_post_rules(phones, lang) == phones, word
        if any(inv.is_vowel(p) for p in phones):
            assert sum(syllabify(phones), []) == phones
        assert parse_word(word, lang) == phones


def test_rules_dir_override(tmp_path):
    shutil.copy(data_path("rules", "or.tsv"), tmp_path / "or.tsv")
    text = (tmp_path / "or.tsv").read_text(encoding="utf-8")
    (tmp_path / "or.tsv").write_text(text.replace("inherent_vowel\ta", "inherent_vowel\taa"),
                                     encoding="utf-8")
    assert parse_word("କ", "or", rules_dir=str(tmp_path)) == ["k", "aa"]


def test_rule_table_format_errors():
    good = data_path("rules", "hi.tsv").read_text(encoding="utf-8")
    with pytest.raises(TableFormatError):
        parse_rule_table(good.replace("# clskit-ruletable", "# other", 1))
    with pytest.raises(UnknownRuleName):
        parse_rule_table(good.replace("rule\tGeminateCorrection", "rule\tMetathesis"))
    with pytest.raises(TableFormatError):
        parse_rule_table(good.replace("0915\tk\tC\n", ""))      # coverage gap
    with pytest.raises(TableFormatError):
        parse_rule_table(good.replace("0915\tk\tC", "0915\tkk\tC"))


def test_language_ids():
    assert {l.value for l in LanguageId} == {"hi", "mr", "bn", "gu", "or", "ta", "te", "en"}
