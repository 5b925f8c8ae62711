"""Rule-based grapheme to CLS conversion for Indic scripts.

Each language has a rule table (``data/rules/<lang>.tsv``) mapping codepoints
to CLS labels, plus an ordered list of post-rules that rewrite the raw phone
sequence. Phone sequences are plain lists of CLS label strings.
"""
from __future__ import annotations

import enum
import functools
import string
from dataclasses import dataclass
from pathlib import Path

from . import g2p_en
from ._data import data_path
from .charmap import cmu_to_cls, default_inventory
from .errors import (NoNucleus, TableFormatError, UnknownRuleName,
                     UnmappedCodepoint, UnsupportedScript, WordError)
from .script import (AksharaKind, ScriptId, block_range, detect_script,
                     is_letter, normalize_text, segment_aksharas)


class LanguageId(str, enum.Enum):
    HI = "hi"
    MR = "mr"
    BN = "bn"
    GU = "gu"
    OR = "or"
    TA = "ta"
    TE = "te"
    EN = "en"

    def __str__(self):
        return self.value


LANGUAGE_SCRIPT = {
    LanguageId.HI: ScriptId.DEVANAGARI,
    LanguageId.MR: ScriptId.DEVANAGARI,
    LanguageId.BN: ScriptId.BENGALI,
    LanguageId.GU: ScriptId.GUJARATI,
    LanguageId.OR: ScriptId.ODIA,
    LanguageId.TA: ScriptId.TAMIL,
    LanguageId.TE: ScriptId.TELUGU,
    LanguageId.EN: ScriptId.LATIN,
}

# Devanagari is shared by hi and mr; Hindi rules apply unless mr is asked for.
DEFAULT_LANGUAGE = {
    ScriptId.DEVANAGARI: LanguageId.HI,
    ScriptId.BENGALI: LanguageId.BN,
    ScriptId.GUJARATI: LanguageId.GU,
    ScriptId.ODIA: LanguageId.OR,
    ScriptId.TAMIL: LanguageId.TA,
    ScriptId.TELUGU: LanguageId.TE,
    ScriptId.LATIN: LanguageId.EN,
}

INDIC_LANGUAGES = tuple(l for l in LanguageId if l is not LanguageId.EN)

POST_RULES = ("NuktaSubstitution", "AnusvaraAssimilation", "VisargaExpansion",
              "GeminateCorrection", "SchwaDeletion")

FLAGS = frozenset("VCDMHASNZX")

RULETABLE_TAG = "# clskit-ruletable"


@dataclass(frozen=True)
class MapEntry:
    labels: tuple
    flag: str

    @property
    def rejected(self):
        return self.flag == "X"


@dataclass(frozen=True)
class RuleTable:
    language: LanguageId
    script: ScriptId
    codepoint_map: dict
    inherent_vowel: str
    post_rules: tuple = ()
    version: int = 1

    def rule_names(self):
        return tuple(name for name, _ in self.post_rules)

    def params(self, rule):
        for name, params in self.post_rules:
            if name == rule:
                return params
        return None


def _parse_params(fields, where):
    params = {}
    for item in fields:
        if "=" not in item:
            raise TableFormatError(f"{where}: rule parameter {item!r} is not key=value")
        key, value = item.split("=", 1)
        params[key] = value
    return params


def parse_rule_table(text, source="<string>"):
    lines = text.splitlines()
    if not lines or not lines[0].startswith(RULETABLE_TAG):
        raise TableFormatError(f"{source}: missing format tag on line 1")
    try:
        version = int(lines[0].split("\t")[1])
    except (IndexError, ValueError):
        raise TableFormatError(f"{source}: bad format tag {lines[0]!r}") from None
    if version != 1:
        raise TableFormatError(f"{source}: unsupported rule table version {version}")

    header = {}
    rules = []
    idx = 1
    while idx < len(lines) and lines[idx].strip() != "%%":
        line = lines[idx]
        idx += 1
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        where = f"{source}:{idx}"
        if fields[0] == "rule":
            if len(fields) < 2 or fields[1] not in POST_RULES:
                raise UnknownRuleName(f"{where}: unknown post-rule {fields[1:2]}")
            rules.append((fields[1], _parse_params(fields[2:], where)))
        elif len(fields) == 2:
            header[fields[0]] = fields[1]
        else:
            raise TableFormatError(f"{where}: bad header line {line!r}")
    if idx >= len(lines):
        raise TableFormatError(f"{source}: no '%%' separator before the codepoint rows")
    for key in ("language", "script", "inherent_vowel"):
        if key not in header:
            raise TableFormatError(f"{source}: header lacks {key!r}")

    inv = default_inventory()
    cmap = {}
    for lineno in range(idx + 1, len(lines)):
        line = lines[lineno]
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        where = f"{source}:{lineno + 1}"
        if len(fields) != 3:
            raise TableFormatError(f"{where}: expected 3 columns")
        cps, labels, flag = fields
        try:
            key = "".join(chr(int(cp, 16)) for cp in cps.split("+"))
        except ValueError:
            raise TableFormatError(f"{where}: bad codepoint {cps!r}") from None
        if flag not in FLAGS:
            raise TableFormatError(f"{where}: unknown flag {flag!r}")
        labs = () if labels == "-" else tuple(labels.split())
        for lab in labs:
            if lab not in inv:
                raise TableFormatError(f"{where}: {lab!r} is not in the CLS inventory")
        if key in cmap:
            raise TableFormatError(f"{where}: duplicate row for {cps}")
        cmap[key] = MapEntry(labs, flag)

    table = RuleTable(
        language=LanguageId(header["language"]),
        script=ScriptId(header["script"]),
        codepoint_map=cmap,
        inherent_vowel=header["inherent_vowel"],
        post_rules=tuple(rules),
        version=version,
    )
    _check_coverage(table, source)
    return table


def _check_coverage(table, source):
    start, end = block_range(table.script)
    for cp in range(start, end + 1):
        ch = chr(cp)
        if is_letter(ch) and ch not in table.codepoint_map:
            raise TableFormatError(
                f"{source}: letter U+{cp:04X} has neither a mapping nor a reject marker")
    if table.inherent_vowel not in default_inventory():
        raise TableFormatError(f"{source}: unknown inherent vowel")


@functools.lru_cache(maxsize=None)
def rule_table(lang, rules_dir=None):
    """Load (and cache) the rule table for ``lang``."""
    lang = LanguageId(lang)
    if lang is LanguageId.EN:
        raise UnsupportedScript("English has no rule table; use g2p_en")
    path = Path(rules_dir) / f"{lang.value}.tsv" if rules_dir else data_path("rules", f"{lang.value}.tsv")
    table = parse_rule_table(path.read_text(encoding="utf-8"), str(path))
    if table.language is not lang:
        raise TableFormatError(f"{path}: declares language {table.language}, expected {lang}")
    return table


# --- post rules -------------------------------------------------------------

_PLACE_NASAL = {}
for _nasal, _members in (
        ("ng", "k kh g gh ng q x gq"),
        ("nj", "c ch j jh nj"),
        ("nx", "tx txh dx dxh nx dxq dxhq"),
        ("n", "t th d dh n"),
        ("m", "p ph b bh m")):
    for _m in _members.split():
        _PLACE_NASAL[_m] = _nasal

# Signs that belong to the vowel before them rather than acting as consonants.
_VOWEL_SIGNS = frozenset({"mq", "hq"})


def _is_vowel(label):
    return default_inventory().is_vowel(label)


def _is_consonant(label):
    return not _is_vowel(label) and label not in _VOWEL_SIGNS and label != "sil"


def nukta_substitution(phones, params):
    mapping = {}
    for pair in params.get("map", "").split(","):
        if pair:
            src, dst = pair.split(":")
            mapping[src] = dst
    return [mapping.get(p, p) for p in phones]


def anusvara_assimilation(phones, params=None):
    out = list(phones)
    # right to left, so a doubled anusvara resolves in one pass
    for i in range(len(out) - 2, -1, -1):
        if out[i] == "mq":
            out[i] = _PLACE_NASAL.get(out[i + 1], "mq")
    return out


def visarga_expansion(phones, params=None):
    echo = (params or {}).get("echo", "1") == "1"
    out = []
    for i, p in enumerate(phones):
        if p != "hq":
            out.append(p)
            continue
        out.append("h")
        if echo and i == len(phones) - 1:
            prev = next((q for q in reversed(phones[:i]) if _is_vowel(q)), None)
            if prev is not None:
                out.append(prev)
    return out


def geminate_correction(phones, params=None):
    out = []
    for p in phones:
        if len(out) >= 2 and out[-1] == p and out[-2] == p and _is_consonant(p):
            continue
        out.append(p)
    return out


def schwa_deletion(phones, params=None, schwa="a"):
    params = params or {}
    out = list(phones)

    def vowelish(label):
        return _is_vowel(label) or label == "mq"

    if params.get("final", "1") == "1" and len(out) >= 2 and out[-1] == schwa \
            and _is_consonant(out[-2]):
        before = out[-3] if len(out) >= 3 else None
        cluster = before is not None and _is_consonant(before)
        nasal_cluster = cluster and default_inventory()[before].category == "Nasal"
        others = any(_is_vowel(p) for p in out[:-1])
        if others and (not cluster or nasal_cluster):
            out.pop()

    if params.get("medial", "1") == "1":
        for i in range(len(out) - 3, 1, -1):
            if (out[i] == schwa and _is_consonant(out[i - 1]) and vowelish(out[i - 2])
                    and _is_consonant(out[i + 1]) and _is_vowel(out[i + 2])):
                del out[i]
    return out


_RULE_FUNCS = {
    "NuktaSubstitution": nukta_substitution,
    "AnusvaraAssimilation": anusvara_assimilation,
    "VisargaExpansion": visarga_expansion,
    "GeminateCorrection": geminate_correction,
    "SchwaDeletion": schwa_deletion,
}


def apply_post_rules(phones, lang, enabled=None, table=None):
    """Run the language's post-rules over ``phones`` in table order.

    ``enabled`` restricts the run to a subset of rule names; rules named there
    but absent from the language's table are not applied.
    """
    if enabled is not None:
        enabled = set(enabled)
        unknown = enabled - set(POST_RULES)
        if unknown:
            raise UnknownRuleName(", ".join(sorted(unknown)))
    table = table or rule_table(lang)
    inv = default_inventory()
    out = list(phones)
    for p in out:
        inv[p]
    for name, params in table.post_rules:
        if enabled is not None and name not in enabled:
            continue
        if name == "SchwaDeletion":
            out = schwa_deletion(out, params, table.inherent_vowel)
        else:
            out = _RULE_FUNCS[name](out, params)
    return out


# --- word parsing ---------------------------------------------------------

def raw_phones(word, table):
    """Phones before post-rules: codepoint lookup plus inherent-vowel handling."""
    cmap = table.codepoint_map
    inherent = table.inherent_vowel
    out = []
    for ak in segment_aksharas(word, table.script):
        if ak.kind is AksharaKind.DIGIT:
            raise UnmappedCodepoint(ak.text[0], word)
        text = ak.text
        pending = False     # consonant still waiting for its vowel
        iv_at = None        # index of an independent vowel in this akshara
        i = 0
        while i < len(text):
            ch = text[i]
            pair = text[i:i + 2]
            if len(pair) == 2 and pair in cmap:
                key = pair
            else:
                key = ch
            i += len(key)
            entry = cmap.get(key)
            if entry is None or entry.rejected:
                raise UnmappedCodepoint(ch, word)
            flag = entry.flag
            if flag == "C":
                if pending:
                    out.append(inherent)
                out.extend(entry.labels)
                pending = True
            elif flag == "D":
                if pending:
                    out.append(inherent)
                out.extend(entry.labels)
                pending = False
            elif flag == "V":
                if pending:
                    out.append(inherent)
                    pending = False
                iv_at = len(out)
                out.extend(entry.labels)
            elif flag == "M":
                if pending:
                    out.extend(entry.labels)
                    pending = False
                elif iv_at is not None and out[iv_at:] == [inherent]:
                    # independent a followed by a vowel sign spells that vowel
                    out[iv_at:] = list(entry.labels)
                else:
                    out.extend(entry.labels)
            elif flag == "H":
                pending = False
            elif flag in "AS":
                if pending:
                    out.append(inherent)
                    pending = False
                out.extend(entry.labels)
            # N (stray nukta) and Z (avagraha, accents) add nothing
        if pending:
            out.append(inherent)
    return out


def resolve_language(script, lang=None):
    if lang is None:
        try:
            return DEFAULT_LANGUAGE[script]
        except KeyError:
            raise UnsupportedScript(f"no language for {script} text") from None
    lang = LanguageId(lang)
    if LANGUAGE_SCRIPT[lang] != script:
        raise UnsupportedScript(f"{lang} is written in {LANGUAGE_SCRIPT[lang]}, got {script}")
    return lang


def parse_word(word, lang=None, rules_dir=None):
    """Convert one native-script word to a list of CLS labels.

    >>> parse_word("कमल", "hi")
    ['k', 'a', 'm', 'a', 'l']
    """
    word = normalize_text(word)
    script = detect_script(word)
    if script not in DEFAULT_LANGUAGE or script is ScriptId.LATIN:
        raise UnsupportedScript(f"{word!r} is {script}")
    lang = resolve_language(script, lang)
    table = rule_table(lang, rules_dir)
    return apply_post_rules(raw_phones(word, table), lang, table=table)


_EDGE_PUNCT = string.punctuation + "।॥“”‘’«»…–—"


def _strip_token(tok):
    return tok.strip(_EDGE_PUNCT)


def english_phones(word):
    return cmu_to_cls(g2p_en.g2p(word))


def parse_token(word, lang=None, rules_dir=None):
    """Route one token: Latin to the English bridge, Indic to :func:`parse_word`."""
    script = detect_script(word)
    if script is ScriptId.LATIN:
        return english_phones(word)
    if lang is not None and script in DEFAULT_LANGUAGE \
            and LANGUAGE_SCRIPT[LanguageId(lang)] != script:
        lang = None
    return parse_word(word, lang, rules_dir)


def parse_text(text, lang=None, strict=True, errors=None, rules_dir=None):
    """Parse whitespace-separated text into ``[(word, phones), ...]``.

    Punctuation at token edges is stripped and punctuation-only tokens are
    dropped. With ``strict=False`` failing words are skipped; each failure is
    appended to ``errors`` (if given) as a :class:`WordError`.
    """
    out = []
    for index, tok in enumerate(normalize_text(text).split()):
        word = _strip_token(tok)
        if not word:
            continue
        try:
            out.append((word, parse_token(word, lang, rules_dir)))
        except Exception as exc:
            if not isinstance(exc, (ValueError, KeyError)):
                raise
            err = WordError(index, word, exc)
            if strict:
                raise err from exc
            if errors is not None:
                errors.append(err)
    return out


# --- syllables ------------------------------------------------------------

def syllabify(phones):
    """Onset-maximal syllabification; ``mq``/``hq`` stay with their vowel."""
    phones = list(phones)
    nuclei = [i for i, p in enumerate(phones) if _is_vowel(p)]
    if not nuclei:
        raise NoNucleus(f"no vowel in {phones}")
    cuts = []
    for left, right in zip(nuclei, nuclei[1:]):
        cut = left + 1
        while cut < right and phones[cut] in _VOWEL_SIGNS:
            cut += 1
        cuts.append(cut)
    bounds = [0] + cuts + [len(phones)]
    return [phones[a:b] for a, b in zip(bounds, bounds[1:])]
