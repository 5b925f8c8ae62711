"""Unicode normalization, script detection and akshara segmentation."""
from __future__ import annotations

import enum
import functools
import unicodedata
from dataclasses import dataclass

from ._data import data_path, read_table
from .errors import (EmptyInput, InvalidEncoding, OrphanCombiningMark,
                     TableFormatError, UnsupportedScript)


class ScriptId(str, enum.Enum):
    DEVANAGARI = "Devanagari"
    BENGALI = "Bengali"
    GUJARATI = "Gujarati"
    ODIA = "Odia"
    TAMIL = "Tamil"
    TELUGU = "Telugu"
    LATIN = "Latin"
    MIXED = "Mixed"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


INDIC_SCRIPTS = (ScriptId.DEVANAGARI, ScriptId.BENGALI, ScriptId.GUJARATI,
                 ScriptId.ODIA, ScriptId.TAMIL, ScriptId.TELUGU)

# danda and double danda are shared by every Brahmic block
NEUTRAL_CODEPOINTS = frozenset("।॥")

_REMOVED = dict.fromkeys(map(ord, "‌‍﻿"))


def normalize_text(text):
    """NFC-normalize, drop ZWJ/ZWNJ/BOM and collapse whitespace.

    ``bytes`` input is decoded as strict UTF-8.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidEncoding(str(exc)) from exc
    text = text.translate(_REMOVED)
    text = unicodedata.normalize("NFC", text)
    return " ".join(text.split())


@dataclass(frozen=True)
class ScriptBlock:
    start: int
    end: int
    script: ScriptId


@functools.lru_cache(maxsize=None)
def script_blocks():
    """The block table from ``data/scripts.tsv``, in file order."""
    blocks = []
    path = data_path("scripts.tsv")
    for lineno, fields in read_table(path, "clskit-script-blocks"):
        if len(fields) != 3:
            raise TableFormatError(f"{path}:{lineno}: expected 3 columns")
        start, end, name = int(fields[0], 16), int(fields[1], 16), fields[2]
        blocks.append(ScriptBlock(start, end, ScriptId(name)))
    return tuple(blocks)


@functools.lru_cache(maxsize=4096)
def script_of_char(ch):
    """ScriptId of a single codepoint; ``UNKNOWN`` outside every listed block."""
    cp = ord(ch)
    for block in script_blocks():
        if block.start <= cp <= block.end:
            return block.script
    return ScriptId.UNKNOWN


def block_range(script):
    for block in script_blocks():
        if block.script == script:
            return block.start, block.end
    raise UnsupportedScript(f"no single block for {script}")


def is_letter(ch):
    """Letters and combining marks count toward a token's script."""
    if ch in NEUTRAL_CODEPOINTS:
        return False
    return unicodedata.category(ch)[0] in "LM"


def detect_script(token):
    letters = [ch for ch in token if is_letter(ch)]
    if not letters:
        raise EmptyInput(f"no letters in {token!r}")
    found = {script_of_char(ch) for ch in letters}
    if len(found) > 1:
        return ScriptId.MIXED
    return found.pop()


class AksharaKind(str, enum.Enum):
    CONSONANT_CLUSTER = "ConsonantCluster"
    INDEPENDENT_VOWEL = "IndependentVowel"
    DIGIT = "Digit"
    SYMBOL = "Symbol"


@dataclass(frozen=True)
class Akshara:
    text: str
    kind: AksharaKind

    @property
    def codepoints(self):
        return tuple(ord(c) for c in self.text)

    def __str__(self):
        return self.text


_VOWEL_LETTER_NAMES = frozenset({
    "A", "AA", "I", "II", "U", "UU", "VOCALIC R", "VOCALIC RR", "VOCALIC L",
    "VOCALIC LL", "E", "EE", "AI", "O", "OO", "AU", "CANDRA E", "SHORT E",
    "CANDRA O", "SHORT O", "SHORT A", "CANDRA A", "OE", "OOE", "AW", "UE",
    "UUE",
})

_CONS, _VOWEL, _MARK, _VIRAMA, _DIGIT, _SYMBOL = range(6)


@functools.lru_cache(maxsize=4096)
def _char_class(ch):
    cat = unicodedata.category(ch)
    if cat in ("Mn", "Mc"):
        name = unicodedata.name(ch, "")
        return _VIRAMA if name.endswith("SIGN VIRAMA") else _MARK
    if cat == "Nd":
        return _DIGIT
    if cat == "Lo":
        name = unicodedata.name(ch, "")
        if " LETTER " in name:
            tail = name.split(" LETTER ", 1)[1]
            return _VOWEL if tail in _VOWEL_LETTER_NAMES else _CONS
        if name.endswith(" OM"):
            return _VOWEL
        return _SYMBOL
    if cat in ("Lu", "Ll"):
        # Latin: one akshara per letter
        base = unicodedata.normalize("NFD", ch)[0].lower()
        return _VOWEL if base in "aeiou" else _CONS
    return _SYMBOL


_KIND = {
    _CONS: AksharaKind.CONSONANT_CLUSTER,
    _VOWEL: AksharaKind.INDEPENDENT_VOWEL,
    _DIGIT: AksharaKind.DIGIT,
    _SYMBOL: AksharaKind.SYMBOL,
}


def _is_nukta(ch):
    return unicodedata.name(ch, "").endswith("SIGN NUKTA")


def segment_aksharas(word, script):
    """Split ``word`` into orthographic syllables.

    A consonant followed by a virama binds to the next consonant, except in
    Tamil, where the pulli closes the akshara. Dependent vowel signs, nukta,
    anusvara, chandrabindu and visarga attach to the cluster before them.
    """
    script = ScriptId(script)
    if script in (ScriptId.MIXED, ScriptId.UNKNOWN):
        raise UnsupportedScript(f"cannot segment {script} text")
    detected = detect_script(word)
    if detected != script:
        raise UnsupportedScript(f"{word!r} is {detected}, not {script}")
    latin = script == ScriptId.LATIN
    # Tamil pulli marks a dead consonant and does not build conjuncts
    joins = script not in (ScriptId.LATIN, ScriptId.TAMIL)

    out = []
    cur = []
    cur_kind = None
    bind_next = False
    for idx, ch in enumerate(word):
        cls = _char_class(ch)
        if cls in (_MARK, _VIRAMA):
            if cur_kind not in (_CONS, _VOWEL):
                raise OrphanCombiningMark(word, idx)
            # a virama needs a consonant (possibly with nukta) right before it
            if cls == _VIRAMA and not latin and not (
                    _char_class(word[idx - 1]) == _CONS or _is_nukta(word[idx - 1])):
                raise OrphanCombiningMark(word, idx)
            cur.append(ch)
            bind_next = cls == _VIRAMA and joins
            continue
        if cls == _CONS and bind_next and cur_kind == _CONS:
            cur.append(ch)
            bind_next = False
            continue
        if cur:
            out.append(Akshara("".join(cur), _KIND[cur_kind]))
        cur = [ch]
        cur_kind = cls
        bind_next = False
    if cur:
        out.append(Akshara("".join(cur), _KIND[cur_kind]))
    return out
