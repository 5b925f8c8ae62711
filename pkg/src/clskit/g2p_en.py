"""English word -> CMU phones: pronouncing-dictionary lookup with a
deterministic letter-to-sound fallback for out-of-vocabulary words."""
from __future__ import annotations

import functools
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources

from ._data import data_path, read_table
from .charmap import CMU_PHONES, strip_stress
from .errors import NonLatinInput, TableFormatError

_VALID = re.compile(r"^[A-Za-z'\-]+$")
_ALT = re.compile(r"\(\d+\)$")


class PronLexicon:
    """Lowercase word -> list of pronunciations (tuples of CMU phones,
    stress digits kept as in the source file)."""

    def __init__(self, entries=None):
        self.entries = entries if entries is not None else {}

    @classmethod
    def from_lines(cls, lines, source="<lexicon>"):
        entries = {}
        for lineno, line in enumerate(lines, 1):
            line = line.split("#", 1)[0].strip()
            if not line or line.startswith(";;;"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise TableFormatError(f"{source}:{lineno}: entry without phones")
            word = _ALT.sub("", parts[0]).lower()
            phones = tuple(parts[1:])
            for ph in phones:
                if strip_stress(ph) not in CMU_PHONES:
                    raise TableFormatError(f"{source}:{lineno}: {ph!r} is not a CMU phone")
            entries.setdefault(word, []).append(phones)
        return cls(entries)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh, str(path))

    def __contains__(self, word):
        return word.lower() in self.entries

    def __len__(self):
        return len(self.entries)

    def lookup(self, word):
        prons = self.entries.get(word.lower())
        return prons[0] if prons else None


@functools.lru_cache(maxsize=None)
def default_lexicon():
    """The CMU Pronouncing Dictionary as shipped by the ``cmudict`` package."""
    ref = resources.files("cmudict").joinpath("data", "cmudict.dict")
    with ref.open("r", encoding="utf-8") as fh:
        return PronLexicon.from_lines(fh, "cmudict.dict")


@dataclass(frozen=True)
class LtsRule:
    pattern: str
    phones: tuple
    priority: int
    initial: bool
    final: bool


class LetterToSound:
    def __init__(self, rules):
        self.rules = tuple(rules)
        self.by_first = {}
        for rule in self.rules:
            self.by_first.setdefault(rule.pattern[0], []).append(rule)
        for bucket in self.by_first.values():
            bucket.sort(key=lambda r: (-len(r.pattern), -r.priority, r.pattern))
        missing = [ch for ch in "abcdefghijklmnopqrstuvwxyz"
                   if not any(r.pattern == ch and not (r.initial or r.final)
                              for r in self.by_first.get(ch, ()))]
        if missing:
            raise TableFormatError(f"letter-to-sound rules lack unanchored rules for {missing}")

    @classmethod
    def load(cls, path=None):
        path = path or data_path("en_lts.tsv")
        rules = []
        for lineno, f in read_table(path, "clskit-lts-rules"):
            if len(f) != 3:
                raise TableFormatError(f"{path}:{lineno}: expected 3 columns")
            pat, phones, prio = f
            initial, final = pat.startswith("^"), pat.endswith("$")
            pat = pat.strip("^$")
            phs = () if phones == "-" else tuple(phones.split())
            for ph in phs:
                if ph not in CMU_PHONES:
                    raise TableFormatError(f"{path}:{lineno}: {ph!r} is not a CMU phone")
            rules.append(LtsRule(pat, phs, int(prio), initial, final))
        return cls(rules)

    def _match(self, word, pos, single_only=False):
        for rule in self.by_first.get(word[pos], ()):
            if single_only and (len(rule.pattern) > 1 or rule.initial or rule.final):
                continue
            end = pos + len(rule.pattern)
            if word.startswith(rule.pattern, pos) \
                    and (not rule.initial or pos == 0) \
                    and (not rule.final or end == len(word)):
                return rule
        raise NonLatinInput(f"no letter-to-sound rule for {word[pos]!r} in {word!r}")

    def convert(self, word, single_only=False):
        out = []
        pos = 0
        while pos < len(word):
            rule = self._match(word, pos, single_only)
            out.extend(rule.phones)
            pos += len(rule.pattern)
        return out

    def __call__(self, word):
        word = word.lower()
        out = self.convert(word)
        if not out:
            out = self.convert(word, single_only=True)
        return out


@functools.lru_cache(maxsize=None)
def default_lts():
    return LetterToSound.load()


def _clean(word):
    if not isinstance(word, str):
        raise NonLatinInput(f"expected a string, got {type(word).__name__}")
    folded = "".join(c for c in unicodedata.normalize("NFKD", word)
                     if not unicodedata.combining(c))
    if not _VALID.match(folded) or not any(c.isalpha() for c in folded):
        raise NonLatinInput(f"{word!r} is not a Latin-letter word")
    return folded.lower()


def _parts(word):
    return [p for p in word.split("-") if any(c.isalpha() for c in p)]


def g2p(word, lexicon=None, lts=None):
    """CMU phones (stress stripped) for ``word``; first listed pronunciation
    wins, letter-to-sound rules cover misses."""
    lexicon = lexicon or default_lexicon()
    lts = lts or default_lts()
    word = _clean(word)
    pron = lexicon.lookup(word)
    if pron is not None:
        return [strip_stress(p) for p in pron]
    out = []
    for part in _parts(word):
        pron = lexicon.lookup(part)
        if pron is not None:
            out.extend(strip_stress(p) for p in pron)
        else:
            out.extend(lts(part))
    return out


def g2p_is_lexical(word, lexicon=None):
    """True when :func:`g2p` resolves ``word`` without the fallback rules."""
    lexicon = lexicon or default_lexicon()
    word = _clean(word)
    if word in lexicon:
        return True
    return all(part in lexicon for part in _parts(word))
