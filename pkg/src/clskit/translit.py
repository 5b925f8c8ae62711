"""CLS to native-script transliteration.

Candidates come from the forward rule tables run backwards: every phone
expands into the graphemes that could have produced it, with the spelling
choices the forward rules erase (virama or deleted schwa, anusvara or nasal
consonant, visarga or h) kept open. A character n-gram model of the native
script ranks the candidates, and a candidate whose forward parse does not
give back the input is pushed below every consistent one.
"""
from __future__ import annotations

import functools
import json
import math
import re
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from ._data import data_path, read_table
from .charmap import default_inventory, from_compact
from .errors import (ClsKitError, EmptyCorpus, EmptyInput, FormatError,
                     ModelFormatError, ScriptMismatch, TableFormatError)
from .parser import (LANGUAGE_SCRIPT, LanguageId, _PLACE_NASAL, _is_consonant,
                     _is_vowel, parse_word, rule_table)
from .script import ScriptId, detect_script, normalize_text

FORMAT_VERSION = 1
BOS = "\x02"
EOS = "\x03"
# added to the score of a candidate that does not parse back to the input
INCONSISTENT_PENALTY = 1000.0
DEFAULT_ORDER = 5
DEFAULT_BEAM = 8


# --- character language model -----------------------------------------------

class CharLM:
    """Interpolated Witten-Bell character n-gram model.

    ``counts[h][c]`` is how often character ``c`` followed history ``h``
    (``len(h) < order``); every word is padded with ``order - 1`` BOS marks
    and one EOS mark. The order-0 model interpolates with a uniform
    distribution over the observed characters plus EOS.
    """

    def __init__(self, order, counts):
        if not 1 <= order:
            raise ValueError("order must be positive")
        self.order = order
        self.counts = {h: dict(c) for h, c in counts.items()}
        self.totals = {h: sum(c.values()) for h, c in self.counts.items()}
        self.types = {h: len(c) for h, c in self.counts.items()}
        self.vocab = sorted(self.counts.get("", {}))
        if EOS not in self.vocab:
            raise ModelFormatError("language model has no end-of-word counts")
        total = self.totals[""]
        # characters never seen in training fall below every seen one
        self._unk = math.log(1.0 / (len(self.vocab) * (total + self.types[""])))
        self._cache = {}

    @classmethod
    def train(cls, words, order=DEFAULT_ORDER):
        counts = defaultdict(Counter)
        pad = BOS * (order - 1)
        for w in words:
            seq = pad + w + EOS
            for i in range(order - 1, len(seq)):
                for k in range(order):
                    counts[seq[i - k:i]][seq[i]] += 1
        return cls(order, counts)

    def prob(self, history, ch):
        history = history[-(self.order - 1):] if self.order > 1 else ""
        return self._prob(history, ch)

    def _prob(self, history, ch):
        key = (history, ch)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if history == "":
            lower = 1.0 / len(self.vocab)
        else:
            lower = self._prob(history[1:], ch)
        total = self.totals.get(history)
        if not total:
            p = lower
        else:
            t = self.types[history]
            p = (self.counts[history].get(ch, 0) + t * lower) / (total + t)
        self._cache[key] = p
        return p

    def logprob(self, history, ch):
        if ch not in self.counts[""]:
            return self._unk
        return math.log(self.prob(history, ch))

    def score(self, word):
        pad = BOS * (self.order - 1)
        seq = pad + word
        lp = sum(self.logprob(seq[:i], seq[i]) for i in range(len(pad), len(seq)))
        return lp + self.logprob(seq, EOS)

    def histories(self):
        return list(self.counts)

    def to_dict(self):
        return {"order": self.order, "counts": self.counts}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["order"]), d["counts"])


# --- inverse rules ------------------------------------------------------------

# grapheme kinds, named after the forward table flags
CONSONANT, DEAD, VOWEL, MATRA, NASAL_SIGN, VISARGA = "C", "D", "V", "M", "A", "S"


@functools.lru_cache(maxsize=None)
def default_substitutes():
    out = {}
    path = data_path("translit_substitutes.tsv")
    for lineno, f in read_table(path, "clskit-translit-substitutes"):
        if len(f) != 2:
            raise TableFormatError(f"{path}:{lineno}: expected 2 columns")
        choices = [() if c == "-" else tuple(c.split()) for c in f[1].split("|")]
        out[f[0]] = choices
    return out


def invert_table(table):
    """Mechanically invert a forward rule table.

    Returns ``(rules, virama)`` where ``rules`` maps a tuple of CLS labels to
    a list of ``(grapheme, kind)`` options in codepoint order.
    """
    rules = defaultdict(list)
    virama = None
    for key in sorted(table.codepoint_map):
        entry = table.codepoint_map[key]
        if entry.rejected or unicodedata.normalize("NFC", key) != key:
            continue
        if entry.flag == "H":
            virama = virama or key
        elif entry.flag in "CDVMAS" and entry.labels:
            opt = (key, entry.flag)
            if opt not in rules[entry.labels]:
                rules[entry.labels].append(opt)
    if virama is None:
        raise TableFormatError(f"{table.language}: rule table has no virama")
    return dict(rules), virama


def _resolve_substitutes(rules, substitutes):
    covered = {labels[0] for labels in rules if len(labels) == 1}
    resolved = {}
    for label in default_inventory().labels:
        if label in covered:
            continue
        for choice in substitutes.get(label, ()):
            if all(l in covered for l in choice):
                resolved[label] = choice
                break
    return resolved


def _seg_counts(words, graphemes):
    text = "\n".join(words)
    return {g: text.count(g) for g in graphemes}


def _prune_unobserved(rules, words):
    """Drop options never seen in training when a seen one of the same kind exists."""
    seen = _seg_counts(words, {g for opts in rules.values() for g, _ in opts})
    out = {}
    for labels, opts in rules.items():
        by_kind = defaultdict(list)
        for g, kind in opts:
            by_kind[kind].append((g, kind))
        kept = []
        for kind, group in by_kind.items():
            observed = [o for o in group if seen[o[0]] > 0]
            kept.extend(observed or group)
        out[labels] = sorted(kept, key=opts.index)
    return out


# --- model ----------------------------------------------------------------------

@dataclass
class TranslitRecord:
    cls_word: str
    native_word: str

    def __post_init__(self):
        if not self.cls_word or not self.native_word:
            raise EmptyInput("translit records need a CLS side and a native side")


@dataclass
class TranslitModel:
    language: LanguageId
    inverse_rules: dict
    virama: str
    substitutes: dict
    char_lm: CharLM
    beam_width: int = DEFAULT_BEAM
    options: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        self.language = LanguageId(self.language)
        table = rule_table(self.language)
        self._rules = table.rule_names()
        self._inherent = table.inherent_vowel
        params = table.params("SchwaDeletion") or {}
        self._final_deletion = "SchwaDeletion" in self._rules and params.get("final", "1") == "1"
        self._medial_deletion = "SchwaDeletion" in self._rules and params.get("medial", "1") == "1"
        vparams = table.params("VisargaExpansion") or {}
        self._visarga_echo = vparams.get("echo", "1") == "1"
        self._max_span = max(len(k) for k in self.inverse_rules)
        self._parse_cache = {}
        self.validate()

    def validate(self):
        if self.format_version != FORMAT_VERSION:
            raise ModelFormatError(f"unsupported translit model version {self.format_version}")
        if self.beam_width < 1:
            raise ModelFormatError("beam width must be positive")
        covered = {k[0] for k in self.inverse_rules if len(k) == 1}
        for label in default_inventory().labels:
            if label in covered:
                continue
            sub = self.substitutes.get(label)
            if sub is None or not all(l in covered for l in sub):
                raise ModelFormatError(f"{self.language}: no inverse rule for CLS label {label!r}")
        return self

    # serialization
    def to_dict(self):
        return {
            "format": "clskit-translit",
            "format_version": self.format_version,
            "language": self.language.value,
            "beam_width": self.beam_width,
            "virama": self.virama,
            "options": self.options,
            "inverse_rules": [[" ".join(k), [list(o) for o in v]]
                              for k, v in sorted(self.inverse_rules.items())],
            "substitutes": {k: list(v) for k, v in sorted(self.substitutes.items())},
            "char_lm": self.char_lm.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("format") != "clskit-translit":
            raise ModelFormatError("not a clskit transliteration model")
        try:
            return cls(
                language=LanguageId(d["language"]),
                inverse_rules={tuple(k.split()): [tuple(o) for o in v]
                               for k, v in d["inverse_rules"]},
                virama=d["virama"],
                substitutes={k: tuple(v) for k, v in d["substitutes"].items()},
                char_lm=CharLM.from_dict(d["char_lm"]),
                beam_width=int(d["beam_width"]),
                options=dict(d.get("options", {})),
                format_version=int(d["format_version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ClsKitError):
                raise
            raise ModelFormatError(f"malformed transliteration model: {exc}") from exc

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), ensure_ascii=False), encoding="utf-8")

    @classmethod
    def load(cls, path):
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"{path}: {exc}") from exc
        return cls.from_dict(data)

    # forward check
    def parses_to(self, native, phones):
        got = self._parse_cache.get(native)
        if got is None:
            try:
                got = tuple(parse_word(native, self.language))
            except (ClsKitError, ValueError, KeyError):
                got = ()
            self._parse_cache[native] = got
        return got == tuple(phones)


# --- training -------------------------------------------------------------------

def translit_train(parallel, lang, lm_order=DEFAULT_ORDER, beam=DEFAULT_BEAM):
    """Build a transliteration model from ``(cls_word, native_word)`` pairs."""
    lang = LanguageId(lang)
    if lang is LanguageId.EN:
        raise ScriptMismatch("transliteration targets an Indic script")
    if not 2 <= lm_order <= 7:
        raise ValueError("lm_order must be between 2 and 7")
    if beam < 1:
        raise ValueError("beam must be positive")
    records = [r if isinstance(r, TranslitRecord) else TranslitRecord(*r) for r in parallel]
    if not records:
        raise EmptyCorpus("no parallel records")
    script = LANGUAGE_SCRIPT[lang]
    natives = []
    agree = 0
    for rec in records:
        native = normalize_text(rec.native_word)
        if detect_script(native) is not script:
            raise ScriptMismatch(f"{native!r} is not written in {script.value}")
        natives.append(native)
        try:
            agree += to_cls_compact(native, lang) == rec.cls_word
        except (ClsKitError, ValueError, KeyError):
            pass

    table = rule_table(lang)
    rules, virama = invert_table(table)
    rules = _prune_unobserved(rules, natives)
    substitutes = _resolve_substitutes(rules, default_substitutes())
    options = {
        "final_virama_seen": any(w.endswith(virama) for w in natives),
        "records": len(records),
        "records_consistent": agree,
    }
    lm = CharLM.train(natives, lm_order)
    return TranslitModel(lang, rules, virama, substitutes, lm, beam, options)


def to_cls_compact(native, lang):
    from .charmap import to_compact
    return to_compact(parse_word(native, lang))


# --- decoding -------------------------------------------------------------------

@dataclass(frozen=True)
class _Hyp:
    score: float
    text: str
    state: str      # "S" start, "C" consonant awaiting its vowel, "V" otherwise
    pos: int


def _expand(model, phones, hyp):
    """Yield ``(suffix, state, advance)`` moves from ``hyp``."""
    n = len(phones)
    pos, state = hyp.pos, hyp.state
    p = phones[pos]
    rules = model.inverse_rules

    def closures():
        if state != "C":
            return [""]
        out = [model.virama]
        if model._medial_deletion and pos >= 2 and pos + 1 < n \
                and (_is_vowel(phones[pos - 2]) or phones[pos - 2] == "mq") \
                and _is_vowel(phones[pos + 1]):
            out.append("")
        return out

    if state == "C" and p == model._inherent:
        yield "", "V", 1

    # after a virama the forward parser reads signs and vowels as standalone
    closed = model.virama if state == "C" else ""
    for span in range(1, model._max_span + 1):
        labels = tuple(phones[pos:pos + span])
        if len(labels) < span:
            break
        opts = rules.get(labels, ())
        has_matra = any(kind == MATRA for _, kind in opts)
        for g, kind in opts:
            if kind in (CONSONANT, DEAD):
                nxt = "C" if kind == CONSONANT else "V"
                for c in closures():
                    yield c + g, nxt, span
            elif kind == VOWEL and (state != "C" or not has_matra):
                yield closed + g, "V", span
            elif kind == MATRA and state == "C":
                yield g, "V", span
            elif kind in (NASAL_SIGN, VISARGA):
                yield closed + g, "V", span

    if state == "C":
        return
    # anusvara written for a nasal that assimilated to the next stop
    if "AnusvaraAssimilation" in model._rules and pos + 1 < n \
            and _PLACE_NASAL.get(phones[pos + 1]) == p:
        for g, _ in rules.get(("mq",), ()):
            yield g, "V", 1
    # visarga written for an h
    if p == "h" and "VisargaExpansion" in model._rules:
        prev = next((q for q in reversed(phones[:pos]) if _is_vowel(q)), None)
        for g, _ in rules.get(("hq",), ()):
            # an echoed final vowel may itself be removed by schwa deletion
            if pos == n - 1 and (not model._visarga_echo or prev is None
                                 or model._final_deletion):
                yield g, "V", 1
            elif pos == n - 2 and model._visarga_echo and phones[n - 1] == prev:
                yield g, "V", 2
            elif pos < n - 1:
                yield g, "V", 1


def _finish(model, phones, hyp):
    """Word-final closures for a hypothesis that consumed every phone."""
    if hyp.state != "C":
        return [""]
    out = []
    n = len(phones)
    if model._final_deletion and n >= 2 \
            and (not _is_consonant(phones[-2])
                 or default_inventory()[phones[-2]].category == "Nasal"):
        out.append("")
    out.append(model.virama)
    return out


def _lm_extend(model, text, suffix):
    lm = model.char_lm
    pad = BOS * (lm.order - 1)
    ctx = pad + text
    lp = 0.0
    for ch in suffix:
        lp += lm.logprob(ctx, ch)
        ctx += ch
    return lp


def _beam(model, phones, width):
    n = len(phones)
    buckets = defaultdict(list)
    buckets[0].append(_Hyp(0.0, "", "S", 0))
    done = {}
    for pos in range(n):
        live = sorted(set(buckets.pop(pos, ())), key=lambda h: (-h.score, h.text, h.state))
        for hyp in live[:width]:
            for suffix, state, adv in _expand(model, phones, hyp):
                nh = _Hyp(hyp.score + _lm_extend(model, hyp.text, suffix),
                          hyp.text + suffix, state, pos + adv)
                buckets[nh.pos].append(nh)
    final = sorted(set(buckets.pop(n, ())), key=lambda h: (-h.score, h.text, h.state))
    for hyp in final[:width]:
        for close in _finish(model, phones, hyp):
            text = hyp.text + close
            lp = hyp.score + _lm_extend(model, hyp.text, close) \
                + model.char_lm.logprob(BOS * (model.char_lm.order - 1) + text, EOS)
            if text not in done or lp > done[text]:
                done[text] = lp
    return done


def _substitute(model, phones):
    out = []
    for p in phones:
        out.extend(model.substitutes.get(p, (p,)))
    return out


def transliterate_phones(model, phones, beam=None):
    """Transliterate a CLS label list; see :func:`transliterate_word`."""
    phones = list(phones)
    if not phones:
        raise EmptyInput("empty CLS word")
    inv = default_inventory()
    for p in phones:
        inv[p]
    beam = model.beam_width if beam is None else beam
    if beam < 1:
        raise ValueError("beam must be positive")
    target = _substitute(model, phones)
    if not target:
        return "", 0.0, [("", 0.0)]
    scores = {}
    # running every narrower beam too makes the best score monotone in beam
    for width in range(1, beam + 1):
        for text, lp in _beam(model, target, width).items():
            if text not in scores or lp > scores[text]:
                scores[text] = lp
    nbest = []
    for text, lp in scores.items():
        if not model.parses_to(text, phones):
            lp -= INCONSISTENT_PENALTY
        nbest.append((text, lp))
    nbest.sort(key=lambda t: (-t[1], t[0]))
    return nbest[0][0], nbest[0][1], nbest


def transliterate_word(model, cls_word, beam=None):
    """Native spelling of one compact CLS word.

    Returns ``(native, score, nbest)``; ``nbest`` lists ``(native, score)``
    pairs with non-increasing scores.
    """
    if not cls_word:
        raise EmptyInput("empty CLS word")
    return transliterate_phones(model, from_compact(cls_word), beam)


def transliterate_text(model, cls_text, placeholder="�", errors=None):
    """Transliterate each word of a compact CLS sentence, keeping whitespace.

    A word that fails becomes ``placeholder``; its exception is appended to
    ``errors`` when a list is given.
    """
    out = []
    for piece in re.split(r"(\s+)", cls_text):
        if not piece or piece.isspace():
            out.append(piece)
            continue
        try:
            out.append(transliterate_word(model, piece)[0])
        except ClsKitError as exc:
            if errors is not None:
                errors.append((piece, exc))
            out.append(placeholder)
    return "".join(out)


def read_parallel(path):
    """Read ``cls<TAB>native`` lines into :class:`TranslitRecord` objects."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise FormatError("expected 'cls<TAB>native'", lineno, path)
            out.append(TranslitRecord(parts[0], parts[1]))
    return out
