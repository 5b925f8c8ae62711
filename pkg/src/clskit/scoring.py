"""Word and character error rates."""
from __future__ import annotations

import string
import unicodedata
from collections import defaultdict
from dataclasses import dataclass, field

from .errors import EmptyInput, EmptyReference
from .parser import LanguageId

# backtrace preference on equal cost
_SUB, _INS, _DEL = 0, 1, 2


@dataclass
class WerReport:
    substitutions: int
    deletions: int
    insertions: int
    ref_words: int
    wer: float
    per_language: dict = field(default_factory=dict)
    average: float | None = None

    @property
    def errors(self):
        return self.substitutions + self.deletions + self.insertions

    def to_dict(self):
        return {
            "substitutions": self.substitutions,
            "deletions": self.deletions,
            "insertions": self.insertions,
            "ref_words": self.ref_words,
            "wer": self.wer,
            "per_language": {str(k): v for k, v in self.per_language.items()},
            "average": self.average,
        }


def edit_ops(ref, hyp):
    """``(S, D, I)`` of one minimum-cost alignment of two sequences.

    The backtrace prefers a substitution (or match), then an insertion, then
    a deletion whenever several moves reach the same cost.
    """
    ref, hyp = list(ref), list(hyp)
    n, m = len(ref), len(hyp)
    prev = list(range(m + 1))
    table = [prev]
    for i in range(1, n + 1):
        row = [i] + [0] * m
        for j in range(1, m + 1):
            row[j] = min(prev[j - 1] + (ref[i - 1] != hyp[j - 1]), row[j - 1] + 1, prev[j] + 1)
        table.append(row)
        prev = row
    s = d = ins = 0
    i, j = n, m
    while i or j:
        cost = table[i][j]
        if i and j and table[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1]) == cost:
            s += ref[i - 1] != hyp[j - 1]
            i, j = i - 1, j - 1
        elif j and table[i][j - 1] + 1 == cost:
            ins += 1
            j -= 1
        else:
            d += 1
            i -= 1
    return s, d, ins


def normalize_for_scoring(text, strip_punct=False, casefold=False):
    text = " ".join(unicodedata.normalize("NFC", text).split())
    if strip_punct:
        drop = set(string.punctuation) | {"।", "॥"}
        text = " ".join("".join(c for c in w if c not in drop) for w in text.split())
        text = " ".join(text.split())
    if casefold:
        text = text.casefold()
    return text


def compute_wer(ref_words, hyp_words):
    """Word error rate of one hypothesis against one reference."""
    ref_words, hyp_words = list(ref_words), list(hyp_words)
    if not ref_words:
        raise EmptyReference("reference has no words")
    s, d, i = edit_ops(ref_words, hyp_words)
    wer = (s + d + i) / len(ref_words)
    return WerReport(s, d, i, len(ref_words), wer, {}, wer)


def compute_cer(ref, hyp):
    """Character error rate over codepoints, spaces included."""
    if not ref:
        raise EmptyReference("reference is empty")
    s, d, i = edit_ops(ref, hyp)
    return (s + d + i) / len(ref)


def average_score(per_language, exclude=()):
    """Unweighted mean over languages, skipping those in ``exclude``."""
    skip = {str(l) for l in exclude}
    values = [v for l, v in per_language.items() if str(l) not in skip]
    if not values:
        raise EmptyInput("no language scores to average")
    return sum(values) / len(values)


def score_corpus(refs, hyps, strip_punct=False, casefold=False):
    """Score ``hyps`` (utt_id -> text) against ``refs`` (utt_id -> (lang, text)).

    Missing hypotheses count as empty. ``per_language`` holds each language's
    pooled WER and ``average`` their unweighted mean.
    """
    if not refs:
        raise EmptyInput("no reference utterances")
    totals = defaultdict(lambda: [0, 0, 0, 0])
    for utt in sorted(refs):
        lang, ref = refs[utt]
        ref = normalize_for_scoring(ref, strip_punct, casefold).split()
        hyp = normalize_for_scoring(hyps.get(utt, ""), strip_punct, casefold).split()
        if not ref:
            raise EmptyReference(f"{utt}: empty reference")
        s, d, i = edit_ops(ref, hyp)
        t = totals[LanguageId(lang) if lang is not None else None]
        t[0] += s
        t[1] += d
        t[2] += i
        t[3] += len(ref)
    per_language = {l: (t[0] + t[1] + t[2]) / t[3] for l, t in totals.items() if l is not None}
    s, d, i, n = (sum(t[k] for t in totals.values()) for k in range(4))
    average = average_score(per_language) if per_language else (s + d + i) / n
    return WerReport(s, d, i, n, (s + d + i) / n, per_language, average)
