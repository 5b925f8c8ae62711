"""Byte-pair-encoding subword units.

Words are split on single spaces, so encoding is lossless for any text whose
characters were seen in training. The last symbol of each word carries the
boundary mark ``⟂``; a literal ``⟂`` in the input is written ``⟂⟂``, so a token
ends a word exactly when it ends in an odd run of marks. A model with zero
merges is the character-unit tokenizer.
"""
from __future__ import annotations

import heapq
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyCorpus, ModelFormatError, UnknownTokenId, VocabTooSmall

MARK = "⟂"
UNK = "<unk>"
UNK_END = UNK + MARK
UNK_TEXT = "�"
FORMAT_VERSION = 1
FORMAT_TAG = "# clskit-bpe"
DEFAULT_VOCAB = 5000
DEFAULT_AUX_VOCAB = 800


def word_symbols(word):
    """Base symbols of one word, boundary mark on the last."""
    syms = [MARK + MARK if ch == MARK else ch for ch in word]
    if not syms:
        return [MARK]
    syms[-1] += MARK
    return syms


def _words(text):
    return text.split(" ") if text else []


@dataclass
class BpeModel:
    merges: list
    vocab: dict
    base_symbols: list
    vocab_size_target: int
    word_boundary_marker: str = MARK
    format_version: int = FORMAT_VERSION
    _ranks: dict = field(default=None, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._ranks = {tuple(m): i for i, m in enumerate(self.merges)}
        self._id_to_token = {i: t for t, i in self.vocab.items()}
        self.validate()

    def validate(self):
        if self.format_version != FORMAT_VERSION:
            raise ModelFormatError(f"unsupported BPE model version {self.format_version}")
        if self.word_boundary_marker != MARK:
            raise ModelFormatError(f"unsupported boundary marker {self.word_boundary_marker!r}")
        if len(self._ranks) != len(self.merges):
            raise ModelFormatError("duplicate merges")
        if sorted(self.vocab.values()) != list(range(len(self.vocab))):
            raise ModelFormatError("token ids must be 0..n-1")
        for left, right in self.merges:
            if left + right not in self.vocab:
                raise ModelFormatError(f"merge result {left + right!r} missing from vocab")
        for tok in (UNK, UNK_END, *self.base_symbols):
            if tok not in self.vocab:
                raise ModelFormatError(f"token {tok!r} missing from vocab")
        return self

    @property
    def unk_ids(self):
        return self.vocab[UNK], self.vocab[UNK_END]

    def token(self, idx):
        try:
            return self._id_to_token[idx]
        except (KeyError, TypeError):
            raise UnknownTokenId(idx) from None

    # serialization
    def dumps(self):
        lines = [f"{FORMAT_TAG}\t{self.format_version}",
                 f"marker\t{self.word_boundary_marker}",
                 f"vocab_size_target\t{self.vocab_size_target}",
                 "%% base"]
        lines += [json.dumps(s, ensure_ascii=False) for s in self.base_symbols]
        lines.append("%% merges")
        lines += [json.dumps(l, ensure_ascii=False) + "\t" + json.dumps(r, ensure_ascii=False)
                  for l, r in self.merges]
        lines.append("%% vocab")
        lines += [json.dumps(t, ensure_ascii=False) + "\t" + str(i)
                  for t, i in sorted(self.vocab.items(), key=lambda kv: kv[1])]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text, source="<string>"):
        lines = text.splitlines()
        try:
            tag, version = lines[0].split("\t")
            if tag != FORMAT_TAG:
                raise ValueError("bad tag")
            version = int(version)
        except (IndexError, ValueError):
            raise ModelFormatError(f"{source}: not a clskit BPE model") from None
        if version != FORMAT_VERSION:
            raise ModelFormatError(f"{source}: unsupported BPE model version {version}")
        header, sections, current = {}, defaultdict(list), None
        try:
            for line in lines[1:]:
                if line.startswith("%% "):
                    current = line[3:]
                elif current is None:
                    key, value = line.split("\t")
                    header[key] = value
                elif line:
                    sections[current].append(line)
            base = [json.loads(l) for l in sections["base"]]
            merges = []
            for l in sections["merges"]:
                left, right = l.split("\t")
                merges.append((json.loads(left), json.loads(right)))
            vocab = {}
            for l in sections["vocab"]:
                tok, idx = l.rsplit("\t", 1)
                vocab[json.loads(tok)] = int(idx)
            return cls(merges, vocab, base, int(header["vocab_size_target"]),
                       header["marker"], version)
        except (KeyError, ValueError) as exc:
            if isinstance(exc, ModelFormatError):
                raise
            raise ModelFormatError(f"{source}: malformed BPE model: {exc}") from exc

    def save(self, path):
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path):
        return cls.loads(Path(path).read_text(encoding="utf-8"), str(path))


def bpe_train(corpus, vocab_size=DEFAULT_VOCAB):
    """Learn merges from lines of text until ``vocab_size`` tokens exist.

    Pairs are counted inside words; the most frequent pair is merged next,
    ties going to the lexicographically smallest pair. Training stops early
    once no pair occurs twice.
    """
    word_freq = Counter()
    for line in corpus:
        for w in _words(line.rstrip("\n")):
            word_freq[w] += 1
    if not word_freq:
        raise EmptyCorpus("no words to learn subword units from")

    words = [word_symbols(w) for w in sorted(word_freq)]
    freqs = [word_freq[w] for w in sorted(word_freq)]
    # every seen character in both its word-internal and word-final form
    chars = {s[:-1] if _ends_word(s) else s for syms in words for s in syms} - {""}
    base = sorted(chars | {c + MARK for c in chars} | {MARK})
    vocab = {UNK: 0, UNK_END: 1}
    for s in base:
        vocab[s] = len(vocab)
    if vocab_size <= len(vocab):
        raise VocabTooSmall(f"vocab_size {vocab_size} does not exceed the "
                            f"{len(vocab)} base symbols")

    pair_counts = Counter()
    where = defaultdict(set)
    for i, syms in enumerate(words):
        for pair in zip(syms, syms[1:]):
            pair_counts[pair] += freqs[i]
            where[pair].add(i)
    heap = [(-c, p) for p, c in pair_counts.items()]
    heapq.heapify(heap)

    merges = []
    while len(vocab) < vocab_size and heap:
        neg, pair = heapq.heappop(heap)
        if pair_counts.get(pair, 0) != -neg:
            continue        # stale heap entry
        if -neg < 2:
            break
        merged = pair[0] + pair[1]
        merges.append(pair)
        if merged not in vocab:
            vocab[merged] = len(vocab)
        touched = set()
        for i in sorted(where.pop(pair, ())):
            syms, f = words[i], freqs[i]
            for p in zip(syms, syms[1:]):
                pair_counts[p] -= f
                touched.add(p)
            new = _apply_merge(syms, pair, merged)
            words[i] = new
            for p in zip(new, new[1:]):
                pair_counts[p] += f
                where[p].add(i)
                touched.add(p)
        pair_counts.pop(pair, None)
        for p in touched:
            c = pair_counts.get(p, 0)
            if c > 0:
                heapq.heappush(heap, (-c, p))
            else:
                pair_counts.pop(p, None)
    return BpeModel(merges, vocab, base, vocab_size)


def _apply_merge(syms, pair, merged):
    out = []
    i = 0
    while i < len(syms):
        if i + 1 < len(syms) and syms[i] == pair[0] and syms[i + 1] == pair[1]:
            out.append(merged)
            i += 2
        else:
            out.append(syms[i])
            i += 1
    return out


def _encode_word(model, word):
    hit = model._cache.get(word)
    if hit is not None:
        return hit
    syms = word_symbols(word)
    ranks = model._ranks
    while len(syms) > 1:
        best = min(zip(syms, syms[1:]), key=lambda p: ranks.get(p, float("inf")))
        if best not in ranks:
            break
        syms = _apply_merge(syms, best, best[0] + best[1])
    ids = []
    unk, unk_end = model.unk_ids
    for s in syms:
        idx = model.vocab.get(s)
        if idx is None:
            idx = unk_end if _ends_word(s) else unk
        ids.append(idx)
    model._cache[word] = ids
    return ids


def bpe_tokens(model, text):
    """Token strings for ``text``."""
    return [model.token(i) for i in bpe_encode(model, text)]


def bpe_encode(model, text):
    """Token ids for ``text``; unseen characters become UNK."""
    out = []
    for w in _words(text):
        out.extend(_encode_word(model, w))
    return out


def _ends_word(token):
    run = len(token) - len(token.rstrip(MARK))
    return run % 2 == 1


def bpe_decode_checked(model, ids):
    """Decode token ids; returns ``(text, lossy)`` where ``lossy`` flags UNKs."""
    words, cur, lossy = [], [], False
    for idx in ids:
        tok = model.token(idx)
        end = _ends_word(tok)
        if tok in (UNK, UNK_END):
            lossy = True
            body = UNK_TEXT
        else:
            body = (tok[:-1] if end else tok).replace(MARK + MARK, MARK)
        cur.append(body)
        if end:
            words.append("".join(cur))
            cur = []
    if cur:
        words.append("".join(cur))
    return " ".join(words), lossy


def bpe_decode(model, ids):
    """Inverse of :func:`bpe_encode` for UNK-free input."""
    return bpe_decode_checked(model, ids)[0]
