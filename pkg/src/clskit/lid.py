"""Language identification over compact CLS text.

Multi-gram TF-IDF features (character n-grams inside words, word n-grams)
feed a multinomial naive Bayes classifier. Because every language shares one
alphabet after CLS conversion, the classifier has to rely on phonotactics and
vocabulary rather than script.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .errors import (DegenerateCorpus, EmptyCorpus, EmptyInput, FormatError,
                     ModelFormatError)
from .parser import LanguageId

FORMAT_VERSION = 1


@dataclass(frozen=True)
class FeatureConfig:
    char_ngram_range: tuple = (1, 3)
    word_ngram_range: tuple = (1, 2)
    sublinear_tf: bool = False
    vocabulary_cap: int | None = None
    # pad words with "<" and ">" before taking character n-grams
    char_boundaries: bool = False

    def __post_init__(self):
        for name in ("char_ngram_range", "word_ngram_range"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi <= 5:
                raise ValueError(f"{name} must satisfy 1 <= min <= max <= 5, got {(lo, hi)}")
            object.__setattr__(self, name, (int(lo), int(hi)))
        if self.vocabulary_cap is not None and self.vocabulary_cap < 1:
            raise ValueError("vocabulary_cap must be positive")


def extract_features(cls_text, config=FeatureConfig()):
    """Count ``c:<chars>`` and ``w:<word>_<word>`` features of one sentence."""
    words = cls_text.split()
    if not words:
        raise EmptyInput("no CLS words to featurize")
    feats = Counter()
    lo, hi = config.char_ngram_range
    for word in words:
        if config.char_boundaries:
            word = f"<{word}>"
        for n in range(lo, hi + 1):
            for i in range(len(word) - n + 1):
                feats["c:" + word[i:i + n]] += 1
    lo, hi = config.word_ngram_range
    for n in range(lo, hi + 1):
        for i in range(len(words) - n + 1):
            feats["w:" + "_".join(words[i:i + n])] += 1
    return dict(feats)


@dataclass
class LidModel:
    languages: list
    log_priors: np.ndarray
    feature_vocab: dict
    idf: np.ndarray
    log_likelihoods: np.ndarray
    smoothing_alpha: float
    config: FeatureConfig = field(default_factory=FeatureConfig)
    format_version: int = FORMAT_VERSION

    def validate(self):
        n_lang, n_feat = len(self.languages), len(self.feature_vocab)
        if self.format_version != FORMAT_VERSION:
            raise ModelFormatError(f"unsupported LID model version {self.format_version}")
        if n_lang < 2:
            raise ModelFormatError("an LID model needs at least two languages")
        if self.log_priors.shape != (n_lang,):
            raise ModelFormatError("log_priors does not match the language list")
        if self.idf.shape != (n_feat,) or self.log_likelihoods.shape != (n_lang, n_feat):
            raise ModelFormatError("parameter arrays do not match the vocabulary")
        if not np.all(np.isfinite(self.log_likelihoods)):
            raise ModelFormatError("non-finite log-likelihoods")
        if any(not 0 <= i < n_feat for i in self.feature_vocab.values()):
            raise ModelFormatError("feature index out of range")
        if abs(np.exp(self.log_priors).sum() - 1.0) > 1e-9:
            raise ModelFormatError("priors do not sum to one")
        if self.smoothing_alpha <= 0:
            raise ModelFormatError("smoothing alpha must be positive")
        return self

    def to_dict(self):
        inv_vocab = sorted(self.feature_vocab, key=self.feature_vocab.get)
        return {
            "format": "clskit-lid",
            "format_version": self.format_version,
            "config": asdict(self.config),
            "languages": [str(l) for l in self.languages],
            "smoothing_alpha": self.smoothing_alpha,
            "log_priors": self.log_priors.tolist(),
            "vocab": inv_vocab,
            "idf": self.idf.tolist(),
            "log_likelihoods": self.log_likelihoods.tolist(),
        }

    @classmethod
    def from_dict(cls, d):
        try:
            if d.get("format") != "clskit-lid":
                raise ModelFormatError("not a clskit LID model")
            cfg = d["config"]
            config = FeatureConfig(
                char_ngram_range=tuple(cfg["char_ngram_range"]),
                word_ngram_range=tuple(cfg["word_ngram_range"]),
                sublinear_tf=cfg["sublinear_tf"],
                vocabulary_cap=cfg["vocabulary_cap"],
                char_boundaries=cfg.get("char_boundaries", False),
            )
            model = cls(
                languages=[LanguageId(l) for l in d["languages"]],
                log_priors=np.asarray(d["log_priors"], dtype=float),
                feature_vocab={f: i for i, f in enumerate(d["vocab"])},
                idf=np.asarray(d["idf"], dtype=float),
                log_likelihoods=np.asarray(d["log_likelihoods"], dtype=float).reshape(
                    len(d["languages"]), len(d["vocab"])),
                smoothing_alpha=float(d["smoothing_alpha"]),
                config=config,
                format_version=int(d["format_version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ModelFormatError):
                raise
            raise ModelFormatError(f"malformed LID model: {exc}") from exc
        return model.validate()

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), ensure_ascii=False), encoding="utf-8")

    @classmethod
    def load(cls, path):
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"{path}: {exc}") from exc
        return cls.from_dict(data)


def _tf(count, sublinear):
    return 1.0 + math.log(count) if sublinear else float(count)


def lid_train(corpus, config=FeatureConfig(), alpha=1.0):
    """Fit a TF-IDF multinomial naive Bayes model on ``(cls_text, lang)`` pairs."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    # a canonical order makes the float sums independent of corpus order
    corpus = sorted(((text, LanguageId(lang)) for text, lang in corpus),
                    key=lambda pair: (pair[1].value, pair[0]))
    if not corpus:
        raise EmptyCorpus("no training sentences")
    languages = sorted({lang for _, lang in corpus}, key=lambda l: l.value)
    if len(languages) < 2:
        raise DegenerateCorpus(f"only one language in the corpus: {languages[0]}")

    docs = [extract_features(text, config) for text, _ in corpus]
    df = Counter()
    totals = Counter()
    for feats in docs:
        df.update(feats.keys())
        totals.update(feats)
    vocab = sorted(df)
    if config.vocabulary_cap is not None and len(vocab) > config.vocabulary_cap:
        vocab = sorted(sorted(vocab, key=lambda f: (-totals[f], f))[:config.vocabulary_cap])
    index = {f: i for i, f in enumerate(vocab)}

    n_docs = len(docs)
    idf = np.array([math.log((1 + n_docs) / (1 + df[f])) + 1.0 for f in vocab])
    lang_index = {lang: i for i, lang in enumerate(languages)}
    weights = np.zeros((len(languages), len(vocab)))
    class_counts = np.zeros(len(languages))
    for feats, (_, lang) in zip(docs, corpus):
        row = lang_index[lang]
        class_counts[row] += 1
        for f, c in feats.items():
            j = index.get(f)
            if j is not None:
                weights[row, j] += _tf(c, config.sublinear_tf) * idf[j]

    smoothed = weights + alpha
    log_likelihoods = np.log(smoothed) - np.log(smoothed.sum(axis=1, keepdims=True))
    log_priors = np.log(class_counts) - math.log(n_docs)
    return LidModel(languages, log_priors, index, idf, log_likelihoods, float(alpha), config).validate()


def feature_vector(model, cls_text):
    """Sparse TF-IDF vector of ``cls_text`` as ``(indices, values)``."""
    feats = extract_features(cls_text, model.config)
    idx, vals = [], []
    for f, c in sorted(feats.items()):
        j = model.feature_vocab.get(f)
        if j is not None:
            idx.append(j)
            vals.append(_tf(c, model.config.sublinear_tf) * model.idf[j])
    return np.asarray(idx, dtype=int), np.asarray(vals, dtype=float)


def lid_predict(model, cls_text):
    """Return ``(language, posteriors)``; posteriors follow ``model.languages``."""
    if not isinstance(model, LidModel):
        raise ModelFormatError("expected a LidModel")
    idx, vals = feature_vector(model, cls_text)
    joint = model.log_priors + model.log_likelihoods[:, idx] @ vals
    post = np.exp(joint - joint.max())
    post /= post.sum()
    # argmax returns the first maximum, i.e. the earliest declared language
    return model.languages[int(np.argmax(joint))], post


def read_lid_corpus(path):
    """Read ``lang<TAB>cls text`` lines."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[1].strip():
                raise FormatError("expected 'lang<TAB>text'", lineno, path)
            try:
                lang = LanguageId(parts[0])
            except ValueError:
                raise FormatError(f"unknown language {parts[0]!r}", lineno, path) from None
            out.append((parts[1], lang))
    return out
