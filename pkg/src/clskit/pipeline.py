"""Corpus manifests, dual-script training targets and native-script recovery."""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from . import g2p_en
from .charmap import to_compact
from .errors import ClsKitError, DuplicateUttId, FormatError, MissingTranslitModel
from .lid import lid_predict
from .parser import LanguageId, _strip_token, parse_text
from .script import ScriptId, detect_script, normalize_text
from .translit import transliterate_text


@dataclass
class UtteranceRecord:
    utt_id: str
    audio_path: str
    language: LanguageId | None
    native_text: str
    cls_text: str | None = None


def _parse_language(value, lineno, path):
    if value in ("", "-"):
        return None
    try:
        return LanguageId(value)
    except ValueError:
        raise FormatError(f"unknown language {value!r}", lineno, path) from None


def ingest_manifest(path, fmt="auto", errors=None):
    """Read a manifest into :class:`UtteranceRecord` objects.

    ``fmt`` is ``"tsv"`` (utt_id, audio_path, lang, text), ``"transcript"``
    (utt_id, whitespace, text) or ``"auto"``, which picks ``tsv`` when the
    first non-blank line contains a tab. Malformed rows raise
    :class:`FormatError`, unless ``errors`` is a list, in which case they are
    appended there and skipped. Duplicate ids always raise.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if fmt == "auto":
        first = next((l for l in lines if l.strip()), "")
        fmt = "tsv" if "\t" in first else "transcript"
    if fmt not in ("tsv", "transcript"):
        raise ValueError(f"unknown manifest format {fmt!r}")

    records, seen = [], {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        try:
            if fmt == "tsv":
                cols = line.split("\t")
                if len(cols) != 4:
                    raise FormatError(f"expected 4 tab-separated columns, got {len(cols)}",
                                      lineno, path)
                utt, audio, lang, text = cols
                lang = _parse_language(lang.strip(), lineno, path)
            else:
                parts = line.split(None, 1)
                utt, audio, lang = parts[0], "", None
                text = parts[1] if len(parts) > 1 else ""
            utt = utt.strip()
            if not utt:
                raise FormatError("empty utterance id", lineno, path)
            text = normalize_text(text)
        except FormatError as exc:
            if errors is None:
                raise
            errors.append(exc)
            continue
        if utt in seen:
            raise DuplicateUttId(f"utterance id {utt!r} already used on line {seen[utt]}",
                                 lineno, path)
        seen[utt] = lineno
        records.append(UtteranceRecord(utt, audio, lang, text))
    return records


@dataclass
class DualReport:
    written: int = 0
    failures: list = field(default_factory=list)       # (utt_id, message)
    latin_tokens: list = field(default_factory=list)   # (utt_id, token, lexical)

    @property
    def non_lexical(self):
        return [t for t in self.latin_tokens if not t[2]]

    def to_dict(self):
        return {
            "written": self.written,
            "failures": [list(f) for f in self.failures],
            "latin_tokens": [list(t) for t in self.latin_tokens],
        }


def cls_transcript(text, lang, rules_dir=None):
    """Compact CLS transcript of one utterance (words joined by spaces)."""
    return " ".join(to_compact(phones) for _, phones in parse_text(text, lang, rules_dir=rules_dir))


def _atomic_write(path, lines):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_dual_targets(records, native_path, cls_path, rules_dir=None):
    """Write aligned native-script and CLS target files.

    Lines are ``utt_id transcript`` sorted by utt_id. An utterance that fails
    to convert is left out of both files and listed in the report. Latin
    tokens go through the English pronouncing dictionary; the report notes
    for each one whether the dictionary covered it.
    """
    report = DualReport()
    native_lines, cls_lines = [], []
    for rec in sorted(records, key=lambda r: r.utt_id):
        if rec.language is None:
            report.failures.append((rec.utt_id, "record has no language"))
            continue
        text = normalize_text(rec.native_text)
        if not text:
            report.failures.append((rec.utt_id, "empty transcript"))
            continue
        try:
            cls = cls_transcript(text, rec.language, rules_dir)
        except ClsKitError as exc:
            report.failures.append((rec.utt_id, str(exc)))
            continue
        for tok in text.split():
            tok = _strip_token(tok)
            if not tok:
                continue
            try:
                if detect_script(tok) is ScriptId.LATIN:
                    report.latin_tokens.append((rec.utt_id, tok, g2p_en.g2p_is_lexical(tok)))
            except ClsKitError:
                pass
        native_lines.append(f"{rec.utt_id} {text}")
        cls_lines.append(f"{rec.utt_id} {cls}")
    _atomic_write(native_path, native_lines)
    _atomic_write(cls_path, cls_lines)
    report.written = len(native_lines)
    return Path(native_path), Path(cls_path), report


@dataclass
class Recovered:
    utt_id: str
    language: LanguageId | None
    native_text: str
    posterior: dict
    errors: list = field(default_factory=list)


def recover_native(hypotheses, lid_model, translit_models, placeholder="�"):
    """Run LID, then the chosen language's transliterator, on CLS hypotheses.

    ``hypotheses`` is an iterable of ``(utt_id, cls_text)``; the output is
    sorted by utt_id. An utterance whose language has no model raises
    :class:`MissingTranslitModel`; other failures give ``placeholder``.
    """
    models = {LanguageId(k): v for k, v in translit_models.items()}
    out = []
    for utt, cls_text in sorted(hypotheses, key=lambda h: h[0]):
        try:
            lang, post = lid_predict(lid_model, cls_text)
        except ClsKitError as exc:
            out.append(Recovered(utt, None, placeholder, {}, [exc]))
            continue
        posterior = {str(l): float(p) for l, p in zip(lid_model.languages, post)}
        model = models.get(lang)
        if model is None:
            raise MissingTranslitModel(f"no transliteration model for {lang}")
        errors = []
        native = transliterate_text(model, cls_text, placeholder, errors)
        out.append(Recovered(utt, lang, native, posterior, errors))
    return out


def read_dual_file(path):
    """Read ``utt_id transcript`` lines into a dict.

    Tab-separated ``utt_id<TAB>lang<TAB>text`` lines, as ``clskit recover``
    prints them, are read too; the text is the last column.
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if "\t" in line:
                cols = line.split("\t")
                parts = [cols[0], cols[-1]] if len(cols) > 1 else cols
            else:
                parts = line.split(" ", 1)
            if parts[0] in out:
                raise DuplicateUttId(f"utterance id {parts[0]!r} repeated", lineno, path)
            out[parts[0]] = parts[1] if len(parts) > 1 else ""
    return out
