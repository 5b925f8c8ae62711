import random

import pytest

from clskit.charmap import cmu_to_cls, to_compact
from clskit.errors import DuplicateUttId, FormatError, MissingTranslitModel
from clskit.g2p_en import g2p
from clskit.lid import lid_train
from clskit.parser import LanguageId
from clskit.pipeline import (UtteranceRecord, emit_dual_targets, ingest_manifest,
                             read_dual_file, recover_native)
from clskit.translit import TranslitRecord, to_cls_compact, translit_train

from conftest import DATA, lexicon, sentences


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_tsv(tmp_path):
    p = _write(tmp_path / "m.tsv", "u1\ta.wav\thi\tकमल\nu2\tb.wav\tta\t  அம்மா  \n")
    recs = ingest_manifest(p)
    assert [r.utt_id for r in recs] == ["u1", "u2"]
    assert recs[1].language is LanguageId.TA and recs[1].native_text == "அம்மா"


def test_ingest_transcript(tmp_path):
    p = _write(tmp_path / "text", "u1 कमल अ\nu2   नमः\n")
    recs = ingest_manifest(p)
    assert [(r.utt_id, r.native_text, r.language) for r in recs] == [
        ("u1", "कमल अ", None), ("u2", "नमः", None)]


def test_ingest_errors(tmp_path):
    p = _write(tmp_path / "m.tsv", "u1\ta.wav\thi\tकमल\nu2\tb.wav\tहि\n")
    with pytest.raises(FormatError) as info:
        ingest_manifest(p)
    assert info.value.line == 2
    errors = []
    assert len(ingest_manifest(p, errors=errors)) == 1 and errors[0].line == 2
    p = _write(tmp_path / "d.tsv", "u1\ta\thi\tअ\nu1\tb\thi\tअ\n")
    with pytest.raises(DuplicateUttId):
        ingest_manifest(p, errors=[])
    with pytest.raises(FormatError):
        ingest_manifest(_write(tmp_path / "l.tsv", "u1\ta\txx\tअ\n"))
    with pytest.raises(FileNotFoundError):
        ingest_manifest(tmp_path / "missing.tsv")


def test_emit_examples(tmp_path):
    recs = [UtteranceRecord("utt1", "a.wav", LanguageId.HI, "कमल")]
    n, c, report = emit_dual_targets(recs, tmp_path / "n", tmp_path / "c")
    assert n.read_text(encoding="utf-8") == "utt1 कमल\n"
    assert c.read_text(encoding="utf-8") == "utt1 kamal\n"
    assert report.failures == []


def test_emit_code_switched(tmp_path):
    recs = [UtteranceRecord("u", "", LanguageId.HI, "कमल action")]
    _, c, report = emit_dual_targets(recs, tmp_path / "n", tmp_path / "c")
    assert c.read_text(encoding="utf-8") == f"u kamal {to_compact(cmu_to_cls(g2p('action')))}\n"
    assert report.latin_tokens == [("u", "action", True)]


def test_emit_empty(tmp_path):
    n, c, report = emit_dual_targets([], tmp_path / "n", tmp_path / "c")
    assert n.read_text() == "" and c.read_text() == ""
    assert report.failures == [] and report.latin_tokens == [] and report.written == 0


def test_emit_failures_are_excluded(tmp_path):
    recs = [UtteranceRecord("b", "", LanguageId.HI, "क१"),
            UtteranceRecord("a", "", LanguageId.HI, "अ"),
            UtteranceRecord("c", "", None, "अ")]
    n, c, report = emit_dual_targets(recs, tmp_path / "n", tmp_path / "c")
    assert read_dual_file(n) == {"a": "अ"} and read_dual_file(c) == {"a": "a"}
    assert [u for u, _ in report.failures] == ["b", "c"]
    assert not list(tmp_path.glob("*.tmp"))


def test_emit_fixture_manifest_aligned(tmp_path):
    recs = ingest_manifest(DATA / "dual_manifest.tsv")
    n, c, report = emit_dual_targets(recs, tmp_path / "n", tmp_path / "c")
    native = [l.split(" ", 1)[0] for l in n.read_text(encoding="utf-8").splitlines()]
    cls = [l.split(" ", 1)[0] for l in c.read_text(encoding="utf-8").splitlines()]
    assert native == cls == sorted(r.utt_id for r in recs)


@pytest.fixture(scope="module")
def backend():
    rng = random.Random(0)
    corpus = []
    for lang in ("hi", "ta"):
        for s in rng.sample(sentences(lang), 300):
            try:
                corpus.append((" ".join(to_cls_compact(w, lang) for w in s.split()), lang))
            except ValueError:
                pass
    lid = lid_train(corpus)
    models = {}
    for lang in ("hi", "ta"):
        words = sorted({w for s in sentences(lang)[:300] for w in s.split()})
        recs = []
        for w in words:
            try:
                recs.append(TranslitRecord(to_cls_compact(w, lang), w))
            except ValueError:
                pass
        models[lang] = translit_train(recs, lang)
    return lid, models


def test_recover_round_trip(backend):
    lid, models = backend
    hi = sentences("hi")[5]
    ta = sentences("ta")[7]
    hyps = [("u2", " ".join(to_cls_compact(w, "ta") for w in ta.split())),
            ("u1", " ".join(to_cls_compact(w, "hi") for w in hi.split()))]
    out = recover_native(hyps, lid, models)
    assert [(r.utt_id, r.language) for r in out] == [("u1", LanguageId.HI), ("u2", LanguageId.TA)]
    assert out[0].native_text == hi and out[1].native_text == ta
    assert abs(sum(out[0].posterior.values()) - 1) < 1e-9
    assert recover_native(list(reversed(hyps)), lid, models) == out


def test_recover_edge_cases(backend):
    lid, models = backend
    assert recover_native([], lid, models) == []
    hi = " ".join(to_cls_compact(w, "hi") for w in sentences("hi")[5].split())
    with pytest.raises(MissingTranslitModel):
        recover_native([("u", hi)], lid, {"ta": models["ta"]})
    out = recover_native([("u", hi + " k☃")], lid, models, placeholder="?")
    assert out[0].native_text.endswith(" ?") and out[0].errors


def test_read_dual_file_accepts_recover_output(tmp_path):
    p = tmp_path / "rec.tsv"
    p.write_text("u2\thi\tकमल नमः\nu1\t-\t�\n", encoding="utf-8")
    assert read_dual_file(p) == {"u1": "�", "u2": "कमल नमः"}
