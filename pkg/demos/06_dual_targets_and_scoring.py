"""
Training targets in two scripts, and scoring
============================================

A manifest of native transcripts becomes two aligned target files, one in
native script and one in CLS. Afterwards, recovered text is scored by WER.
"""
import tempfile
from pathlib import Path

from clskit import average_score, compute_wer, emit_dual_targets, ingest_manifest

manifest = Path(__file__).resolve().parent.parent / "tests" / "data" / "dual_manifest.tsv"
records = ingest_manifest(manifest)
out = Path(tempfile.mkdtemp())
native, cls, report = emit_dual_targets(records, out / "text.native", out / "text.cls")

print(native.read_text(encoding="utf-8").splitlines()[0])
print(cls.read_text(encoding="utf-8").splitlines()[0])
print(report.written, "utterances;", len(report.latin_tokens), "English tokens,",
      len(report.non_lexical), "outside the dictionary")

r = compute_wer("यह एक परीक्षा है".split(), "यह परीक्षा हैं".split())
print(f"S={r.substitutions} D={r.deletions} I={r.insertions} WER={r.wer:.2f}")

# averaging per-language WERs, with and without one language
wers = {"hi": 17.8, "mr": 111.7, "or": 32.1, "ta": 27.1, "te": 28.1, "gu": 29.8}
print(round(average_score(wers), 2), round(average_score(wers, exclude=["mr"]), 2))
