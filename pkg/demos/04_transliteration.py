"""
Back from CLS to native script
==============================

CLS drops spelling detail (an inherent vowel that was deleted, a virama, an
anusvara versus a nasal letter). The transliterator lists spellings that
parse back to the input and lets a character n-gram model choose.
"""
from pathlib import Path

from clskit import translit_train, transliterate_text, transliterate_word
from clskit.translit import TranslitRecord, to_cls_compact

words = Path(__file__).resolve().parent.parent.joinpath(
    "tests", "data", "lexica", "hi.txt").read_text(encoding="utf-8").split()

# training pairs come from the forward parser
model = translit_train([TranslitRecord(to_cls_compact(w, "hi"), w) for w in words], "hi")

best, score, nbest = transliterate_word(model, "kamal")
print(best, round(score, 2))
for cand, s in nbest[:5]:
    print("  ", cand, round(s, 2))

cls = " ".join(to_cls_compact(w, "hi") for w in "नमस्ते दुनिया".split())
print(cls, "->", transliterate_text(model, cls))

# a word with an unknown compact character becomes a placeholder
errors = []
print(transliterate_text(model, "kamal k☃", errors=errors), errors)

model.save("/tmp/hi_translit.json")
