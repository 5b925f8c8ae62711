"""
Which language is this CLS sentence?
====================================

Once everything is in CLS the script no longer gives the language away, so
the classifier works from character and word n-grams.
"""
import random
from pathlib import Path

from clskit import lid_predict, lid_train
from clskit.translit import to_cls_compact

DATA = Path(__file__).resolve().parent.parent / "tests" / "data" / "sentences"

corpus = []
for lang in ["hi", "mr", "ta"]:
    for line in DATA.joinpath(f"{lang}.txt").read_text(encoding="utf-8").splitlines():
        corpus.append((" ".join(to_cls_compact(w, lang) for w in line.split()), lang))
random.Random(0).shuffle(corpus)
train, test = corpus[:-300], corpus[-300:]

model = lid_train(train)
print(len(model.feature_vocab), "features")

hits = sum(lid_predict(model, text)[0].value == lang for text, lang in test)
print(f"held-out accuracy {hits / len(test):.1%}")

# posteriors line up with model.languages
text, lang = test[0]
guess, post = lid_predict(model, text)
print(text, "->", guess.value, dict(zip([l.value for l in model.languages], post.round(3))))
