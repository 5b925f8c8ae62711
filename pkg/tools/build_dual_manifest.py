"""Build tests/data/dual_manifest.tsv: 100 Hindi, Tamil and code-switched rows.

Monolingual rows are drawn from the UI-sentence fixtures. Code-switched rows
swap one word of a sentence for an English word, the way loanwords show up
in Hindi-English and Tamil-English speech. The English list mixes dictionary
words with a few the pronouncing dictionary lacks, so the audit has both kinds.

    python3 tools/build_dual_manifest.py
"""
import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
ENGLISH = ["download", "file", "password", "settings", "online", "email", "video",
           "update", "account", "phone", "action", "server", "channel", "login",
           "kolibri", "weblate", "anki", "wifi"]


def sentences(lang):
    lines = (DATA / "sentences" / f"{lang}.txt").read_text(encoding="utf-8").splitlines()
    return [l for l in lines if 3 <= len(l.split()) <= 10]


def main():
    rng = random.Random(7)
    rows = []
    for lang, n_mono, n_mixed in (("hi", 40, 10), ("ta", 40, 10)):
        pool = rng.sample(sentences(lang), n_mono + n_mixed)
        for i, s in enumerate(pool[:n_mono]):
            rows.append((f"{lang}_{i:03d}", lang, s))
        for i, s in enumerate(pool[n_mono:]):
            words = s.split()
            words[rng.randrange(len(words))] = rng.choice(ENGLISH)
            rows.append((f"{lang}en_{i:03d}", lang, " ".join(words)))
    rng.shuffle(rows)
    out = DATA / "dual_manifest.tsv"
    with open(out, "w", encoding="utf-8") as fh:
        for utt, lang, text in rows:
            fh.write(f"{utt}\taudio/{utt}.wav\t{lang}\t{text}\n")
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
