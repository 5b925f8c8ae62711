"""
English words inside Indic sentences
====================================

Latin-script tokens go through the CMU pronouncing dictionary and a small
CMU-to-CLS bridge, so a mixed sentence comes out in one alphabet.
"""
from clskit import cmu_to_cls, g2p, g2p_is_lexical, parse_text, to_compact

for word in ["action", "download", "weblate"]:
    cmu = g2p(word)
    print(word, cmu, to_compact(cmu_to_cls(cmu)),
          "dictionary" if g2p_is_lexical(word) else "letter-to-sound rules")

sentence = "फ़ाइल download करें"
print(" ".join(to_compact(ph) for _, ph in parse_text(sentence, "hi")))
