"""
Native script to CLS labels
===========================

Words from seven Indic scripts land on one shared phone inventory.
"""
from clskit import parse_text, parse_word, segment_aksharas, syllabify, to_compact

# a Hindi word splits into orthographic syllables first
print([a.text for a in segment_aksharas("क्या", "Devanagari")])

# then each syllable maps to CLS labels; Hindi drops the final inherent vowel
phones = parse_word("कमल", "hi")
print(phones, "->", to_compact(phones))

# the same name written in four scripts gives one label sequence
for word, lang in [("माता", "hi"), ("মাতা", "bn"), ("ମାତା", "or"), ("మాతా", "te")]:
    print(lang, word, to_compact(parse_word(word, lang)))

# Devanagari text is Hindi unless Marathi is asked for
print(to_compact(parse_word("परवानगी", "mr")))

# syllables are onset-maximal
print(syllabify(parse_word("कमला", "hi")))

# whole sentences, punctuation stripped at word edges
for word, ph in parse_text("नमः, दुनिया।", "hi"):
    print(word, " ".join(ph))
