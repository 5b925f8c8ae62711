"""
Byte-pair subword units and character units
===========================================

A BPE model with no merges is the character-unit tokenizer.
"""
from pathlib import Path

from clskit import bpe_decode, bpe_encode, bpe_train
from clskit.subword import bpe_tokens
from clskit.translit import to_cls_compact

lines = Path(__file__).resolve().parent.parent.joinpath(
    "tests", "data", "sentences", "hi.txt").read_text(encoding="utf-8").splitlines()
cls_lines = [" ".join(to_cls_compact(w, "hi") for w in l.split()) for l in lines]

bpu = bpe_train(cls_lines, 800)
print(len(bpu.merges), "merges, first few:", bpu.merges[:5])

text = cls_lines[0]
print(text)
print(bpe_tokens(bpu, text))
assert bpe_decode(bpu, bpe_encode(bpu, text)) == text

# the character-unit view of the same text
cu = bpe_train(["".join(sorted(set("".join(cls_lines))))], 1000)
print(len(cu.merges), "merges;", bpe_tokens(cu, text)[:12])
