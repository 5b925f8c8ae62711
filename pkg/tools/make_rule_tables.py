"""Regenerate the per-language rule tables in src/clskit/data/rules/.

The Brahmic blocks share one layout (KA is always block start + 0x15, and so
on), so the tables are written from a single offset map plus per-script
overrides. The generated TSV files are the source of truth at runtime; this
script only exists to keep them consistent. Run from the repository root:

    python tools/make_rule_tables.py
"""
import unicodedata
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "clskit" / "data" / "rules"

BLOCKS = {
    "Devanagari": 0x0900,
    "Bengali": 0x0980,
    "Gujarati": 0x0A80,
    "Odia": 0x0B00,
    "Tamil": 0x0B80,
    "Telugu": 0x0C00,
}

# offset -> (labels, flag)
COMMON = {
    0x01: ("mq", "A"), 0x02: ("mq", "A"), 0x03: ("hq", "S"),
    0x05: ("a", "V"), 0x06: ("aa", "V"), 0x07: ("i", "V"), 0x08: ("ii", "V"),
    0x09: ("u", "V"), 0x0A: ("uu", "V"), 0x0B: ("rq", "V"),
    0x0D: ("ae", "V"), 0x0E: ("e", "V"), 0x0F: ("ee", "V"), 0x10: ("ai", "V"),
    0x11: ("aw", "V"), 0x12: ("o", "V"), 0x13: ("oo", "V"), 0x14: ("au", "V"),
    0x15: ("k", "C"), 0x16: ("kh", "C"), 0x17: ("g", "C"), 0x18: ("gh", "C"),
    0x19: ("ng", "C"), 0x1A: ("c", "C"), 0x1B: ("ch", "C"), 0x1C: ("j", "C"),
    0x1D: ("jh", "C"), 0x1E: ("nj", "C"), 0x1F: ("tx", "C"), 0x20: ("txh", "C"),
    0x21: ("dx", "C"), 0x22: ("dxh", "C"), 0x23: ("nx", "C"), 0x24: ("t", "C"),
    0x25: ("th", "C"), 0x26: ("d", "C"), 0x27: ("dh", "C"), 0x28: ("n", "C"),
    0x29: ("nr", "C"), 0x2A: ("p", "C"), 0x2B: ("ph", "C"), 0x2C: ("b", "C"),
    0x2D: ("bh", "C"), 0x2E: ("m", "C"), 0x2F: ("y", "C"), 0x30: ("r", "C"),
    0x31: ("rx", "C"), 0x32: ("l", "C"), 0x33: ("lx", "C"), 0x34: ("zh", "C"),
    0x35: ("w", "C"), 0x36: ("sh", "C"), 0x37: ("sx", "C"), 0x38: ("s", "C"),
    0x39: ("h", "C"),
    0x3C: ("-", "N"), 0x3D: ("-", "Z"),
    0x3E: ("aa", "M"), 0x3F: ("i", "M"), 0x40: ("ii", "M"), 0x41: ("u", "M"),
    0x42: ("uu", "M"), 0x43: ("rq", "M"), 0x44: ("rq", "M"), 0x45: ("ae", "M"),
    0x46: ("e", "M"), 0x47: ("ee", "M"), 0x48: ("ai", "M"), 0x49: ("aw", "M"),
    0x4A: ("o", "M"), 0x4B: ("oo", "M"), 0x4C: ("au", "M"), 0x4D: ("-", "H"),
    0x50: ("oo m", "V"),
    0x60: ("rq", "V"),
}

NUKTA_FORMS = {
    # base offset -> label for base + nukta
    0x15: "q", 0x16: "x", 0x17: "gq", 0x1C: "z", 0x21: "dxq", 0x22: "dxhq",
    0x2B: "f", 0x2F: "y", 0x28: "nr", 0x30: "rx", 0x33: "zh",
}

OVERRIDES = {
    "Devanagari": {
        0x51: ("-", "Z"), 0x52: ("-", "Z"), 0x53: ("-", "Z"), 0x54: ("-", "Z"),
        0x58: ("q", "C"), 0x59: ("x", "C"), 0x5A: ("gq", "C"), 0x5B: ("z", "C"),
        0x5C: ("dxq", "C"), 0x5D: ("dxhq", "C"), 0x5E: ("f", "C"), 0x5F: ("y", "C"),
        0x72: ("ae", "V"),
    },
    "Bengali": {
        0x0F: ("ee", "V"), 0x47: ("ee", "M"),
        0x4E: ("t", "D"),
        0x5C: ("dxq", "C"), 0x5D: ("dxhq", "C"), 0x5F: ("y", "C"),
        0x70: ("r", "C"), 0x71: ("w", "C"),
    },
    "Gujarati": {},
    "Odia": {
        0x5C: ("dxq", "C"), 0x5D: ("dxhq", "C"), 0x5F: ("y", "C"),
        0x71: ("w", "C"),
    },
    "Tamil": {},
    "Telugu": {0x58: ("-", "X"), 0x59: ("-", "X"), 0x5A: ("-", "X")},
}

NUKTA_BASES = {
    "Devanagari": [0x15, 0x16, 0x17, 0x1C, 0x21, 0x22, 0x2B, 0x2F, 0x28, 0x30, 0x33],
    "Bengali": [0x21, 0x22, 0x2F],
    "Gujarati": [0x15, 0x16, 0x17, 0x1C, 0x21, 0x22, 0x2B],
    "Odia": [0x21, 0x22],
    "Tamil": [],
    "Telugu": [0x15, 0x16, 0x17, 0x1C, 0x2B],
}

LANGUAGES = {
    # lang: (script, [(rule, params), ...])
    "hi": ("Devanagari", [
        ("AnusvaraAssimilation", ""), ("VisargaExpansion", "echo=1"),
        ("GeminateCorrection", ""), ("SchwaDeletion", "final=1\tmedial=1")]),
    "mr": ("Devanagari", [
        ("AnusvaraAssimilation", ""), ("VisargaExpansion", "echo=1"),
        ("GeminateCorrection", ""), ("SchwaDeletion", "final=1\tmedial=1")]),
    "gu": ("Gujarati", [
        ("AnusvaraAssimilation", ""), ("VisargaExpansion", "echo=1"),
        ("GeminateCorrection", ""), ("SchwaDeletion", "final=1\tmedial=1")]),
    "bn": ("Bengali", [
        ("AnusvaraAssimilation", ""), ("VisargaExpansion", "echo=1"),
        ("GeminateCorrection", "")]),
    "or": ("Odia", [
        ("AnusvaraAssimilation", ""), ("VisargaExpansion", "echo=1"),
        ("GeminateCorrection", "")]),
    "ta": ("Tamil", [("AnusvaraAssimilation", ""), ("GeminateCorrection", "")]),
    "te": ("Telugu", [
        ("NuktaSubstitution", "map=q:k,x:kh,gq:g,z:j,f:ph"),
        ("AnusvaraAssimilation", ""), ("VisargaExpansion", "echo=1"),
        ("GeminateCorrection", "")]),
}

# Codepoint categories that are never "letters" for table purposes.
NEUTRAL = {"Nd", "No", "Po", "So", "Sc", "Zs"}
# Neutral codepoints the current Unicode database may not yet know about.
KNOWN_NEUTRAL = {0x0964, 0x0965}


def _assigned(cp):
    return unicodedata.category(chr(cp)) != "Cn"


def rows_for(script):
    base = BLOCKS[script]
    table = {}
    for off, val in COMMON.items():
        cp = base + off
        if _assigned(cp) or script == "Telugu" and off == 0x3C:
            table[cp] = val
    for off, val in OVERRIDES[script].items():
        table[base + off] = val
    rows = []
    for cp in range(base, base + 0x80):
        if cp in KNOWN_NEUTRAL:
            continue
        cat = unicodedata.category(chr(cp))
        if cp in table:
            labels, flag = table[cp]
            rows.append((f"{cp:04X}", labels, flag))
        elif cat in NEUTRAL:
            continue
        else:
            # letters and marks without a mapping, plus unassigned slots, so
            # that a newer Unicode database cannot introduce a silent gap
            rows.append((f"{cp:04X}", "-", "X"))
    nukta = base + 0x3C
    for off in NUKTA_BASES[script]:
        rows.append((f"{base + off:04X}+{nukta:04X}", NUKTA_FORMS[off], "C"))
    return rows


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for lang, (script, rules) in LANGUAGES.items():
        lines = ["# clskit-ruletable\t1", f"language\t{lang}", f"script\t{script}",
                 "inherent_vowel\ta"]
        for name, params in rules:
            lines.append(f"rule\t{name}" + (f"\t{params}" if params else ""))
        lines.append("%%")
        lines.append("# codepoint\tcls\tflag")
        lines.extend("\t".join(r) for r in rows_for(script))
        (OUT / f"{lang}.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
