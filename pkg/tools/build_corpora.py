"""Rebuild the word lists and phrase lists under tests/data/.

Sources are open data that ship inside Python packages:

* Unicode CLDR display names, as bundled by ``babel``;
* iso-codes translations of ISO 639/3166/4217/15924 names, as bundled by
  ``pycountry``;
* user-interface translation catalogs of several open-source applications
  (see ``UI_WHEELS``). These supply real sentences; the locale names above
  are mostly proper nouns and only feed the word lists.

None of this is a runtime dependency of clskit. To regenerate the fixtures:

    pip install babel pycountry
    pip download --no-deps -d /tmp/ui-wheels <each entry of UI_WHEELS>
    python tools/build_corpora.py /tmp/ui-wheels
"""
import gettext
import json
import os
import re
import sys
import zipfile
from pathlib import Path

import babel  # noqa: F401  (imported for its locale data)
import pycountry
from babel.localedata import load

from clskit.errors import ClsKitError
from clskit.parser import parse_word
from clskit.script import normalize_text

OUT = Path(__file__).resolve().parents[1] / "tests" / "data"

RANGES = {
    "hi": (0x0900, 0x097F), "mr": (0x0900, 0x097F), "bn": (0x0980, 0x09FF),
    "gu": (0x0A80, 0x0AFF), "or": (0x0B00, 0x0B7F), "ta": (0x0B80, 0x0BFF),
    "te": (0x0C00, 0x0C7F),
}
NOT_WORD = re.compile(r"[^\w\sऀ-ൿ]")

UI_WHEELS = [
    "django==5.2.18", "sphinx==8.1.3", "weblate==5.7.2", "kolibri==0.19.5",
    "plone.app.locales==7.0.4", "anki==26.9.3",
]
UI_LOCALES = {
    "hi": ("hi", "hi_IN"), "mr": ("mr", "mr_IN"), "bn": ("bn", "bn_BD", "bn_IN"),
    "gu": ("gu", "gu_IN"), "or": ("or", "or_IN"), "ta": ("ta", "ta_IN"),
    "te": ("te", "te_IN"),
}
LOCALE_DIR = re.compile(r"/locales?/([A-Za-z_]+)/LC_MESSAGES/")
PO_MSGSTR = re.compile(r'^msgstr(?:\[\d\])? "(.*)"$', re.M)
# anki compiles its translations into the native extension as plain UTF-8
ODIA_RUN = re.compile(r"[଀-୿{][଀-୿ \-,.?!।:;'\"{}$a-zA-Z0-9()\[\]*]*")
# segments end at sentence punctuation and at anything that is not Indic text
SEGMENT_BREAK = re.compile(r"[.?!।|\n\\/=*%#&+_…0-9a-zA-Z{}\[\]<>$]+")
PLACEHOLDER = re.compile(r"\{[^{}]*\}|%\(\w+\)[sd]|%[sd]|\$\w+|\*?\[\w+\]")
SOFT_PUNCT = re.compile(r"[:;,()\"“”'‘’-]+")


def _walk(obj, out):
    if isinstance(obj, str):
        out.append(obj)
    elif isinstance(obj, dict):
        for v in obj.values():
            _walk(v, out)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _walk(v, out)
    else:
        try:
            items = dict(obj)
        except (TypeError, ValueError):
            return
        for v in items.values():
            _walk(v, out)


def locale_strings(lang):
    out = []
    _walk(load(lang), out)
    mo_dir = Path(pycountry.__file__).parent / "locales" / lang / "LC_MESSAGES"
    if mo_dir.is_dir():
        for mo in sorted(os.listdir(mo_dir)):
            with open(mo_dir / mo, "rb") as fh:
                catalog = gettext.GNUTranslations(fh)._catalog
            out.extend(v for k, v in catalog.items() if k and isinstance(v, str))
    return out


def ui_strings(wheel_dir):
    out = {lang: [] for lang in RANGES}
    for wheel in sorted(Path(wheel_dir).glob("*.whl")):
        with zipfile.ZipFile(wheel) as zf:
            for name in zf.namelist():
                if name.endswith("_rsbridge.so"):
                    blob = zf.read(name).decode("utf-8", "replace")
                    out["or"].extend(ODIA_RUN.findall(blob))
                    continue
                m = LOCALE_DIR.search(name)
                if not m:
                    continue
                langs = [l for l, locs in UI_LOCALES.items() if m.group(1) in locs]
                if not langs:
                    continue
                text = zf.read(name).decode("utf-8", "ignore")
                if name.endswith(".po"):
                    found = PO_MSGSTR.findall(text)
                elif name.endswith(".json"):
                    try:
                        found = [v for v in json.loads(text).values() if isinstance(v, str)]
                    except ValueError:
                        continue
                else:
                    continue
                for lang in langs:
                    out[lang].extend(found)
    return out


def in_block(words, lang):
    lo, hi = RANGES[lang]
    return bool(words) and all(all(lo <= ord(c) <= hi for c in w) for w in words)


def phrases(lang):
    found = set()
    for s in locale_strings(lang):
        s = normalize_text(NOT_WORD.sub(" ", s))
        if in_block(s.split(), lang):
            found.add(s)
    return found


def ui_sentences(strings, lang):
    found = set()
    for s in strings:
        s = PLACEHOLDER.sub(" ", PLACEHOLDER.sub(" ", s))
        for seg in SEGMENT_BREAK.split(s):
            seg = normalize_text(SOFT_PUNCT.sub(" ", seg))
            if in_block(seg.split(), lang):
                found.add(seg)
    return found


def parses(word, lang):
    try:
        return bool(parse_word(word, lang))
    except (ClsKitError, ValueError, KeyError):
        return False


def keep(found, lang, shared):
    good = sorted(s for s in found if all(parses(w, lang) for w in s.split()))
    if lang in ("hi", "mr"):
        # the two share a script; a phrase present in both cannot be labelled
        good = [s for s in good if s not in shared]
    return good


def main(wheel_dir):
    (OUT / "lexica").mkdir(parents=True, exist_ok=True)
    (OUT / "sentences").mkdir(parents=True, exist_ok=True)
    ui = ui_strings(wheel_dir)
    names = {lang: phrases(lang) for lang in RANGES}
    sents = {lang: ui_sentences(ui[lang], lang) for lang in RANGES}
    shared_names = names["hi"] & names["mr"]
    shared_sents = sents["hi"] & sents["mr"]
    for lang in RANGES:
        good_names = keep(names[lang], lang, shared_names)
        good_sents = keep(sents[lang], lang, shared_sents)
        words = sorted({w for s in good_names + good_sents for w in s.split()})
        # a one-word UI label is not a sentence
        # locale names are shared proper nouns, so only UI text counts as sentences
        multi = [s for s in good_sents if len(s.split()) >= 2]
        (OUT / "lexica" / f"{lang}.txt").write_text("\n".join(words) + "\n", encoding="utf-8")
        (OUT / "sentences" / f"{lang}.txt").write_text("\n".join(multi) + "\n", encoding="utf-8")
        print(f"{lang}: {len(multi)} sentences, {len(words)} words")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    main(sys.argv[1])
