"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (the lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py
"""
import functools
import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE_LINES, DATA, SCRIPT_OF, lexicon, sentences  # noqa: E402

from clskit.charmap import cmu_to_cls, default_inventory, from_compact, to_compact  # noqa: E402
from clskit.g2p_en import g2p, g2p_is_lexical  # noqa: E402
from clskit.lid import lid_predict, lid_train  # noqa: E402
from clskit.parser import apply_post_rules, parse_word, syllabify  # noqa: E402
from clskit.pipeline import emit_dual_targets, ingest_manifest, read_dual_file  # noqa: E402
from clskit.scoring import average_score, compute_cer, edit_ops  # noqa: E402
from clskit.script import ScriptId, detect_script, segment_aksharas  # noqa: E402
from clskit.subword import MARK, bpe_decode, bpe_encode, bpe_tokens, bpe_train  # noqa: E402
from clskit.translit import TranslitRecord, to_cls_compact, translit_train, transliterate_word  # noqa: E402

SEED = 0
TRANSLIT_LANGS = ("hi", "mr", "bn", "gu", "or", "ta", "te")
LID_LANGS = ("hi", "mr", "bn", "gu", "ta", "te")


def report(key, ok, detail):
    line = f"{key} {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES[key] = line
    print(line)
    return ok


# --- 1. transliteration ------------------------------------------------------

def _translit_eval(lang):
    start = time.perf_counter()
    words = sorted(set(lexicon(lang)))
    random.Random(SEED).shuffle(words)
    cut = int(len(words) * 0.9)
    train, test = words[:cut], words[cut:]
    model = translit_train([TranslitRecord(to_cls_compact(w, lang), w) for w in train], lang)

    def decode(w):
        return transliterate_word(model, to_cls_compact(w, lang))[0]

    edits = chars = hits = 0
    for w in test:
        got = decode(w)
        hits += got == w
        s, d, i = edit_ops(w, got)
        edits += s + d + i
        chars += len(w)
    train_hits = sum(decode(w) == w for w in train)
    return {"words": len(words), "test_acc": hits / len(test), "cer": edits / chars,
            "train_acc": train_hits / len(train), "seconds": time.perf_counter() - start}


@functools.lru_cache(maxsize=None)
def criterion_1():
    ok_all = True
    parts = []
    for lang in TRANSLIT_LANGS:
        r = _translit_eval(lang)
        ok = (r["words"] >= 2000 and r["test_acc"] >= 0.90 and r["cer"] <= 0.03
              and r["train_acc"] >= 0.98 and r["seconds"] < 120)
        ok_all &= ok
        parts.append(f"{lang}{'' if ok else '(!)'} held-out {r['test_acc']:.2%} "
                     f"cer {r['cer']:.2%} train {r['train_acc']:.2%} "
                     f"[{r['words']} words, {r['seconds']:.0f}s]")
    return report("C1", ok_all, "translit round trip (>=90% / CER<=3% / train>=98%); "
                  + "; ".join(parts))


# --- 2. language identification -----------------------------------------------

def _cls_sentences(lang):
    return [" ".join(to_cls_compact(w, lang) for w in s.split()) for s in sentences(lang)]


def _lid_split(langs):
    train, test = [], []
    for lang in langs:
        sents = _cls_sentences(lang)
        random.Random(SEED).shuffle(sents)
        cut = int(len(sents) * 0.8)
        train += [(s, lang) for s in sents[:cut]]
        test += [(s, lang) for s in sents[cut:]]
    return train, test


@functools.lru_cache(maxsize=None)
def criterion_2():
    start = time.perf_counter()
    counts = {l: len(sentences(l)) for l in LID_LANGS}
    train, test = _lid_split(LID_LANGS)
    model = lid_train(train)
    pred = [(lid_predict(model, s)[0].value, l) for s, l in test]
    seconds = time.perf_counter() - start
    acc = sum(p == l for p, l in pred) / len(pred)
    pair = [(p, l) for p, l in pred if l in ("hi", "mr")]
    pair_acc = sum(p == l for p, l in pair) / len(pair)
    ok = (min(counts.values()) >= 1000 and acc >= 0.97 and pair_acc >= 0.90 and seconds < 60)
    return report("C2", ok, f"LID over {', '.join(LID_LANGS)} "
                  f"(min {min(counts.values())} sentences/lang): held-out {acc:.2%}, "
                  f"hi/mr {pair_acc:.2%}, {seconds:.1f}s")


def odia_info():
    train, test = _lid_split(LID_LANGS + ("or",))
    model = lid_train(train)
    pred = [(lid_predict(model, s)[0].value, l) for s, l in test]
    acc = sum(p == l for p, l in pred) / len(pred)
    odia = [(p, l) for p, l in pred if l == "or"]
    line = (f"C2-info (not gated): with Odia added ({len(sentences('or'))} sentences) "
            f"overall {acc:.2%}, or {sum(p == l for p, l in odia) / len(odia):.2%}")
    ACCEPTANCE_LINES["C2-info"] = line
    print(line)


# --- 3. bijection ---------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def criterion_3():
    labels = default_inventory().labels
    failures = sum(from_compact(to_compact([l])) != [l] for l in labels)
    rng = random.Random(SEED)
    for _ in range(10_000):
        seq = [rng.choice(labels) for _ in range(rng.randint(0, 20))]
        failures += from_compact(to_compact(seq)) != seq
    return report("C3", failures == 0, f"compact bijection over {len(labels)} labels and "
                  f"10000 random sequences, {failures} failures")


# --- 4. parser invariants ---------------------------------------------------------

@functools.lru_cache(maxsize=None)
def criterion_4():
    failures, sizes = 0, []
    for lang in TRANSLIT_LANGS:
        words = lexicon(lang)
        sizes.append(len(words))
        script = ScriptId(SCRIPT_OF[lang])
        for w in words:
            failures += "".join(a.text for a in segment_aksharas(w, script)) != w
            phones = parse_word(w, lang)
            failures += apply_post_rules(phones, lang) != phones
            if any(default_inventory().is_vowel(p) for p in phones):
                failures += sum(syllabify(phones), []) != phones
    ok = failures == 0 and min(sizes) >= 500
    return report("C4", ok, f"akshara/syllable concatenation and post-rule idempotence on "
                  f"{sum(sizes)} words (min {min(sizes)}/lang), {failures} failures")


# --- 5. WER oracle and Table 5 --------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _dist(ref, hyp):
    if not ref or not hyp:
        return len(ref) + len(hyp)
    return min(_dist(ref[:-1], hyp) + 1, _dist(ref, hyp[:-1]) + 1,
               _dist(ref[:-1], hyp[:-1]) + (ref[-1] != hyp[-1]))


ROW_L = {"hi": 17.8, "mr": 111.7, "or": 32.1, "ta": 27.1, "te": 28.1, "gu": 29.8}


@functools.lru_cache(maxsize=None)
def criterion_5():
    seqs = [s for n in range(7) for s in itertools.product("xyz", repeat=n)]
    mismatches = sum(sum(edit_ops(r, h)) != _dist(r, h) for r in seqs if r for h in seqs)
    avg1 = average_score(ROW_L)
    avg2 = average_score(ROW_L, exclude=["mr"])
    ok_avg1 = f"{avg1:.1f}" == "41.1"
    ok_avg2 = f"{avg2:.1f}" == "27.1"
    ok = mismatches == 0 and ok_avg1 and ok_avg2
    return report("C5", ok, f"WER vs brute force on {len(seqs) - 1}x{len(seqs)} pairs, "
                  f"{mismatches} mismatches; row L Avg-1 {avg1:.3f} (printed 41.1, "
                  f"{'ok' if ok_avg1 else 'differs'}), Avg-2 {avg2:.3f} (printed 27.1, "
                  f"{'ok' if ok_avg2 else 'differs'})")


# --- 6. BPE ---------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def criterion_6():
    rng = random.Random(SEED)
    alphabet = "kamlAiuTDnr" + MARK + "\t"
    corpus = ["".join(rng.choice(alphabet + " ") for _ in range(40)) for _ in range(300)]
    model = bpe_train(corpus, 300)
    failures = 0
    for _ in range(10_000):
        text = "".join(rng.choice(alphabet + " ") for _ in range(rng.randint(0, 30)))
        failures += bpe_decode(model, bpe_encode(model, text)) != text
    first = bpe_train(["aaab", "aaab"], 100).merges[0]
    cu = bpe_train(["a", "b", "c"], 100)
    cu_ok = not cu.merges and bpe_tokens(cu, "ab c") == ["a", "b" + MARK, "c" + MARK]
    ok = failures == 0 and first == ("a", "a") and cu_ok
    return report("C6", ok, f"10000 random round trips, {failures} failures; first merge "
                  f"{first}; zero-merge model {'is' if cu_ok else 'is not'} character units")


# --- 7. dual-target emission --------------------------------------------------------

@functools.lru_cache(maxsize=None)
def criterion_7(tmp_dir=None):
    import tempfile
    out = Path(tmp_dir or tempfile.mkdtemp())
    records = ingest_manifest(DATA / "dual_manifest.tsv")
    native, cls, rep = emit_dual_targets(records, out / "native.txt", out / "cls.txt")
    n_ids = [l.split(" ", 1)[0] for l in native.read_text(encoding="utf-8").splitlines()]
    c_ids = [l.split(" ", 1)[0] for l in cls.read_text(encoding="utf-8").splitlines()]
    mismatches = sum(a != b for a, b in zip(n_ids, c_ids)) + abs(len(n_ids) - len(c_ids))
    cls_map = read_dual_file(cls)
    by_id = {r.utt_id: r for r in records}
    latin, bridged = [], 0
    for utt in n_ids:
        words = by_id[utt].native_text.split()
        cls_words = cls_map[utt].split()
        for w, c in zip(words, cls_words):
            if detect_script(w) is ScriptId.LATIN:
                latin.append((utt, w))
                bridged += c == to_compact(cmu_to_cls(g2p(w)))
    audited = [(u, t) for u, t, _ in rep.latin_tokens]
    audit_ok = audited == latin and all(flag == g2p_is_lexical(t) for _, t, flag in rep.latin_tokens)
    lexical = sum(flag for _, _, flag in rep.latin_tokens)
    ok = (len(records) == 100 and mismatches == 0 and not rep.failures
          and bridged == len(latin) and audit_ok)
    return report("C7", ok, f"{len(n_ids)} utterances, {mismatches} alignment mismatches, "
                  f"{bridged}/{len(latin)} Latin tokens via the CMU bridge "
                  f"({lexical} from the dictionary, {len(latin) - lexical} from rules), "
                  f"audit {'complete' if audit_ok else 'incomplete'}")


# --- 8. exclusion -------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def criterion_8():
    readme = (Path(__file__).resolve().parent.parent / "README.md").read_text(encoding="utf-8")
    ok = "## Not reproduced" in readme
    return report("C8", ok, "ASR WER tables beyond the average fixtures are out of scope "
                  "(neural acoustic models); documented under 'Not reproduced' in the README")


# --- pytest --------------------------------------------------------------------------

def test_c1_transliteration():
    assert criterion_1()


def test_c2_language_identification():
    odia_info()
    assert criterion_2()


def test_c3_bijection():
    assert criterion_3()


def test_c4_parser_invariants():
    assert criterion_4()


@pytest.mark.xfail(strict=True, reason="row L's printed Avg-2 (27.1) is not the mean of its "
                                       "printed cells (26.98); the oracle half passes")
def test_c5_wer():
    assert criterion_5()


def test_c5_oracle_half():
    criterion_5()
    assert "0 mismatches" in ACCEPTANCE_LINES["C5"] and "Avg-1 41.100" in ACCEPTANCE_LINES["C5"]


def test_c6_bpe():
    assert criterion_6()


def test_c7_dual_targets(tmp_path):
    assert criterion_7(str(tmp_path))


def test_c8_exclusion():
    assert criterion_8()


if __name__ == "__main__":
    results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
               criterion_6(), criterion_7(), criterion_8()]
    odia_info()
    sys.exit(0 if all(results) else 1)
