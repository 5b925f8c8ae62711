"""Command-line interface: ``clskit <subcommand> ...``.

Text commands read their input from positional arguments, or one item per
line from ``--input`` (default stdin). Exit status is 0 on success, 1 on a
data error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import g2p_en
from .charmap import cmu_to_cls, to_compact
from .errors import ClsKitError
from .lid import FeatureConfig, LidModel, lid_predict, lid_train, read_lid_corpus
from .parser import LanguageId, parse_text
from .pipeline import emit_dual_targets, ingest_manifest, read_dual_file, recover_native
from .scoring import average_score, score_corpus
from .subword import (DEFAULT_VOCAB, BpeModel, bpe_decode_checked, bpe_encode, bpe_tokens,
                      bpe_train)
from .translit import (DEFAULT_BEAM, DEFAULT_ORDER, TranslitModel, TranslitRecord,
                       read_parallel, to_cls_compact, translit_train, transliterate_word)

EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- helpers ---------------------------------------------------------------

def _items(args):
    if args.text:
        return list(args.text)
    if args.input in (None, "-"):
        lines = sys.stdin.read().splitlines()
    else:
        with open(args.input, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    return [line for line in lines if line.strip()]


def _lang(args):
    return LanguageId(args.lang) if args.lang else None


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return value


class _Out:
    """Collects rows and prints them as TSV lines or one JSON document."""

    def __init__(self, args):
        self.fmt = args.format
        self.rows = []
        self.failures = []

    def row(self, tsv, obj):
        if self.fmt == "json":
            self.rows.append(obj)
        else:
            print(tsv)

    def fail(self, args, item, exc):
        if args.strict:
            raise exc
        self.failures.append({"input": item, "error": str(exc)})
        print(f"error: {item!r}: {exc}", file=sys.stderr)

    def close(self, extra=None):
        if self.fmt == "json":
            doc = {"results": self.rows, "failures": self.failures}
            doc.update(extra or {})
            print(json.dumps(doc, ensure_ascii=False, indent=1))
        return EXIT_DATA if self.failures else EXIT_OK


def _per_item(args, fn):
    out = _Out(args)
    for item in _items(args):
        try:
            tsv, obj = fn(item)
        except ClsKitError as exc:
            out.fail(args, item, exc)
            continue
        out.row(tsv, obj)
    return out.close()


# --- subcommands -----------------------------------------------------------

def cmd_parse(args):
    lang = _lang(args)

    def one(line):
        words = parse_text(line, lang, rules_dir=args.rules_dir)
        tsv = "\n".join(f"{w}\t{' '.join(p)}" for w, p in words)
        return tsv, {"text": line, "words": [{"word": w, "phones": p} for w, p in words]}
    return _per_item(args, one)


def cmd_compact(args):
    lang = _lang(args)

    def one(line):
        cls = " ".join(to_compact(p) for _, p in parse_text(line, lang, rules_dir=args.rules_dir))
        return cls, {"text": line, "cls": cls}
    return _per_item(args, one)


def cmd_g2p(args):
    def one(word):
        cmu = g2p_en.g2p(word)
        cls = cmu_to_cls(cmu)
        lexical = g2p_en.g2p_is_lexical(word)
        return (f"{word}\t{' '.join(cmu)}\t{to_compact(cls)}",
                {"word": word, "cmu": cmu, "cls": cls, "compact": to_compact(cls),
                 "lexical": lexical})
    return _per_item(args, one)


def cmd_lid_train(args):
    model_path = _need(args, "model")
    corpus = read_lid_corpus(args.corpus)
    config = FeatureConfig(char_ngram_range=(args.char_min, args.char_max),
                           word_ngram_range=(args.word_min, args.word_max),
                           sublinear_tf=args.sublinear_tf,
                           vocabulary_cap=args.vocab_cap)
    model = lid_train(corpus, config, args.alpha)
    model.save(model_path)
    print(f"trained LID on {len(corpus)} sentences, {len(model.languages)} languages, "
          f"{len(model.feature_vocab)} features -> {model_path}", file=sys.stderr)
    return EXIT_OK


def cmd_lid_predict(args):
    model = LidModel.load(_need(args, "model"))

    def one(line):
        lang, post = lid_predict(model, line)
        posterior = {str(l): float(p) for l, p in zip(model.languages, post)}
        return f"{lang.value}\t{line}", {"text": line, "language": lang.value,
                                         "posterior": posterior}
    return _per_item(args, one)


def _translit_records(args, lang):
    if not args.from_native:
        return read_parallel(args.corpus)
    records = []
    with open(args.corpus, encoding="utf-8") as fh:
        for line in fh:
            for word in line.split():
                try:
                    records.append(TranslitRecord(to_cls_compact(word, lang), word))
                except ClsKitError as exc:
                    if args.strict:
                        raise
                    print(f"skipping {word!r}: {exc}", file=sys.stderr)
    return records


def cmd_translit_train(args):
    model_path = _need(args, "model")
    lang = LanguageId(_need(args, "lang"))
    records = _translit_records(args, lang)
    model = translit_train(records, lang, args.order, args.beam)
    model.save(model_path)
    print(f"trained {lang.value} transliterator on {len(records)} words -> {model_path}",
          file=sys.stderr)
    return EXIT_OK


def cmd_translit(args):
    model = TranslitModel.load(_need(args, "model"))

    def one(line):
        words = []
        for w in line.split():
            native, score, nbest = transliterate_word(model, w, args.beam)
            words.append({"cls": w, "native": native, "score": score,
                          "nbest": [[n, s] for n, s in nbest[:args.nbest]]})
        text = " ".join(w["native"] for w in words)
        return f"{line}\t{text}", {"cls": line, "native": text, "words": words}
    return _per_item(args, one)


def cmd_bpe_train(args):
    model_path = _need(args, "model")
    with open(args.corpus, encoding="utf-8") as fh:
        lines = [l.rstrip("\n") for l in fh]
    model = bpe_train(lines, args.vocab_size)
    model.save(model_path)
    print(f"learned {len(model.merges)} merges, {len(model.vocab)} tokens -> {model_path}",
          file=sys.stderr)
    return EXIT_OK


def cmd_bpe_encode(args):
    model = BpeModel.load(_need(args, "model"))

    def one(line):
        ids = bpe_encode(model, line)
        toks = bpe_tokens(model, line)
        shown = toks if args.tokens else [str(i) for i in ids]
        return " ".join(shown), {"text": line, "ids": ids, "tokens": toks}
    return _per_item(args, one)


def cmd_bpe_decode(args):
    model = BpeModel.load(_need(args, "model"))

    def one(line):
        try:
            ids = [int(t) for t in line.split()]
        except ValueError:
            raise UsageError(f"token ids must be integers: {line!r}") from None
        text, lossy = bpe_decode_checked(model, ids)
        return text, {"ids": ids, "text": text, "lossy": lossy}
    return _per_item(args, one)


def cmd_emit_dual(args):
    errors = None if args.strict else []
    records = ingest_manifest(args.manifest, args.manifest_format, errors)
    if args.lang:
        for r in records:
            if r.language is None:
                r.language = LanguageId(args.lang)
    native, cls, report = emit_dual_targets(records, args.native_out, args.cls_out,
                                            args.rules_dir)
    if args.strict and report.failures:
        for utt, msg in report.failures:
            print(f"error: {utt}: {msg}", file=sys.stderr)
        return EXIT_DATA
    doc = report.to_dict()
    doc["manifest_errors"] = [str(e) for e in errors or ()]
    if args.format == "json":
        print(json.dumps(doc, ensure_ascii=False, indent=1))
    else:
        print(f"written\t{report.written}")
        for utt, msg in report.failures:
            print(f"failed\t{utt}\t{msg}")
        for e in doc["manifest_errors"]:
            print(f"manifest_error\t{e}")
        for utt, tok, lexical in report.latin_tokens:
            print(f"latin\t{utt}\t{tok}\t{'lexicon' if lexical else 'rules'}")
    return EXIT_OK


def _parse_model_map(specs):
    out = {}
    for spec in specs or ():
        lang, sep, path = spec.partition("=")
        if not sep:
            raise UsageError(f"--translit-model expects LANG=PATH, got {spec!r}")
        out[LanguageId(lang)] = TranslitModel.load(path)
    return out


def cmd_recover(args):
    lid = LidModel.load(_need(args, "model"))
    models = _parse_model_map(args.translit_model)
    hyps = read_dual_file(args.hyps)
    results = recover_native(hyps.items(), lid, models, args.placeholder)
    failed = 0
    rows = []
    for r in results:
        failed += bool(r.errors)
        if args.format == "json":
            rows.append({"utt_id": r.utt_id, "language": r.language and r.language.value,
                         "native": r.native_text, "posterior": r.posterior,
                         "errors": [str(e) for e in r.errors]})
        else:
            lang = r.language.value if r.language else "-"
            print(f"{r.utt_id}\t{lang}\t{r.native_text}")
    if args.format == "json":
        print(json.dumps({"results": rows}, ensure_ascii=False, indent=1))
    return EXIT_DATA if failed and args.strict else EXIT_OK


def cmd_score(args):
    refs_raw = ingest_manifest(args.ref, args.ref_format)
    refs = {}
    for r in refs_raw:
        lang = r.language or (LanguageId(args.lang) if args.lang else None)
        refs[r.utt_id] = (lang, r.native_text)
    hyps = read_dual_file(args.hyp)
    report = score_corpus(refs, hyps, args.strip_punct, args.casefold)
    excluded = None
    if args.exclude and report.per_language:
        excluded = average_score(report.per_language, args.exclude)
    doc = report.to_dict()
    if excluded is not None:
        doc["average_excluding"] = {"excluded": args.exclude, "value": excluded}
    if args.format == "json":
        print(json.dumps(doc, ensure_ascii=False, indent=1))
    else:
        print(f"wer\t{report.wer:.4f}")
        print(f"S/D/I\t{report.substitutions}/{report.deletions}/{report.insertions}"
              f"\tref_words\t{report.ref_words}")
        for lang in sorted(report.per_language, key=lambda l: l.value):
            print(f"wer[{lang.value}]\t{report.per_language[lang]:.4f}")
        print(f"average\t{report.average:.4f}")
        if excluded is not None:
            print(f"average[-{','.join(args.exclude)}]\t{excluded:.4f}")
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", choices=[l.value for l in LanguageId],
                        help="language code (defaults to the script's main language)")
    common.add_argument("--rules-dir", help="directory of per-language rule tables")
    common.add_argument("--model", help="model file to read or write")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True,
                      help="stop at the first data error (default)")
    mode.add_argument("--report", dest="strict", action="store_false",
                      help="report data errors and keep going")

    text_in = argparse.ArgumentParser(add_help=False)
    text_in.add_argument("text", nargs="*", help="items to process (default: read --input)")
    text_in.add_argument("--input", "-i", help="file with one item per line ('-' = stdin)")

    p = argparse.ArgumentParser(prog="clskit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, text=False):
        sp = sub.add_parser(name, help=help_, parents=[common] + ([text_in] if text else []))
        sp.set_defaults(func=fn)
        return sp

    add("parse", cmd_parse, "native text -> CLS label sequences", text=True)
    add("compact", cmd_compact, "native text -> compact CLS strings", text=True)
    add("g2p", cmd_g2p, "English words -> CMU phones and CLS", text=True)

    sp = add("lid-train", cmd_lid_train, "train a language identifier on lang<TAB>cls lines")
    sp.add_argument("corpus")
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--char-min", type=int, default=1)
    sp.add_argument("--char-max", type=int, default=3)
    sp.add_argument("--word-min", type=int, default=1)
    sp.add_argument("--word-max", type=int, default=2)
    sp.add_argument("--sublinear-tf", action="store_true")
    sp.add_argument("--vocab-cap", type=int)
    add("lid-predict", cmd_lid_predict, "identify the language of compact CLS lines", text=True)

    sp = add("translit-train", cmd_translit_train, "train a CLS -> native transliterator")
    sp.add_argument("corpus", help="cls<TAB>native lines, or native text with --from-native")
    sp.add_argument("--from-native", action="store_true",
                    help="corpus is native text; derive CLS with the forward parser")
    sp.add_argument("--order", type=int, default=DEFAULT_ORDER)
    sp.add_argument("--beam", type=int, default=DEFAULT_BEAM)
    sp = add("translit", cmd_translit, "compact CLS words -> native script", text=True)
    sp.add_argument("--beam", type=int)
    sp.add_argument("--nbest", type=int, default=5)

    sp = add("bpe-train", cmd_bpe_train, "learn BPE merges from a text file")
    sp.add_argument("corpus")
    sp.add_argument("--vocab-size", type=int, default=DEFAULT_VOCAB)
    sp = add("bpe-encode", cmd_bpe_encode, "text -> token ids", text=True)
    sp.add_argument("--tokens", action="store_true", help="print token strings instead of ids")
    add("bpe-decode", cmd_bpe_decode, "space-separated token ids -> text", text=True)

    sp = add("emit-dual", cmd_emit_dual, "write native and CLS training targets")
    sp.add_argument("manifest")
    sp.add_argument("--manifest-format", choices=("auto", "tsv", "transcript"), default="auto")
    sp.add_argument("--native-out", required=True)
    sp.add_argument("--cls-out", required=True)

    sp = add("recover", cmd_recover, "CLS hypotheses -> native text via LID + transliteration")
    sp.add_argument("hyps", help="'utt_id cls' lines")
    sp.add_argument("--translit-model", action="append", metavar="LANG=PATH")
    sp.add_argument("--placeholder", default="�")

    sp = add("score", cmd_score, "WER of hypotheses against references")
    sp.add_argument("ref", help="TSV manifest or 'utt_id text' transcript")
    sp.add_argument("hyp", help="'utt_id text' lines or recover output")
    sp.add_argument("--ref-format", choices=("auto", "tsv", "transcript"), default="auto")
    sp.add_argument("--exclude", action="append", default=[],
                    help="language left out of the extra average (repeatable)")
    sp.add_argument("--strip-punct", action="store_true")
    sp.add_argument("--casefold", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ClsKitError, OSError) as exc:
        print(f"clskit {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # bad option values that argparse could not check
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
