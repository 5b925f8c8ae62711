"""Common label set (CLS) tools for multilingual Indic speech recognition.

Native-script text in seven Indic languages, and English words via a
pronouncing dictionary, map onto one shared phone inventory. The package
also carries the pieces that turn CLS decoder output back into native
script: a language identifier and per-language transliterators.
"""
from .charmap import (ClsPhone, Inventory, PhoneCategory, cmu_to_cls, default_inventory,
                      from_compact, to_compact)
from .errors import *  # noqa: F401,F403
from .g2p_en import g2p, g2p_is_lexical
from .lid import FeatureConfig, LidModel, lid_predict, lid_train
from .parser import LanguageId, parse_text, parse_word, rule_table, syllabify
from .pipeline import UtteranceRecord, emit_dual_targets, ingest_manifest, recover_native
from .script import Akshara, ScriptId, detect_script, normalize_text, segment_aksharas
from .scoring import WerReport, average_score, compute_cer, compute_wer
from .subword import BpeModel, bpe_decode, bpe_encode, bpe_train
from .translit import TranslitModel, translit_train, transliterate_text, transliterate_word

__version__ = "0.1.0"
