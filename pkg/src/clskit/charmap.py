"""CLS inventory, the compact one-character-per-phone form, and the
CMU-phone to CLS bridge for English words."""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

from ._data import data_path, read_table
from .errors import (TableFormatError, UnknownCmuPhone, UnknownCompactChar,
                     UnknownLabel)


class PhoneCategory(str, enum.Enum):
    SHORT_VOWEL = "ShortVowel"
    LONG_VOWEL = "LongVowel"
    DIPHTHONG = "Diphthong"
    CONSONANT = "Consonant"
    NASAL = "Nasal"
    SEMIVOWEL = "Semivowel"
    FRICATIVE = "Fricative"
    SILENCE_OR_BOUNDARY = "SilenceOrBoundary"


VOWEL_CATEGORIES = frozenset({PhoneCategory.SHORT_VOWEL,
                              PhoneCategory.LONG_VOWEL,
                              PhoneCategory.DIPHTHONG})


@dataclass(frozen=True)
class ClsPhone:
    label: str
    category: PhoneCategory
    language_specific: bool
    compact: str

    @property
    def is_vowel(self):
        return self.category in VOWEL_CATEGORIES


class Inventory:
    """The label <-> compact-character table.

    Loading fails if a label or a compact character appears twice, or if a
    compact character is whitespace.
    """

    def __init__(self, phones):
        self.phones = tuple(phones)
        self.by_label = {}
        self.by_compact = {}
        for ph in self.phones:
            if not ph.label or not ph.label.isascii():
                raise TableFormatError(f"bad CLS label {ph.label!r}")
            if len(ph.compact) != 1 or ph.compact.isspace():
                raise TableFormatError(
                    f"compact form of {ph.label!r} must be one non-space char")
            if ph.label in self.by_label:
                raise TableFormatError(f"duplicate CLS label {ph.label!r}")
            if ph.compact in self.by_compact:
                other = self.by_compact[ph.compact].label
                raise TableFormatError(
                    f"compact char {ph.compact!r} shared by {other!r} and {ph.label!r}")
            self.by_label[ph.label] = ph
            self.by_compact[ph.compact] = ph

    @classmethod
    def load(cls, path=None):
        path = path or data_path("cls_inventory.tsv")
        phones = []
        for lineno, f in read_table(path, "clskit-cls-inventory"):
            if len(f) < 4:
                raise TableFormatError(f"{path}:{lineno}: expected >= 4 columns")
            try:
                category = PhoneCategory(f[1])
            except ValueError:
                raise TableFormatError(f"{path}:{lineno}: unknown category {f[1]!r}") from None
            phones.append(ClsPhone(f[0], category, f[2] == "1", f[3]))
        return cls(phones)

    @property
    def labels(self):
        return tuple(ph.label for ph in self.phones)

    def __contains__(self, label):
        return label in self.by_label

    def __getitem__(self, label):
        try:
            return self.by_label[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def is_vowel(self, label):
        return self[label].is_vowel

    def to_compact(self, phones):
        try:
            return "".join(self.by_label[p].compact for p in phones)
        except KeyError as exc:
            raise UnknownLabel(exc.args[0]) from None

    def from_compact(self, s):
        try:
            return [self.by_compact[ch].label for ch in s]
        except KeyError as exc:
            raise UnknownCompactChar(exc.args[0]) from None


@functools.lru_cache(maxsize=None)
def default_inventory():
    return Inventory.load()


def to_compact(phones, inventory=None):
    """``["k", "aa"]`` -> ``"kA"``."""
    return (inventory or default_inventory()).to_compact(phones)


def from_compact(s, inventory=None):
    """Exact inverse of :func:`to_compact`."""
    return (inventory or default_inventory()).from_compact(s)


# --- English bridge -------------------------------------------------------

CMU_PHONES = (
    "AA", "AE", "AH", "AO", "AW", "AY", "B", "CH", "D", "DH", "EH", "ER", "EY",
    "F", "G", "HH", "IH", "IY", "JH", "K", "L", "M", "N", "NG", "OW", "OY",
    "P", "R", "S", "SH", "T", "TH", "UH", "UW", "V", "W", "Y", "Z", "ZH",
)


def strip_stress(phone):
    return phone.rstrip("012")


@functools.lru_cache(maxsize=None)
def cmu_bridge(path=None):
    """CMU label -> tuple of CLS labels, checked against the inventory."""
    path = path or data_path("cmu_to_cls.tsv")
    inv = default_inventory()
    table = {}
    for lineno, f in read_table(path, "clskit-cmu-bridge"):
        if len(f) != 2:
            raise TableFormatError(f"{path}:{lineno}: expected 2 columns")
        cmu, cls_seq = f[0], tuple(f[1].split())
        if cmu not in CMU_PHONES:
            raise TableFormatError(f"{path}:{lineno}: {cmu!r} is not a CMU phone")
        if cmu in table:
            raise TableFormatError(f"{path}:{lineno}: duplicate row for {cmu}")
        if not cls_seq or not all(lab in inv for lab in cls_seq):
            raise TableFormatError(f"{path}:{lineno}: bad CLS sequence {f[1]!r}")
        table[cmu] = cls_seq
    missing = set(CMU_PHONES) - set(table)
    if missing:
        raise TableFormatError(f"{path}: no mapping for {sorted(missing)}")
    return table


def cmu_to_cls(phones):
    """Map CMU phones (stress digits allowed) to CLS labels."""
    table = cmu_bridge()
    out = []
    for ph in phones:
        try:
            out.extend(table[strip_stress(ph)])
        except KeyError:
            raise UnknownCmuPhone(ph) from None
    return out
