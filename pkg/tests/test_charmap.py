import random

import pytest

from clskit.charmap import (CMU_PHONES, ClsPhone, Inventory, PhoneCategory, cmu_bridge,
                            cmu_to_cls, default_inventory, from_compact, strip_stress,
                            to_compact)
from clskit.errors import TableFormatError, UnknownCmuPhone, UnknownCompactChar, UnknownLabel


def test_paper_pairs():
    assert to_compact(["aa"]) == "A"
    assert to_compact(["ph"]) == "P"
    assert from_compact("A") == ["aa"]
    assert to_compact([]) == "" and from_compact("") == []


def test_inventory_shape():
    inv = default_inventory()
    assert len(inv.labels) == len(set(inv.labels)) == 62
    assert len({p.compact for p in inv.phones}) == len(inv.phones)
    assert all(p.label.isascii() for p in inv.phones)


def test_bijection_over_inventory():
    inv = default_inventory()
    for label in inv.labels:
        assert from_compact(to_compact([label])) == [label]
    assert from_compact(to_compact(list(inv.labels))) == list(inv.labels)


def test_bijection_random_sequences():
    labels = default_inventory().labels
    rng = random.Random(3)
    for _ in range(2000):
        seq = [rng.choice(labels) for _ in range(rng.randint(0, 12))]
        s = to_compact(seq)
        assert len(s) == len(seq)
        assert from_compact(s) == seq


def test_unknowns():
    with pytest.raises(UnknownLabel):
        to_compact(["zz"])
    with pytest.raises(UnknownCompactChar):
        from_compact("☃")
    with pytest.raises(UnknownLabel):
        default_inventory()["zz"]


def test_duplicate_compact_is_fatal():
    a = ClsPhone("a", PhoneCategory.SHORT_VOWEL, False, "a")
    b = ClsPhone("b", PhoneCategory.CONSONANT, False, "a")
    with pytest.raises(TableFormatError):
        Inventory([a, b])
    with pytest.raises(TableFormatError):
        Inventory([a, a])


def test_cmu_bridge_total():
    bridge = cmu_bridge()
    assert set(bridge) == set(CMU_PHONES) and len(CMU_PHONES) == 39
    inv = default_inventory()
    for ph in CMU_PHONES:
        out = cmu_to_cls([ph])
        assert 1 <= len(out) <= 2
        assert all(p in inv for p in out)


def test_cmu_examples():
    assert cmu_to_cls(["AA"]) == ["aa"]
    assert cmu_to_cls([]) == []
    assert cmu_to_cls(["AA1"]) == ["aa"]
    assert strip_stress("EY2") == "EY"
    with pytest.raises(UnknownCmuPhone):
        cmu_to_cls(["QQ"])
