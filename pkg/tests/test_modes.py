import pytest

from raman_witness.modes import ALL_PAIRS, Mode, ModePair


def test_pairs_are_canonical():
    assert [p.label for p in ALL_PAIRS] == ["ab", "ac", "ad", "bc", "bd", "cd"]
    assert ModePair("ca") == ModePair("ac") == ModePair(Mode.A, Mode.C)
    assert ModePair("db").first is Mode.B


def test_pair_rejects_repeat():
    with pytest.raises(ValueError):
        ModePair("aa")
