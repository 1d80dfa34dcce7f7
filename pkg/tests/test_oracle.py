from functools import lru_cache
from math import comb

import pytest

from conftest import DELTA, GAMMA
from nmsa.core import KSequence, validate_alignment
from nmsa.errors import BudgetExceeded, UnsupportedCombination
from nmsa.oracle import (
    EnumerationBudget,
    brute_force_optimum,
    count_alignments,
    enumerate_alignments,
)
from nmsa.scoring import MatrixArray, ScoringMatrix


@lru_cache(maxsize=None)
def fubini(k: int) -> int:
    """Ordered set partitions: a(k) = sum_{i=1..k} C(k, i) a(k - i)."""
    return 1 if k == 0 else sum(comb(k, i) * fubini(k - i) for i in range(1, k + 1))


def test_small_counts():
    rows = {A.rows for A in enumerate_alignments(KSequence(("a", "b")))}
    assert rows == {("a", "b"), ("a-", "-b"), ("-a", "b-")}
    assert count_alignments(KSequence(("a", "b", "c"))) == 13
    assert [A.rows for A in enumerate_alignments(KSequence(("", "")))] == [("", "")]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fubini_counts(k):
    assert count_alignments(KSequence(tuple("a" * k))) == fubini(k)


def test_delannoy_counts():
    # two sequences: central Delannoy numbers
    assert [count_alignments(KSequence(("a" * n, "b" * n))) for n in range(5)] == [1, 3, 13, 63, 321]


def test_no_duplicates_and_valid():
    S = KSequence(("ab", "b", "ba"))
    seen = set()
    for A in enumerate_alignments(S):
        assert A.rows not in seen
        seen.add(A.rows)
        validate_alignment(A.rows, S)
    assert len(seen) == count_alignments(S)


def test_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_alignments(KSequence(("aa", "bb")), EnumerationBudget(max_alignments=5)))
    narrow = list(enumerate_alignments(KSequence(("aa", "bb")), EnumerationBudget(max_width=2)))
    assert [A.rows for A in narrow] == [("aa", "bb")]
    with pytest.raises(ValueError):
        EnumerationBudget(max_alignments=0)


def test_optimum_examples():
    assert brute_force_optimum(KSequence(("a", "b", "c")), GAMMA, "v1").value == 20
    assert brute_force_optimum(KSequence(("abc", "acb", "cba")), DELTA, "v3").value < DELTA("a", "b")
    zero = ScoringMatrix.from_rationals("ab", [[0] * 3] * 3)
    assert brute_force_optimum(KSequence(("ab", "ba", "a")), zero, "sp").value == 0


def test_criterion_checks():
    with pytest.raises(UnsupportedCombination):
        brute_force_optimum(KSequence(("a", "b")), GAMMA, "v9")
    with pytest.raises(UnsupportedCombination):
        brute_force_optimum(KSequence(("a", "b")), GAMMA, "sp-array")
    arr = MatrixArray.uniform(GAMMA, 2)
    assert brute_force_optimum(KSequence(("a", "b")), arr, "SP-array").value == 9
