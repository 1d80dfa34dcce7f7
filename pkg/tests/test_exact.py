import random
from fractions import Fraction
from itertools import product
from math import prod

import pytest

from conftest import DELTA, GAMMA, random_ksequence, random_matrix
from nmsa.core import Alignment, KSequence, column_bitvectors, induced_lengths
from nmsa.errors import (
    AlphabetMismatch,
    ArityMismatch,
    LengthVectorOutOfRange,
    ResourceCapExceeded,
    ValidationError,
)
from nmsa.exact import (
    eail_check,
    eail_to_rip,
    induced_length_space,
    msa_exact,
    msa_exact_array,
    nmsa1_exact,
    nmsa2_cells,
    nmsa2_exact,
    nmsa2_inner,
    nmsa3_exact,
)
from nmsa.oracle import brute_force_optima, brute_force_optimum, enumerate_alignments
from nmsa.pairwise import dist_N
from nmsa.scoring import MatrixArray, ScoringMatrix, scale_matrix, score

FNS = {"sp": msa_exact, "v1": nmsa1_exact, "v2": nmsa2_exact, "v3": nmsa3_exact}
LEV = ScoringMatrix.levenshtein("ab")


def test_msa_examples():
    r = msa_exact(KSequence(("a", "b", "c")), GAMMA)
    assert r.value == 27 and r.alignment.rows == ("a", "b", "c")
    assert msa_exact(KSequence(("ab", "")), LEV).value == 2
    assert msa_exact(KSequence(("a", "a", "a")), GAMMA).value == 0


def test_nmsa_examples_gamma():
    S = KSequence(("a", "b", "c"))
    r1 = nmsa1_exact(S, GAMMA)
    assert r1.value == 20 and r1.alignment.rows == ("a--", "-b-", "--c")
    r2 = nmsa2_exact(S, GAMMA)
    assert r2.value == 27 and r2.alignment.rows == ("a", "b", "c")
    r3 = nmsa3_exact(S, GAMMA)
    assert r3.value == 9 and r3.alignment.rows == ("a", "b", "c")


def test_delta_trio_optima():
    # oracle-verified; the three displayed alignments are not optimal for v2 and v3
    S = KSequence(("abc", "acb", "cba"))
    assert nmsa1_exact(S, DELTA).value == Fraction(68, 5)
    r2, r3 = nmsa2_exact(S, DELTA), nmsa3_exact(S, DELTA)
    assert r2.value == Fraction(61, 4) < Fraction(81, 5)
    assert r3.value == Fraction(61, 12) < Fraction(49, 9)
    assert r2.alignment.rows == ("a-bc", "acb-", "-cba")
    o = brute_force_optima(S, DELTA, ["v2", "v3"])
    assert (o["v2"].value, o["v3"].value) == (r2.value, r3.value)


def test_identical_sequences_zero():
    S = KSequence(("ab", "ab", "ab"))
    for f in FNS.values():
        assert f(S, LEV).value == 0


def test_all_empty():
    S = KSequence(("", "", ""))
    for f in FNS.values():
        r = f(S, LEV)
        assert r.value == 0 and r.alignment.width == 0


def test_errors():
    with pytest.raises(ValidationError):
        msa_exact(KSequence(("ab",)), LEV)
    with pytest.raises(AlphabetMismatch):
        msa_exact(KSequence(("ab", "ac")), LEV)
    with pytest.raises(ResourceCapExceeded) as err:
        nmsa1_exact(KSequence(("ab", "ab")), LEV, max_cells=10)
    assert err.value.estimate == 5 * 9
    with pytest.raises(ArityMismatch):
        msa_exact_array(KSequence(("a", "b", "a")), MatrixArray.uniform(LEV, 2))


def test_cell_counts_closed_forms():
    S = KSequence(("ab", "b", "aba"))
    N, box = 6, 3 * 2 * 4
    assert nmsa1_exact(S, LEV).cells_computed == (N + 1) * box
    assert nmsa3_exact(S, LEV).cells_computed == ((3 - 1) * N + 1) * box
    assert msa_exact(S, LEV).cells_computed == box
    r = nmsa2_exact(S, LEV, prune=False)
    assert r.cells_computed == nmsa2_cells(S.lengths)
    assert r.stats["outer_iterations"] == prod(m + 1 for m in induced_length_space(S.lengths))


def test_pruning_does_not_change_result():
    rng = random.Random(2)
    for _ in range(10):
        g = random_matrix(rng)
        S = random_ksequence(rng, 3, 2)
        a, b = nmsa2_exact(S, g, prune=True), nmsa2_exact(S, g, prune=False)
        assert a.value == b.value and a.alignment == b.alignment


def _check_instance(S, g):
    o = brute_force_optima(S, g, list(FNS))
    for crit, f in FNS.items():
        r = f(S, g)
        assert r.value == o[crit].value, (crit, S, r.alignment)
        assert score(crit, g, r.alignment) == r.value


def test_oracle_equivalence_exhaustive_grid():
    rng = random.Random(17)
    mats = [LEV] + [random_matrix(rng) for _ in range(4)]
    words = ["".join(p) for n in range(3) for p in product("ab", repeat=n)]
    for i, seqs in enumerate(product(words, repeat=3)):
        _check_instance(KSequence(seqs), mats[i % len(mats)])


def test_oracle_equivalence_random_length3():
    rng = random.Random(23)
    mats = [random_matrix(rng) for _ in range(5)]
    for i in range(50):
        _check_instance(random_ksequence(rng, 3, 3), mats[i % 5])


def test_msa_exact_array_matches_oracle():
    rng = random.Random(31)
    for _ in range(20):
        S = random_ksequence(rng, 3, 3)
        arr = MatrixArray(3, {p: random_matrix(rng) for p in [(0, 1), (0, 2), (1, 2)]})
        r = msa_exact_array(S, arr)
        assert r.value == brute_force_optimum(S, arr, "sp-array").value
        assert score("sp", LEV, r.alignment) >= 0
    g = random_matrix(rng)
    S = random_ksequence(rng, 3, 3)
    assert msa_exact_array(S, MatrixArray.uniform(g, 3)).value == msa_exact(S, g).value


def test_rational_matrix():
    g = scale_matrix(DELTA, Fraction(1, 7))
    S = KSequence(("abc", "acb", "cba"))
    assert nmsa3_exact(S, g).value == Fraction(61, 12) / 7
    assert nmsa2_exact(S, g).value == Fraction(61, 4) / 7


def test_k2_reduction():
    rng = random.Random(41)
    for _ in range(30):
        g = random_matrix(rng)
        S = random_ksequence(rng, 2, 4)
        assert nmsa2_exact(S, g).value == dist_N(S[0], S[1], g).value
        assert nmsa3_exact(S, g).value == nmsa1_exact(S, g).value


def test_v1_not_above_sp():
    rng = random.Random(43)
    for _ in range(30):
        g = random_matrix(rng)
        S = random_ksequence(rng, 3, 3)
        if not S.is_empty():
            assert nmsa1_exact(S, g).value <= msa_exact(S, g).value


def test_four_sequences_against_oracle():
    rng = random.Random(47)
    for _ in range(6):
        g = random_matrix(rng)
        S = random_ksequence(rng, 4, 1)
        _check_instance(S, g)


# -- induced-length feasibility --------------------------------------------------


def test_eail_examples():
    yes = eail_check([5, 5, 5], [8, 8, 10])
    assert yes.feasible
    rows = yes.witness_rows()
    assert induced_lengths(Alignment(rows)) == (8, 8, 10)
    assert [r.count("x") for r in rows] == [5, 5, 5]
    assert yes.rip == ((5, 2, 2), (2, 5, 0), (2, 0, 5))
    assert not eail_check([5, 5, 5], [7, 7, 10]).feasible
    no = eail_check([4, 3, 5], [4, 7, 5])
    # M13 = 4 + 5 - 7 = 2
    assert not no.feasible and no.rip == ((4, 3, 2), (3, 3, 3), (2, 3, 5))


def test_rip_examples():
    assert eail_to_rip([2, 3, 1], [5, 3, 4]) == ((2, 0, 0), (0, 3, 0), (0, 0, 1))
    with pytest.raises(LengthVectorOutOfRange):
        eail_to_rip([1, 1, 1], [3, 1, 1])
    with pytest.raises(LengthVectorOutOfRange):
        eail_check([1, 1], [1, 1])


def test_eail_matches_enumeration():
    for n in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 1, 1, 1)]:
        seen = {induced_lengths(A) for A in enumerate_alignments(KSequence(tuple("a" * x for x in n)))}
        for L in product(*(range(m + 1) for m in induced_length_space(n))):
            assert eail_check(n, L).feasible == (L in seen), (n, L)


def test_inner_dp_finite_iff_feasible():
    S = KSequence(("ab", "b", "ba"))
    for L in product(*(range(m + 1) for m in induced_length_space(S.lengths))):
        inner = nmsa2_inner(S, LEV, L)
        assert (inner is not None) == eail_check(S.lengths, L).feasible


def test_witness_columns_are_bit_vectors():
    r = eail_check([2, 1], [2])
    assert r.feasible
    assert column_bitvectors(Alignment(r.witness_rows())) == list(r.columns)
