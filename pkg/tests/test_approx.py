import random
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import GAMMA, class_matrix, metric_matrix, random_ksequence, ratio_gap_matrix
from nmsa.approx import (
    Star,
    approx_msa,
    approx_nmsa2,
    compatible_align,
    optimal_star,
    split_alignment,
    star_splitting,
)
from nmsa.core import Alignment, KSequence, induced_alignment, validate_alignment
from nmsa.errors import IncoherentStar
from nmsa.exact import msa_exact, nmsa2_exact
from nmsa.scoring import score_A, score_N, score_SP, score_V2

ONE = ratio_gap_matrix(Fraction(1))


def test_optimal_star_examples():
    X = optimal_star(KSequence(("a", "b", "c")), GAMMA, "A")
    assert X.cost(GAMMA) == 18 and X.center == 0
    Y = optimal_star(KSequence(("ab", "ba")), GAMMA)
    assert Y.center == 0 and Y.arms[1].sequences() == ("ab", "ba")
    Z = optimal_star(KSequence(("abc", "abc", "abc")), GAMMA)
    assert Z.center == 0 and Z.cost(GAMMA) == 0


def test_split_examples():
    assert split_alignment(Alignment(("a", "b")), ONE).rows == ("a-", "-b")
    assert split_alignment(Alignment(("a", "b")), GAMMA).rows == ("a", "b")
    X = Alignment(("a-b", "-ab"))
    assert split_alignment(X, ONE) == X


def test_star_splitting_examples():
    X = Star(0, (None, Alignment(("a", "b"))))
    assert star_splitting(X, ONE).arms[1].rows == ("a-", "-b")
    same = optimal_star(KSequence(("a", "b", "c")), GAMMA)
    assert star_splitting(same, GAMMA) == same


def test_compatible_align_five_sequence_star():
    arms = (
        Alignment(("aaa-", "-ddd")),
        Alignment(("bb-bbb", "-dd--d")),
        Alignment(("cc-", "ddd")),
        None,
        Alignment(("---ddd-", "eeee-ee")),
    )
    A = compatible_align(Star(3, arms))
    assert A.rows == (
        "a----aa----",
        "-b---b-bbb-",
        "-----cc----",
        "-----dd--d-",
        "--eeee---ee",
    )
    for h in (0, 1, 2, 4):
        assert induced_alignment(A, sorted((h, 3))) == arms[h]


def test_compatible_align_k2_and_errors():
    arm = Alignment(("ab-", "-bc"))
    assert compatible_align(Star(1, (arm, None))) == arm
    with pytest.raises(IncoherentStar):
        compatible_align(Star(0, (None, Alignment(("a", "b")), Alignment(("b", "c")))))
    with pytest.raises(IncoherentStar):
        compatible_align(Star(0, (Alignment(("a", "b")), None)))


def test_approx_examples():
    r = approx_msa(KSequence(("a", "b", "c")), GAMMA)
    assert r.alignment.rows == ("a", "b", "c") and r.value == 27 and r.guarantee == "2"
    for f in (approx_msa, approx_nmsa2):
        assert f(KSequence(("ab", "ab", "ab")), GAMMA).value == 0
    r2 = approx_nmsa2(KSequence(("a", "b", "c")), GAMMA)
    assert r2.guarantee == "12" and r2.value <= 12 * 27


def test_guarantee_tags():
    lev_like = ratio_gap_matrix(Fraction(1, 2))  # mismatch 3 > 2 * gap fails metric closure
    assert approx_msa(KSequence(("ab", "b")), lev_like).guarantee in {"2", "6"}
    from nmsa.scoring import ScoringMatrix

    bad = ScoringMatrix.from_rationals("ab", [[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    assert approx_msa(KSequence(("ab", "b")), bad).guarantee == "none"
    assert approx_nmsa2(KSequence(("ab", "b")), bad).guarantee == "none"


@pytest.mark.parametrize("criterion,cls", [("A", "MW"), ("N", "MN")])
def test_splitting_at_most_triples_star_cost(criterion, cls):
    rng = random.Random(51)
    for _ in range(100):
        g = class_matrix(rng, cls)
        S = random_ksequence(rng, rng.randint(2, 4), 4)
        X = optimal_star(S, g, criterion)
        Y = star_splitting(X, g)
        assert Y.cost(g, criterion) <= 3 * X.cost(g, criterion)


def test_pipeline_induces_arms():
    rng = random.Random(53)
    for _ in range(100):
        g = class_matrix(rng, "MW")
        S = random_ksequence(rng, rng.randint(2, 5), 4)
        Y = star_splitting(optimal_star(S, g), g)
        A = compatible_align(Y, S)
        validate_alignment(A.rows, S)
        for h, arm in enumerate(Y.arms):
            if arm is not None:
                assert induced_alignment(A, sorted((h, Y.center))) == arm


def test_induced_pair_bounds():
    rng = random.Random(57)
    for _ in range(100):
        gw = class_matrix(rng, "MW")
        gn = class_matrix(rng, "MN")
        S = random_ksequence(rng, rng.randint(3, 4), 4)
        for g, crit in ((gw, "A"), (gn, "N")):
            Y = star_splitting(optimal_star(S, g, crit), g)
            A = compatible_align(Y, S)
            c = Y.center
            qmax = max(g(a, "-") for a in g.alphabet.symbols)
            for h, i in combinations(range(S.k), 2):
                pair = induced_alignment(A, [h, i])
                if crit == "N":
                    assert score_N(g, pair) <= 2 * qmax
                if c in (h, i):
                    continue
                hc, ci = induced_alignment(A, sorted((h, c))), induced_alignment(A, sorted((c, i)))
                if crit == "A":
                    assert score_A(g, pair) <= score_A(g, hc) + score_A(g, ci)
                else:
                    assert score_N(g, pair) <= 2 * (score_N(g, hc) + score_N(g, ci))


def test_end_to_end_ratios():
    rng = random.Random(59)
    for _ in range(40):
        k = rng.randint(2, 4)
        S = random_ksequence(rng, k, 3)
        gc = metric_matrix(rng)
        gw = class_matrix(rng, "MW")
        for g, bound in ((gc, 2), (gw, 6)):
            r = approx_msa(S, g)
            opt = msa_exact(S, g).value
            assert opt <= r.value <= bound * opt
            assert r.value == score_SP(g, r.alignment)
        if k <= 3:
            gn = class_matrix(rng, "MN")
            r = approx_nmsa2(S, gn)
            opt = nmsa2_exact(S, gn).value
            assert opt <= r.value <= 12 * opt
            assert r.value == score_V2(gn, r.alignment)
