import random
from fractions import Fraction

import pytest
from hypothesis import settings

from nmsa.core import GAP, KSequence
from nmsa.scoring import ScoringMatrix, classify_matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


# golden-value matrices: uniform mismatch / gap costs over {a, b, c}
GAMMA = ScoringMatrix.uniform("abc", 9, 10)
DELTA = ScoringMatrix.uniform("abc", 7, 9)


def ratio_gap_matrix(eps: Fraction) -> ScoringMatrix:
    """Gap 1/eps, mismatch 2/eps - 1 over {a, b}."""
    return ScoringMatrix.uniform("ab", 2 / Fraction(eps) - 1, 1 / Fraction(eps))


def random_matrix(rng: random.Random, symbols="ab", lo=0, hi=9) -> ScoringMatrix:
    """Arbitrary canonical integer matrix: zero diagonal, positive elsewhere."""
    full = list(symbols) + [GAP]
    table = [[0 if a == b else rng.randint(max(lo, 1), hi) for b in full] for a in full]
    return ScoringMatrix.from_rationals(symbols, table)


def metric_matrix(rng: random.Random, symbols="ab", hi=9) -> ScoringMatrix:
    """Random symmetric matrix closed under shortest paths; always in M^C."""
    full = list(symbols) + [GAP]
    m = len(full)
    d = [[0] * m for _ in range(m)]
    for x in range(m):
        for y in range(x + 1, m):
            d[x][y] = d[y][x] = rng.randint(1, hi)
    for z in range(m):
        for x in range(m):
            for y in range(m):
                d[x][y] = min(d[x][y], d[x][z] + d[z][y])
    g = ScoringMatrix.from_rationals(symbols, d)
    assert classify_matrix(g).in_MC
    return g


def class_matrix(rng: random.Random, cls: str, symbols="ab", hi=9, tries=10_000) -> ScoringMatrix:
    """Rejection-sample a matrix verified to lie in class ``cls`` (MW or MN)."""
    full = list(symbols) + [GAP]
    for _ in range(tries):
        table = [[0] * len(full) for _ in full]
        for x in range(len(full)):
            for y in range(x + 1, len(full)):
                table[x][y] = table[y][x] = rng.randint(1, hi)
        if rng.random() < 0.3:  # occasionally asymmetric substitutions
            x, y = rng.sample(range(len(symbols)), 2) if len(symbols) > 1 else (0, 0)
            if x != y:
                table[x][y] = rng.randint(1, hi)
        g = ScoringMatrix.from_rationals(symbols, table)
        rep = classify_matrix(g)
        if (cls == "MW" and rep.in_MW) or (cls == "MN" and rep.in_MN):
            return g
    raise RuntimeError(f"could not sample a matrix in {cls}")


def random_ksequence(rng: random.Random, k: int, max_len: int, symbols="ab") -> KSequence:
    return KSequence(tuple("".join(rng.choice(symbols) for _ in range(rng.randint(0, max_len))) for _ in range(k)))


@pytest.fixture
def rng():
    return random.Random(20240601)
