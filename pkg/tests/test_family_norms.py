import random
from fractions import Fraction

import pytest

from greedylab.config import BudgetExceeded
from greedylab.family_norms import (jamesification_norm, naive_james_norm,
                                    naive_schreier_norm, schreier_alpha_norm,
                                    weighted_schreier_norm)
from greedylab.ordinals import ONE, ZERO, parse_ordinal
from greedylab.schreier import f_alpha_member, schreier_member
from greedylab.vectors import SparseVector

TWO = parse_ordinal("2")


def _random_vector(rng, hi, size_hi, exact=False):
    size = rng.randint(1, size_hi)
    supp = rng.sample(range(1, hi + 1), size)
    if exact:
        return SparseVector({i: Fraction(rng.randint(-8, 8), rng.randint(1, 9))
                             for i in supp})
    return SparseVector({i: rng.uniform(-2, 2) for i in supp})


def test_family_norm_base_cases():
    x = SparseVector({2: -3.0, 5: 1.5, 9: 2.0})
    assert schreier_alpha_norm(x, ZERO) == 3.0
    assert schreier_alpha_norm(SparseVector.indicator([3, 4, 5, 6], 1), ONE) == 3
    assert schreier_alpha_norm(SparseVector(), TWO) == 0


def test_family_norm_matches_naive():
    rng = random.Random(9)
    for _ in range(120):
        x = _random_vector(rng, 16, 8)
        for alpha in (ONE, TWO, parse_ordinal("w")):
            assert abs(schreier_alpha_norm(x, alpha) -
                       naive_schreier_norm(x, alpha)) < 1e-12


def test_family_norm_exact_payloads():
    rng = random.Random(19)
    for _ in range(60):
        x = _random_vector(rng, 14, 7, exact=True)
        val = schreier_alpha_norm(x, ONE)
        assert isinstance(val, (Fraction, int))
        assert val == naive_schreier_norm(x, ONE)


def test_family_norm_witness_is_member():
    rng = random.Random(29)
    for _ in range(80):
        x = _random_vector(rng, 18, 8)
        for alpha in (ONE, TWO):
            val, wit = schreier_alpha_norm(x, alpha, want_witness=True)
            assert schreier_member(wit, alpha)
            assert abs(sum(abs(x.get(i)) for i in wit) - val) < 1e-12


def test_family_norm_budget_error():
    x = SparseVector({i: 1.0 for i in range(3, 30)})
    with pytest.raises(BudgetExceeded):
        schreier_alpha_norm(x, TWO, max_nodes=5)


def test_james_examples():
    assert jamesification_norm(SparseVector.indicator([3, 4, 5], 1)) == 3
    assert jamesification_norm(SparseVector({2: 1.0, 3: 0.5, 4: 1.0})) == 2.5
    assert jamesification_norm(SparseVector()) == 0


def test_james_singleton_interval_lower_bound():
    # restricting to a relaxed-family member keeps the coefficient mass
    rng = random.Random(31)
    for _ in range(150):
        x = _random_vector(rng, 14, 7)
        members = [F for F in _subsets(x.support) if f_alpha_member(F, ONE)]
        norm = jamesification_norm(x)
        for F in members:
            assert sum(abs(x.get(i)) for i in F) <= norm + 1e-12


def _subsets(items):
    from itertools import combinations

    out = []
    for size in range(len(items) + 1):
        out.extend(combinations(items, size))
    return out


def test_james_matches_naive_small():
    rng = random.Random(41)
    for _ in range(150):
        x = _random_vector(rng, 8, 5)
        assert abs(jamesification_norm(x) - naive_james_norm(x)) < 1e-12


def test_james_general_level_matches_naive_small():
    rng = random.Random(43)
    for _ in range(60):
        x = _random_vector(rng, 8, 5)
        assert abs(jamesification_norm(x, TWO) - naive_james_norm(x, TWO)) < 1e-12


def test_james_greedy_removal_never_grows():
    rng = random.Random(47)
    for _ in range(200):
        x = _random_vector(rng, 30, 10)
        current = jamesification_norm(x)
        while x.entries:
            top = min(x.entries, key=lambda i: (-abs(x.entries[i]), i))
            x = x.drop((top,))
            nxt = jamesification_norm(x)
            assert nxt <= current + 1e-12
            current = nxt


def test_weighted_norm_explicit_family():
    fam = [((3, 4, 5), {3: Fraction(1, 3), 4: Fraction(1, 3), 5: Fraction(1, 3)}),
           ((6, 7, 8, 9, 10, 11), {i: Fraction(1, 6) for i in range(6, 12)})]
    for n in (1, 3, 7, 100):
        assert weighted_schreier_norm(SparseVector({n: 1}), fam) == 1
    assert weighted_schreier_norm(SparseVector.indicator([3, 4, 5], 1), fam) == 3
    assert weighted_schreier_norm(SparseVector.indicator(range(6, 12), 1), fam) == 6
    assert weighted_schreier_norm(SparseVector(), fam) == 0


def test_weighted_norm_rejects_bad_mass():
    from greedylab.schreier import FamilyError

    bad = [((3, 4), {3: Fraction(1, 3), 4: Fraction(1, 3)})]
    with pytest.raises(FamilyError):
        weighted_schreier_norm(SparseVector({3: 1}), bad)
