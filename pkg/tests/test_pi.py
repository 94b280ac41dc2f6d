import random
from fractions import Fraction as F
from itertools import permutations

import pytest

from vermabranch.branching import VermaDescriptor, branch
from vermabranch.catalog import get_entry
from vermabranch.pi import (
    ALVerdict,
    DegreeCapError,
    RationalMatrix,
    amitsur_levitzki_test,
    pi_degree_report,
    standard_polynomial_eval,
)


def _rand_matrix(n, rng):
    return RationalMatrix(
        tuple(
            tuple(F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n))
            for _ in range(n)
        )
    )


def _naive_standard(m, mats):
    n = mats[0].n
    acc = RationalMatrix.zero(n)
    for perm in permutations(range(m)):
        inv = sum(
            1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j]
        )
        prod = mats[perm[0]]
        for idx in perm[1:]:
            prod = prod @ mats[idx]
        acc = acc + (-prod if inv % 2 else prod)
    return acc


def test_s1_identity():
    x = _rand_matrix(2, random.Random(0))
    assert standard_polynomial_eval(1, [x]) == x


def test_s2_is_commutator():
    rng = random.Random(1)
    x, y = _rand_matrix(2, rng), _rand_matrix(2, rng)
    assert standard_polynomial_eval(2, [x, y]) == (x @ y) + (-(y @ x))


def test_s2_commuting_diagonals():
    d1 = RationalMatrix(((F(2), F(0)), (F(0), F(5))))
    d2 = RationalMatrix(((F(-1), F(0)), (F(0), F(7))))
    assert standard_polynomial_eval(2, [d1, d2]).is_zero()


@pytest.mark.parametrize("m,n", [(2, 2), (3, 2), (3, 3), (4, 2), (5, 3)])
def test_matches_naive_permutation_sum(m, n):
    rng = random.Random(10 * m + n)
    mats = [_rand_matrix(n, rng) for _ in range(m)]
    assert standard_polynomial_eval(m, mats) == _naive_standard(m, mats)


def test_alternating_and_multilinear():
    rng = random.Random(4)
    for m, n in [(3, 2), (4, 3), (5, 2)]:
        mats = [_rand_matrix(n, rng) for _ in range(m)]
        base = standard_polynomial_eval(m, mats)
        # swap two arguments: sign flips
        swapped = list(mats)
        swapped[0], swapped[1] = swapped[1], swapped[0]
        assert standard_polynomial_eval(m, swapped) == -base
        # repeated argument: zero
        repeated = list(mats)
        repeated[1] = repeated[0]
        assert standard_polynomial_eval(m, repeated).is_zero()
        # linearity in the first slot
        a, b = _rand_matrix(n, rng), _rand_matrix(n, rng)
        lhs = standard_polynomial_eval(m, [a + b] + mats[1:])
        rhs = standard_polynomial_eval(m, [a] + mats[1:]) + standard_polynomial_eval(
            m, [b] + mats[1:]
        )
        assert lhs == rhs


def test_input_validation():
    x = _rand_matrix(2, random.Random(0))
    y = _rand_matrix(3, random.Random(0))
    with pytest.raises(ValueError):
        standard_polynomial_eval(2, [x])
    with pytest.raises(ValueError):
        standard_polynomial_eval(2, [x, y])
    with pytest.raises(DegreeCapError, match="degree cap exceeded"):
        standard_polynomial_eval(9, [x] * 9)
    with pytest.raises(ValueError):
        RationalMatrix(((F(1), F(2)),))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_amitsur_levitzki(n):
    verdict = amitsur_levitzki_test(n, trials=60, seed=7)
    assert verdict.vanishing_holds
    assert verdict.failure is None
    if n >= 2:
        assert verdict.witness is not None
        assert not verdict.witness_value.is_zero()
        # re-verify the stored witness
        assert standard_polynomial_eval(2 * n - 1, list(verdict.witness)) == (
            verdict.witness_value
        )


def test_al_s3_staircase_witness_value():
    # s_3(E11, E12, E22) = E12
    v = amitsur_levitzki_test(2, trials=1, seed=0)
    e12 = RationalMatrix.unit(2, 0, 1)
    assert v.witness_value == e12


def test_al_bounds():
    with pytest.raises(ValueError):
        amitsur_levitzki_test(0, 1, 0)
    with pytest.raises((ValueError, DegreeCapError)):
        amitsur_levitzki_test(5, 1, 0)


def test_pi_report_multiplicity_free_certified():
    p = get_entry("diag-a1").parabolic()
    v = VermaDescriptor(parabolic=p, F_hw=(F(-3, 2), F(-3, 2)))
    table = branch(v, 4)
    rep = pi_degree_report(table)
    assert rep.observed_sup_multiplicity == 1
    assert rep.pi_degree_lower_bound == 1
    assert rep.commutative_predicted == "unknown"  # not provably complete
    rep = pi_degree_report(table, complete_asserted=True)
    assert rep.pi_degree_exact
    assert rep.commutative_predicted is True


def test_pi_report_weil():
    p = get_entry("weil-sp4").parabolic()
    v = VermaDescriptor(parabolic=p, F_hw=(F(-3), F(-3)))
    table = branch(v, 6)
    rep = pi_degree_report(table)
    assert rep.observed_sup_multiplicity >= 2
    assert rep.commutative_predicted is False
    assert not rep.multiplicity_free_so_far
    # lower bound exactly 2 at depth 1
    rep1 = pi_degree_report(branch(v, 1))
    assert rep1.pi_degree_lower_bound == 2


def test_pi_report_uncertified():
    p = get_entry("diag-a1").parabolic()
    v = VermaDescriptor(parabolic=p, F_hw=(F(0), F(0)))
    table = branch(v, 1)
    rep = pi_degree_report(table)
    assert rep.pi_degree_lower_bound == 0
    assert rep.commutative_predicted == "unknown"


def test_pi_report_depth_zero_grade_populated():
    p = get_entry("diag-a1").parabolic()
    v = VermaDescriptor(parabolic=p, F_hw=(F(-3, 2), F(-3, 2)))
    table = branch(v, 0)
    assert table.summands  # grade 0 always populated
    rep = pi_degree_report(table)
    assert rep.observed_sup_multiplicity == 1
