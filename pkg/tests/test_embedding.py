import random
from fractions import Fraction as F

import pytest

from vermabranch.catalog import catalog_entries, catalog_names, get_entry
from vermabranch.embedding import (
    EmbeddingError,
    NotWeaklyCompatibleError,
    ReductivePair,
    check_commutator_vanishing,
    check_quasi_abelian,
    check_weakly_compatible,
    convexity_certificate,
    parabolic_from_H,
    quasi_abelian_transfer_check,
    refine_parabolic,
    rho_positivity_check,
)
from vermabranch.rootsys import build_root_system


def test_catalog_names():
    assert catalog_names() == [
        "diag-a1",
        "weil-sp4",
        "principal-a1-in-a2",
        "diag-a2-borel",
        "holomorphic-c2",
    ]


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_flags_reproduced(name):
    e = get_entry(name)
    p = e.parabolic()
    assert bool(check_weakly_compatible(p)) == e.flags["weakly_compatible"]
    assert bool(check_quasi_abelian(p)) == e.flags["quasi_abelian"]
    assert bool(check_commutator_vanishing(p)) == e.flags["commutator_vanishing"]
    if e.flags["abelian_nilradical"]:
        # root-sum test: no two nilradical roots sum to a root
        g = p.pair.g
        for a in p.delta_u:
            for b in p.delta_u:
                assert not g.is_root(tuple(x + y for x, y in zip(a, b)))


@pytest.mark.parametrize("name", catalog_names())
def test_rho_positivity(name):
    p = get_entry(name).parabolic()
    assert rho_positivity_check(p)


def test_restriction_matrix_validation():
    g = build_root_system("A2")
    gp = build_root_system("A1")
    with pytest.raises(EmbeddingError):
        ReductivePair(g=g, g_prime=gp, restriction=())
    with pytest.raises(EmbeddingError):
        ReductivePair(g=g, g_prime=gp, restriction=((F(1),),))
    # alpha' must appear among restricted weights of g
    with pytest.raises(EmbeddingError):
        ReductivePair(g=g, g_prime=gp, restriction=((F(5), F(9)),))


def test_parabolic_splits_weil():
    p = get_entry("weil-sp4").parabolic()
    assert len(p.delta_u) == 3
    assert p.u_prime_roots == ((F(1),),)
    assert p.u_dprime_weights == (((F(1),), F(2)), ((F(1),), F(2)))
    assert p.l_prime_positive() == ()


def test_parabolic_splits_holomorphic():
    p = get_entry("holomorphic-c2").parabolic()
    assert len(p.delta_u) == 3
    assert sorted(p.u_prime_roots) == [(F(0), F(1)), (F(1), F(0))]
    assert p.u_dprime_weights == (((F(1, 2), F(1, 2)), F(2)),)


def test_quasi_abelian_witness_diag_a2():
    p = get_entry("diag-a2-borel").parabolic()
    verdict = check_quasi_abelian(p)
    assert not verdict
    alpha, beta, value = verdict.witness
    assert value == -1
    gp = p.pair.g_prime
    assert gp.form(alpha, beta) == -1


def test_negative_H_levels_flip_roots():
    pair = get_entry("diag-a1").pair()
    p = parabolic_from_H(pair, (F(-2),))
    # nilradical now consists of the negative simple roots
    assert set(p.delta_u) == {(F(-1), F(0)), (F(0), F(-1))}
    assert check_weakly_compatible(p)


def test_refinement_rejected():
    p = get_entry("diag-a1").parabolic()
    with pytest.raises(NotWeaklyCompatibleError) as exc:
        refine_parabolic(p, [(F(0), F(1))])
    assert "u(H) cap g'" in str(exc.value)


def test_refinement_non_levi_rejected():
    p = get_entry("principal-a1-in-a2").parabolic()
    # moving only a1+a2 into the Levi is not closed (a1 + a2 stays in u)
    with pytest.raises(EmbeddingError):
        refine_parabolic(p, [(F(1), F(1))])


def test_refinement_identity():
    p = get_entry("diag-a1").parabolic()
    assert refine_parabolic(p, []) is p


def test_section_is_right_inverse():
    for name in catalog_names():
        pair = get_entry(name).pair()
        iota = pair.section()
        gp = pair.g_prime
        for r in gp.positive_roots:
            assert pair.restrict(iota(r)) == tuple(map(F, r))


def test_convexity_certificates_catalog():
    for name in catalog_names():
        p = get_entry(name).parabolic()
        iota = p.pair.section()
        g = p.pair.g
        for alpha in p.u_prime_roots:
            fiber, coeffs = convexity_certificate(p, alpha)
            assert sum(coeffs) == 1
            assert all(c >= 0 for c in coeffs)
            target = iota(alpha)
            combo = tuple(
                sum(c * b[j] for c, b in zip(coeffs, fiber)) for j in range(g.rank)
            )
            assert combo == tuple(target)


def test_convexity_certificate_diag_a1_example():
    p = get_entry("diag-a1").parabolic()
    fiber, coeffs = convexity_certificate(p, (F(1),))
    assert sorted(fiber) == [(F(0), F(1)), (F(1), F(0))]
    assert coeffs == [F(1, 2), F(1, 2)]


def test_convexity_unknown_weight():
    p = get_entry("diag-a1").parabolic()
    with pytest.raises(EmbeddingError):
        convexity_certificate(p, (F(7),))


def test_transfer_check_holomorphic():
    p = get_entry("holomorphic-c2").parabolic()
    v = quasi_abelian_transfer_check(p)
    assert v
    assert v.note == "implication confirmed"


def test_transfer_check_requires_theta():
    p = get_entry("diag-a1").parabolic()
    with pytest.raises(EmbeddingError):
        quasi_abelian_transfer_check(p)


def test_commutator_vanishing_implies_quasi_abelian_randomized():
    """Sufficiency scan: whenever the weight-level commutator test passes,
    quasi-abelian must hold too (catalog pairs, randomized H)."""
    rng = random.Random(3)
    checked = 0
    for name in catalog_names():
        pair = get_entry(name).pair()
        for _ in range(25):
            H = tuple(F(rng.randint(-3, 3)) for _ in range(pair.g_prime.rank))
            p = parabolic_from_H(pair, H)
            if not check_weakly_compatible(p):
                continue
            checked += 1
            if check_commutator_vanishing(p):
                assert check_quasi_abelian(p), (name, H)
    assert checked > 0
