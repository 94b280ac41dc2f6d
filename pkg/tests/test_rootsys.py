import pytest
from fractions import Fraction as F

from vermabranch.rootsys import (
    CartanTypeError,
    build_root_system,
    is_integrally_dominant,
    rho_of,
    weyl_orbit,
)


COUNTS = {
    "A1": (1, 2),
    "A2": (3, 6),
    "A3": (6, 24),
    "B2": (4, 8),
    "B3": (9, 48),
    "C2": (4, 8),
    "C3": (9, 48),
    "D4": (12, 192),
    "G2": (6, 12),
    "A1xA1": (2, 4),
    "A2xA2": (6, 36),
    "A1xC2": (5, 16),
}


@pytest.mark.parametrize("label,expected", sorted(COUNTS.items()))
def test_positive_root_counts(label, expected):
    rs = build_root_system(label)
    npos, worder = expected
    assert len(rs.positive_roots) == npos
    assert rs.weyl_order == worder


@pytest.mark.parametrize("label", sorted(COUNTS))
def test_cartan_matrix_properties(label):
    rs = build_root_system(label)
    C = rs.cartan_matrix
    for i in range(rs.rank):
        assert C[i][i] == 2
        for j in range(rs.rank):
            if i != j:
                assert C[i][j] <= 0
            # integrality
            assert F(C[i][j]).denominator == 1


@pytest.mark.parametrize("label", sorted(COUNTS))
def test_form_symmetric_and_short_roots_squared_two(label):
    rs = build_root_system(label)
    S = rs.symmetrized_form
    for i in range(rs.rank):
        for j in range(rs.rank):
            assert S[i][j] == S[j][i]
    shortest = min(rs.form(a, a) for a in rs.positive_roots)
    assert shortest == 2


def test_root_closure_under_reflection():
    for label in ("A2", "B2", "C3", "G2", "A1xC2"):
        rs = build_root_system(label)
        allroots = set(rs.positive_roots) | {
            tuple(-c for c in r) for r in rs.positive_roots
        }
        for a in allroots:
            for b in allroots:
                assert rs.reflect(a, b) in allroots


def test_rho_pairs_to_one_on_simple():
    for label in ("A2", "C2", "G2", "A2xA2"):
        rs = build_root_system(label)
        rho = rs.rho
        for a in rs.simple_roots:
            assert rs.pairing(rho, a) == 1


def test_rho_of_subsystem():
    rs = build_root_system("A2")
    a1 = rs.simple_roots[0]
    assert rho_of([a1]) == tuple(c / 2 for c in a1)
    assert rho_of([]) == ()


def test_weyl_orbit_sizes():
    a2 = build_root_system("A2")
    rho = a2.rho
    assert len(weyl_orbit(a2, rho).elements) == 6  # regular
    fund = a2.from_fundamental((F(1), F(0)))
    assert len(weyl_orbit(a2, fund).elements) == 3  # singular
    assert len(weyl_orbit(a2, a2.zero()).elements) == 1
    c2 = build_root_system("C2")
    assert len(weyl_orbit(c2, c2.rho).elements) == 8


def test_weyl_orbit_closed_under_simple_reflections():
    g2 = build_root_system("G2")
    orb = weyl_orbit(g2, g2.rho).elements
    assert len(orb) == 12
    for w in orb:
        for i in range(2):
            assert g2.simple_reflect(w, i) in orb


def test_is_integrally_dominant():
    a1 = build_root_system("A1")
    lam = a1.from_fundamental((F(-3),))
    # pairing -3 is a negative integer: not integrally dominant
    assert not is_integrally_dominant(a1, lam)
    assert is_integrally_dominant(a1, lam, anti=True)
    half = a1.from_fundamental((F(1, 2),))
    assert is_integrally_dominant(a1, half)
    assert is_integrally_dominant(a1, half, anti=True)


def test_fundamental_roundtrip():
    for label in ("A2", "C2", "G2", "A1xA1"):
        rs = build_root_system(label)
        x = tuple(F(k + 1, 3) for k in range(rs.rank))
        assert rs.from_fundamental(rs.to_fundamental(x)) == x


def test_bad_labels():
    for label in ("E8", "A0", "A7", "X2", "", "A1x"):
        with pytest.raises((CartanTypeError, ValueError)):
            build_root_system(label)


def test_highest_root_height():
    g2 = build_root_system("G2")
    heights = [sum(r) for r in g2.positive_roots]
    assert max(heights) == 5  # highest root of G2 is 3a1+2a2 or 2a1+3a2
    a3 = build_root_system("A3")
    assert max(sum(r) for r in a3.positive_roots) == 3
