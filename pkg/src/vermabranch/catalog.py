"""Named reductive pairs with their parabolic data and expected check flags.

Each entry records how the pair and parabolic are built plus the verdicts
the checks are expected to reproduce; the test suite re-runs every check
against the stored flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from vermabranch.embedding import (
    ParabolicDatum,
    ReductivePair,
    ThetaData,
    parabolic_from_H,
)
from vermabranch.rootsys import build_root_system


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    g_label: str
    g_prime_label: str
    restriction: tuple
    H: tuple
    theta: ThetaData | None
    flags: dict

    def pair(self) -> ReductivePair:
        return ReductivePair(
            g=build_root_system(self.g_label),
            g_prime=build_root_system(self.g_prime_label),
            restriction=self.restriction,
            theta=self.theta,
        )

    def parabolic(self) -> ParabolicDatum:
        return parabolic_from_H(self.pair(), self.H)


def _f(x):
    return Fraction(x)


_ENTRIES = [
    CatalogEntry(
        name="diag-a1",
        description="diagonal sl2 in sl2+sl2, Borel times Borel",
        g_label="A1xA1",
        g_prime_label="A1",
        restriction=((_f(1), _f(1)),),
        H=(_f(2),),
        theta=None,
        flags={
            "weakly_compatible": True,
            "quasi_abelian": True,
            "commutator_vanishing": True,
            "abelian_nilradical": True,
            "g_prime_type_a1": True,
            "symmetric_pair": True,
            "multiplicity_free": True,
        },
    ),
    CatalogEntry(
        name="weil-sp4",
        description="diagonal sl2 in the long-root sl2+sl2 of sp4, Siegel parabolic",
        g_label="C2",
        g_prime_label="A1",
        # alpha1 = e1-e2 -> 0, alpha2 = 2e2 -> alpha'
        restriction=((_f(0), _f(1)),),
        H=(_f(2),),
        theta=ThetaData(compact_roots=frozenset()),
        flags={
            "weakly_compatible": True,
            "quasi_abelian": True,
            "commutator_vanishing": True,
            "abelian_nilradical": True,
            "g_prime_type_a1": True,
            "symmetric_pair": False,
            "multiplicity_free": False,
        },
    ),
    CatalogEntry(
        name="principal-a1-in-a2",
        description="principal sl2 in sl3, Borel subalgebra",
        g_label="A2",
        g_prime_label="A1",
        restriction=((_f(1), _f(1)),),
        H=(_f(2),),
        theta=None,
        flags={
            "weakly_compatible": True,
            "quasi_abelian": True,
            "commutator_vanishing": False,
            "abelian_nilradical": False,
            "g_prime_type_a1": True,
            "symmetric_pair": False,
            "multiplicity_free": False,
        },
    ),
    CatalogEntry(
        name="diag-a2-borel",
        description="diagonal sl3 in sl3+sl3, Borel times Borel",
        g_label="A2xA2",
        g_prime_label="A2",
        restriction=(
            (_f(1), _f(0), _f(1), _f(0)),
            (_f(0), _f(1), _f(0), _f(1)),
        ),
        H=(_f(2), _f(2)),
        theta=None,
        flags={
            "weakly_compatible": True,
            "quasi_abelian": False,
            "commutator_vanishing": False,
            "abelian_nilradical": False,
            "g_prime_type_a1": False,
            "symmetric_pair": True,
            "multiplicity_free": None,
        },
    ),
    CatalogEntry(
        name="holomorphic-c2",
        description="long-root sl2+sl2 in sp4, Siegel parabolic (holomorphic type)",
        g_label="C2",
        g_prime_label="A1xA1",
        # t' = t: alpha1 = e1-e2 -> (1/2)b1 - (1/2)b2, alpha2 = 2e2 -> b2
        restriction=(
            (Fraction(1, 2), _f(0)),
            (Fraction(-1, 2), _f(1)),
        ),
        H=(_f(2), _f(2)),
        theta=ThetaData(
            # compact roots of sp(4,R): +-(e1-e2), i.e. +-alpha1 of C2
            compact_roots=frozenset(
                {(_f(1), _f(0)), (_f(-1), _f(0))}
            ),
            # k1 = center of k = gl(2): no roots, H central in k
            k1_roots=frozenset(),
        ),
        flags={
            "weakly_compatible": True,
            "quasi_abelian": True,
            "commutator_vanishing": True,
            "abelian_nilradical": True,
            "g_prime_type_a1": False,
            "symmetric_pair": True,
            "multiplicity_free": True,
            "holomorphic_type": True,
        },
    ),
]

_BY_NAME = {e.name: e for e in _ENTRIES}


def catalog_names() -> list:
    return [e.name for e in _ENTRIES]


def catalog_entries() -> list:
    return list(_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry: {name!r}") from None
