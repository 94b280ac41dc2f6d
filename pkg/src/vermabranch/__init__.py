"""Exact-arithmetic branching laws of generalized Verma modules.

The package computes and certifies discretely decomposable branching laws
ind_q^g(F)|_{g'} for weakly compatible parabolic subalgebras, entirely over
the rationals: root systems and Weyl groups, Freudenthal characters, the
graded branching pipeline with good-range / irreducibility certification,
and the multiplicity / PI-degree reporting layer.
"""

from vermabranch.rootsys import (
    RootSystem,
    Weight,
    WeylOrbit,
    build_root_system,
    is_integrally_dominant,
    rho_of,
    weyl_orbit,
)
from vermabranch.characters import (
    FormalCharacter,
    HWDecomposition,
    dual_character,
    freudenthal_character,
    strip_to_highest_weights,
    sym_power_character,
    tensor_character,
    weyl_dimension,
)
from vermabranch.embedding import (
    ParabolicDatum,
    ReductivePair,
    check_commutator_vanishing,
    check_quasi_abelian,
    check_weakly_compatible,
    convexity_certificate,
    parabolic_from_H,
    refine_parabolic,
    rho_positivity_check,
    quasi_abelian_transfer_check,
)
from vermabranch.branching import (
    BranchingTable,
    BranchSummand,
    InfinitesimalCharacter,
    VermaDescriptor,
    branch,
    complete_reducibility_verdict,
    fdual,
    hom_space_report,
    infinitesimal_character,
    is_good_range,
    truncated_character_oracle,
    verma_irreducibility,
)
from vermabranch.pi import (
    amitsur_levitzki_test,
    pi_degree_report,
    standard_polynomial_eval,
)

__version__ = "0.1.0"
