"""singinv: exact local-ring invariants of singularity pairs (f, X).

Computes Milnor, Tjurina and Bruce-Roberts numbers over the local ring at
the origin with exact rational arithmetic, cross-checks the decomposition
identities relating them, and certifies or refutes relative quasihomogeneity
of a pair via Euler-field search and finite-jet Poincare-Dulac normalization.
"""

from .poly import (
    DegreeCapError,
    LocalOrdering,
    Poly,
    PolyRing,
    RingMismatchError,
    VectorField,
    apply_derivation,
    compare_monomials,
    euler_field,
    lie_bracket,
    ring,
    substitute,
    substitute_jet,
)
from .localstd import (
    INFINITE,
    CodimResult,
    FreeModuleElement,
    Membership,
    ModuleOrdering,
    StandardBasis,
    ideal_codim,
    ideal_element,
    membership_with_witness,
    module_intersection,
    module_sum,
    mora_normal_form,
    quotient_codim,
    standard_basis,
    standard_basis_ideal,
    syzygies,
)
from .derlog import (
    GermPair,
    LinearPartSpace,
    hamiltonian_module,
    jacobian_pair_minors,
    linear_part_space,
    logarithmic_module,
)
from .invariants import (
    InvariantReport,
    br_milnor,
    br_tjurina,
    full_report,
    icis_milnor,
    icis_tjurina,
    milnor,
    relative_numbers,
    taubar_pair,
    tjurina,
)
from .quasihom import (
    QHCertificate,
    WeightVector,
    certify_relative_qh,
    check_relative_qh,
    euler_field_search,
    nonqh_linear_obstruction,
    poincare_dulac_jet,
    spectrum,
    weight_feasibility,
)

__version__ = "0.1.0"

__all__ = [
    "CodimResult",
    "DegreeCapError",
    "FreeModuleElement",
    "GermPair",
    "INFINITE",
    "InvariantReport",
    "LinearPartSpace",
    "LocalOrdering",
    "Membership",
    "ModuleOrdering",
    "Poly",
    "PolyRing",
    "QHCertificate",
    "RingMismatchError",
    "StandardBasis",
    "VectorField",
    "WeightVector",
    "apply_derivation",
    "br_milnor",
    "br_tjurina",
    "certify_relative_qh",
    "check_relative_qh",
    "compare_monomials",
    "euler_field",
    "euler_field_search",
    "full_report",
    "hamiltonian_module",
    "icis_milnor",
    "icis_tjurina",
    "ideal_codim",
    "ideal_element",
    "jacobian_pair_minors",
    "lie_bracket",
    "linear_part_space",
    "logarithmic_module",
    "membership_with_witness",
    "milnor",
    "module_intersection",
    "module_sum",
    "mora_normal_form",
    "nonqh_linear_obstruction",
    "poincare_dulac_jet",
    "quotient_codim",
    "relative_numbers",
    "ring",
    "spectrum",
    "standard_basis",
    "standard_basis_ideal",
    "substitute",
    "substitute_jet",
    "syzygies",
    "taubar_pair",
    "tjurina",
    "weight_feasibility",
]
