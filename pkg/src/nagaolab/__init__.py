"""Exact computations around SL2 over polynomial rings: amalgam normal
forms, elementary factorizations, reduction mod p, homology dimension
tables, and verification of explicit matrix identities."""

from .amalgam import AmalgamStructure, Letter, NormalForm
from .gl2 import Gen, Mat2, diag, e12, e21, identity, parse_gen, parse_matrix, w
from .homology import (
    GradedDimTable,
    UnsupportedGroupError,
    WedgeClass,
    WedgeMonomial,
    WeightedMonomial,
    class_order_lower_bound,
    coinvariant_dims,
    dim_divided_power,
    dim_exterior,
    dim_table,
    h_dims,
    mv_ledger_check,
    phi_star_class,
    weighted_monomials,
)
from .nagao import (
    CrossValidationError,
    E2ZtStructure,
    NagaoStructureFp,
    e2zt_normal_form,
    e2zt_structure,
    e2zt_word_from_gens,
    letters_from_gens,
    nagao_normal_form,
    nagao_structure,
    phi_p,
    sl2fpt_elementary_factor,
    sl2z_factor,
)
from .ring import (
    Poly,
    PolyParseError,
    SearchCapExceeded,
    SnWitness,
    is_prime,
    sn_witness_search,
)
from .witnesses import (
    WitnessId,
    kernel_combination_check,
    make_witness,
    verify_witness_suite,
)

__version__ = "0.1.0"
