"""Split torsion pairs for bound quiver algebras over small prime fields.

The library classifies, for a finite-dimensional bound quiver algebra
over GF(2), GF(3) or GF(5), the vertex subsets whose corner data yields
a split torsion pair with quotient-closed torsion-free class, and
cross-validates the classification against brute-force module-theoretic
oracles over an enumerated catalog of indecomposables.
"""

from .algebra import (
    AlgebraError,
    BoundQuiverSpec,
    FDAlgebra,
    InfiniteDimensionalError,
    Quiver,
    build_algebra,
    corner_algebra,
    ext_quiver,
    forbidden_corner_dim,
    is_connected,
    is_source,
    trivial_algebra,
    validate_algebra,
)
from .catalog import (
    IndecompCatalog,
    SearchBudgetExceeded,
    enumerate_catalog,
    is_predecessor_closed,
    predecessors_of,
    supporting_projective,
)
from .classify import (
    arrow_source_check,
    classify_all_sigma,
    gldim_equality_check,
    lemma21_check,
    prop23_conditions,
    sigma_is_valid,
    splitness_check,
    theorem_crosscheck,
    torsion_radical,
)
from .generators import random_bound_quiver_spec, suite_algebras
from .leftpart import (
    cor32_checks,
    detect_local_extension,
    is_hereditary,
    left_part,
    left_support,
    prop35_check,
)
from .modules import (
    EnumerationCapExceeded,
    ModuleMap,
    RightModule,
    decompose,
    direct_sum,
    ext1_dim,
    hom_dim,
    hom_space,
    inclusion_splits,
    injective,
    is_generated_by,
    is_hereditary_injective,
    is_indecomposable,
    is_injective_module,
    is_iso,
    is_projective,
    off_corner_bimodule,
    pd_up_to,
    projective,
    projective_cover,
    quotient_module,
    quotients_all,
    radical_of_module,
    regular_module,
    simple,
    socle,
    submodule_module,
    submodules_all,
    syzygy,
    top,
    trace,
    zero_module,
)
from .specfile import SpecParseError, format_spec, parse_spec

__version__ = "0.1.0"
