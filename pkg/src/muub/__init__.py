"""Mutually unbiased unitary bases of operators on C^d, d prime."""
from .choi import (
    choi_vector,
    emit_ratio_table,
    is_maximally_entangled,
    mes_mub_report,
    min_mes_mub_count,
    ratio_R,
)
from .errors import (
    BoundViolationError,
    DegenerateConstantError,
    DegenerateInputError,
    DocumentError,
    InvalidArgumentError,
    MuubError,
    NotUnbiasedError,
    SearchSpaceTooLargeError,
    UnsupportedDimensionError,
)
from .search import (
    PhaseVector,
    SearchConfig,
    assemble_collection,
    basis_from_generator,
    enumerate_unitary_generators,
    generator_from_phases,
)
from .subspace import (
    MonoidVector,
    SubspaceOperator,
    bullet,
    dagger_state,
    durt_mub_state,
    iso_G,
    iso_G_inv,
    maps_to_unitary,
    subspace_recipe,
    theorem1_witness,
)
from .verify import (
    Certificate,
    MuubCollection,
    OperatorBasis,
    canonical_basis,
    check_mutually_unbiased,
    check_orthogonal_unitary_basis,
    verify_collection,
)
from .weyl import (
    Tolerance,
    guess_quality,
    hs_overlap,
    is_unitary,
    root_of_unity,
    weyl_expand,
    weyl_operator,
)

__version__ = "0.1.0"
