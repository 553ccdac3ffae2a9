"""Joint spectra of finite-dimensional modules over solvable Lie algebras.

The pipeline: describe an algebra by structure constants (`liealg`), find a
Cartan subalgebra and root decomposition (`cartan`), restrict a module to it
and read weights off twisted chain complexes (`koszul`, `spectra`), then
mechanically confirm the expected identities (`verify`).
"""

from .cartan import (
    CartanDecomposition,
    Root,
    cartan_decomposition,
    direct_sum_decomposition,
    find_cartan_subalgebra,
    is_cartan,
    opposite_decomposition,
    root_decomposition,
    whole_algebra_decomposition,
)
from .koszul import HomologyProfile, KoszulComplex, build_complex, homology_dims
from .liealg import (
    LieAlgebra,
    SubalgebraBasis,
    bracket,
    direct_sum,
    from_bracket_list,
    is_nilpotent,
    is_solvable,
    opposite,
    subalgebra,
    validate,
)
from .numkit import (
    DEFAULT_TOL,
    InputError,
    NumericalFailure,
    Subspace,
    Tolerance,
)
from .rep import (
    Representation,
    ad_representation,
    adjoint_rep,
    left_mult_rep,
    multiplication_rep,
    representation,
    restrict,
    right_mult_rep,
    tensor_rep,
    validate_rep,
)
from .spectra import (
    SpectrumFamily,
    SpectrumPoint,
    SpectrumSet,
    cartan_essential,
    cartan_slodkowski,
    cartan_split,
    cartan_taylor,
    hausdorff_distance,
    spectrum_by_common_eigenvectors,
)
from .verify import (
    CheckReport,
    FuzzDims,
    check_cartan_independence,
    check_duality,
    check_multiplication_formula,
    check_nilpotent_coincidence,
    check_projection,
    check_split_identity,
    check_tensor_formula,
    fuzz,
    random_solvable_instance,
    run_instance_checks,
)

__version__ = "0.1.0"

__all__ = [
    "CartanDecomposition",
    "CheckReport",
    "DEFAULT_TOL",
    "FuzzDims",
    "HomologyProfile",
    "InputError",
    "KoszulComplex",
    "LieAlgebra",
    "NumericalFailure",
    "Representation",
    "Root",
    "SpectrumFamily",
    "SpectrumPoint",
    "SpectrumSet",
    "SubalgebraBasis",
    "Subspace",
    "Tolerance",
    "ad_representation",
    "adjoint_rep",
    "bracket",
    "build_complex",
    "cartan_decomposition",
    "cartan_essential",
    "cartan_slodkowski",
    "cartan_split",
    "cartan_taylor",
    "check_cartan_independence",
    "check_duality",
    "check_multiplication_formula",
    "check_nilpotent_coincidence",
    "check_projection",
    "check_split_identity",
    "check_tensor_formula",
    "direct_sum",
    "direct_sum_decomposition",
    "find_cartan_subalgebra",
    "from_bracket_list",
    "fuzz",
    "hausdorff_distance",
    "homology_dims",
    "is_cartan",
    "is_nilpotent",
    "is_solvable",
    "left_mult_rep",
    "multiplication_rep",
    "opposite",
    "opposite_decomposition",
    "random_solvable_instance",
    "representation",
    "restrict",
    "right_mult_rep",
    "root_decomposition",
    "run_instance_checks",
    "spectrum_by_common_eigenvectors",
    "subalgebra",
    "tensor_rep",
    "validate",
    "validate_rep",
    "whole_algebra_decomposition",
]
