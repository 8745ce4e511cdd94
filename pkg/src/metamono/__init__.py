"""Quaternionic metamonogenic basis functions on the unit disk.

Construction and verification of the Bessel-built family F_n[lam] and
its basic members F_{n,m}: quadrature inner products against the
closed-form Gram data, expansion of metamonogenic fields with right
quaternionic coefficients, and imaginary-time wave evolution of
coefficient states.
"""

from .basis import (
    BasisIndex,
    DiskPoint,
    FieldFunction,
    basic_function,
    combination,
    complete_metamonogenic,
    completed_function,
    component_field,
    dirac_residual,
    eval_F,
    eval_F_split,
    eval_Fnm,
    helmholtz_residual,
    standard_function,
)
from .bessel import (
    ORDER_MAX,
    BesselZeroTable,
    bessel_j,
    bessel_j_prime,
    bessel_zero,
    default_zero_table,
    radial_orthogonality_check,
)
from .config import DEFAULT_TOLERANCES, RunConfig, load_config
from .diskquad import (
    DEFAULT_NR,
    DEFAULT_NTHETA,
    QuadratureRule,
    disk_integral,
    inner_product_H,
    inner_product_values,
    make_rule,
    norm2,
)
from .errors import (
    ConfigurationError,
    DegeneracyError,
    DomainError,
    FormatError,
    IllConditioningError,
    MetamonoError,
    NumericError,
    OverflowGuardError,
)
from .evolution import (
    GROWTH_CAP,
    WaveState,
    evolve_eval,
    initial_time_derivative,
    mode_emergence,
    timemt_residual,
    wick_wave_residual,
)
from .expansion import ExpansionState, convergence_profile, project, reconstruct, reconstruction
from .fieldio import (
    NODE_TOLERANCE,
    parse_field_csv,
    read_coeffs_csv,
    read_field_csv,
    write_coeffs_csv,
    write_field_csv,
    write_gram_csv,
    write_pgm,
    write_zeros_csv,
)
from .gram import (
    GramReport,
    analytic_inner,
    block_gram_analytic,
    block_indices,
    cross_inner_analytic,
    gram_matrix,
    gram_schmidt_coefficients,
    norm2_analytic,
    orthonormalize_block,
    values_on_rule,
)
from .quatnum import (
    COMPONENT_NAMES,
    ONE,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    conj_mul,
    left_mul_matrix,
    qabs,
    qabs2,
    qconj,
    qmul,
    quat,
    scalar_part,
    vector_part,
)
from .verify import CHECK_NAMES, CheckResult, VerificationReport, run_verify

__version__ = "0.1.0"

__all__ = [
    "BasisIndex",
    "BesselZeroTable",
    "CHECK_NAMES",
    "COMPONENT_NAMES",
    "CheckResult",
    "ConfigurationError",
    "DEFAULT_NR",
    "DEFAULT_NTHETA",
    "DEFAULT_TOLERANCES",
    "DegeneracyError",
    "DiskPoint",
    "DomainError",
    "ExpansionState",
    "FieldFunction",
    "FormatError",
    "GROWTH_CAP",
    "GramReport",
    "IllConditioningError",
    "MetamonoError",
    "NODE_TOLERANCE",
    "NumericError",
    "ONE",
    "ORDER_MAX",
    "OverflowGuardError",
    "QuadratureRule",
    "RunConfig",
    "UNIT_I",
    "UNIT_J",
    "UNIT_K",
    "VerificationReport",
    "WaveState",
    "analytic_inner",
    "basic_function",
    "bessel_j",
    "bessel_j_prime",
    "bessel_zero",
    "block_gram_analytic",
    "block_indices",
    "combination",
    "complete_metamonogenic",
    "completed_function",
    "component_field",
    "conj_mul",
    "convergence_profile",
    "cross_inner_analytic",
    "default_zero_table",
    "dirac_residual",
    "disk_integral",
    "eval_F",
    "eval_F_split",
    "eval_Fnm",
    "evolve_eval",
    "gram_matrix",
    "gram_schmidt_coefficients",
    "helmholtz_residual",
    "initial_time_derivative",
    "inner_product_H",
    "inner_product_values",
    "left_mul_matrix",
    "load_config",
    "make_rule",
    "mode_emergence",
    "norm2",
    "norm2_analytic",
    "orthonormalize_block",
    "parse_field_csv",
    "project",
    "qabs",
    "qabs2",
    "qconj",
    "qmul",
    "quat",
    "radial_orthogonality_check",
    "read_coeffs_csv",
    "read_field_csv",
    "reconstruct",
    "reconstruction",
    "run_verify",
    "scalar_part",
    "standard_function",
    "timemt_residual",
    "values_on_rule",
    "vector_part",
    "wick_wave_residual",
    "write_coeffs_csv",
    "write_field_csv",
    "write_gram_csv",
    "write_pgm",
    "write_zeros_csv",
]
