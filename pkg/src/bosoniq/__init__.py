"""bosoniq: bosonic operators compiled to Pauli-string sums.

Four encodings (one register per particle holding a mode index, or one
register per mode holding an occupation; each one-hot or base-2), an exact
Fock-space oracle validating every compiled operator, staircase gate counts
with qubit-wise commuting measurement groups, and a sweep engine for
resource-comparison CSVs.
"""

__version__ = "0.1.0"

from ._accel import USING_NUMBA
from .encode import (
    density_correlation,
    encode_operator,
    encode_rdm_term,
    encode_transition_binary,
    encode_transition_unary,
    number_operator,
    number_power,
    u2q_local,
    u2q_operator_power,
)
from .layout import EncodingLayout, qubit_count
from .models import (
    BhmParams,
    GenericTensors,
    HoParams,
    bhm_tensors,
    build_bhm,
    build_generic,
    build_ho,
    ingest_tensors,
    v_klmn,
    write_tensors,
)
from .ops import (
    DensityCorrelation,
    LadderTerm,
    LocalOperator,
    NumberPower,
    OperatorSpec,
    SpecSchemaError,
    spec_from_json,
    spec_to_json,
)
from .oracle import (
    EmbeddingMap,
    FockBasis,
    exact_matrix,
    pauli_matrix,
    restricted_matrix,
    small_case_suite,
    verify,
)
from .pauli import (
    DimensionError,
    PauliString,
    PauliSum,
    collect,
    multiply,
    qubitwise_commutes,
    sums_close,
)
from .resources import (
    ResourceReport,
    analytic_counts,
    break_even_d,
    bwcp_partition,
    gate_counts,
    peephole_cancel,
)
from .sweep import SweepConfig, run_and_write, run_sweep

__all__ = [
    "__version__",
    "USING_NUMBA",
    "BhmParams",
    "DensityCorrelation",
    "DimensionError",
    "EmbeddingMap",
    "EncodingLayout",
    "FockBasis",
    "GenericTensors",
    "HoParams",
    "LadderTerm",
    "LocalOperator",
    "NumberPower",
    "OperatorSpec",
    "PauliString",
    "PauliSum",
    "ResourceReport",
    "SpecSchemaError",
    "SweepConfig",
    "analytic_counts",
    "bhm_tensors",
    "break_even_d",
    "build_bhm",
    "build_generic",
    "build_ho",
    "bwcp_partition",
    "collect",
    "density_correlation",
    "encode_operator",
    "encode_rdm_term",
    "encode_transition_binary",
    "encode_transition_unary",
    "exact_matrix",
    "gate_counts",
    "ingest_tensors",
    "multiply",
    "number_operator",
    "number_power",
    "pauli_matrix",
    "peephole_cancel",
    "qubit_count",
    "qubitwise_commutes",
    "restricted_matrix",
    "run_and_write",
    "run_sweep",
    "small_case_suite",
    "spec_from_json",
    "spec_to_json",
    "sums_close",
    "u2q_local",
    "u2q_operator_power",
    "v_klmn",
    "verify",
    "write_tensors",
]
