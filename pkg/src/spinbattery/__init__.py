"""Spin-chain quantum battery simulation.

A battery is the ground or thermal state of a finite XYZ chain in a
transverse field; charging drives it with a local x-field. The package
computes the maximum extractable power, its quenched-disorder averages,
and the entanglement / order-parameter / fidelity diagnostics that trace
the power's structure back to the chain's phase diagram.
"""

from .analysis import (
    AdvantageResult,
    ScalingFit,
    ScanDirection,
    ThermalDiff,
    detect_first_jump,
    detect_jumps,
    find_jmax,
    ground_power_curve,
    scaling_fit,
    thermal_diff_map,
)
from .disorder import (
    DisorderStats,
    StatePrep,
    StatePrepKind,
    quenched_power,
)
from .dynamics import OptimizerConfig, PowerResult, evolve, power_max, work
from .errors import (
    AggregateFailureError,
    ConfigError,
    DegenerateSpectrumError,
    ResourceLimitError,
    SpinBatteryError,
    ValidationError,
)
from .linalg import (
    EigenDecomposition,
    eig_hermitian,
    kron_embed,
    lowest_eigenpairs,
    partial_trace,
    partial_transpose,
    unitary_exp,
    validate_density_matrix,
)
from .model import (
    DisorderSpec,
    DisorderTarget,
    ModelParams,
    NormalizedHamiltonian,
    build_charging,
    build_h0,
    charging_site_factor,
    normalize,
    sample_realization,
    uniform_chain,
)
from .observables import (
    EntanglementResult,
    OrderParams,
    fidelity_scan,
    middle_pair,
    middle_pair_entanglement,
    order_parameters,
)
from .states import (
    BiasKind,
    QuantumState,
    StateKind,
    SymmetryBias,
    bias_operator,
    ground_state,
    staggered_signs,
    thermal_state,
)

__version__ = "0.1.0"

__all__ = [
    "AdvantageResult",
    "AggregateFailureError",
    "BiasKind",
    "ConfigError",
    "DegenerateSpectrumError",
    "DisorderSpec",
    "DisorderStats",
    "DisorderTarget",
    "EigenDecomposition",
    "EntanglementResult",
    "ModelParams",
    "NormalizedHamiltonian",
    "OptimizerConfig",
    "OrderParams",
    "PowerResult",
    "QuantumState",
    "ResourceLimitError",
    "ScalingFit",
    "ScanDirection",
    "SpinBatteryError",
    "StateKind",
    "StatePrep",
    "StatePrepKind",
    "SymmetryBias",
    "ThermalDiff",
    "ValidationError",
    "bias_operator",
    "build_charging",
    "build_h0",
    "charging_site_factor",
    "detect_first_jump",
    "detect_jumps",
    "eig_hermitian",
    "evolve",
    "fidelity_scan",
    "find_jmax",
    "ground_power_curve",
    "ground_state",
    "kron_embed",
    "lowest_eigenpairs",
    "middle_pair",
    "middle_pair_entanglement",
    "normalize",
    "order_parameters",
    "partial_trace",
    "partial_transpose",
    "power_max",
    "quenched_power",
    "sample_realization",
    "scaling_fit",
    "staggered_signs",
    "thermal_diff_map",
    "thermal_state",
    "uniform_chain",
    "unitary_exp",
    "validate_density_matrix",
    "work",
]
