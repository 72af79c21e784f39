"""Noisy state-vector simulation of the quantum sawtooth map: entanglement
echoes of a Bell pair, two-qubit subsystem entropy, fidelity, and the
extraction of their decay laws."""

__version__ = "0.1.0"

from .echo import EchoConfig, EchoRecord, initial_state, measure_state, run_echo_curve, run_trace
from .engine import BoundProgram, NoiseModel, apply_noisy, apply_program, tilted_hadamard
from .fits import (
    FitResult,
    UnresolvedThreshold,
    entropy_rate,
    fidelity_rate,
    power_law_fit,
    threshold_time,
)
from .measures import (
    MeasureSet,
    bell_density,
    binary_entropy,
    concurrence,
    diagonal_ergodic_eof_check,
    eof,
    ergodic_entropy_reference,
    von_neumann_entropy,
    werner_state,
)
from .oracle import align_global_phase, dense_map_unitary, dft_matrix, program_unitary
from .program import (
    BitReversal,
    ControlledPhase,
    GateProgram,
    Hadamard,
    MapParams,
    PhaseShift,
    free_rotation_program,
    gates_per_iteration,
    map_program,
    qft_program,
    quadratic_phase_program,
)
from .scaling import ScalingConfig, analyze_curve, run_scaling, summarize_curves, summarize_points
from .state import (
    StateVector,
    apply_bit_reversal,
    apply_controlled_phase,
    apply_phase_shift,
    apply_single_qubit,
    bit_reversal_permutation,
    check_two_qubit_density,
    fidelity,
    partial_trace_12,
)

__all__ = [name for name in dir() if not name.startswith("_")]
