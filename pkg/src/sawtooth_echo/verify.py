"""Built-in verification suite: gate programs against dense oracles,
measure fixtures, and the noiseless-echo identity."""

import math
from dataclasses import dataclass

import numpy as np

from .echo import EchoConfig, run_trace
from .engine import BoundProgram
from .measures import (
    bell_density,
    concurrence,
    eof,
    von_neumann_entropy,
    werner_state,
)
from .oracle import align_global_phase, dense_map_unitary, dft_matrix, program_unitary
from .program import MapParams, map_program, qft_program
from .state import StateVector


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_map_program_matches_oracle(kick_sign: int = 1) -> CheckResult:
    """Ideal one-iteration program vs the dense matrix, n_q = 2..5, K = 5."""
    worst = 0.0
    for n_q in (2, 3, 4, 5):
        program = map_program(MapParams(n_q, 5.0), kick_sign=kick_sign)
        aligned = align_global_phase(program_unitary(program), dense_map_unitary(n_q, 5.0))
        worst = max(worst, float(np.abs(aligned - dense_map_unitary(n_q, 5.0)).max()))
    return CheckResult(
        name="map-program-vs-dense-oracle",
        passed=worst < 1e-10,
        detail=f"max entry deviation {worst:.3e} (tolerance 1e-10)",
    )


def check_qft_matches_dft() -> CheckResult:
    dev = 0.0
    for n_q in (2, 3):
        dev = max(
            dev, float(np.abs(program_unitary(qft_program(n_q)) - dft_matrix(n_q)).max())
        )
    return CheckResult(
        name="qft-program-vs-dft-matrix",
        passed=dev < 1e-10,
        detail=f"max entry deviation {dev:.3e} (tolerance 1e-10)",
    )


def check_measure_fixtures() -> CheckResult:
    bell_c = concurrence(bell_density())
    bell_e = eof(bell_c)
    mixed = np.eye(4, dtype=complex) / 4.0
    mixed_c = concurrence(mixed)
    mixed_s = von_neumann_entropy(mixed)
    ok = (
        abs(bell_c - 1.0) < 1e-12
        and abs(bell_e - 1.0) < 1e-12
        and mixed_c == 0.0
        and abs(mixed_s - 2.0) < 1e-12
    )
    return CheckResult(
        name="measure-fixtures",
        passed=ok,
        detail=(
            f"Bell C={bell_c:.12f} E={bell_e:.12f}; "
            f"maximally mixed C={mixed_c:.1e} S={mixed_s:.12f}"
        ),
    )


def check_werner_sweep(n_points: int = 50) -> CheckResult:
    """Concurrence over the Werner family vs the closed form max(0,(3p-1)/2)."""
    worst = 0.0
    for i in range(n_points):
        p = i / (n_points - 1)
        expected = max(0.0, (3.0 * p - 1.0) / 2.0)
        worst = max(worst, abs(concurrence(werner_state(p)) - expected))
    return CheckResult(
        name="werner-concurrence-sweep",
        passed=worst < 1e-10,
        detail=f"max deviation {worst:.3e} over {n_points} mixing values",
    )


def check_noiseless_echo(n_q: int = 6, t_r: int = 10) -> CheckResult:
    records = run_trace(
        EchoConfig(n_q=n_q, epsilon=0.0, t_r=t_r, realizations=1, workers=1)
    )
    final = records[-1]
    ok = (
        abs(final.e_mean - 1.0) < 1e-10
        and final.s_mean < 1e-10
        and final.f_mean > 1.0 - 1e-10
    )
    return CheckResult(
        name="noiseless-echo-identity",
        passed=ok,
        detail=(
            f"n_q={n_q} t_r={t_r}: |E-1|={abs(final.e_mean - 1.0):.3e} "
            f"S={final.s_mean:.3e} 1-f={1.0 - final.f_mean:.3e}"
        ),
    )


def check_noisy_norm_preservation(n_q: int = 6, t_r: int = 20) -> CheckResult:
    """Unitary noise must keep the state normalized over a full experiment."""
    params = MapParams(n_q, 5.0)
    amps = np.zeros(1 << n_q, dtype=np.complex128)
    amps[0] = amps[3 << (n_q - 2)] = math.sqrt(0.5)
    forward = BoundProgram(map_program(params), amps)
    backward = BoundProgram(map_program(params, "backward"), amps)
    rng = np.random.default_rng(np.random.SeedSequence([7, t_r, 0]))
    for _ in range(t_r):
        forward.apply_noisy(rng, 0.03)
    for _ in range(t_r):
        backward.apply_noisy(rng, 0.03)
    drift = StateVector(n_q, amps).norm_error()
    return CheckResult(
        name="noisy-norm-preservation",
        passed=drift < 1e-10,
        detail=f"norm drift {drift:.3e} over {2 * t_r} noisy iterations",
    )


def run_checks(flip_kick_sign: bool = False) -> list:
    """All verification checks; flip_kick_sign corrupts the kick phase as a
    negative control (the oracle match must then fail)."""
    return [
        check_map_program_matches_oracle(kick_sign=-1 if flip_kick_sign else 1),
        check_qft_matches_dft(),
        check_measure_fixtures(),
        check_werner_sweep(),
        check_noiseless_echo(),
        check_noisy_norm_preservation(),
    ]
