"""Forward-backward echo experiments on the noisy sawtooth map.

The register starts as a Bell pair on qubits 1, 2 tensored with |0...0>,
runs t_r noisy forward iterations and t_r noisy backward iterations (the
exact gate-by-gate inverse program, with fresh noise), and records pairwise
entanglement of formation, two-qubit entropy, and fidelity with the initial
state.  The echo occurs at t_e = 2*t_r.

Every (reversal time, realization) pair draws from an independent stream
keyed by (master_seed, t_r, realization), so individual realizations are
reproducible, grid points are uncorrelated, and results do not depend on
how work is split across processes.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import BoundProgram
from .measures import MeasureSet, concurrence, eof, von_neumann_entropy
from .program import MapParams, map_program
from .state import StateVector, fidelity, partial_trace_12


@dataclass(frozen=True)
class EchoConfig:
    """Parameters of one echo experiment (trace or echo-curve mode)."""

    n_q: int
    epsilon: float
    K: float = 5.0
    t_r: int | None = None
    t_r_grid: tuple | None = None
    realizations: int = 400
    master_seed: int = 0
    workers: int | None = None

    def __post_init__(self):
        if self.n_q < 2:
            raise ValueError(f"echo protocol needs n_q >= 2, got {self.n_q}")
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.realizations < 1:
            raise ValueError(f"realizations must be >= 1, got {self.realizations}")
        if self.master_seed < 0:
            raise ValueError(f"master_seed must be >= 0, got {self.master_seed}")
        if self.t_r is not None and self.t_r < 0:
            raise ValueError(f"t_r must be >= 0, got {self.t_r}")
        if self.t_r_grid is not None:
            grid = tuple(int(t) for t in self.t_r_grid)
            if not grid:
                raise ValueError("t_r grid must be nonempty")
            if any(t < 0 for t in grid):
                raise ValueError("t_r grid values must be >= 0")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError("t_r grid must be strictly increasing")
            object.__setattr__(self, "t_r_grid", grid)

    def resolved_workers(self) -> int:
        if self.workers is not None:
            if self.workers < 1:
                raise ValueError(f"workers must be >= 1, got {self.workers}")
            return self.workers
        return os.cpu_count() or 1


@dataclass(frozen=True)
class EchoRecord:
    """Mean and spread of the observables at one time point."""

    t: int
    e_mean: float
    e_std: float
    s_mean: float
    s_std: float
    f_mean: float
    f_std: float


def initial_state(n_q: int) -> StateVector:
    """(|00> + |11>)/sqrt(2) on qubits 1, 2 tensored with |0...0>."""
    if n_q < 2:
        raise ValueError(f"initial state needs n_q >= 2, got {n_q}")
    amps = np.zeros(1 << n_q, dtype=np.complex128)
    amps[0] = amps[3 << (n_q - 2)] = math.sqrt(0.5)
    return StateVector(n_q, amps)


def measure_state(state: StateVector, reference: StateVector) -> MeasureSet:
    """Concurrence, entanglement of formation, entropy, and fidelity."""
    rho = partial_trace_12(state)
    c = concurrence(rho)
    return MeasureSet(
        concurrence=c,
        eof=eof(c),
        entropy=von_neumann_entropy(rho),
        fidelity=fidelity(state, reference),
    )


def _record_measures(amps: np.ndarray, bell_index: int, out: np.ndarray) -> None:
    # fidelity against the initial state reduces to the two amplitudes on its
    # support: |<psi0|psi>|^2 = |amps[0] + amps[bell_index]|^2 / 2
    blocks = amps.reshape(4, -1)
    rho = blocks @ blocks.conj().T
    out[0] = eof(concurrence(rho))
    out[1] = von_neumann_entropy(rho)
    overlap = amps[0] + amps[bell_index]
    out[2] = 0.5 * (overlap.real * overlap.real + overlap.imag * overlap.imag)


def _echo_block(task) -> np.ndarray:
    """Observables for a block of realizations at one reversal time.

    Returns (count, 2*t_r+1, 3) when tracing every iteration, else
    (count, 3) with only the echo-time values.  Observable columns are
    (eof, entropy, fidelity).
    """
    n_q, K, epsilon, t_r, master_seed, first, count, record_trace = task
    params = MapParams(n_q, K)
    forward_program = map_program(params)
    amps = np.empty(1 << n_q, dtype=np.complex128)
    forward = BoundProgram(forward_program, amps)
    backward = BoundProgram(forward_program.inverse(), amps)
    bell_index = 3 << (n_q - 2)
    root_half = math.sqrt(0.5)
    steps = 2 * t_r + 1
    out = np.empty((count, steps, 3)) if record_trace else np.empty((count, 3))
    for b in range(count):
        rng = np.random.default_rng(
            np.random.SeedSequence([master_seed, t_r, first + b])
        )
        amps[:] = 0.0
        amps[0] = root_half
        amps[bell_index] = root_half
        if record_trace:
            _record_measures(amps, bell_index, out[b, 0])
            for t in range(1, t_r + 1):
                forward.apply_noisy(rng, epsilon)
                _record_measures(amps, bell_index, out[b, t])
            for t in range(t_r + 1, steps):
                backward.apply_noisy(rng, epsilon)
                _record_measures(amps, bell_index, out[b, t])
        else:
            for _ in range(t_r):
                forward.apply_noisy(rng, epsilon)
            for _ in range(t_r):
                backward.apply_noisy(rng, epsilon)
            _record_measures(amps, bell_index, out[b])
    return out


def _scatter(tasks, workers, costs):
    """Run tasks (expensive first) and return results in task order.

    Aggregation downstream folds realizations in index order, so the result
    is independent of scheduling.
    """
    results = [None] * len(tasks)
    if workers <= 1 or len(tasks) <= 1:
        for i, task in enumerate(tasks):
            results[i] = _echo_block(task)
        return results
    order = sorted(range(len(tasks)), key=lambda i: -costs[i])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {i: pool.submit(_echo_block, tasks[i]) for i in order}
        for i, future in futures.items():
            results[i] = future.result()
    return results


def _chunk_ranges(total: int, workers: int):
    chunks = min(total, max(4 * workers, 1))
    base, extra = divmod(total, chunks)
    ranges = []
    start = 0
    for i in range(chunks):
        size = base + (1 if i < extra else 0)
        ranges.append((start, size))
        start += size
    return ranges


def _aggregate(t: int, block: np.ndarray) -> EchoRecord:
    means = block.mean(axis=0)
    stds = block.std(axis=0)
    return EchoRecord(
        t=t,
        e_mean=float(means[0]),
        e_std=float(stds[0]),
        s_mean=float(means[1]),
        s_std=float(stds[1]),
        f_mean=float(means[2]),
        f_std=float(stds[2]),
    )


def run_trace(config: EchoConfig) -> list:
    """Observables after every iteration of one echo experiment,
    t = 0 .. 2*t_r, averaged over realizations."""
    if config.t_r is None:
        raise ValueError("trace mode needs t_r")
    workers = config.resolved_workers()
    tasks = [
        (
            config.n_q,
            config.K,
            config.epsilon,
            config.t_r,
            config.master_seed,
            first,
            count,
            True,
        )
        for first, count in _chunk_ranges(config.realizations, workers)
    ]
    costs = [task[6] * (2 * config.t_r + 1) for task in tasks]
    blocks = np.concatenate(_scatter(tasks, workers, costs), axis=0)
    return [_aggregate(t, blocks[:, t, :]) for t in range(2 * config.t_r + 1)]


def run_echo_curve(config: EchoConfig) -> list:
    """Echo-time observables across the reversal-time grid.

    Each grid point is an independent experiment; records carry t = 2*t_r.
    """
    if config.t_r_grid is None:
        raise ValueError("echo-curve mode needs t_r_grid")
    workers = config.resolved_workers()
    tasks = [
        (
            config.n_q,
            config.K,
            config.epsilon,
            t_r,
            config.master_seed,
            0,
            config.realizations,
            False,
        )
        for t_r in config.t_r_grid
    ]
    costs = [2 * t_r * config.realizations + 1 for t_r in config.t_r_grid]
    blocks = _scatter(tasks, workers, costs)
    return [
        _aggregate(2 * t_r, block) for t_r, block in zip(config.t_r_grid, blocks)
    ]
