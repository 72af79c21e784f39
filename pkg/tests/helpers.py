"""Shared test utilities: random states and dense gate constructions."""

import numpy as np

from sawtooth_echo import StateVector


def random_state(n_q: int, rng: np.random.Generator) -> StateVector:
    amps = rng.standard_normal(1 << n_q) + 1j * rng.standard_normal(1 << n_q)
    return StateVector(n_q, amps / np.linalg.norm(amps))


def random_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def dense_single_qubit(n_q: int, target: int, u: np.ndarray) -> np.ndarray:
    """kron(I, u, I) with qubit 1 as the most significant factor."""
    left = np.eye(1 << (target - 1))
    right = np.eye(1 << (n_q - target))
    return np.kron(np.kron(left, u), right)


def dense_controlled_phase(n_q: int, control: int, target: int, phase: float) -> np.ndarray:
    dim = 1 << n_q
    diag = np.ones(dim, dtype=complex)
    for j in range(dim):
        c_bit = (j >> (n_q - control)) & 1
        t_bit = (j >> (n_q - target)) & 1
        if c_bit and t_bit:
            diag[j] = np.exp(1j * phase)
    return np.diag(diag)


def dense_phase_shift(n_q: int, target: int, phase: float) -> np.ndarray:
    dim = 1 << n_q
    diag = np.ones(dim, dtype=complex)
    for j in range(dim):
        if (j >> (n_q - target)) & 1:
            diag[j] = np.exp(1j * phase)
    return np.diag(diag)
