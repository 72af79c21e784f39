"""Program application, ideal and with per-gate unitary noise.

Noise model (all errors unitary, uncorrelated between gates, redrawn on
every application including backward evolution):

* Hadamard: the rotation axis (1/sqrt(2), 0, 1/sqrt(2)) is tilted within
  the x-z plane by an angle drawn uniformly from [-eps, eps].
* Phase shift: the noisy primitive is diag(e^(i*d0), e^(i*(phase + d1)))
  with independent uniform d0, d1 in [-eps, eps] -- random phases on both
  diagonal entries.
* Controlled phase: the same noisy phase-shift primitive applied to the
  target, conditioned on the control qubit; the control-0 block stays
  untouched.
* Bit reversals are index bookkeeping and stay noise-free.

Draws are consumed in program order from a per-realization generator, so a
fixed (master seed, reversal time, realization) triple reproduces every
amplitude bit-for-bit.  eps = 0 short-circuits to the ideal kernels.
"""

import math
from dataclasses import dataclass

import numpy as np

from .program import BitReversal, ControlledPhase, GateProgram, Hadamard, PhaseShift
from .state import StateVector, bit_reversal_permutation

_INV_SQRT2 = math.sqrt(0.5)

#: uniform draws consumed per gate when noise is active
DRAWS_PER_GATE = {Hadamard: 1, ControlledPhase: 2, PhaseShift: 2, BitReversal: 0}


@dataclass(frozen=True)
class NoiseModel:
    """Perturbation strength plus the deterministic random-stream contract.

    Streams derive from SeedSequence([master_seed, *key]); distinct keys give
    statistically independent, individually reproducible generators.
    """

    epsilon: float
    master_seed: int = 0

    def __post_init__(self):
        if self.epsilon < 0.0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.master_seed < 0:
            raise ValueError(f"master_seed must be >= 0, got {self.master_seed}")

    def stream(self, *key: int) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence([int(self.master_seed), *(int(k) for k in key)])
        )


def tilted_hadamard(nu: float) -> np.ndarray:
    """Hadamard with its axis tilted by nu in the x-z plane (unit axis dotted
    with the Pauli vector, hence Hermitian, unitary, and self-inverse)."""
    c = math.cos(0.25 * math.pi + nu)
    s = math.sin(0.25 * math.pi + nu)
    return np.array([[s, c], [c, -s]], dtype=np.complex128)


def _bind_hadamard(amps, n_q, target):
    v = amps.reshape(-1, 2, 1 << (n_q - target))
    x0 = v[:, 0, :]
    x1 = v[:, 1, :]
    keep = np.empty_like(x0)
    work = np.empty_like(x0)

    def ideal():
        # (x0, x1) -> ((x0+x1)/sqrt2, (x0-x1)/sqrt2)
        np.add(x0, x1, out=keep)
        np.subtract(x0, x1, out=x1)
        np.multiply(keep, _INV_SQRT2, out=x0)
        np.multiply(x1, _INV_SQRT2, out=x1)

    def noisy(d):
        # axis tilted by d[0]: (x0, x1) -> (s*x0 + c*x1, c*x0 - s*x1)
        angle = 0.25 * math.pi + d[0]
        c = math.cos(angle)
        s = math.sin(angle)
        keep[...] = x0
        np.multiply(x1, c, out=work)
        np.multiply(x0, s, out=x0)
        np.add(x0, work, out=x0)
        np.multiply(x1, s, out=x1)
        np.multiply(keep, c, out=work)
        np.subtract(work, x1, out=x1)

    return ideal, noisy, 1


def _bind_controlled_phase(amps, n_q, control, target, phase):
    i, l = (control, target) if control < target else (target, control)
    v = amps.reshape(1 << (i - 1), 2, 1 << (l - i - 1), 2, -1)
    block = v[:, 1, :, 1, :]
    factor = complex(math.cos(phase), math.sin(phase))
    base = np.array([0.0, phase])
    if control == i:
        slab = v[:, 1, :, :, :]  # axes (pre, mid, target bit, post)
        shape = (1, 1, 2, 1)
    else:
        slab = v[:, :, :, 1, :]  # axes (pre, target bit, mid, post)
        shape = (1, 2, 1, 1)

    def ideal():
        np.multiply(block, factor, out=block)

    def noisy(d):
        np.multiply(slab, np.exp(1j * (base + d)).reshape(shape), out=slab)

    return ideal, noisy, 2


def _bind_phase_shift(amps, n_q, target, phase):
    v = amps.reshape(-1, 2, 1 << (n_q - target))
    block = v[:, 1, :]
    factor = complex(math.cos(phase), math.sin(phase))
    base = np.array([0.0, phase])

    def ideal():
        np.multiply(block, factor, out=block)

    def noisy(d):
        np.multiply(v, np.exp(1j * (base + d)).reshape(1, 2, 1), out=v)

    return ideal, noisy, 2


def _bind_bit_reversal(amps, n_q):
    perm = bit_reversal_permutation(n_q)

    def ideal():
        amps[:] = amps[perm]

    return ideal, lambda d: ideal(), 0


class BoundProgram:
    """A program's kernels bound to one amplitude buffer.

    Binding precomputes every reshaped view once, so repeated applications
    (thousands per echo experiment) do only arithmetic.  The buffer must be
    the C-contiguous complex128 array the views were taken from.
    """

    __slots__ = ("amps", "draw_count", "_ops")

    def __init__(self, program: GateProgram, amps: np.ndarray):
        if amps.shape != (1 << program.n_q,) or amps.dtype != np.complex128:
            raise ValueError("buffer must be a complex128 vector of length 2**n_q")
        self.amps = amps
        ops = []
        for gate in program.gates:
            if isinstance(gate, Hadamard):
                ops.append(_bind_hadamard(amps, program.n_q, gate.target))
            elif isinstance(gate, ControlledPhase):
                ops.append(
                    _bind_controlled_phase(
                        amps, program.n_q, gate.control, gate.target, gate.phase
                    )
                )
            elif isinstance(gate, PhaseShift):
                ops.append(_bind_phase_shift(amps, program.n_q, gate.target, gate.phase))
            elif isinstance(gate, BitReversal):
                ops.append(_bind_bit_reversal(amps, program.n_q))
            else:
                raise TypeError(f"unknown gate {gate!r}")
        self._ops = ops
        self.draw_count = sum(nd for _, _, nd in ops)

    def apply_ideal(self) -> None:
        for ideal, _, _ in self._ops:
            ideal()

    def apply_noisy(self, rng: np.random.Generator, epsilon: float) -> None:
        if epsilon == 0.0:
            self.apply_ideal()
            return
        draws = rng.uniform(-epsilon, epsilon, self.draw_count)
        pos = 0
        for _, noisy, nd in self._ops:
            if nd:
                noisy(draws[pos : pos + nd])
                pos += nd
            else:
                noisy(None)


def apply_program(program: GateProgram, state: StateVector) -> StateVector:
    """Apply the ideal program in place."""
    if program.n_q != state.n_q:
        raise ValueError("program and state have different qubit counts")
    BoundProgram(program, state.amps).apply_ideal()
    return state


def apply_noisy(
    program: GateProgram,
    state: StateVector,
    noise: NoiseModel,
    rng: np.random.Generator | None = None,
) -> StateVector:
    """Apply the program with fresh per-gate noise drawn from rng.

    Without an explicit generator the model's base stream is used; protocol
    code passes per-realization streams so runs are reproducible.
    """
    if program.n_q != state.n_q:
        raise ValueError("program and state have different qubit counts")
    BoundProgram(program, state.amps).apply_noisy(
        noise.stream() if rng is None else rng, noise.epsilon
    )
    return state
