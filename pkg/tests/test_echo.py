"""Echo protocol: initial state, noiseless identity, reproducibility."""

import math

import numpy as np
import pytest

from sawtooth_echo import (
    EchoConfig,
    EchoRecord,
    concurrence,
    initial_state,
    measure_state,
    partial_trace_12,
    run_echo_curve,
    run_trace,
    von_neumann_entropy,
)


def test_initial_state_two_qubits():
    state = initial_state(2)
    np.testing.assert_allclose(
        state.amps, np.array([1, 0, 0, 1]) / math.sqrt(2), atol=1e-15
    )


def test_initial_state_support():
    state = initial_state(5)
    nonzero = np.nonzero(state.amps)[0]
    np.testing.assert_array_equal(nonzero, [0, 24])  # |00000> and |11000>
    assert state.amps[0] == pytest.approx(1 / math.sqrt(2))
    assert state.norm_error() < 1e-15


def test_initial_state_measures():
    state = initial_state(4)
    rho = partial_trace_12(state)
    assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)
    measures = measure_state(state, state)
    assert measures.fidelity == pytest.approx(1.0, abs=1e-12)
    assert measures.eof == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        initial_state(1)


@pytest.mark.parametrize("n_q", [4, 7, 10])
def test_noiseless_echo_identity(n_q):
    records = run_trace(
        EchoConfig(n_q=n_q, epsilon=0.0, t_r=20, realizations=1, workers=1)
    )
    assert len(records) == 41
    final = records[-1]
    assert abs(final.e_mean - 1.0) < 1e-10
    assert final.s_mean < 1e-10
    assert final.f_mean > 1 - 1e-10


def test_trace_records_shape_and_t0():
    records = run_trace(
        EchoConfig(n_q=3, epsilon=0.02, t_r=4, realizations=3, workers=1)
    )
    assert [r.t for r in records] == list(range(9))
    first = records[0]
    assert first.e_mean == pytest.approx(1.0, abs=1e-12)
    assert first.f_mean == pytest.approx(1.0, abs=1e-12)
    assert first.s_mean == pytest.approx(0.0, abs=1e-12)
    assert first.e_std == 0.0


def test_trace_reproducible_and_worker_independent():
    config = dict(n_q=4, epsilon=0.03, t_r=5, realizations=6, master_seed=42)
    a = run_trace(EchoConfig(**config, workers=1))
    b = run_trace(EchoConfig(**config, workers=1))
    c = run_trace(EchoConfig(**config, workers=2))
    assert a == b
    assert a == c


def test_echo_curve_reproducible_and_grid_consistent():
    config = dict(n_q=4, epsilon=0.02, realizations=5, master_seed=7)
    curve = run_echo_curve(EchoConfig(**config, t_r_grid=(1, 3, 6), workers=1))
    assert [r.t for r in curve] == [2, 6, 12]
    again = run_echo_curve(EchoConfig(**config, t_r_grid=(1, 3, 6), workers=2))
    assert curve == again
    # a grid point's result is keyed by its reversal time, not its position
    sub = run_echo_curve(EchoConfig(**config, t_r_grid=(3,), workers=1))
    assert sub[0] == curve[1]


def test_echo_curve_matches_trace_endpoint():
    # the echo-curve point at t_r equals the last trace record for the same
    # seed: identical streams, identical dynamics
    config = dict(n_q=4, epsilon=0.02, realizations=4, master_seed=9)
    trace = run_trace(EchoConfig(**config, t_r=6, workers=1))
    curve = run_echo_curve(EchoConfig(**config, t_r_grid=(6,), workers=1))
    assert curve[0] == trace[-1]


def test_noiseless_curve_is_flat():
    curve = run_echo_curve(
        EchoConfig(n_q=5, epsilon=0.0, t_r_grid=(1, 4, 9), realizations=1, workers=1)
    )
    for record in curve:
        assert abs(record.e_mean - 1.0) < 1e-10
        assert record.f_mean > 1 - 1e-10


def test_realization_halves_agree():
    # means over realizations [0, 60) and [60, 120) agree within 3 combined
    # standard errors
    config = dict(n_q=5, epsilon=0.02, t_r=6, master_seed=13)
    full = run_trace(EchoConfig(**config, realizations=120))
    half = 60
    final_full = full[-1]

    def run_slice(first):
        # reuse the protocol by shifting the realization window via seeds:
        # realizations are keyed (seed, t_r, index), so slices of the full
        # run are reproduced by running with the same seed and reading the
        # per-index observables; easiest is to re-run both halves fully
        from sawtooth_echo.echo import _echo_block

        block = _echo_block((5, 5.0, 0.02, 6, 13, first, half, False))
        return block

    a = run_slice(0)
    b = run_slice(half)
    for col in range(3):
        mean_a, mean_b = a[:, col].mean(), b[:, col].mean()
        se = math.sqrt(a[:, col].var(ddof=1) / half + b[:, col].var(ddof=1) / half)
        assert abs(mean_a - mean_b) <= 3 * se + 1e-12
    # and the full-run mean is the average of the halves
    assert final_full.e_mean == pytest.approx(
        (a[:, 0].mean() + b[:, 0].mean()) / 2, abs=1e-12
    )


def test_t_r_zero_trace():
    records = run_trace(EchoConfig(n_q=3, epsilon=0.5, t_r=0, realizations=2))
    assert len(records) == 1
    assert records[0].e_mean == pytest.approx(1.0, abs=1e-12)


@pytest.mark.slow
def test_entanglement_recovered_only_at_echo_time():
    # chaos destroys the pairwise entanglement within a few iterations and
    # only the reversal brings it back
    records = run_trace(
        EchoConfig(n_q=5, epsilon=0.01, t_r=20, realizations=50, master_seed=3)
    )
    echo_value = records[-1].e_mean
    mid = max(r.e_mean for r in records if 5 <= r.t <= 35)
    assert echo_value > 0.8
    assert echo_value > mid + 0.5


def test_fidelity_non_increasing_in_epsilon():
    shared = dict(n_q=4, t_r_grid=(2, 5), realizations=40, master_seed=5, workers=1)
    weak = run_echo_curve(EchoConfig(epsilon=0.01, **shared))
    strong = run_echo_curve(EchoConfig(epsilon=0.03, **shared))
    for w, s in zip(weak, strong):
        spread = 2 * math.sqrt(w.f_std**2 + s.f_std**2) / math.sqrt(40)
        assert s.f_mean <= w.f_mean + spread
        assert s.e_mean <= w.e_mean + spread


@pytest.mark.slow
def test_echo_curve_shape_matches_observed_decay():
    # mean echo decays monotonically (up to 2 sigma) and strong noise kills
    # it outright by t_e = 40
    curve = run_echo_curve(
        EchoConfig(
            n_q=7, epsilon=0.01, t_r_grid=tuple(range(1, 16)), realizations=60,
            master_seed=9,
        )
    )
    for a, b in zip(curve, curve[1:]):
        wiggle = 2 * math.sqrt(a.e_std**2 + b.e_std**2) / math.sqrt(60)
        assert b.e_mean <= a.e_mean + wiggle
    tail = run_echo_curve(
        EchoConfig(
            n_q=7, epsilon=0.04, t_r_grid=(20, 25, 30), realizations=60,
            master_seed=9,
        )
    )
    assert all(r.e_mean < 0.05 for r in tail)


def test_config_validation():
    with pytest.raises(ValueError):
        EchoConfig(n_q=1, epsilon=0.0, t_r=3)
    with pytest.raises(ValueError):
        EchoConfig(n_q=3, epsilon=-0.1, t_r=3)
    with pytest.raises(ValueError):
        EchoConfig(n_q=3, epsilon=0.1, t_r=3, realizations=0)
    with pytest.raises(ValueError):
        EchoConfig(n_q=3, epsilon=0.1, t_r_grid=())
    with pytest.raises(ValueError):
        EchoConfig(n_q=3, epsilon=0.1, t_r_grid=(3, 2))
    with pytest.raises(ValueError):
        run_trace(EchoConfig(n_q=3, epsilon=0.1, t_r_grid=(1, 2)))
    with pytest.raises(ValueError):
        run_echo_curve(EchoConfig(n_q=3, epsilon=0.1, t_r=4))


def test_record_is_plain_data():
    record = EchoRecord(3, 0.5, 0.1, 1.0, 0.2, 0.9, 0.05)
    assert record.t == 3
    assert record.f_std == 0.05
