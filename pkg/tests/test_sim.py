import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcdecomp.ir import Circuit, Gate, NEG0, ccx, cx, h, mcrx, mcx, rx, ry, rz, x
from mcdecomp.sim import (
    SimulationError,
    Statevector,
    allclose_up_to_global_phase,
    apply_circuit,
    apply_gate,
    bits_to_index,
    circuit_unitary,
    phase_aligned_deviation,
    sample,
)


def test_x_flips_zero():
    s = apply_gate(Statevector.zero(1), x(0))
    assert abs(s.amplitudes[1] - 1) < 1e-12


def test_ccx_on_110():
    s = apply_gate(Statevector.basis(3, (1, 1, 0)), ccx(0, 1, 2))
    assert abs(s.amplitudes[bits_to_index((1, 1, 1))] - 1) < 1e-12


def test_rx_pi_gives_minus_i_one():
    s = apply_gate(Statevector.zero(1), rx(0, np.pi))
    assert abs(s.amplitudes[1] - (-1j)) < 1e-12
    assert abs(s.amplitudes[0]) < 1e-12


def test_open_control_fires_on_zero():
    g = Gate("mcx", (1,), ((0, NEG0),))
    s = apply_gate(Statevector.zero(2), g)
    assert abs(s.amplitudes[bits_to_index((0, 1))] - 1) < 1e-12


def test_empty_circuit_unitary_is_identity():
    assert np.allclose(circuit_unitary(Circuit(2, 3, ())), np.eye(8))


def test_width_limit_enforced():
    with pytest.raises(SimulationError):
        circuit_unitary(Circuit(2, 13, ()))


def test_apply_gate_rejects_out_of_range():
    with pytest.raises(SimulationError):
        apply_gate(Statevector.zero(2), x(4))


def test_apply_matches_unitary_times_vector():
    rng = np.random.default_rng(5)
    gates = (h(0), ccx(0, 1, 3), mcrx([2, 3], 1, 0.77), rz(2, 0.3), mcx([0, (1, NEG0)], 2))
    c = Circuit(2, 4, gates)
    amps = rng.normal(size=16) + 1j * rng.normal(size=16)
    amps /= np.linalg.norm(amps)
    s = Statevector(amps, 4)
    direct = apply_circuit(s, c).amplitudes
    via_matrix = circuit_unitary(c) @ amps
    assert np.max(np.abs(direct - via_matrix)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_norm_preserved_under_random_gates(seed):
    rng = np.random.default_rng(seed)
    width = 4
    s = Statevector.zero(width)
    for _ in range(40):
        kind = rng.integers(0, 4)
        lines = rng.permutation(width)
        if kind == 0:
            g = rx(int(lines[0]), float(rng.uniform(-3, 3)))
        elif kind == 1:
            g = h(int(lines[0]))
        elif kind == 2:
            g = mcx([int(lines[0]), int(lines[1])], int(lines[2]))
        else:
            g = mcrx([int(lines[0])], int(lines[1]), float(rng.uniform(-3, 3)))
        s = apply_gate(s, g)
    assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-9


def test_sample_deterministic_and_concentrated():
    s = apply_gate(Statevector.zero(1), x(0))
    assert sample(s, 100, seed=1) == ["1"] * 100
    u = apply_gate(Statevector.zero(1), h(0))
    draws = sample(u, 100_000, seed=2)
    ones = draws.count("1")
    assert abs(ones - 50_000) < 5 * np.sqrt(100_000 * 0.25)
    assert sample(u, 50, seed=3) == sample(u, 50, seed=3)


def test_phase_alignment():
    a = np.diag([1, 1j])
    assert allclose_up_to_global_phase(a, np.exp(0.7j) * a, atol=1e-12)
    assert phase_aligned_deviation(a, np.diag([1, -1j])) > 0.5
