"""Dense statevector simulation over 2-level registers.

Serves as the correctness oracle for decompositions and the backend for the
QAOA experiments.  Line 0 is the most significant bit of the basis index, so
the bitstring of basis state ``b`` is ``format(b, f"0{width}b")`` with
character ``i`` belonging to line ``i``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .ir import Circuit, Gate, NEG0, POS1, POS2

MAX_UNITARY_WIDTH = 12


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class Statevector:
    """Normalized complex amplitude vector over 2^width basis states."""

    amplitudes: np.ndarray
    width: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.width,):
            raise SimulationError(f"expected {2**self.width} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-9:
            raise SimulationError(f"state norm {norm} deviates from 1 by more than 1e-9")
        object.__setattr__(self, "amplitudes", amps)

    @staticmethod
    def zero(width: int) -> "Statevector":
        amps = np.zeros(2**width, dtype=complex)
        amps[0] = 1.0
        return Statevector(amps, width)

    @staticmethod
    def basis(width: int, bits) -> "Statevector":
        amps = np.zeros(2**width, dtype=complex)
        amps[bits_to_index(bits)] = 1.0
        return Statevector(amps, width)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_json(self) -> str:
        return json.dumps(
            {"width": self.width, "amplitudes": [[a.real, a.imag] for a in self.amplitudes]}
        )


def bits_to_index(bits) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | int(b)
    return idx


def index_to_bits(idx: int, width: int) -> tuple[int, ...]:
    return tuple((idx >> (width - 1 - i)) & 1 for i in range(width))


def control_mask(width: int, controls) -> np.ndarray:
    """Boolean mask over basis indices where every control is satisfied."""
    idx = np.arange(2**width)
    mask = np.ones(len(idx), dtype=bool)
    for line, pol in controls:
        bit = (idx >> (width - 1 - line)) & 1
        if pol == POS1:
            mask &= bit == 1
        elif pol == NEG0:
            mask &= bit == 0
        elif pol == POS2:
            raise SimulationError("qutrit controls cannot be simulated on a 2-level register")
        else:
            raise SimulationError(f"unknown polarity {pol!r}")
    return mask


def _apply_gate_inplace(amps: np.ndarray, gate: Gate, width: int) -> None:
    """Apply a gate to raw amplitudes in place; amps is 1-D or (2^w, batch)."""
    target = gate.targets[0]
    tbit = 1 << (width - 1 - target)
    idx = np.arange(2**width)
    sel = control_mask(width, gate.controls) if gate.controls else np.ones(2**width, dtype=bool)
    sel0 = idx[sel & ((idx & tbit) == 0)]
    sel1 = sel0 | tbit

    a0, a1 = amps[sel0].copy(), amps[sel1].copy()
    if gate.kind in ("x", "mcx"):
        amps[sel0], amps[sel1] = a1, a0
        return
    m = gate.matrix1q()
    amps[sel0] = m[0, 0] * a0 + m[0, 1] * a1
    amps[sel1] = m[1, 0] * a0 + m[1, 1] * a1


def _apply_gate_array(amps: np.ndarray, gate: Gate, width: int) -> np.ndarray:
    out = amps.copy()
    _apply_gate_inplace(out, gate, width)
    return out


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Return gate . state; multi-controlled gates are applied natively."""
    for line in gate.lines:
        if not 0 <= line < state.width:
            raise SimulationError(f"gate line {line} exceeds width {state.width}")
    return Statevector(_apply_gate_array(state.amplitudes, gate, state.width), state.width)


def apply_circuit(state: Statevector, circuit: Circuit) -> Statevector:
    amps = state.amplitudes.copy()
    for g in circuit.gates:
        _apply_gate_inplace(amps, g, state.width)
    return Statevector(amps, state.width)


def circuit_unitary(c: Circuit, width: int | None = None) -> np.ndarray:
    """Dense unitary of the whole circuit (product of gate matrices in order)."""
    w = c.width if width is None else width
    if w > MAX_UNITARY_WIDTH:
        raise SimulationError(f"width {w} exceeds dense-unitary limit {MAX_UNITARY_WIDTH}")
    mat = np.eye(2**w, dtype=complex)
    for g in c.gates:
        _apply_gate_inplace(mat, g, w)
    return mat


def gate_unitary(g: Gate, width: int) -> np.ndarray:
    if width > MAX_UNITARY_WIDTH:
        raise SimulationError(f"width {width} exceeds dense-unitary limit {MAX_UNITARY_WIDTH}")
    mat = np.eye(2**width, dtype=complex)
    _apply_gate_inplace(mat, g, width)
    return mat


def circuit_columns(c: Circuit, columns) -> np.ndarray:
    """Apply the circuit to the given basis-state columns only.

    Returns a (2^width, len(columns)) matrix; much cheaper than the full
    unitary when only a subspace of inputs matters.
    """
    if c.width > MAX_UNITARY_WIDTH + 4:
        raise SimulationError(f"width {c.width} too large for dense columns")
    columns = np.asarray(list(columns), dtype=int)
    mat = np.zeros((2**c.width, len(columns)), dtype=complex)
    mat[columns, np.arange(len(columns))] = 1.0
    for g in c.gates:
        _apply_gate_inplace(mat, g, c.width)
    return mat


def sample(state: Statevector, shots: int, seed: int | None = None) -> list[str]:
    """Draw i.i.d. bitstrings from |amplitude|^2; deterministic for fixed seed."""
    if shots < 1:
        raise SimulationError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    probs = state.probabilities()
    probs = probs / probs.sum()
    draws = rng.choice(len(probs), size=shots, p=probs)
    return [format(d, f"0{state.width}b") for d in draws]


def phase_aligned_deviation(a: np.ndarray, b: np.ndarray) -> float:
    """min over global phase of the elementwise max deviation |a - e^{i phi} b|."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise SimulationError(f"shape mismatch {a.shape} vs {b.shape}")
    k = np.argmax(np.abs(b))
    ref = b.flat[k]
    if abs(ref) < 1e-12:
        return float(np.max(np.abs(a - b)))
    phase = (a.flat[k] / ref)
    mag = abs(phase)
    if mag < 1e-12:
        return float(np.max(np.abs(a - b)))
    phase /= mag
    return float(np.max(np.abs(a - phase * b)))


def allclose_up_to_global_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-8) -> bool:
    return phase_aligned_deviation(a, b) <= atol
