import numpy as np
import pytest

from mcdecomp.ir import entangling_gate_histogram, mcrx, mcx, validate_circuit
from mcdecomp.schemes import (
    SchemeError,
    borrowed_ladder,
    burnable_ladder,
    generalized_ladder,
    half_split_borrowed_x,
    half_split_zeroed,
    n_ancilla_ladder,
    su2_split,
)
from mcdecomp.sim import circuit_unitary, gate_unitary, phase_aligned_deviation
from mcdecomp.verify import _basis_ladder_check, exact_deviation, restricted_deviation


def ideal_mcrx(n, theta):
    return gate_unitary(mcrx(list(range(n)), n, theta), n + 1)


class TestSu2Split:
    def test_n1_gate_counts(self):
        c = su2_split(1, 0.9)
        hist = entangling_gate_histogram(c)
        assert hist == {2: 2}
        assert sum(1 for g in c.gates if g.arity == 1) == 4

    def test_theta_zero_is_identity(self):
        u = circuit_unitary(su2_split(2, 0.0))
        assert phase_aligned_deviation(u, np.eye(8)) < 1e-12

    def test_n2_matches_direct_gate(self):
        u = circuit_unitary(su2_split(2, 1.3))
        assert phase_aligned_deviation(u, ideal_mcrx(2, 1.3)) < 1e-10

    def test_rejects_zero_controls(self):
        with pytest.raises(SchemeError):
            su2_split(0, 0.5)


class TestHalfSplitZeroed:
    def test_n5_control_counts(self):
        # ceil(5/2) = 3 controls on the outer pair; the middle rotation takes
        # floor(5/2) + 1 = 3 controls (second half plus the ancilla)
        c = half_split_zeroed(5, 0.4)
        sizes = sorted(len(g.controls) for g in c.gates)
        assert sizes == [3, 3, 3]

    def test_n2_control_counts(self):
        sizes = sorted(len(g.controls) for g in half_split_zeroed(2, 0.4).gates)
        assert sizes == [1, 1, 2]

    def test_restricted_equivalence(self):
        for n in (2, 3, 4, 5):
            c = half_split_zeroed(n, 0.73)
            assert restricted_deviation(c, mcrx(list(range(n)), n, 0.73), n + 1) < 1e-10


class TestBorrowedLadder:
    def test_counts(self):
        assert len(borrowed_ladder(5).gates) == 12
        assert len(borrowed_ladder(3).gates) == 4
        assert len(borrowed_ladder(7).gates) == 20

    def test_k3_exact_for_all_borrowed_states(self):
        c = borrowed_ladder(3)
        assert c.width == 5
        assert exact_deviation(c, mcx(list(range(3)), 3)) < 1e-12

    def test_requires_enough_borrowed(self):
        with pytest.raises(SchemeError):
            borrowed_ladder(5, borrowed=[6])


class TestNAncillaLadder:
    def test_toffoli_counts_after_expansion(self):
        # the middle C^2(Rx) expands to two Toffolis
        for n, want in ((4, 6), (5, 8)):
            c = n_ancilla_ladder(n, 0.2)
            hist = entangling_gate_histogram(c)
            assert hist[3] + 2 == want + 1  # 2n-3 raw 3-line gates incl. the C2Rx

    def test_restricted_equivalence_n3(self):
        c = n_ancilla_ladder(3, 0.7)
        assert restricted_deviation(c, mcrx(list(range(3)), 3, 0.7), 4) < 1e-10


class TestHalfSplitBorrowedX:
    def test_control_multisets(self):
        assert sorted(len(g.controls) for g in half_split_borrowed_x(6).gates) == [3, 3, 4, 4]
        assert sorted(len(g.controls) for g in half_split_borrowed_x(3).gates) == [2, 2, 2, 2]

    def test_n4_exact(self):
        c = half_split_borrowed_x(4)
        assert c.width == 6
        assert exact_deviation(c, mcx(list(range(4)), 4)) < 1e-12


class TestGeneralizedLadder:
    def test_m3_matches_borrowed_ladder(self):
        a = generalized_ladder(5, 3)
        b = borrowed_ladder(5)
        assert len(a.gates) == len(b.gates) == 12

    def test_m4_k7_rung_shape(self):
        c = generalized_ladder(7, 4)
        assert all(len(g.controls) <= 3 for g in c.gates)
        assert max(len(g.controls) for g in c.gates) == 3

    def test_m4_k5_exact(self):
        # ceil((5-3)/2) = 1 borrowed carry line
        c = generalized_ladder(5, 4)
        assert c.width == 7
        assert exact_deviation(c, mcx(list(range(5)), 5)) < 1e-12

    def test_m_validation(self):
        with pytest.raises(SchemeError):
            generalized_ladder(5, 2)


class TestBurnableLadder:
    def test_counts(self):
        assert len(burnable_ladder(5).gates) == 4
        assert len(burnable_ladder(3).gates) == 2

    def test_basis_action(self):
        for n in (3, 4):
            assert _basis_ladder_check(n) < 1e-9

    def test_ancillas_marked_burnable(self):
        c = burnable_ladder(4)
        assert all(regime == "burnable" for _, regime in c.ancilla)


def test_all_scheme_circuits_validate():
    circuits = [
        su2_split(3, 0.1),
        half_split_zeroed(4, 0.1),
        borrowed_ladder(4),
        n_ancilla_ladder(4, 0.1),
        half_split_borrowed_x(4),
        generalized_ladder(6, 4),
        burnable_ladder(4),
    ]
    for c in circuits:
        assert validate_circuit(c) is None
