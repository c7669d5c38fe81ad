import numpy as np
import pytest

from mcdecomp.decompose import DecomposeError, compile_partial_mixer, decompose
from mcdecomp.ir import (
    AncillaBudget,
    GateSetSpec,
    NEG0,
    count_tuple,
    entangling_total,
    mcrx,
    mcx,
    single_qudit_total,
    validate_circuit,
)
from mcdecomp.metrics import exact_count_zeroed
from mcdecomp.sim import circuit_unitary, gate_unitary
from mcdecomp.verify import restricted_deviation

COLUMNS = [("s2_2", "one"), ("s2_3", "one"), ("s2_2", "n"), ("s2_3", "n")]


@pytest.mark.parametrize("family,budget", COLUMNS)
def test_counts_match_closed_form_to_n12(family, budget):
    for n in range(1, 13):
        c = decompose(mcrx(list(range(n)), n, 0.6), GateSetSpec(family), AncillaBudget(budget))
        assert validate_circuit(c) is None
        assert entangling_total(c) == exact_count_zeroed(n, family, budget), (family, budget, n)


def test_named_base_cases():
    assert entangling_total(
        decompose(mcrx([0, 1, 2], 3, 0.5), GateSetSpec("s2_2"), AncillaBudget("one"))
    ) == 18
    assert entangling_total(
        decompose(mcrx([0, 1, 2, 3], 4, 0.5), GateSetSpec("s2_3"), AncillaBudget("one"))
    ) == 10
    assert entangling_total(
        decompose(mcrx([0, 1, 2, 3], 4, 0.5), GateSetSpec("s2_2"), AncillaBudget("n"))
    ) == 24


def test_c2rx_s23_is_two_toffolis_and_exact():
    c = decompose(mcrx([0, 1], 2, 1.1), GateSetSpec("s2_3"), AncillaBudget("n"))
    assert entangling_total(c) == 2
    assert single_qudit_total(c) == 4
    u = circuit_unitary(c)
    assert np.max(np.abs(u - gate_unitary(mcrx([0, 1], 2, 1.1), 3))) < 1e-10


@pytest.mark.parametrize("family,budget", COLUMNS)
def test_zeroed_unitaries_restricted(family, budget):
    rng = np.random.default_rng(3)
    for n in range(1, 6):
        theta = float(rng.uniform(0, 2 * np.pi))
        g = mcrx(list(range(n)), n, theta)
        c = decompose(g, GateSetSpec(family), AncillaBudget(budget))
        assert restricted_deviation(c, g, n + 1) < 1e-8


def test_open_controls_expand_to_x_pairs():
    g = mcrx([(0, NEG0), (1, "+")], 2, 0.4)
    c = decompose(g, GateSetSpec("s2_3"), AncillaBudget("n"))
    xs = [gg for gg in c.gates if gg.kind == "x"]
    assert len(xs) == 2 and all(gg.targets == (0,) for gg in xs)
    assert restricted_deviation(c, g, 3) < 1e-10


def test_unsupported_combinations_rejected():
    g = mcrx([0, 1, 2], 3, 0.4)
    with pytest.raises(DecomposeError):
        decompose(g, GateSetSpec("s3_2"), AncillaBudget("one"))
    with pytest.raises(DecomposeError):
        decompose(g, GateSetSpec("s2_2"), AncillaBudget("one", "borrowed"))
    with pytest.raises(DecomposeError):
        decompose(mcrx([], 0, 0.4) if False else mcrx([0], 1, 0.4),
                  GateSetSpec("s2_m", m=4), AncillaBudget("one"))


BURNABLE_TUPLES = {
    ("s2_2", "one", "rx"): lambda n: (16 * n + 20, 16 * n - 6),
    ("s2_2", "one", "x"): lambda n: (8 * n + 8, 8 * n - 4),
    ("s2_2", "n", "rx"): lambda n: (8 * n - 8, 6 * n - 6),
    ("s2_2", "n", "x"): lambda n: (8 * n - 8, 6 * n - 6),
    ("s2_3", "one", "rx"): lambda n: (4, 2, 8 * n - 24),
    ("s2_3", "one", "x"): lambda n: (0, 0, 4 * n - 12),
    ("s2_3", "n", "rx"): lambda n: (6, 2, n - 2),
    ("s2_3", "n", "x"): lambda n: (0, 0, n - 1),
}


@pytest.mark.parametrize("family,budget,kind", list(BURNABLE_TUPLES))
def test_burnable_histograms_near_table(family, budget, kind):
    want_fn = BURNABLE_TUPLES[(family, budget, kind)]
    for n in (20, 40):
        g = mcrx(list(range(n)), n, 0.8) if kind == "rx" else mcx(list(range(n)), n)
        c = decompose(g, GateSetSpec(family), AncillaBudget(budget, "burnable"))
        assert validate_circuit(c) is None
        got = count_tuple(c, 3 if family == "s2_3" else 2)
        want = want_fn(n)
        assert all(abs(a - b) <= 32 for a, b in zip(got, want)), (got, want)


def test_burnable_mixer_pair_restores_ancillas():
    for family in ("s2_2", "s2_3"):
        for budget in ("one", "n"):
            c = compile_partial_mixer(4, 0.9, GateSetSpec(family),
                                      AncillaBudget(budget, "burnable"))
            assert restricted_deviation(c, mcrx(list(range(4)), 4, 0.9), 5) < 1e-8


def test_decompose_remaps_to_gate_lines():
    g = mcrx([4, 2], 0, 0.3)
    c = decompose(g, GateSetSpec("s2_3"), AncillaBudget("n"))
    used = set()
    for gg in c.gates:
        used.update(gg.lines)
    assert {0, 2, 4} <= used
    assert restricted_deviation(c, g, 5) < 1e-10
