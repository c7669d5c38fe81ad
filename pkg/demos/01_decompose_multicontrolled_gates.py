"""Decompose multi-controlled rotations into different native gate sets.

Walks one C^5(Rx) through every supported (gate set, ancilla budget) pair,
prints the entangling-gate histograms next to the closed-form table, and
verifies one of the circuits against the dense matrix oracle.
"""
import numpy as np

from mcdecomp.decompose import decompose
from mcdecomp.ir import (
    AncillaBudget,
    GateSetSpec,
    entangling_gate_histogram,
    entangling_total,
    mcrx,
)
from mcdecomp.metrics import exact_count_zeroed
from mcdecomp.verify import restricted_deviation

N = 5
THETA = np.pi / 3
gate = mcrx(list(range(N)), N, THETA)

print(f"Decomposing C^{N}(Rx({THETA:.3f})) under zeroed ancilla budgets\n")
print(f"{'gate set':>8} {'budget':>7} {'entangling':>11} {'closed form':>12}   histogram")
for family in ("s2_2", "s2_3"):
    for budget in ("one", "n"):
        circuit = decompose(gate, GateSetSpec(family), AncillaBudget(budget))
        total = entangling_total(circuit)
        closed = exact_count_zeroed(N, family, budget)
        hist = dict(sorted(entangling_gate_histogram(circuit).items()))
        print(f"{family:>8} {budget:>7} {total:>11} {closed:>12}   {hist}")

print("\nQutrit counts are closed-form only (no synthesis):")
for n in range(1, 8):
    print(f"  C^{n}(Rx): {exact_count_zeroed(n, 's3_2', 'none')} two-qutrit gates")

circuit = decompose(gate, GateSetSpec("s2_2"), AncillaBudget("one"))
dev = restricted_deviation(circuit, gate, N + 1)
print(f"\nMatrix oracle, CNOT-level circuit vs ideal C^5(Rx): max deviation {dev:.2e}")

print("\nBurnable budgets trade restored ancillas for fewer gates:")
for family in ("s2_2", "s2_3"):
    for budget in ("one", "n"):
        circuit = decompose(gate, GateSetSpec(family), AncillaBudget(budget, "burnable"))
        print(f"  {family}/{budget}: {entangling_total(circuit)} entangling "
              f"(vs {exact_count_zeroed(N, family, budget)} zeroed)")
