"""Fidelity thresholds between gate sets and the gate decomposition cost.

Reproduces the threshold grid for a few hardware assumptions, then shows the
GDC of one 100-node workload as entangling fidelity varies, including where
a native Toffoli starts to beat CNOT-only compilation.
"""
import numpy as np

from mcdecomp.driver import mixer_histogram
from mcdecomp.graphs import erdos_renyi
from mcdecomp.ir import GateSetSpec
from mcdecomp.metrics import (
    gateset_dominates,
    gdc,
    mixer_entangling_count,
    threshold_chain,
    threshold_requirement,
)

print("Threshold chains (largest-gate fidelity needed to beat the set below):\n")
for f1, f2 in ((0.95, 0.90), (0.999, 0.99), (0.9999, 0.999)):
    chain = threshold_chain(f1, f2, 8)
    cells = "  ".join(f"F{m}*={100 * v:6.2f}%" for m, v in chain.thresholds)
    print(f"  F1={f1}, F2={f2}: {cells}")

print("\nRequirements:")
for m in range(3, 9):
    print(f"  m={m}: {threshold_requirement(m)}")

graph = erdos_renyi(100, 6, seed=1)
hist = mixer_histogram(graph, 1)
print(f"\n100-node degree-6 workload: {sum(hist.values())} partial mixers")

print(f"\n{'F':>8} {'s2_2/n':>10} {'s2_3/n':>10} {'s3_2':>10}")
for f in (0.99, 0.995, 0.999, 0.9999):
    row = []
    for family, budget in (("s2_2", "n"), ("s2_3", "n"), ("s3_2", "none")):
        total = sum(c * mixer_entangling_count(ell, family, budget)
                    for ell, c in hist.items())
        row.append(gdc({2: total}, {2: f}))
    print(f"{f:>8} " + " ".join(f"{v:10.2f}" for v in row))

print("\nWhere does a native Toffoli start to pay off against (F1,F2)=(0.999,0.99)?")
cnot_set = GateSetSpec("s2_2", fidelities=((1, 0.999), (2, 0.99)))
for f3 in (0.95, 0.97, 0.978, 0.985, 0.99):
    toffoli_set = GateSetSpec("s2_3", fidelities=((1, 0.999), (2, 0.99), (3, f3)))
    verdict = "beats" if gateset_dominates(toffoli_set, cnot_set, "rx", "one") else "loses to"
    print(f"  F3 = {f3:.3f}: s2_3 {verdict} s2_2")
