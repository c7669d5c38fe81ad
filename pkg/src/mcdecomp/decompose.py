"""Dispatcher: rewrite a multi-controlled X/Rx into a chosen gate set and budget.

Zeroed budgets reproduce the exact entangling counts of the gate-count table
(one ancilla: 16n-8 CNOTs / 8n-24 Toffolis for n >= 5; n ancillae: 6n / 2n-2
for n >= 3, plus the hand base cases).  Burnable budgets use compute-only
constructions matching the asymptotic count tuples.  Qutrit synthesis is not
supported; that gate set is counts-only.
"""
from __future__ import annotations

from .ir import (
    AncillaBudget,
    BURNABLE,
    Circuit,
    Gate,
    GateSetSpec,
    NEG0,
    N_PER_CONTROLS,
    ONE,
    POS1,
    POS2,
    S2_2,
    S2_3,
    S3_2,
    ZEROED,
    ccx,
    cx,
    x,
)
from .gadgets import (
    compact_c2rx_gates,
    crx_gates,
    margolus_gates,
    mcx_cx_gates,
    su2_split_gates,
    toffoli_cx_gates,
    vchain_dirty_cx_gates,
)
from .schemes import _chain_toffolis, _ladder_toffolis


class DecomposeError(ValueError):
    pass


def _mcx_s23(controls, target: int, dirty) -> list[Gate]:
    """C^k(X) at the Toffoli level: borrowed-ancilla ladder for k >= 3."""
    controls = list(controls)
    k = len(controls)
    if k == 1:
        return [cx(controls[0], target)]
    if k == 2:
        return [ccx(controls[0], controls[1], target)]
    dirty = list(dirty)
    if len(dirty) < k - 2:
        raise DecomposeError(f"need {k - 2} borrowed lines for a {k}-control ladder")
    return _ladder_toffolis(controls, dirty[: k - 2], target)


def _mcx_s22(controls, target: int, dirty) -> list[Gate]:
    return mcx_cx_gates(controls, target, list(dirty))


def _split_halves(n: int) -> tuple[list[int], list[int]]:
    return list(range((n + 1) // 2)), list(range((n + 1) // 2, n))


def _small_rx(n: int, theta: float, family: str) -> list[Gate]:
    """Base cases n <= 2, identical across budgets."""
    if n == 1:
        if family == S2_3:
            return su2_split_gates([0], 1, theta)
        return crx_gates(0, 1, theta)
    if family == S2_3:
        return su2_split_gates([0, 1], 2, theta)
    return compact_c2rx_gates(0, 1, 2, theta)


def _zeroed_one_rx(n: int, theta: float, family: str) -> tuple[list[Gate], int]:
    """C^n(Rx) with one zeroed ancilla (half split through the ancilla)."""
    if n <= 2:
        return _small_rx(n, theta, family), 0
    target, anc = n, n + 1
    top, bottom = _split_halves(n)
    mid_c = bottom + [anc]
    if family == S2_3:
        outer = _mcx_s23(top, anc, dirty=bottom)
        middle = su2_split_gates(
            mid_c, target, theta, mcx_gates=lambda: _mcx_s23(mid_c, target, dirty=top)
        )
    else:
        if len(top) == 2:
            outer = margolus_gates(top[0], top[1], anc)
        else:
            outer = vchain_dirty_cx_gates(top, bottom, anc)
        if len(mid_c) == 2:
            mk = lambda: toffoli_cx_gates(mid_c[0], mid_c[1], target)
        else:
            mk = lambda: vchain_dirty_cx_gates(mid_c, top, target)
        middle = su2_split_gates(mid_c, target, theta, mcx_gates=mk)
    return outer + middle + outer, 1


def _zeroed_n_rx(n: int, theta: float, family: str) -> tuple[list[Gate], int]:
    """C^n(Rx) with n-2 zeroed ancillas (compute chain around a C^2(Rx))."""
    if n <= 2:
        return _small_rx(n, theta, family), 0
    target = n
    ancillas = list(range(n + 1, n + 1 + (n - 2)))
    chain_ccx = _chain_toffolis(range(n), ancillas)
    mid_c = [n - 1, ancillas[-1]]
    if family == S2_3:
        middle = su2_split_gates(
            mid_c, target, theta, mcx_gates=lambda: [ccx(mid_c[0], mid_c[1], target)]
        )
        return chain_ccx + middle + chain_ccx[::-1], n - 2
    chain: list[Gate] = []
    for g in chain_ccx:
        (a, _), (b, _) = g.controls
        chain += margolus_gates(a, b, g.targets[0])
    uncompute = [g.inverse() for g in reversed(chain)]
    middle = su2_split_gates(
        mid_c, target, theta, mcx_gates=lambda: toffoli_cx_gates(mid_c[0], mid_c[1], target)
    )
    return chain + middle + uncompute, n - 2


def _zeroed_mcx(n: int, family: str, budget_count: str) -> tuple[list[Gate], int]:
    """C^n(X) under a zeroed budget (outer compute pair plus middle MCX)."""
    target = n
    build = _mcx_s23 if family == S2_3 else _mcx_s22
    if n <= 2:
        return build(range(n), target, []), 0
    if budget_count == ONE:
        anc = n + 1
        top, bottom = _split_halves(n)
        outer = build(top, anc, bottom)
        middle = build(bottom + [anc], target, top)
        return outer + middle + outer, 1
    ancillas = list(range(n + 1, n + 1 + (n - 2)))
    chain_ccx = _chain_toffolis(range(n), ancillas)
    middle = [ccx(n - 1, ancillas[-1], target)]
    if family == S2_3:
        return chain_ccx + middle + chain_ccx[::-1], n - 2
    chain: list[Gate] = []
    for g in chain_ccx:
        (a, _), (b, _) = g.controls
        chain += margolus_gates(a, b, g.targets[0])
    mid = toffoli_cx_gates(n - 1, ancillas[-1], target)
    return chain + mid + [g.inverse() for g in reversed(chain)], n - 2


def _burnable_rx_one(n: int, theta: float, family: str) -> tuple[list[Gate], int]:
    """C^n(Rx), one burnable ancilla: AND all controls into it, then C(Rx).

    The C^n(X) onto the ancilla is split in half through the idle rotation
    target (restored by the four-gate borrowed split); the ancilla keeps the
    AND afterwards.
    """
    if n <= 2:
        return _small_rx(n, theta, family), 0
    target, anc = n, n + 1
    top, bottom = _split_halves(n)
    build = _mcx_s23 if family == S2_3 else _mcx_s22
    first = build(top, target, bottom)  # target line doubles as the borrowed carry
    second = build(bottom + [target], anc, top)
    return first + second + first + second + crx_gates(anc, target, theta), 1


def _burnable_x_one(n: int, family: str) -> tuple[list[Gate], int]:
    """C^n(X), one burnable ancilla: compute-only half split (no restore)."""
    target, anc = n, n + 1
    build = _mcx_s23 if family == S2_3 else _mcx_s22
    if n <= 2:
        return build(range(n), target, []), 0
    top, bottom = _split_halves(n)
    first = build(top, anc, bottom)
    second = build(bottom + [anc], target, top)
    return first + second, 1


def _burnable_rx_n(n: int, theta: float, family: str) -> tuple[list[Gate], int]:
    """C^n(Rx), n-2 burnable ancillas: compute chain plus C^2(Rx), no uncompute."""
    if n <= 2:
        return _small_rx(n, theta, family), 0
    target = n
    ancillas = list(range(n + 1, n + 1 + (n - 2)))
    chain_ccx = _chain_toffolis(range(n - 1), ancillas)
    mid_c = [n - 1, ancillas[-1]]
    if family == S2_3:
        middle = su2_split_gates(
            mid_c, target, theta, mcx_gates=lambda: [ccx(mid_c[0], mid_c[1], target)]
        )
        return chain_ccx + middle, n - 2
    chain: list[Gate] = []
    for g in chain_ccx:
        (a, _), (b, _) = g.controls
        chain += toffoli_cx_gates(a, b, g.targets[0])
    return chain + compact_c2rx_gates(mid_c[0], mid_c[1], target, theta), n - 2


def _burnable_x_n(n: int, family: str) -> tuple[list[Gate], int]:
    """C^n(X), n-2 burnable ancillas: the n-1 Toffoli compute ladder."""
    target = n
    build = _mcx_s23 if family == S2_3 else _mcx_s22
    if n <= 2:
        return build(range(n), target, []), 0
    ancillas = list(range(n + 1, n + 1 + (n - 2)))
    ladder = _chain_toffolis(range(n), ancillas) + [ccx(n - 1, ancillas[-1], target)]
    if family == S2_2:
        out: list[Gate] = []
        for g in ladder:
            (a, _), (b, _) = g.controls
            out += toffoli_cx_gates(a, b, g.targets[0])
        return out, n - 2
    return ladder, n - 2


def decompose(gate: Gate, gateset: GateSetSpec, budget: AncillaBudget) -> Circuit:
    """Rewrite a MultiControlledX/Rx into the gate set under the ancilla budget.

    The output acts on the gate's own lines with ancilla lines appended after
    the highest line in use.  Open (|0>) controls are expanded by X
    conjugation before dispatch and count as single-qudit gates.
    """
    if gate.kind not in ("mcx", "mcrx"):
        raise DecomposeError("decompose expects a multi-controlled X or Rx gate")
    if gateset.family == S3_2:
        raise DecomposeError("qutrit gate set is counts-only; use the count tables")
    if gateset.family not in (S2_2, S2_3):
        raise DecomposeError(f"unsupported gate set {gateset.family!r} for synthesis")
    if any(pol == POS2 for _, pol in gate.controls):
        raise DecomposeError("|2>-controls cannot be synthesized on a qubit register")
    n = len(gate.controls)
    if n == 0:
        raise DecomposeError("gate has no controls; apply the bare rotation directly")

    routes = {
        (ONE, ZEROED, "mcrx"): lambda: _zeroed_one_rx(n, gate.angle, gateset.family),
        (N_PER_CONTROLS, ZEROED, "mcrx"): lambda: _zeroed_n_rx(n, gate.angle, gateset.family),
        (ONE, ZEROED, "mcx"): lambda: _zeroed_mcx(n, gateset.family, ONE),
        (N_PER_CONTROLS, ZEROED, "mcx"): lambda: _zeroed_mcx(n, gateset.family, N_PER_CONTROLS),
        (ONE, BURNABLE, "mcrx"): lambda: _burnable_rx_one(n, gate.angle, gateset.family),
        (N_PER_CONTROLS, BURNABLE, "mcrx"): lambda: _burnable_rx_n(n, gate.angle, gateset.family),
        (ONE, BURNABLE, "mcx"): lambda: _burnable_x_one(n, gateset.family),
        (N_PER_CONTROLS, BURNABLE, "mcx"): lambda: _burnable_x_n(n, gateset.family),
    }
    key = (budget.count, budget.regime, gate.kind)
    if key not in routes:
        raise DecomposeError(
            f"unsupported (gate set, budget) combination: {gateset.family}, "
            f"{budget.count} {budget.regime}, {gate.kind}"
        )
    canon_gates, n_anc = routes[key]()
    return _remap(gate, canon_gates, n_anc, budget.regime)


def _remap(gate: Gate, canon_gates: list[Gate], n_anc: int, regime: str) -> Circuit:
    """Map a canonical-layout route output onto the gate's actual lines."""
    n = len(gate.controls)
    width = max(gate.lines) + 1
    mapping = {i: line for i, (line, _) in enumerate(gate.controls)}
    mapping[n] = gate.targets[0]
    anc_lines = []
    for j in range(n_anc):
        mapping[n + 1 + j] = width + j
        anc_lines.append(width + j)

    def map_gate(g: Gate) -> Gate:
        return Gate(
            g.kind,
            tuple(mapping[t] for t in g.targets),
            tuple((mapping[line], pol) for line, pol in g.controls),
            g.angle,
            g.matrix,
        )

    flips = [x(line) for line, pol in gate.controls if pol == NEG0]
    gates = flips + [map_gate(g) for g in canon_gates] + flips
    return Circuit(
        2,
        width + n_anc,
        tuple(gates),
        ancilla=tuple((a, regime) for a in anc_lines),
    )


def compile_partial_mixer(n_controls: int, theta: float, gateset: GateSetSpec,
                          budget: AncillaBudget) -> Circuit:
    """Rotation-split mixer body with both MCX occurrences expanded.

    Under a burnable budget the second expansion is the mirror of the first,
    so the paired compute/uncompute restores the ancillas to |0>; zeroed
    budgets restore them within each expansion already.
    """
    n = n_controls
    target = n
    if gateset.family not in (S2_2, S2_3):
        raise DecomposeError(f"unsupported gate set {gateset.family!r} for synthesis")
    if n == 0:
        raise DecomposeError("mixer with no controls is a bare rotation")
    sub = decompose(mcx_gate := Gate("mcx", (target,), tuple((i, POS1) for i in range(n))),
                    gateset, budget)
    first = list(sub.gates)
    if budget.regime == BURNABLE:
        second = [g.inverse() for g in reversed(first)]
    else:
        second = first
    from .ir import ry, rz
    import numpy as np

    body = (
        [rz(target, np.pi / 2), ry(target, theta / 2)]
        + first
        + [ry(target, -theta / 2)]
        + second
        + [rz(target, -np.pi / 2)]
    )
    return Circuit(2, sub.width, tuple(body), sub.ancilla)
