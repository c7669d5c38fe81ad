"""Lowering from the Toffoli level to the {single-qubit, CX} gate set.

``toffoli_to_cnot`` rewrites a circuit whose entangling gates are CX, CCX,
and one/two-controlled Rx into CNOTs plus single-qubit gates.  Identical
Toffoli pairs whose in-between gates provably commute with a relative-phase
diagonal are lowered to 3-CX Margolus gates; everything else gets the exact
6-CX form.  On the ladder constructions this reproduces the closed-form CNOT
counts of the zeroed-ancilla tables.
"""
from __future__ import annotations

import numpy as np

from .ir import Circuit, Gate, NEG0, POS1, ry, rz, x
from .gadgets import (
    compact_c2rx_gates,
    crx_gates,
    margolus_gates,
    toffoli_cx_gates,
)

DIAGONAL_1Q = ("rz", "t", "tdg", "s", "sdg")


class LoweringError(ValueError):
    pass


def _commutes_with_relative_diagonal(g: Gate, lines: set[int]) -> bool:
    """True if g provably commutes with a diagonal supported on `lines`.

    Diagonals commute with anything that uses those lines only as controls,
    and with diagonal single-qubit gates on them.
    """
    touched = set(g.lines) & lines
    if not touched:
        return True
    if g.arity == 1:
        return g.kind in DIAGONAL_1Q
    return not (set(g.targets) & lines)


def _margolus_pairs(gates: tuple[Gate, ...]) -> set[int]:
    """Indices of CCX gates lowered as relative-phase (Margolus) Toffolis.

    Pairs up identical positive-control CCX gates when every gate between
    them commutes with the Margolus diagonal; the two relative phases then
    cancel exactly (the gate is an involution).
    """
    paired: set[int] = set()
    n = len(gates)
    for i, g in enumerate(gates):
        if i in paired or not _is_plain_ccx(g):
            continue
        lines = set(g.lines)
        for j in range(i + 1, n):
            if gates[j] == g and j not in paired:
                paired.add(i)
                paired.add(j)
                break
            if not _commutes_with_relative_diagonal(gates[j], lines):
                break
    return paired


def _is_plain_ccx(g: Gate) -> bool:
    return (
        g.kind == "mcx"
        and len(g.controls) == 2
        and all(pol == POS1 for _, pol in g.controls)
    )


def _conjugate_open_controls(g: Gate) -> tuple[list[Gate], Gate, list[Gate]]:
    """Rewrite negative controls as X-conjugated positive ones."""
    flips = [x(line) for line, pol in g.controls if pol == NEG0]
    pos = Gate(
        g.kind,
        g.targets,
        tuple((line, POS1) for line, _ in g.controls),
        g.angle,
        g.matrix,
    )
    return flips, pos, flips


def toffoli_to_cnot(c: Circuit) -> Circuit:
    """Lower a Toffoli-level circuit to the {single-qubit, CX} basis."""
    expanded: list[Gate] = []
    for g in c.gates:
        if g.arity <= 1 or (g.kind == "mcx" and len(g.controls) == 1
                            and all(p == POS1 for _, p in g.controls)):
            expanded.append(g)
            continue
        pre, pos, post = _conjugate_open_controls(g)
        expanded.extend(pre)
        expanded.append(pos)
        expanded.extend(post)

    gates = tuple(expanded)
    relative = _margolus_pairs(gates)
    out: list[Gate] = []
    for i, g in enumerate(gates):
        if g.arity <= 1:
            out.append(g)
        elif g.kind == "mcx" and len(g.controls) == 1:
            out.append(g)
        elif g.kind == "mcx" and len(g.controls) == 2:
            (a, _), (b, _) = g.controls
            t = g.targets[0]
            if i in relative:
                out.extend(margolus_gates(a, b, t))
            else:
                out.extend(toffoli_cx_gates(a, b, t))
        elif g.kind == "mcrx" and len(g.controls) == 1:
            out.extend(crx_gates(g.controls[0][0], g.targets[0], g.angle))
        elif g.kind == "mcrx" and len(g.controls) == 2:
            (a, _), (b, _) = g.controls
            out.extend(_c2rx_via_su2(a, b, g.targets[0], g.angle))
        else:
            raise LoweringError(
                f"gate with {len(g.controls)} controls is not in the Toffoli-level basis"
            )
    return Circuit(c.dim, c.width, tuple(out), c.ancilla)


def _c2rx_via_su2(c1: int, c2: int, t: int, theta: float) -> list[Gate]:
    """C^2(Rx) as the rotation split around two exact Toffolis (12 CX)."""
    return (
        [rz(t, np.pi / 2), ry(t, theta / 2)]
        + toffoli_cx_gates(c1, c2, t)
        + [ry(t, -theta / 2)]
        + toffoli_cx_gates(c1, c2, t)
        + [rz(t, -np.pi / 2)]
    )


def c2rx_compact(c1: int, c2: int, t: int, theta: float) -> list[Gate]:
    """Standalone 6-CX C^2(Rx); re-exported for the decomposition routes."""
    return compact_c2rx_gates(c1, c2, t, theta)
