"""Constrained-QAOA ansatzes for maximum independent set.

The mixer applies a rotation on a node only when all of its neighbors are in
|0>, so starting from a feasible state the evolution never leaves the
independent-set subspace.  Three variants are built here: single-angle (one
mixer angle per layer), multi-angle (one per partial mixer), and the dynamic
ansatz with a tunable number of live parameters and a warm start.

The mixer parameter beta enters the circuit as a rotation by theta = 2*beta,
so one partial mixer equals I + (exp(-i beta X) - I) B where B projects the
neighbors onto |0...0>.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .ir import Circuit, Gate, Graph, mcx, rx, ry, rz, x
from .sim import Statevector, bits_to_index
from . import optimize as opt

SA = "sa"
MA = "ma"
DQVA = "dqva"
VARIANTS = (SA, MA, DQVA)


class AnsatzError(ValueError):
    pass


def partial_mixer(graph: Graph, node: int, theta: float) -> Circuit:
    """Mixer body for one node: rotation gated on all neighbors being |0>.

    Open controls are realized by X conjugation around two multi-controlled
    NOTs with the rotation split across them; an isolated node degenerates to
    a bare Rx.
    """
    if not 0 <= node < graph.n:
        raise AnsatzError(f"node {node} not in graph")
    nbrs = graph.neighbors(node)
    if not nbrs:
        return Circuit(2, graph.n, (rx(node, theta),))
    flips = [x(v) for v in nbrs]
    gates = (
        [rz(node, np.pi / 2)]
        + flips
        + [ry(node, theta / 2), mcx(nbrs, node), ry(node, -theta / 2), mcx(nbrs, node)]
        + flips
        + [rz(node, -np.pi / 2)]
    )
    return Circuit(2, graph.n, tuple(gates))


def phase_separator(graph: Graph, gamma: float) -> Circuit:
    """Diagonal phase rewarding Hamming weight, one Rz per node (up to global phase)."""
    return Circuit(2, graph.n, tuple(rz(i, gamma) for i in range(graph.n)))


def param_count(variant: str, p: int, n: int) -> int:
    if variant == SA:
        return 2 * p
    return p * (n + 1)


def layout_slots(variant: str, p: int, n: int):
    """Yield (round, kind, node) per full-layout slot; kind is 'beta' or 'gamma'."""
    for k in range(p):
        if variant == SA:
            yield k, "beta", None
            yield k, "gamma", None
        else:
            for i in range(n):
                yield k, "beta", i
            yield k, "gamma", None


def dqva_default_mask(p: int, n: int, nu: int, permutation, in_set=()) -> tuple[bool, ...]:
    """Allocate the nu live parameters across phase and mixer slots.

    Phase parameters are unmasked first (one per round), but never at the
    cost of leaving zero live mixers.  Mixer slots then fill in permutation
    order, skipping nodes already in the current independent set: their
    rotations could only remove them, so the slots are re-used for nodes
    still outside the set as it grows.
    """
    if nu < 1:
        raise AnsatzError("nu must be >= 1")
    total = p * (n + 1)
    mask = [False] * total
    n_gamma = min(p, nu - 1) if nu > 1 else 0
    live = 0
    for k in range(n_gamma):
        mask[k * (n + 1) + n] = True  # phase slot of round k
        live += 1
    blocked = {i for i, b in enumerate(in_set) if b}
    for k in range(p):
        for node in permutation:
            if live >= nu:
                break
            if node in blocked:
                continue
            if not mask[k * (n + 1) + node]:
                mask[k * (n + 1) + node] = True
                live += 1
    # if everything is already in the set, spill the leftovers into phases
    for k in range(n_gamma, p):
        if live >= nu:
            break
        mask[k * (n + 1) + n] = True
        live += 1
    return tuple(mask)


@dataclass(frozen=True)
class AnsatzSpec:
    """Which ansatz to build: variant, depth, parameters, ordering, and mask.

    ``params`` uses the full layout (see ``layout_slots``); for the dynamic
    variant ``mask`` marks the live slots and must have exactly ``nu`` set
    when ``nu`` is given.  ``warm_start`` must be an independent set.
    """

    variant: str
    p: int = 1
    params: tuple[float, ...] = ()
    permutation: tuple[int, ...] | None = None
    mask: tuple[bool, ...] | None = None
    warm_start: tuple[int, ...] | None = None
    nu: int | None = None

    def to_json(self) -> str:
        import json

        return json.dumps({
            "variant": self.variant,
            "p": self.p,
            "params": list(self.params),
            "permutation": list(self.permutation) if self.permutation is not None else None,
            "mask": list(self.mask) if self.mask is not None else None,
            "warm_start": "".join(map(str, self.warm_start)) if self.warm_start is not None else None,
            "nu": self.nu,
        })

    @staticmethod
    def from_json(text: str) -> "AnsatzSpec":
        import json

        d = json.loads(text)
        return AnsatzSpec(
            variant=d["variant"],
            p=d.get("p", 1),
            params=tuple(d.get("params", ())),
            permutation=tuple(d["permutation"]) if d.get("permutation") is not None else None,
            mask=tuple(bool(b) for b in d["mask"]) if d.get("mask") is not None else None,
            warm_start=tuple(int(ch) for ch in d["warm_start"]) if d.get("warm_start") else None,
            nu=d.get("nu"),
        )


def validate_spec(graph: Graph, spec: AnsatzSpec) -> None:
    if spec.variant not in VARIANTS:
        raise AnsatzError(f"unknown variant {spec.variant!r}")
    if spec.p < 1:
        raise AnsatzError("p must be >= 1")
    n = graph.n
    expect = param_count(spec.variant, spec.p, n)
    if spec.params and len(spec.params) != expect:
        raise AnsatzError(f"{spec.variant} with p={spec.p} needs {expect} params, got {len(spec.params)}")
    if spec.permutation is not None and sorted(spec.permutation) != list(range(n)):
        raise AnsatzError("permutation must order all nodes")
    if spec.mask is not None:
        if spec.variant != DQVA:
            raise AnsatzError("mask is only meaningful for the dynamic variant")
        if len(spec.mask) != expect:
            raise AnsatzError("mask length must match the full parameter layout")
        if spec.nu is not None and sum(spec.mask) != spec.nu:
            raise AnsatzError(f"mask must leave nu={spec.nu} live parameters")
    if spec.warm_start is not None:
        if len(spec.warm_start) != n:
            raise AnsatzError("warm start length must equal the node count")
        if not graph.is_independent(spec.warm_start):
            raise AnsatzError("warm start is not an independent set")


def build_ansatz(graph: Graph, spec: AnsatzSpec) -> Circuit:
    """Warm-start preparation followed by p (mixer layer, phase layer) blocks.

    Masked and zero-angle partial mixers emit no gates at all, which makes
    them exact no-ops.
    """
    validate_spec(graph, spec)
    n = graph.n
    sigma = spec.permutation or tuple(range(n))
    params = spec.params or (0.0,) * param_count(spec.variant, spec.p, n)
    mask = spec.mask
    gates: list[Gate] = []
    if spec.warm_start is not None:
        gates += [x(i) for i, b in enumerate(spec.warm_start) if b]
    for k in range(spec.p):
        if spec.variant == SA:
            beta, gamma = params[2 * k], params[2 * k + 1]
            for node in sigma:
                if beta != 0.0:
                    gates += partial_mixer(graph, node, 2 * beta).gates
            if gamma != 0.0:
                gates += phase_separator(graph, gamma).gates
        else:
            base = k * (n + 1)
            for node in sigma:
                if mask is not None and not mask[base + node]:
                    continue
                beta = params[base + node]
                if beta != 0.0:
                    gates += partial_mixer(graph, node, 2 * beta).gates
            gamma = params[base + n]
            if (mask is None or mask[base + n]) and gamma != 0.0:
                gates += phase_separator(graph, gamma).gates
    return Circuit(2, n, tuple(gates))


def objective_expectation(state: Statevector, graph: Graph) -> float:
    """Expected Hamming weight sum_i P(b_i = 1) of the measured bitstring."""
    if state.width != graph.n:
        raise AnsatzError("state width does not match the graph")
    return float(state.probabilities() @ _weights(graph.n))


def _weights(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    w = np.zeros(2**n, dtype=float)
    for b in range(n):
        w += (idx >> b) & 1
    return w


def infeasible_probability(amps: np.ndarray, graph: Graph) -> float:
    """Total probability mass outside the independent-set subspace."""
    return float(np.sum(np.abs(amps[_infeasible_mask(graph)]) ** 2))


@lru_cache(maxsize=256)
def _infeasible_mask(graph: Graph) -> np.ndarray:
    idx = np.arange(2**graph.n)
    bad = np.zeros(2**graph.n, dtype=bool)
    for u, v in graph.edges:
        bu = (idx >> (graph.n - 1 - u)) & 1
        bv = (idx >> (graph.n - 1 - v)) & 1
        bad |= (bu & bv).astype(bool)
    return bad


class AnsatzEngine:
    """Vectorized statevector evaluation of one ansatz configuration.

    Precomputes, per node, the index pairs on which the gated rotation acts
    (neighbors all |0>), so one mixer application is a couple of fancy-indexed
    updates instead of a gate-by-gate walk.  Cross-checked against the
    circuit path in the tests.
    """

    def __init__(self, graph: Graph, variant: str, p: int = 1,
                 permutation=None, mask=None, warm_start=None):
        self.graph = graph
        self.variant = variant
        self.p = p
        self.n = graph.n
        self.sigma = tuple(permutation) if permutation is not None else tuple(range(self.n))
        self.mask = tuple(mask) if mask is not None else None
        self.warm_start = tuple(warm_start) if warm_start is not None else (0,) * self.n
        idx = np.arange(2**self.n)
        self._pairs = {}
        for node in range(self.n):
            nb_bits = 0
            for v in graph.neighbors(node):
                nb_bits |= 1 << (self.n - 1 - v)
            tbit = 1 << (self.n - 1 - node)
            sel = idx[(idx & nb_bits) == 0]
            sel0 = sel[(sel & tbit) == 0]
            self._pairs[node] = (sel0, sel0 | tbit)
        self._w = _weights(self.n)
        self._layout = list(layout_slots(variant, p, self.n))
        total = len(self._layout)
        live = [i for i in range(total) if self.mask is None or self.mask[i]]
        self._live = live

    @property
    def live_param_count(self) -> int:
        return len(self._live)

    def full_params(self, live_values) -> np.ndarray:
        full = np.zeros(len(self._layout))
        full[self._live] = live_values
        return full

    def statevector(self, full_params) -> np.ndarray:
        amps = np.zeros(2**self.n, dtype=complex)
        amps[bits_to_index(self.warm_start)] = 1.0
        n = self.n
        params = np.asarray(full_params)
        for k in range(self.p):
            if self.variant == SA:
                beta, gamma = params[2 * k], params[2 * k + 1]
                betas = {node: beta for node in range(n)}
            else:
                base = k * (n + 1)
                betas = {}
                for node in range(n):
                    if self.mask is not None and not self.mask[base + node]:
                        continue
                    betas[node] = params[base + node]
                gamma = params[base + n]
                if self.mask is not None and not self.mask[base + n]:
                    gamma = 0.0
            for node in self.sigma:
                beta = betas.get(node)
                if beta is None or beta == 0.0:
                    continue
                sel0, sel1 = self._pairs[node]
                c, s = np.cos(beta), np.sin(beta)
                a0, a1 = amps[sel0], amps[sel1]
                amps[sel0] = c * a0 - 1j * s * a1
                amps[sel1] = c * a1 - 1j * s * a0
            if gamma != 0.0:
                amps = amps * np.exp(1j * gamma * self._w)
        return amps

    def statevector_live(self, live_values) -> np.ndarray:
        return self.statevector(self.full_params(live_values))

    def expectation(self, full_params) -> float:
        amps = self.statevector(full_params)
        return float((np.abs(amps) ** 2) @ self._w)

    def expectation_live(self, live_values) -> float:
        return self.expectation(self.full_params(live_values))


def best_measured_set(amps: np.ndarray, graph: Graph, threshold: float = 1e-4):
    """Largest feasible bitstring among outcomes above the probability floor.

    Mirrors taking the best feasible sample from a finite-shot measurement;
    ties break toward higher probability.  Returns None if nothing qualifies.
    """
    probs = np.abs(amps) ** 2
    cand = np.flatnonzero(probs >= threshold)
    if len(cand) == 0:
        cand = np.array([int(np.argmax(probs))])
    n = graph.n
    best = None
    for i in cand:
        bits = tuple((int(i) >> (n - 1 - j)) & 1 for j in range(n))
        if not graph.is_independent(bits):
            continue
        key = (sum(bits), probs[i])
        if best is None or key > best[0]:
            best = (key, bits)
    return None if best is None else best[1]


@dataclass
class DqvaResult:
    best_bits: tuple[int, ...]
    best_size: int
    rounds: int
    evals: int
    max_infeasible: float = 0.0
    any_converged: bool = True
    history: list = field(default_factory=list)


def dqva_outer_loop(graph: Graph, nu: int, seed=None, p: int = 1,
                    mixer_rounds: int = 5, inner_cap: int | None = None,
                    warm_start=None, optimizer=None,
                    threshold: float = 1e-4) -> DqvaResult:
    """Dynamic-ansatz driver: random mixer permutations outside, warm-started
    re-optimization inside, growing the independent set until it stalls.

    Returns the best feasible set found and the number of optimizer
    invocations (the rounds-of-variational-optimization count).
    """
    if nu < 1:
        raise AnsatzError("nu must be >= 1")
    n = graph.n
    rng = np.random.default_rng(seed)
    maximize = optimizer or (lambda f, x0: opt.maximize(f, x0))
    best = tuple(warm_start) if warm_start is not None else (0,) * n
    if not graph.is_independent(best):
        raise AnsatzError("warm start is not an independent set")
    rounds = 0
    evals = 0
    worst_inf = 0.0
    converged = False
    history = []
    cap = inner_cap if inner_cap is not None else n
    for _ in range(mixer_rounds):
        sigma = tuple(int(v) for v in rng.permutation(n))
        cur = best
        for _ in range(cap):
            mask = dqva_default_mask(p, n, nu, sigma, in_set=cur)
            engine = AnsatzEngine(graph, DQVA, p, sigma, mask, cur)
            x0 = rng.uniform(0.0, np.pi, engine.live_param_count)
            res = maximize(engine.expectation_live, x0)
            rounds += 1
            evals += res.evals
            converged = converged or getattr(res, "converged", True)
            amps = engine.statevector_live(res.x)
            worst_inf = max(worst_inf, infeasible_probability(amps, graph))
            cand = best_measured_set(amps, graph, threshold)
            history.append({"sigma": sigma, "value": res.value,
                            "candidate": cand, "rounds": rounds})
            if cand is not None and sum(cand) > sum(best):
                best = cand
                cur = cand
            else:
                break
    return DqvaResult(best, sum(best), rounds, evals, worst_inf, converged, history)


@dataclass
class SingleRoundResult:
    best_bits: tuple[int, ...] | None
    value: float
    evals: int
    params: np.ndarray
    max_infeasible: float = 0.0
    converged: bool = True


def optimize_single_round(graph: Graph, variant: str, p: int = 1, seed=None,
                          permutation=None, optimizer=None,
                          threshold: float = 1e-4) -> SingleRoundResult:
    """One variational round of the single-/multi-angle ansatz from |0...0>."""
    if variant not in (SA, MA):
        raise AnsatzError("use dqva_outer_loop for the dynamic variant")
    rng = np.random.default_rng(seed)
    maximize = optimizer or (lambda f, x0: opt.maximize(f, x0))
    engine = AnsatzEngine(graph, variant, p, permutation)
    x0 = rng.uniform(0.0, np.pi, engine.live_param_count)
    res = maximize(engine.expectation_live, x0)
    amps = engine.statevector_live(res.x)
    bits = best_measured_set(amps, graph, threshold)
    return SingleRoundResult(bits, res.value, res.evals, np.asarray(res.x),
                             infeasible_probability(amps, graph),
                             getattr(res, "converged", True))
