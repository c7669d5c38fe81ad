"""Derivative-free local maximization for the variational loops."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize


@dataclass
class OptResult:
    x: np.ndarray
    value: float
    evals: int
    converged: bool


def maximize(objective, x0, max_evals: int | None = None, tol: float = 1e-4) -> OptResult:
    """Nelder-Mead maximization of ``objective`` starting from ``x0``.

    Terminates on simplex/objective tolerance or the evaluation budget
    (default 500 per parameter); deterministic for a deterministic objective.
    Budget exhaustion is flagged via ``converged`` with the best-so-far
    returned.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    budget = max_evals if max_evals is not None else 500 * len(x0)

    # Probe the initial simplex first: a flat objective returns x0 after
    # dimension+1 evaluations instead of bouncing around the plateau.
    simplex = [x0]
    for i in range(len(x0)):
        pt = x0.copy()
        pt[i] = pt[i] * 1.05 if pt[i] != 0 else 0.00025
        simplex.append(pt)
    values = [objective(p) for p in simplex]
    if max(values) - min(values) <= tol:
        return OptResult(x0, values[0], len(values), True)

    res = minimize(
        lambda v: -objective(v),
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": max(1, budget - len(values)),
            "fatol": tol,
            "xatol": 1e-4,
            "initial_simplex": np.asarray(simplex),
        },
    )
    return OptResult(res.x, -res.fun, res.nfev + len(values), bool(res.success))
