"""Time selection that walks a path's cloud toward a target point.

For k = 1..n the search picks a checkpoint t_k > t_{k-1} with
|v_{k,t_k} − target_{1..k}| < ε_k. Only checkpoints are scanned. Running out
of budget is a finite-horizon outcome and is reported, not raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from core_lil.ellipsoid import EllipsoidSpec, ball_membership
from core_spectral.errors import SpectralLabError, TargetOutsideBallError


@dataclass(slots=True)
class TargetChaseResult:
    target: List[float]
    tolerances: List[float]
    times: List[float] = field(default_factory=list)
    errors: List[float] = field(default_factory=list)
    budget: float = 0.0
    budget_consumed: float = 0.0
    success: bool = False
    best_error: float | None = None
    status: str = "pending"

    def as_dict(self) -> Dict[str, Any]:
        return {
            "target": self.target,
            "tolerances": self.tolerances,
            "times": self.times,
            "errors": self.errors,
            "budget": self.budget,
            "budget_consumed": self.budget_consumed,
            "success": self.success,
            "best_error": self.best_error,
            "status": self.status,
        }


def _validate_schedule(tolerances: Sequence[float], n: int) -> List[float]:
    schedule = [float(eps) for eps in tolerances]
    if len(schedule) == 1 and n > 1:
        schedule = schedule * n
    if len(schedule) != n:
        raise SpectralLabError(f"Tolerance schedule has {len(schedule)} entries for n={n}")
    if any(eps <= 0 for eps in schedule):
        raise SpectralLabError("Tolerances must be positive")
    if any(b > a for a, b in zip(schedule, schedule[1:])):
        raise SpectralLabError("Tolerances must be nonincreasing")
    return schedule


def chase_target(
    times: Sequence[float],
    vectors: np.ndarray,
    target: Sequence[float],
    ellipsoid: EllipsoidSpec,
    tolerances: Sequence[float],
    budget: float,
) -> TargetChaseResult:
    """Scan checkpoints (``times``, ``vectors``) for the diagonal time sequence."""

    goal = np.asarray(target, dtype=np.float64).reshape(-1)
    n = goal.size
    if n != ellipsoid.n:
        raise SpectralLabError(f"Target in ℝ^{n} for an ellipsoid in ℝ^{ellipsoid.n}")
    membership = ball_membership(goal, ellipsoid)
    if not membership.form_value < 1.0:
        raise TargetOutsideBallError(
            f"Target has form value {membership.form_value:.6g} ≥ 1; only interior points can be chased"
        )
    if not (math.isfinite(budget) and budget > 0):
        raise SpectralLabError(f"Chase budget must be finite and positive, got {budget}")
    schedule = _validate_schedule(tolerances, n)

    ts = np.asarray(times, dtype=np.float64)
    vs = np.asarray(vectors, dtype=np.float64).reshape(ts.size, -1)
    if vs.shape[1] < n:
        raise SpectralLabError(f"Cloud vectors have {vs.shape[1]} coordinates, target needs {n}")
    affordable = ts <= budget
    result = TargetChaseResult(target=goal.tolist(), tolerances=schedule, budget=float(budget))

    previous = -math.inf
    consumed = 0.0
    for k in range(1, n + 1):
        window = affordable & (ts > previous)
        errors = np.linalg.norm(vs[:, :k] - goal[:k], axis=1)
        hits = np.flatnonzero(window & (errors < schedule[k - 1]))
        if hits.size == 0:
            candidates = errors[window]
            result.best_error = float(np.min(candidates)) if candidates.size else None
            result.budget_consumed = float(ts[affordable][-1]) if np.any(affordable) else 0.0
            result.status = f"budget exhausted at k={k}"
            return result
        first = int(hits[0])
        previous = float(ts[first])
        consumed = previous
        result.times.append(previous)
        result.errors.append(float(errors[first]))

    result.success = True
    result.best_error = max(result.errors) if result.errors else None
    result.budget_consumed = consumed
    result.status = "reached"
    return result


__all__ = ["TargetChaseResult", "chase_target"]
