"""Adaptive Dormand-Prince 4(5) integrator with a post-step projection hook.

The projection hook is what the rest of the package relies on: flows on the
unit sphere are renormalized after every accepted step, and variational
states get their determinant rescaled.  scipy's solvers do not expose a
per-step hook, so the stepper is implemented here; tests cross-check it
against ``scipy.integrate.solve_ivp``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import IntegrationFailure

# Dormand-Prince 4(5) tableau (same pair as scipy's RK45).
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


@dataclass
class IntegrationResult:
    ts: np.ndarray          # times where the solution was sampled
    ys: np.ndarray          # states at ts, shape (len(ts), dim)
    t_end: float
    y_end: np.ndarray
    n_steps: int
    n_fev: int


def _rms_error(err: np.ndarray, y0: np.ndarray, y1: np.ndarray, rtol: float, atol: float) -> float:
    scale = atol + rtol * np.maximum(np.abs(y0), np.abs(y1))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def dopri45(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    t0: float,
    y0: Sequence[float],
    t1: float,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    project: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    t_eval: Optional[Sequence[float]] = None,
    max_step: float = np.inf,
    record_steps: bool = False,
) -> IntegrationResult:
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t1`` (either direction).

    ``project`` is applied to the state after every accepted step.  When
    ``t_eval`` is given the integrator lands exactly on those times and
    reports the state there; with ``record_steps`` every accepted step is
    reported instead.
    """
    y = np.asarray(y0, dtype=float).copy()
    t = float(t0)
    direction = 1.0 if t1 >= t0 else -1.0
    span = abs(t1 - t0)
    if span == 0.0:
        ts = np.array([t0])
        ys = y[None, :].copy()
        return IntegrationResult(ts, ys, t0, y, 0, 0)

    targets = None
    if t_eval is not None:
        targets = list(np.asarray(t_eval, dtype=float))
        if any(direction * (b - a) < 0 for a, b in zip(targets, targets[1:])):
            raise ValueError("t_eval must be monotone in the integration direction")

    out_t: list[float] = []
    out_y: list[np.ndarray] = []

    def emit(tc: float, yc: np.ndarray) -> None:
        out_t.append(tc)
        out_y.append(yc.copy())

    next_target = 0
    if targets and abs(targets[0] - t0) <= 1e-15 * max(1.0, abs(t0)):
        emit(t0, y)
        next_target = 1
    if record_steps:
        emit(t0, y)

    h = direction * min(span / 16.0, max_step, 0.1)
    k = np.empty((7, y.size))
    n_steps = 0
    n_fev = 0
    t_final = float(t1)

    while direction * (t_final - t) > 1e-15 * max(1.0, abs(t)):
        h = direction * min(abs(h), max_step, abs(t_final - t))
        if targets and next_target < len(targets):
            h = direction * min(abs(h), abs(targets[next_target] - t))
        if abs(h) < 1e-14 * max(1.0, abs(t)):
            raise IntegrationFailure(f"step size underflow at t={t!r}")

        k[0] = rhs(t, y)
        for i in range(1, 7):
            yi = y + h * (_A[i] @ k[:i])
            k[i] = rhs(t + _C[i] * h, yi)
        n_fev += 7
        y5 = y + h * (_B5 @ k)
        y4 = y + h * (_B4 @ k)
        err = _rms_error(y5 - y4, y, y5, rtol, atol)

        if err <= 1.0:
            t = t + h
            y = y5
            if project is not None:
                y = project(y)
            n_steps += 1
            if record_steps:
                emit(t, y)
            while (
                targets
                and next_target < len(targets)
                and abs(targets[next_target] - t) <= 1e-12 * max(1.0, abs(t)) + 1e-15
            ):
                emit(targets[next_target], y)
                next_target += 1
        factor = 0.9 * (max(err, 1e-16)) ** (-0.2)
        h = h * min(5.0, max(0.2, factor))

    if targets is None and not record_steps:
        emit(t, y)
    if targets and next_target < len(targets):
        # Remaining targets must coincide with the final time.
        for tc in targets[next_target:]:
            if abs(tc - t) > 1e-9 * max(1.0, abs(t)):
                raise IntegrationFailure("integration ended before reaching t_eval points")
            emit(tc, y)

    ts = np.array(out_t)
    ys = np.array(out_y)
    return IntegrationResult(ts, ys, t, y, n_steps, n_fev)
