"""Regression-matrix assembly, one-step prediction, and free-run simulation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import TimeSeriesData
from .errors import InsufficientDataError, MissingInputError, ParameterError
from .hysteresis import hysteresis_signals
from .model import CandidateSet, NarxModel, RegressorTerm, Variable


def _signal_table(u, y, residuals=None):
    """Full-length sample arrays for each variable kind.

    The difference signals are derived from the input on demand; their
    value at k=0 is 0 by convention.
    """
    u = np.asarray(u, dtype=float)
    table = {Variable.OUTPUT: np.asarray(y, dtype=float), Variable.INPUT: u}
    if len(u) >= 2:
        phi1, phi2 = hysteresis_signals(u)
    else:
        phi1 = np.zeros_like(u)
        phi2 = np.zeros_like(u)
    table[Variable.PHI1] = phi1
    table[Variable.PHI2] = phi2
    if residuals is not None:
        table[Variable.RESIDUAL] = np.asarray(residuals, dtype=float)
    return table


def term_column(t: RegressorTerm, table, p, n):
    """Evaluate one term over rows k = p .. n-1 as a column vector."""
    col = np.ones(n - p)
    for var, lag, exp in t.factors:
        if var not in table:
            raise MissingInputError(f"term {t} needs the {var.value} signal, which was not supplied")
        samples = table[var][p - lag:n - lag]
        col = col * (samples ** exp if exp > 1 else samples)
    return col


def build_regression(candidates, data: TimeSeriesData, residuals=None):
    """Regression matrix and aligned target vector for a candidate set.

    Rows with incomplete lag history (the first ``p`` samples, ``p`` the
    maximum lag over the candidates) are dropped.  Returns ``(Psi, y_s)``
    with ``Psi`` of shape ``(N - p, n_candidates)``.
    """
    terms = candidates.terms if isinstance(candidates, CandidateSet) else tuple(candidates)
    if any(t.uses(Variable.RESIDUAL) for t in terms) and residuals is None:
        raise MissingInputError("candidate set uses residual terms but no residual sequence given")
    p = max((t.max_lag for t in terms), default=0)
    n = len(data)
    if n <= p:
        raise InsufficientDataError(f"need more than {p} samples, got {n}")
    table = _signal_table(data.u, data.y, residuals)
    psi = np.column_stack([term_column(t, table, p, n) for t in terms]) if terms else np.empty((n - p, 0))
    return psi, table[Variable.OUTPUT][p:]


def one_step_predict(model: NarxModel, data: TimeSeriesData):
    """One-step-ahead prediction using measured past outputs.

    Deterministic part only; returns predictions for k = p .. N-1 where p
    is the model's maximum lag.
    """
    if not model.process_terms:
        return np.zeros(len(data))
    psi, _ = build_regression(model.process_terms, data)
    return psi @ np.asarray(model.theta)


@dataclass(frozen=True)
class SimulationResult:
    """Free-run trajectory plus a divergence flag.

    When ``diverged`` is true the trajectory is partial: samples from the
    first out-of-bound step onward are NaN.
    """

    y: np.ndarray
    diverged: bool = False
    diverged_at: int | None = None


def free_run_simulate(model: NarxModel, u, y_init, bound=None):
    """Simulate the model recursively, feeding outputs back as lagged outputs.

    The difference signals are computed from ``u``; residual terms
    contribute zero.  ``bound`` caps |y(k)|; when exceeded the run stops
    and the partial trajectory is returned with ``diverged=True``.
    """
    u = np.asarray(u, dtype=float)
    y_init = np.atleast_1d(np.asarray(y_init, dtype=float))
    if len(y_init) < model.max_output_lag:
        raise InsufficientDataError(
            f"need at least {model.max_output_lag} initial output samples, got {len(y_init)}"
        )
    n = len(u)
    p = model.max_lag
    start = max(len(y_init), p)
    if n < start:
        raise InsufficientDataError("input shorter than the initialization horizon")
    if bound is None:
        bound = 1e6 * float(np.max(np.abs(y_init), initial=0.0)) + 1.0

    y = np.zeros(n)
    y[: len(y_init)] = y_init
    table = _signal_table(u, y)
    theta = np.asarray(model.theta)
    terms = model.process_terms
    for k in range(start, n):
        acc = 0.0
        for th, t in zip(theta, terms):
            val = th
            for var, lag, exp in t.factors:
                if var is Variable.RESIDUAL:
                    val = 0.0
                    break
                s = table[var][k - lag]
                val *= s ** exp if exp > 1 else s
            acc += val
        if not np.isfinite(acc) or abs(acc) > bound:
            y[k:] = np.nan
            return SimulationResult(y, diverged=True, diverged_at=k)
        y[k] = acc
    return SimulationResult(y)


def run_inverse_model(model: NarxModel, y, u_init):
    """Free-run an inverse-direction model: the system output drives the
    recursion and the trajectory is the estimated input."""
    if model.direction != "inverse":
        raise ParameterError("model is not tagged as inverse-direction")
    return free_run_simulate(model, u=y, y_init=u_init)
