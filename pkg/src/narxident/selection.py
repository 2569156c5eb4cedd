"""Model structure selection: forward-regression orthogonal least squares
ranking by error reduction ratio, and information-criterion truncation of
the ranked term list."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import TimeSeriesData
from .errors import ParameterError
from .estimation import ElsConfig, els_core, ls_estimate
from .model import CandidateSet, NarxModel, RegressorTerm
from .regression import build_regression

_ZERO_COLUMN_RTOL = 1e-12


@dataclass(frozen=True)
class ErrRanking:
    """Greedy forward-selection ranking of candidate terms.

    ``err_values[i]`` is the fraction of output energy explained by the
    i-th selected term after orthogonalization against its predecessors;
    ``skipped`` lists terms whose columns became numerically zero.
    """

    ordered_terms: tuple
    err_values: np.ndarray
    candidates: CandidateSet
    skipped: tuple = ()

    @property
    def cumulative_err(self):
        return np.cumsum(self.err_values)

    def __len__(self):
        return len(self.ordered_terms)


def frols_rank(candidates: CandidateSet, data: TimeSeriesData, max_terms=None,
               err_floor=1e-10):
    """Rank candidate terms by error reduction ratio.

    At each step every remaining candidate column is orthogonalized
    against the already-selected columns; the candidate explaining the
    largest fraction of the output energy is selected.  Selection stops
    at ``max_terms`` or when the best remaining ratio falls below
    ``err_floor``.  Ties break on canonical term order, which also makes
    the result independent of candidate input order.
    """
    if len(candidates) == 0:
        raise ParameterError("empty candidate set")
    if max_terms is None:
        max_terms = min(30, len(candidates))
    if max_terms > len(candidates):
        raise ParameterError("max_terms exceeds candidate count")

    order = sorted(range(len(candidates.terms)), key=lambda i: candidates.terms[i].sort_key())
    terms = [candidates.terms[i] for i in order]
    psi, y_s = build_regression(candidates, data)
    work = psi[:, order].copy()
    yty = float(y_s @ y_s)
    if yty == 0.0:
        raise ParameterError("target vector has zero energy")
    norms0 = np.sum(work ** 2, axis=0)

    remaining = list(range(len(terms)))
    selected = []
    err_values = []
    skipped = []
    basis = []  # orthonormal selected columns
    while remaining and len(selected) < max_terms:
        best_j = None
        best_err = -1.0
        for j in remaining:
            w = work[:, j]
            ww = float(w @ w)
            if ww <= _ZERO_COLUMN_RTOL * max(norms0[j], 1.0):
                continue
            err = (float(w @ y_s) ** 2) / (ww * yty)
            if err > best_err + 1e-15:
                best_err = err
                best_j = j
        if best_j is None:
            skipped.extend(remaining)
            break
        if best_err < err_floor:
            break
        w = work[:, best_j]
        # re-orthogonalization pass against the accumulated basis
        for q in basis:
            w = w - (q @ w) * q
        q = w / np.linalg.norm(w)
        basis.append(q)
        selected.append(best_j)
        err_values.append((float(w @ y_s) ** 2) / (float(w @ w) * yty))
        remaining.remove(best_j)
        # deflate every remaining candidate column
        proj = q @ work[:, remaining]
        work[:, remaining] -= np.outer(q, proj)

    ordered_terms = tuple(terms[j] for j in selected)
    return ErrRanking(
        ordered_terms=ordered_terms,
        err_values=np.array(err_values),
        candidates=candidates,
        skipped=tuple(terms[j] for j in skipped),
    )


@dataclass(frozen=True)
class AicCurve:
    """Information-criterion cost as a function of model size.

    ``j_values[i]`` is the cost of the model with ``n_theta_values[i]``
    top-ranked terms; invalid points (failed estimations) are NaN and
    excluded from the argmin.
    """

    n_theta_values: np.ndarray
    j_values: np.ndarray

    @property
    def argmin(self):
        valid = np.where(np.isfinite(self.j_values))[0]
        if valid.size == 0:
            raise ParameterError("no valid point on the information-criterion curve")
        return int(self.n_theta_values[valid[np.argmin(self.j_values[valid])]])


@dataclass(frozen=True)
class SelectionConfig:
    """Knobs for the ranking/truncation pipeline."""

    max_terms: int | None = None
    err_floor: float = 1e-10
    estimator: str = "els"  # final re-estimation: "ls" or "els"
    sweep_estimator: str = "ls"  # estimator inside the information-criterion sweep
    n_noise_terms: int = 1
    els: ElsConfig = field(default_factory=ElsConfig)

    def __post_init__(self):
        if self.estimator not in ("ls", "els"):
            raise ParameterError(f"unknown estimator {self.estimator!r}")
        if self.sweep_estimator not in ("ls", "els"):
            raise ParameterError(f"unknown sweep estimator {self.sweep_estimator!r}")


def aic_curve(ranking: ErrRanking, data: TimeSeriesData, estimator="ls",
              els_config=ElsConfig(), n_noise_terms=1):
    """Cost curve N*ln(residual variance) + 2*n over the ranked term list.

    The residual variance at each size is that of the one-step-ahead
    residuals of the truncated model, re-estimated on the data.  All
    sizes share the row frame of the full candidate set so the variances
    are comparable.
    """
    if len(ranking) == 0:
        raise ParameterError("empty ranking")
    psi, y_s = build_regression(ranking.candidates, data)
    col_of = {t: i for i, t in enumerate(ranking.candidates.terms)}
    cols = [col_of[t] for t in ranking.ordered_terms]
    n_rows = len(y_s)
    sizes = np.arange(1, len(ranking) + 1)
    costs = np.full(len(sizes), np.nan)
    for i, n_theta in enumerate(sizes):
        sub = psi[:, cols[:n_theta]]
        try:
            if estimator == "els":
                report = els_core(sub, y_s, n_noise_terms, els_config)
                resid = y_s - sub @ report.theta
            else:
                resid = ls_estimate(sub, y_s).residuals
        except Exception:
            continue
        var = float(np.var(resid))
        if var <= 0:
            var = np.finfo(float).tiny
        costs[i] = n_rows * np.log(var) + 2.0 * n_theta
    return AicCurve(n_theta_values=sizes, j_values=costs)


def select_structure(candidates: CandidateSet, data: TimeSeriesData,
                     config=SelectionConfig()):
    """Full structure-selection pipeline.

    Ranks the candidates, truncates at the information-criterion argmin,
    and re-estimates the parameters of the selected terms on the full
    data with the configured estimator.  Returns the model together with
    the ranking, the cost curve, and the final estimation report.
    """
    ranking = frols_rank(candidates, data, config.max_terms, config.err_floor)
    curve = aic_curve(ranking, data, estimator=config.sweep_estimator,
                      els_config=config.els, n_noise_terms=config.n_noise_terms)
    n_sel = curve.argmin
    chosen = ranking.ordered_terms[:n_sel]
    psi, y_s = build_regression(chosen, data)
    if config.estimator == "els":
        report = els_core(psi, y_s, config.n_noise_terms, config.els)
    else:
        report = ls_estimate(psi, y_s)
    model = NarxModel(
        process_terms=chosen,
        theta=tuple(report.theta),
        meta=candidates.meta,
        ts=data.ts,
        label=data.label,
    )
    return model, ranking, curve, report
