"""Structured-text serialization for models and CSV export of pipeline
artifacts (term rankings, information-criterion curves, residuals).

Floating-point values are written with ``repr``, which preserves the
shortest exact round-trip representation (at least 15 significant
digits), so files regenerate byte-identically from equal inputs.
"""

from __future__ import annotations

import csv

import numpy as np

from .errors import ParameterError
from .model import CandidateMeta, NarxModel, parse_term

_FORMAT_HEADER = "# narxident model v1"


def model_to_text(model: NarxModel) -> str:
    lines = [
        _FORMAT_HEADER,
        f"label = {model.label or ''}",
        f"direction = {model.direction}",
        f"ts = {model.ts!r}",
        f"degree = {model.meta.degree}",
        f"n_y = {model.meta.n_y}",
        f"n_u = {model.meta.n_u}",
        f"tau_d = {model.meta.tau_d}",
        "[process]",
    ]
    for t, th in zip(model.process_terms, model.theta):
        lines.append(f"{t}\t{float(th)!r}")
    if model.noise_terms:
        lines.append("[noise]")
        for t, th in zip(model.noise_terms, model.noise_theta):
            lines.append(f"{t}\t{float(th)!r}")
    return "\n".join(lines) + "\n"


def save_model(model: NarxModel, path):
    with open(path, "w") as fh:
        fh.write(model_to_text(model))


def model_from_text(text: str) -> NarxModel:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _FORMAT_HEADER:
        raise ParameterError("not a narxident model file")
    fields = {}
    section = None
    process, noise = [], []
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        if ln in ("[process]", "[noise]"):
            section = ln
            continue
        if section is None:
            if "=" not in ln:
                raise ParameterError(f"malformed header line {ln!r}")
            key, _, value = ln.partition("=")
            fields[key.strip()] = value.strip()
        else:
            try:
                term_str, theta_str = ln.split("\t")
            except ValueError as exc:
                raise ParameterError(f"malformed term line {ln!r}") from exc
            pair = (parse_term(term_str), float(theta_str))
            (process if section == "[process]" else noise).append(pair)
    if not process:
        raise ParameterError("model file has no process terms")
    try:
        meta = CandidateMeta(
            degree=int(fields["degree"]),
            n_y=int(fields["n_y"]),
            n_u=int(fields["n_u"]),
            tau_d=int(fields["tau_d"]),
        )
        ts = float(fields["ts"])
        direction = fields.get("direction", "direct")
        label = fields.get("label", "")
    except KeyError as exc:
        raise ParameterError(f"model file missing field {exc}") from exc
    return NarxModel(
        process_terms=tuple(t for t, _ in process),
        theta=tuple(th for _, th in process),
        meta=meta,
        ts=ts,
        noise_terms=tuple(t for t, _ in noise),
        noise_theta=tuple(th for _, th in noise),
        direction=direction,
        label=label,
    )


def load_model(path) -> NarxModel:
    with open(path) as fh:
        return model_from_text(fh.read())


def ranking_to_csv(ranking, path):
    """ERR ranking as ``term,err,cumulative_err`` rows."""
    cum = ranking.cumulative_err
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["term", "err", "cumulative_err"])
        for t, e, c in zip(ranking.ordered_terms, ranking.err_values, cum):
            writer.writerow([str(t), repr(float(e)), repr(float(c))])


def aic_to_csv(curve, path):
    """Information-criterion curve as ``n_theta,j_aic`` rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n_theta", "j_aic"])
        for n, j in zip(curve.n_theta_values, curve.j_values):
            writer.writerow([int(n), repr(float(j))])


def residuals_to_csv(residuals, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "residual"])
        for k, r in enumerate(np.asarray(residuals, dtype=float)):
            writer.writerow([k, repr(float(r))])


def report_to_text(report) -> str:
    """Estimation report as structured text."""
    lines = [
        "# narxident estimation report",
        f"iterations = {report.iterations}",
        f"converged = {report.converged}",
        f"residual_variance = {float(report.residual_variance)!r}",
        "theta = " + ", ".join(repr(float(t)) for t in report.theta),
    ]
    if getattr(report, "noise_theta", None) is not None and len(report.noise_theta):
        lines.append("noise_theta = " + ", ".join(repr(float(t)) for t in report.noise_theta))
    if getattr(report, "change_norms", None) is not None and len(report.change_norms):
        lines.append("change_norms = " + ", ".join(repr(float(c)) for c in report.change_norms))
    return "\n".join(lines) + "\n"
