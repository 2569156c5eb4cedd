"""Hysteresis-specific machinery.

Polynomial NARX models can reproduce rate-independent loops when the
first difference of the input and its sign are available as regressor
variables.  This module builds those signals, prunes candidate sets with
the published exclusion rules, and assembles the unit-sum constraint on
linear output regressors that gives the constant-input hold property.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintError, ParameterError
from .model import CandidateSet, RegressorTerm, Variable


def hysteresis_signals(x):
    """First difference and its sign for a sampled signal.

    phi1(k) = x(k) - x(k-1) with phi1(0) = 0; phi2 = sign(phi1) with
    sign(0) = 0 so loading and unloading branches stay symmetric at rest.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) < 2:
        raise ParameterError("need a 1-D signal with at least 2 samples")
    phi1 = np.empty_like(x)
    phi1[0] = 0.0
    phi1[1:] = x[1:] - x[:-1]
    return phi1, np.sign(phi1)


@dataclass(frozen=True)
class HysteresisCandidateConfig:
    """Which exclusion rules to apply and the modeling direction.

    ``direction="inverse"`` swaps the roles of input and output at the
    data level; the rules themselves are direction-agnostic.
    """

    apply_rule_i: bool = True
    apply_rule_ii: bool = True
    apply_rule_iii: bool = True
    enforce_sigma_y: bool = False
    direction: str = "direct"

    def __post_init__(self):
        if self.direction not in ("direct", "inverse"):
            raise ParameterError(f"unknown direction {self.direction!r}")


def _rule_i(t: RegressorTerm):
    # output raised to a power > 1, alone or with difference-signal factors
    return any(var is Variable.OUTPUT and exp > 1 for var, _, exp in t.factors)


def _rule_ii(t: RegressorTerm):
    # sign signal raised to a power above 1.  Because the sign takes
    # values in {-1, 0, 1}, even powers collapse to an indicator and odd
    # powers collapse to the sign itself, so any such term duplicates a
    # lower-degree candidate (e.g. y(k-1)*phi2(k-1)^2 shadows y(k-1) on
    # strictly varying inputs) and is removed whatever the cofactors.
    return any(var is Variable.PHI2 and exp > 1 for var, _, exp in t.factors)


def _rule_iii(t: RegressorTerm):
    # input factor present without any difference-signal factor: covers
    # pure-input terms and output-input cross terms lacking phi factors
    return t.uses(Variable.INPUT) and not (t.uses(Variable.PHI1) or t.uses(Variable.PHI2))


def apply_exclusion_rules(candidates: CandidateSet, config=HysteresisCandidateConfig()):
    """Remove candidate terms matching the enabled exclusion rules.

    Returns ``(pruned_set, exclusion_report)`` where the report maps each
    removed term to the name of the rule that removed it.
    """
    removed = {}
    kept = []
    for t in candidates.terms:
        if config.apply_rule_i and _rule_i(t):
            removed[t] = "rule_i"
        elif config.apply_rule_ii and _rule_ii(t):
            removed[t] = "rule_ii"
        elif config.apply_rule_iii and _rule_iii(t):
            removed[t] = "rule_iii"
        else:
            kept.append(t)
    pruned = CandidateSet(tuple(kept), candidates.meta, candidates.include_constant)
    return pruned, removed


def exclusion_report_text(removed):
    """Human-readable exclusion report (term, rule that removed it)."""
    lines = [f"{t}\t{rule}" for t, rule in sorted(removed.items(), key=lambda kv: str(kv[0]))]
    return "\n".join(lines)


def is_linear_output_term(t: RegressorTerm):
    """True for terms that are exactly y(k-tau) to the first power."""
    return (
        len(t.factors) == 1
        and t.factors[0][0] is Variable.OUTPUT
        and t.factors[0][2] == 1
    )


def sigma_y_constraint(terms):
    """Unit-sum constraint over the linear output regressors.

    Returns ``(c, b)`` with c_i = 1 exactly where term i is a pure
    first-power output lag and b = 1.  Feeding this to the constrained
    least-squares estimator forces the parameters of those terms to sum
    to one, which makes the model hold its state under constant input.
    """
    c = np.array([1.0 if is_linear_output_term(t) else 0.0 for t in terms])
    if not np.any(c):
        raise ConstraintError("no linear output regressor present; unit-sum constraint inapplicable")
    return c, 1.0
