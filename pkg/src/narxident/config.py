"""Experiment configuration files.

One JSON config drives a whole experiment: which system to use (a named
benchmark preset or a CSV data file), the input-design spec, the candidate
dictionary bounds, hysteresis handling, estimator choice, noise ratio,
seeds, and the output directory.  Configs round-trip losslessly through
:func:`save_config` / :func:`load_config`.
"""

from __future__ import annotations

import dataclasses
import json

from .errors import ParameterError
from .estimation import ElsConfig
from .experiments import EXPERIMENTS, ExperimentDefinition
from .hysteresis import HysteresisCandidateConfig, apply_exclusion_rules
from .input_design import InputDesignSpec
from .model import Variable, generate_candidates
from .selection import SelectionConfig

_VALID_VARIABLES = tuple(v.value for v in Variable if v is not Variable.RESIDUAL)


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one identification experiment.

    Parameters
    ----------
    system : str
        Benchmark preset name (``"heating"``, ``"bouc_wen"``, ``"valve"``)
        or a path to a ``k,u,y`` CSV file of measured data.
    design : InputDesignSpec or None
        Excitation design; ``None`` when the data comes from a CSV.
    degree, n_y, n_u, tau_d : int
        Candidate-dictionary bounds: maximum monomial degree and lag
        ranges for output and input factors.
    variables : tuple of str
        Signal kinds admitted as factors, from ``("y", "u", "phi1", "phi2")``.
    hysteresis : HysteresisCandidateConfig or None
        Exclusion-rule configuration; ``None`` disables rule filtering.
    estimator : str
        Final re-estimation method, ``"ls"`` or ``"els"``.
    sweep_estimator : str
        Estimator used inside the information-criterion sweep.
    els : ElsConfig
        Extended-least-squares convergence settings.
    n_noise_terms : int
        Number of lagged-residual columns in the extended regression.
    noise_ratio : float
        Output-noise standard deviation as a fraction of the clean
        output's standard deviation.
    seed : int
        Base seed for data generation (and Monte Carlo sweeps).
    output_dir : str
        Directory where commands write their artifacts.
    """

    system: str
    design: InputDesignSpec | None = None
    degree: int = 3
    n_y: int = 3
    n_u: int = 3
    tau_d: int = 1
    variables: tuple = ("y", "u")
    hysteresis: HysteresisCandidateConfig | None = None
    estimator: str = "els"
    sweep_estimator: str = "ls"
    els: ElsConfig = dataclasses.field(default_factory=ElsConfig)
    n_noise_terms: int = 1
    noise_ratio: float = 0.05
    seed: int = 0
    output_dir: str = "."

    def __post_init__(self):
        if not self.system:
            raise ParameterError("config needs a system preset name or data path")
        for v in self.variables:
            if v not in _VALID_VARIABLES:
                raise ParameterError(f"unknown variable kind {v!r}")
        if self.estimator not in ("ls", "els") or self.sweep_estimator not in ("ls", "els"):
            raise ParameterError("estimator must be 'ls' or 'els'")
        if not (0.0 <= self.noise_ratio):
            raise ParameterError("noise ratio must be nonnegative")

    def build_candidates(self):
        """Candidate set implied by the dictionary bounds, rules applied."""
        variables = tuple(Variable(v) for v in self.variables)
        candidates = generate_candidates(
            self.degree, self.n_y, self.n_u, tau_d=self.tau_d, variables=variables
        )
        if self.hysteresis is not None:
            candidates, _ = apply_exclusion_rules(candidates, self.hysteresis)
        return candidates

    def build_selection(self):
        return SelectionConfig(
            estimator=self.estimator,
            sweep_estimator=self.sweep_estimator,
            n_noise_terms=self.n_noise_terms,
            els=self.els,
        )

    def to_experiment(self) -> ExperimentDefinition:
        """Materialize an experiment definition for a benchmark system."""
        if self.system not in ("heating", "bouc_wen"):
            raise ParameterError(
                f"cannot simulate system {self.system!r}; "
                "only 'heating' and 'bouc_wen' have simulators"
            )
        if self.design is None:
            raise ParameterError("benchmark experiments need an input design")
        return ExperimentDefinition(
            name=self.system,
            description=f"experiment built from config ({self.system})",
            design=self.design,
            candidates=self.build_candidates(),
            selection=self.build_selection(),
            noise_ratio=self.noise_ratio,
            system=self.system,
        )


def config_from_experiment(defn: ExperimentDefinition, seed=0, output_dir=".") -> ExperimentConfig:
    """Config equivalent of a built-in experiment definition."""
    meta = defn.candidates.meta
    variables = sorted(
        {v.value for t in defn.candidates.terms for v, _, _ in t.factors},
        key=lambda s: Variable(s).order,
    )
    hysteresis = None
    if "phi1" in variables or "phi2" in variables:
        hysteresis = HysteresisCandidateConfig()
    return ExperimentConfig(
        system=defn.system,
        design=defn.design,
        degree=meta.degree,
        n_y=meta.n_y,
        n_u=meta.n_u,
        tau_d=meta.tau_d,
        variables=tuple(variables),
        hysteresis=hysteresis,
        estimator=defn.selection.estimator,
        sweep_estimator=defn.selection.sweep_estimator,
        els=defn.selection.els,
        n_noise_terms=defn.selection.n_noise_terms,
        noise_ratio=defn.noise_ratio,
        seed=seed,
        output_dir=output_dir,
    )


def default_config(name, seed=0, output_dir=".") -> ExperimentConfig:
    """Config for a named built-in experiment (``heating`` or ``bouc_wen``)."""
    if name not in EXPERIMENTS:
        raise ParameterError(
            f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}"
        )
    return config_from_experiment(EXPERIMENTS[name](), seed=seed, output_dir=output_dir)


def config_to_dict(config: ExperimentConfig) -> dict:
    d = {
        "system": config.system,
        "design": None,
        "candidates": {
            "degree": config.degree,
            "n_y": config.n_y,
            "n_u": config.n_u,
            "tau_d": config.tau_d,
            "variables": list(config.variables),
        },
        "hysteresis": None,
        "estimator": {
            "method": config.estimator,
            "sweep_method": config.sweep_estimator,
            "zeta": config.els.zeta,
            "max_iterations": config.els.max_iterations,
            "n_noise_terms": config.n_noise_terms,
        },
        "noise_ratio": config.noise_ratio,
        "seed": config.seed,
        "output_dir": config.output_dir,
    }
    if config.design is not None:
        d["design"] = {
            "frequencies": list(config.design.frequencies),
            "segment_lengths": list(config.design.segment_lengths),
            "operating_points": list(config.design.operating_points),
            "amplitudes": list(config.design.amplitudes),
            "sample_rate": config.design.sample_rate,
            "filter_order": config.design.filter_order,
            "seed": config.design.seed,
        }
    if config.hysteresis is not None:
        h = config.hysteresis
        d["hysteresis"] = {
            "apply_rule_i": h.apply_rule_i,
            "apply_rule_ii": h.apply_rule_ii,
            "apply_rule_iii": h.apply_rule_iii,
            "enforce_sigma_y": h.enforce_sigma_y,
            "direction": h.direction,
        }
    return d


def config_from_dict(d: dict) -> ExperimentConfig:
    try:
        cand = d["candidates"]
        est = d["estimator"]
        design = None
        if d.get("design") is not None:
            dd = d["design"]
            design = InputDesignSpec(
                frequencies=tuple(dd["frequencies"]),
                segment_lengths=tuple(dd["segment_lengths"]),
                operating_points=tuple(dd["operating_points"]),
                amplitudes=tuple(dd["amplitudes"]),
                sample_rate=dd["sample_rate"],
                filter_order=dd.get("filter_order", 5),
                seed=dd.get("seed", 0),
            )
        hysteresis = None
        if d.get("hysteresis") is not None:
            hd = d["hysteresis"]
            hysteresis = HysteresisCandidateConfig(
                apply_rule_i=hd.get("apply_rule_i", True),
                apply_rule_ii=hd.get("apply_rule_ii", True),
                apply_rule_iii=hd.get("apply_rule_iii", True),
                enforce_sigma_y=hd.get("enforce_sigma_y", False),
                direction=hd.get("direction", "direct"),
            )
        return ExperimentConfig(
            system=d["system"],
            design=design,
            degree=cand["degree"],
            n_y=cand["n_y"],
            n_u=cand["n_u"],
            tau_d=cand["tau_d"],
            variables=tuple(cand["variables"]),
            hysteresis=hysteresis,
            estimator=est["method"],
            sweep_estimator=est.get("sweep_method", "ls"),
            els=ElsConfig(
                zeta=est.get("zeta", 1e-8),
                max_iterations=est.get("max_iterations", 30),
            ),
            n_noise_terms=est.get("n_noise_terms", 1),
            noise_ratio=d.get("noise_ratio", 0.05),
            seed=d.get("seed", 0),
            output_dir=d.get("output_dir", "."),
        )
    except KeyError as exc:
        raise ParameterError(f"config is missing field {exc}") from exc


def save_config(config: ExperimentConfig, path):
    with open(path, "w") as fh:
        json.dump(config_to_dict(config), fh, indent=2)
        fh.write("\n")


def load_config(path) -> ExperimentConfig:
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(d, dict):
        raise ParameterError(f"{path}: config must be a JSON object")
    return config_from_dict(d)
