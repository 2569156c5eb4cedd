"""Experiment config serialization and materialization."""

import json

import pytest

from narxident import ParameterError
from narxident.config import (
    ExperimentConfig,
    config_from_dict,
    config_to_dict,
    default_config,
    load_config,
    save_config,
)


@pytest.mark.parametrize("name", ["heating", "bouc_wen"])
def test_config_round_trip(name, tmp_path):
    cfg = default_config(name, seed=11, output_dir=str(tmp_path))
    path = tmp_path / "config.json"
    save_config(cfg, path)
    back = load_config(path)
    assert config_to_dict(back) == config_to_dict(cfg)
    # and a second serialization is byte-identical
    path2 = tmp_path / "config2.json"
    save_config(back, path2)
    assert path.read_text() == path2.read_text()


def test_config_builds_same_experiment_as_builtin():
    from narxident import EXPERIMENTS
    for name in ("heating", "bouc_wen"):
        builtin = EXPERIMENTS[name]()
        rebuilt = default_config(name).to_experiment()
        assert rebuilt.candidates.terms == builtin.candidates.terms
        assert rebuilt.selection == builtin.selection
        assert rebuilt.design == builtin.design
        assert rebuilt.noise_ratio == builtin.noise_ratio


def test_config_validation():
    with pytest.raises(ParameterError):
        ExperimentConfig(system="heating", variables=("y", "w"))
    with pytest.raises(ParameterError):
        ExperimentConfig(system="heating", estimator="ridge")
    with pytest.raises(ParameterError):
        ExperimentConfig(system="heating", noise_ratio=-0.1)
    with pytest.raises(ParameterError):
        default_config("unknown")


def test_config_from_dict_reports_missing_fields():
    with pytest.raises(ParameterError):
        config_from_dict({"system": "heating"})


def test_load_config_reports_json_errors_with_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "system": "heating",\n  broken\n}\n')
    with pytest.raises(ParameterError) as exc:
        load_config(path)
    assert "line 3" in str(exc.value)


def test_csv_backed_config_cannot_simulate():
    cfg = ExperimentConfig(system="data/measured.csv")
    with pytest.raises(ParameterError):
        cfg.to_experiment()
