"""Python bindings for the ccsim protocol simulator."""

import json

from ._ccsim import (
    ArgumentError,
    CapacityError,
    ConfigError,
    ProtocolMisuse,
    bounded_comm_optimum,
    chsh_feasibility,
    dj_forbidden_mass,
    epr_quantum_statistics,
    fingerprint_prime,
    registered_protocols,
    run_experiment_json,
    verify,
    zero_comm_optimum,
)


def run_experiment(config):
    """Run an experiment; `config` is an ExperimentConfig dict or JSON string."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return run_experiment_json(config)


__all__ = [
    "ArgumentError",
    "CapacityError",
    "ConfigError",
    "ProtocolMisuse",
    "bounded_comm_optimum",
    "chsh_feasibility",
    "dj_forbidden_mass",
    "epr_quantum_statistics",
    "fingerprint_prime",
    "registered_protocols",
    "run_experiment",
    "run_experiment_json",
    "verify",
    "zero_comm_optimum",
]
