import math

import pytest

import ccsim


def test_registry_lists_all_protocols():
    names = {p["name"] for p in ccsim.registered_protocols()}
    assert {"epr-classical", "epr-quantum", "dj-pseudo-telepathy", "grover-schedule"} <= names


def test_fingerprint_prime():
    assert ccsim.fingerprint_prime(16, "1/4") == (67, 7)


def test_epr_quantum_matches_cos2():
    s = ccsim.epr_quantum_statistics(0.3, 1.1)
    assert s["p_equal"] == pytest.approx(math.cos(0.8) ** 2, abs=1e-12)
    assert s["p_a_zero"] == pytest.approx(0.5, abs=1e-12)


def test_dj_exact_and_silent():
    mass, bits, qubits = ccsim.dj_forbidden_mass(2, "1100", "1010")
    assert mass < 1e-12
    assert (bits, qubits) == (0, 0)


def test_chsh_restricted_epr_is_infeasible():
    r = ccsim.chsh_feasibility([1.0, 0.75, 0.75, 0.25])
    assert not r["feasible"]
    assert r["max_chsh"] == pytest.approx(2.5, abs=1e-12)


def test_search_optima():
    success, perfect = ccsim.zero_comm_optimum("dj-2")
    assert perfect
    assert success == pytest.approx(1.0, abs=1e-12)
    assert ccsim.bounded_comm_optimum("cvdnt-nonzero", 2) == pytest.approx(7 / 9, abs=1e-12)


def test_run_experiment_is_deterministic():
    cfg = {"protocol": "epr-classical", "seed": 7, "trials": 500, "inputs": {"mode": "grid", "points": 2}}
    first = ccsim.run_experiment(cfg)
    second = ccsim.run_experiment(cfg)
    assert first["text"] == second["text"]
    assert len(first["rows"]) == 4
    assert all(r["bits_sent"] == 1 for r in first["rows"])


def test_config_errors_raise():
    with pytest.raises(ValueError):
        ccsim.run_experiment({"protocol": "nope", "seed": 1})
    with pytest.raises(ValueError):
        ccsim.run_experiment({"protocol": "epr-classical"})
