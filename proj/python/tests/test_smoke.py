import json
import math

import numpy as np
import pytest

import quench_patterns as qp


def test_critical_quantity_and_predictions():
    assert qp.critical_quantity(2.0, math.inf) == 1.0
    assert qp.critical_quantity(1.0, 2 * math.pi) == pytest.approx(0.5, abs=1e-15)
    assert qp.predict(1.9, 2 * math.pi) == "not_exists"
    assert qp.predict(math.sqrt(3.0), 2 * math.pi) == "critical"


def test_period_map_round_trip():
    for m in (0.1, 0.5, 0.9):
        assert abs(qp.amplitude_of_half_period(qp.half_period_of_amplitude(m)) - m) < 1e-9


def test_orbit_sampling():
    o = qp.sample_orbit(2 * math.pi, 101)
    assert o["u"].shape == (101,)
    assert o["hamiltonian_drift"] <= 1e-8
    assert o["u"].max() == pytest.approx(o["amplitude"], abs=1e-3)


def test_front_is_monotone_between_one_and_zero():
    f = qp.solve_front(1.0, 20.0, 20.0, h=0.05)
    u = f["u"]
    assert u.shape == f["x"].shape
    assert np.all(np.diff(u) <= 1e-12)
    assert 0.0 <= u.min() and u.max() <= 1.0


def test_dichotomy():
    assert qp.verify_dichotomy(1.0, h=0.05)["verdict"] == "nontrivial"
    assert qp.verify_dichotomy(2.5, h=0.05)["verdict"] == "trivial"


def test_small_strip_layout():
    s = qp.solve_strip(1.0, 6.0, 5.0, 5.0, h=0.2)
    assert s["u"].shape == (s["y"].size, s["x"].size)
    assert s["u"].min() >= 0.0


def test_evolve_keeps_zero():
    x = qp.grid_centers(-5.0, 5.0, 0.1)
    r = qp.evolve_1d(1.0, "lab", -5.0, 5.0, 0.1, [0.0] * x.size, 0.1, 1.0)
    assert np.all(r["u"] == 0.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(qp.ParameterError):
        qp.critical_quantity(1.0, 3.0)
    with pytest.raises(qp.QuenchError):
        qp.amplitude_of_half_period(2.0)
    assert issubclass(qp.NumericalError, qp.QuenchError)


def test_cli_entry_point():
    code, out, _ = qp.run_cli(["dichotomy", "--c", "2.0"])
    assert code == 4
    assert json.loads(out)["verdict"] == "inconclusive"
