import math

import numpy as np
import pytest

import vndiv


def diag(*p):
    return np.diag(np.array(p, dtype=complex))


def test_relative_entropy_example():
    assert vndiv.relative_entropy(diag(0.5, 0.5), diag(1 / 3, 2 / 3)) == pytest.approx(0.058891517828, abs=1e-10)


def test_fidelity_and_renyi():
    rho = diag(1.0, 0.0)
    assert vndiv.fidelity(rho, diag(0.5, 0.5)) == pytest.approx(math.sqrt(0.5))
    bell = np.zeros((4, 4), dtype=complex)
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    assert vndiv.sandwiched_renyi(bell, diag(0.5, 0, 0, 0.5), 0.75) == pytest.approx(math.log(2))


def test_generalized_fidelity_brackets():
    r = vndiv.generalized_fidelity(diag(0.9, 0.1), diag(0.1, 0.9), 0.75, grid_points=512)
    assert r["value"] <= r["upper"]
    assert r["diagnostics"]["dual_upper"] >= r["value"] - 1e-12
    assert r["value"] == pytest.approx(1.6559600186, abs=1e-6)


def test_kosaki_matches_umegaki():
    rho, sigma = diag(0.7, 0.3), diag(0.2, 0.8)
    assert vndiv.kosaki_entropy(rho, sigma)["value"] == pytest.approx(vndiv.relative_entropy(rho, sigma), abs=1e-6)


def test_index_and_certainty():
    assert vndiv.pinching_index(3) == pytest.approx(3.0, abs=1e-9)
    assert vndiv.orbifold_index(2, "pauli_group") == pytest.approx(4.0, abs=1e-9)
    psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    c = vndiv.certainty_relation(2, "Z2_pauli", psi)
    assert c["sum"] == pytest.approx(c["log_index"], abs=1e-9)


def test_bell_orbifold_rows():
    rows = vndiv.bell_orbifold(2, "Z2_pauli", [0.6, 0.9])
    assert len(rows) == 2
    for row in rows:
        assert row["sandwiched_renyi"] == pytest.approx(math.log(2), abs=1e-9)


def test_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        vndiv.sandwiched_renyi(diag(0.5, 0.5), diag(0.5, 0.5), 0.2)
