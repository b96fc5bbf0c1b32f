import numpy as np
import pytest

from errors import GeometryError, ZeroNormError
from fidelity import FidelityReport, inner_product, norm, overlap, probability
from field import ComplexField, GridGeometry
from diffraction import far_field
from states import sample_state_on_grid


def test_identical_fields(table, small_grid):
    psi = sample_state_on_grid(table["c3"], small_grid)
    report = probability(psi, psi, label="c3")
    assert report.probability == pytest.approx(1.0, abs=1e-12)
    assert report.label == "c3"
    assert inner_product(psi, psi) == pytest.approx(1.0)


def test_global_phase_and_scale_are_ignored(table, small_grid):
    psi = sample_state_on_grid(table["b2"], small_grid)
    shifted = psi.with_values(3.0 * np.exp(1.1j) * psi.values)
    assert probability(psi, shifted).probability == pytest.approx(1.0, abs=1e-12)


def test_basis_overlaps_on_grid(table, grid):
    # the sample at the origin breaks the rotational symmetry by about 1/N
    c3 = sample_state_on_grid(table["c3"], grid)
    a3 = sample_state_on_grid(table["a3"], grid)
    b1 = sample_state_on_grid(table["b1"], grid)
    a = sample_state_on_grid(table["a"], grid)
    assert probability(c3, a3).probability == pytest.approx(0.0, abs=1e-9)
    assert probability(c3, b1).probability == pytest.approx(1 / 3, abs=1e-5)
    assert probability(c3, a).probability == pytest.approx(1 / 3, abs=1e-5)


def test_norm_and_overlap():
    assert norm(np.array([3.0, 4.0j])) == pytest.approx(5.0)
    inner, nt, nh = overlap(np.array([1, 1j]), np.array([1, 1j]))
    assert inner == pytest.approx(1.0)
    assert (nt, nh) == (pytest.approx(np.sqrt(2)), pytest.approx(np.sqrt(2)))


def test_zero_field_rejected(table, small_grid):
    psi = sample_state_on_grid(table["c3"], small_grid)
    zero = psi.with_values(np.zeros(small_grid.shape))
    with pytest.raises(ZeroNormError):
        probability(psi, zero)
    with pytest.raises(ZeroDivisionError):
        overlap(np.zeros(3), np.ones(3))


def test_grid_and_plane_checks(table, small_grid):
    psi = sample_state_on_grid(table["c3"], small_grid)
    other = sample_state_on_grid(table["c3"], GridGeometry(128, 160, 100))
    with pytest.raises(GeometryError):
        probability(psi, other)
    with pytest.raises(GeometryError):
        probability(psi, far_field(psi))


def test_report_validation_and_record():
    with pytest.raises(ValueError):
        FidelityReport(1.0, 1.0, 1.0, 1.5)
    record = FidelityReport(0.6 + 0.8j, 2.0, 3.0, 1.0, "c3", 1.72, 100, True).to_dict()
    assert record["inner_re"] == pytest.approx(0.6)
    assert record["inner_im"] == pytest.approx(0.8)
    assert "inner" not in record
    assert record["precondition"] is True


def test_noise_lowers_probability(table, small_grid):
    psi = sample_state_on_grid(table["c3"], small_grid)
    rng = np.random.default_rng(2)
    noisy = psi.values + 0.3 * rng.normal(size=small_grid.shape)
    p = probability(psi, ComplexField(noisy, small_grid)).probability
    assert 0 < p < 1
