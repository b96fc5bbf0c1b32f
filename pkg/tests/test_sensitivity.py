import numpy as np
import pytest

from sensitivity import (
    SIGMA_AXIS,
    SIGMA_SWEEP,
    TILT_AXIS,
    TILTS,
    SweepRecord,
    analytic_generated,
    analytic_probability,
    check_axis,
    run_points,
    series,
    sweep_sigma,
    sweep_tilt,
)


@pytest.fixture(scope="module")
def sigma_records(table):
    return sweep_sigma(list(table))


@pytest.fixture(scope="module")
def tilt_records(table, grid):
    results = []
    records = sweep_tilt(
        table["c3"], TILTS, grid, precondition_flags=(True, False), on_result=results.append
    )
    return records, results


def record_at(records, value):
    return next(r for r in records if r.axis_value == pytest.approx(value))


def test_sweep_axis():
    assert SIGMA_SWEEP[0] == 0.0
    assert SIGMA_SWEEP[-1] == pytest.approx(3.83)
    assert len(SIGMA_SWEEP) == 384


def test_pure_basis_is_always_unity(sigma_records):
    for record in sigma_records:
        np.testing.assert_allclose(record.basis_probabilities(0), 1.0, atol=1e-12)


def test_in_basis_degeneracy(sigma_records):
    for record in sigma_records:
        for basis_id in (1, 2, 3):
            p = record.basis_probabilities(basis_id)
            assert max(p) - min(p) < 1e-9


def test_bases_two_and_three_coincide(sigma_records):
    p2 = np.array([r.basis_probabilities(2)[0] for r in sigma_records])
    p3 = np.array([r.basis_probabilities(3)[0] for r in sigma_records])
    np.testing.assert_allclose(p2, p3, atol=1e-9)


def test_limit_and_peak_values(sigma_records):
    assert record_at(sigma_records, 0.0).probability("c3") == pytest.approx(1.0, abs=1e-12)
    assert record_at(sigma_records, 1.84).probability("c3") == pytest.approx(0.90, abs=0.02)


def test_superpositions_decline_on_monotonic_branch(sigma_records):
    for label in ("a1", "c3"):
        sigma, p = series(sigma_records, label)
        branch = p[sigma <= 1.84]
        assert np.all(np.diff(branch) <= 1e-12)


def test_first_zero_end_of_sweep(sigma_records):
    record = record_at(sigma_records, 3.83)
    for basis_id in (1, 2, 3):
        assert 0.3 <= record.basis_probabilities(basis_id)[0] <= 0.5
    assert record.probability("a1") < record.probability("a2")


def test_grid_quadrature_close_to_ring(table, small_grid):
    ring = analytic_probability(table["c3"], 1.0)
    grid = analytic_probability(table["c3"], 1.0, small_grid)
    assert grid.probability == pytest.approx(ring.probability, abs=1e-2)
    assert ring.sigma_prime == 1.0


def test_analytic_generated_small_argument_limit():
    amplitude = np.array([0.5, 1.0])
    phase = np.array([0.2, -0.3])
    np.testing.assert_allclose(analytic_generated(amplitude, phase, 0), amplitude * np.exp(1j * phase))
    small = analytic_generated(amplitude, phase, 1e-6)
    np.testing.assert_allclose(small / np.abs(small[1]), amplitude * np.exp(1j * phase), atol=1e-6)


def test_tilt_sweep_preconditioned_is_nondecreasing(tilt_records):
    records, results = tilt_records
    preconditioned = [r for r in records if r.precondition]
    assert [r.axis_value for r in preconditioned] == list(TILTS)
    assert all(r.axis == TILT_AXIS for r in records)
    _, p = series(preconditioned, "c3")
    assert np.all(np.diff(p) >= -1e-6)
    assert p[-1] >= 0.99
    assert [r.report.tilt_waves for r in results] == list(TILTS) * 2


def test_preconditioning_wins_at_every_tilt(tilt_records):
    records, _ = tilt_records
    _, pre = series(records, "c3", precondition=True)
    _, raw = series(records, "c3", precondition=False)
    assert len(pre) == len(raw) == len(TILTS)
    assert np.all(pre >= raw)
    assert raw[0] == pytest.approx(0.88, abs=0.03)


def test_failed_point_is_skipped(table, grid):
    records = sweep_tilt(table["c3"], (300,), grid, precondition_flags=(False,))
    assert records == []


def test_record_rows():
    record = SweepRecord(SIGMA_AXIS, 0.5, ((3, "c", 0.97),), False, 100, 0, 0)
    assert record.probability("c3") == 0.97
    (row,) = record.rows()
    assert row["precondition_flag"] == 0
    assert row["member_id"] == "c"
    with pytest.raises(KeyError):
        record.probability("a1")


def test_check_axis():
    np.testing.assert_array_equal(check_axis([1, 2], "tilt"), [1.0, 2.0])
    with pytest.raises(ValueError):
        check_axis([10, 10], "tilt")
    with pytest.raises(ValueError):
        check_axis([], "tilt")


def test_run_points_keeps_order():
    points = list(range(20))
    assert list(run_points(lambda p: p * p, points, workers=4)) == [p * p for p in points]
    assert list(run_points(lambda p: -p, points)) == [-p for p in points]
