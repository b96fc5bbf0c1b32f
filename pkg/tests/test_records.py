import numpy as np
import pandas as pd
import pytest
from PIL import Image

from errors import ConfigError
from field import ComplexField
from hologram import HologramParams, ReferenceWave, build_hologram
from imaging import (
    amplitude_gray,
    farfield_gray,
    hologram_gray,
    phase_gray,
    to_gray,
    write_field_pair,
    write_pgm,
)
from records import (
    SWEEP_COLUMNS,
    read_wfe_map,
    write_complex_grid,
    write_hologram,
    write_real_grid,
    write_states,
    write_sweep,
)
from sensitivity import sweep_sigma
from states import SuperpositionState, sample_state_on_grid

# ==============================================================================
# CSV
# ==============================================================================


def test_states_csv(table, tmp_path):
    path = write_states(table, tmp_path / "states.csv")
    frame = pd.read_csv(path, float_precision="round_trip")
    assert len(frame) == 12
    assert list(frame.columns[:2]) == ["basis_id", "member_id"]
    for row, state in zip(frame.itertuples(index=False), table):
        coefficients = (
            complex(row.re_c1, row.im_c1),
            complex(row.re_c0, row.im_c0),
            complex(row.re_cm1, row.im_cm1),
        )
        restored = SuperpositionState(coefficients, row.basis_id, row.member_id)
        assert restored.label == state.label
        np.testing.assert_array_equal(restored.vector, state.vector)


def test_sweep_csv_is_reproducible(table, tmp_path):
    states = list(table.basis(1))
    first = write_sweep(sweep_sigma(states, [0.0, 0.5, 1.0]), tmp_path / "a.csv")
    second = write_sweep(sweep_sigma(states, [0.0, 0.5, 1.0]), tmp_path / "b.csv")
    assert first.read_bytes() == second.read_bytes()
    frame = pd.read_csv(first)
    assert list(frame.columns) == SWEEP_COLUMNS
    assert len(frame) == 9
    assert list(frame["axis_value"][:3]) == [0.0, 0.0, 0.0]


def test_complex_grid_covers_aperture(table, small_grid, tmp_path):
    field = sample_state_on_grid(table["c3"], small_grid)
    path = write_complex_grid(field, tmp_path / "c3.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["row", "col", "re", "im"]
    assert len(frame) == np.count_nonzero(small_grid.mask)
    mask = small_grid.mask
    np.testing.assert_allclose(frame["re"], field.values.real[mask], atol=1e-11)
    np.testing.assert_allclose(frame["im"], field.values.imag[mask], atol=1e-11)


def test_real_grid_and_wfe_map(small_grid, tmp_path):
    wfe = np.linspace(0, 1, small_grid.rows * small_grid.cols).reshape(small_grid.shape)
    path = write_real_grid(wfe, tmp_path / "wfe.csv")
    np.testing.assert_allclose(read_wfe_map(path, small_grid), wfe, atol=1e-11)
    bad = write_real_grid(np.zeros((4, 4)), tmp_path / "bad.csv")
    with pytest.raises(ConfigError) as info:
        read_wfe_map(bad, small_grid)
    assert info.value.key == "wfe_map"
    text = tmp_path / "text.csv"
    text.write_text("a,b\nc,d\n")
    with pytest.raises(ConfigError):
        read_wfe_map(text)


def test_hologram_csv(small_grid, tmp_path):
    hologram = build_hologram(
        np.ones(small_grid.shape),
        np.zeros(small_grid.shape),
        ReferenceWave(10),
        HologramParams.from_sigma_prime(1.72),
        small_grid,
    )
    frame = pd.read_csv(write_hologram(hologram, tmp_path / "cgh.csv"), header=None)
    assert frame.shape == small_grid.shape
    assert frame.to_numpy().max() == pytest.approx(3.44)


# ==============================================================================
# Images
# ==============================================================================


def test_to_gray_levels():
    gray = to_gray(np.array([0.0, 0.5, 1.0]), 0.0, 1.0)
    np.testing.assert_array_equal(gray, [0, 128, 255])
    assert to_gray(np.ones(3)).max() == 0


def test_phase_and_amplitude_scaling(small_grid):
    values = np.zeros(small_grid.shape, dtype=complex)
    values[0, 0] = -1
    values[0, 1] = 2j
    field = ComplexField(values, small_grid)
    assert phase_gray(field)[0, 0] == 255
    assert phase_gray(field)[1, 1] == 128
    assert amplitude_gray(field)[0, 1] == 255
    assert amplitude_gray(field)[0, 0] == 128


def test_farfield_gamma(small_grid):
    values = np.zeros(small_grid.shape)
    values[0, 0], values[0, 1] = 1.0, 0.1
    gray = farfield_gray(ComplexField(values, small_grid), gamma=0.5)
    assert gray[0, 0] == 255
    assert gray[0, 1] == round(255 * np.sqrt(0.1))


def test_pgm_files(table, small_grid, tmp_path):
    field = sample_state_on_grid(table["c3"], small_grid)
    amp, phase = write_field_pair(field, tmp_path / "theory_s0.610")
    assert amp.name == "theory_s0.610_amp.pgm"
    assert phase.name == "theory_s0.610_phase.pgm"
    assert amp.read_bytes().startswith(b"P5")
    with Image.open(amp) as image:
        np.testing.assert_array_equal(np.asarray(image), amplitude_gray(field))
    assert write_pgm(np.zeros((4, 4)), tmp_path / "x.pgm").name == "x.pgm"


def test_hologram_gray(small_grid):
    hologram = build_hologram(
        np.ones(small_grid.shape),
        np.zeros(small_grid.shape),
        ReferenceWave(10),
        HologramParams.from_sigma_prime(1.0),
        small_grid,
    )
    gray = hologram_gray(hologram)
    assert gray.max() == 255
    assert np.all(gray[~small_grid.mask] == 0)
