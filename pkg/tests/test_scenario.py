import numpy as np
import pytest

from errors import ConfigError
from scenario import OUT_ENV, ExperimentConfig, parse_grid


def write_yaml(tmp_path, text):
    path = tmp_path / "experiment.yaml"
    path.write_text(text)
    return path


def test_defaults_are_valid():
    config = ExperimentConfig().validate()
    grid = config.grid
    assert (grid.rows, grid.cols, grid.aperture_diameter) == (768, 1024, 691)
    assert config.fig1_sigma_primes == (0.610, 1.84, 3.13, 3.83)
    assert config.tilts == (10, 30, 50, 75, 100)
    assert config.state == "c3"
    assert config.gamma == 0.3
    sweep = config.sweep_sigma_primes
    assert len(sweep) == 384
    assert sweep[0] == 0.0 and sweep[-1] == pytest.approx(3.83)


def test_sweep_never_passes_stop():
    sweep = ExperimentConfig(sweep_step=0.5).sweep_sigma_primes
    np.testing.assert_allclose(sweep, np.arange(8) * 0.5)


def test_yaml_overrides_defaults(tmp_path):
    path = write_yaml(tmp_path, "tilts: [20, 40]\ngamma: 0.5\nstate: mub2\nrows: 256\n")
    config = ExperimentConfig.from_yaml(path).validate()
    assert config.tilts == (20.0, 40.0)
    assert config.gamma == 0.5
    assert config.rows == 256
    assert [s.label for s in config.states()] == ["a2", "b2", "c2"]
    assert config.source == str(path)


def test_precedence(tmp_path):
    path = write_yaml(tmp_path, "out: from-file\n")
    environ = {OUT_ENV: "from-env"}
    assert ExperimentConfig.load(path, environ={}).out == "from-file"
    assert ExperimentConfig.load(path, environ=environ).out == "from-env"
    config = ExperimentConfig.load(path, environ=environ, out="from-flag", gamma=None)
    assert config.out == "from-flag"
    assert config.gamma == 0.3


def test_string_values_are_coerced():
    config = ExperimentConfig.from_mapping(
        {"precondition_flags": "on,off", "tilts": "10,20", "workers": "3", "sigma_prime": "1.5"}
    )
    assert config.precondition_flags == (True, False)
    assert config.tilts == (10.0, 20.0)
    assert config.workers == 3
    assert config.sigma_prime == 1.5


@pytest.mark.parametrize(
    "values, key",
    [
        ({"gamma": -1}, "gamma"),
        ({"sigma_prime": 2.0}, "sigma_prime"),
        ({"tilts": [300]}, "tilts"),
        ({"tilts": [50, 30]}, "tilts"),
        ({"state": "z9"}, "state"),
        ({"state": "mub7"}, "state"),
        ({"state": "mub-1"}, "state"),
        ({"i_max_mode": "peak"}, "i_max_mode"),
        ({"aperture_fraction": 1.5}, "aperture_fraction"),
        ({"rows": 32}, "grid"),
        ({"sweep_stop": 4.0}, "sweep_stop"),
        ({"fig1_sigma_primes": [0.5, 5.0]}, "fig1_sigma_primes"),
        ({"workers": 0}, "workers"),
        ({"wfe_map": "missing.csv"}, "wfe_map"),
    ],
)
def test_rejected_values_name_the_key(values, key):
    with pytest.raises(ConfigError) as info:
        ExperimentConfig.from_mapping(values).validate()
    assert info.value.key == key
    assert key in str(info.value)


def test_large_sigma_prime_without_preconditioning():
    config = ExperimentConfig(sigma_prime=3.0, precondition_flags=(False,)).validate()
    assert config.sigma_prime == 3.0


def test_unknown_key_and_bad_types():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"tilt": 10})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"workers": "many"})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_mapping({"precondition_flags": "maybe"})


def test_bad_files(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_yaml(tmp_path / "absent.yaml")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_yaml(write_yaml(tmp_path, "- 1\n- 2\n"))
    with pytest.raises(ConfigError):
        ExperimentConfig.from_yaml(write_yaml(tmp_path, "tilts: [10\n"))


def test_out_must_be_a_directory(tmp_path):
    target = tmp_path / "taken"
    target.write_text("")
    with pytest.raises(ConfigError):
        ExperimentConfig(out=str(target)).validate()


def test_parse_grid():
    assert parse_grid("768x1024") == (768, 1024)
    with pytest.raises(ConfigError):
        parse_grid("768-1024")


def test_wfe_map_shape_checked(tmp_path):
    path = tmp_path / "wfe.csv"
    path.write_text("0,0\n0,0\n")
    with pytest.raises(ConfigError) as info:
        ExperimentConfig(rows=128, cols=160, tilts=(10,), wfe_map=str(path)).validate()
    assert info.value.key == "wfe_map"
