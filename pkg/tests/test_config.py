import pytest
from hypothesis import given, strategies as st

from emulaser.config import (RunConfig, load, load_preset, parse_text, preset_names, serialize,
                             with_overrides)
from emulaser.errors import ConfigError

SAMPLE = """
[run]
mode = both_dressed
kinetic_energy_ev = 2e6

[laser]
omega_ev = 2
e0 = 1e7

[geometry]
theta_i_deg = 30
theta_f_deg = -45

[sums]
smax = 6
nmax = 4
"""


def test_parse_sections():
    cfg = parse_text(SAMPLE)
    assert (cfg.mode, cfg.kinetic_energy, cfg.omega, cfg.e0) == ("both_dressed", 2e6, 2.0, 1e7)
    assert cfg.s_range == (-6, 6) and cfg.n_range == (-4, 4)
    assert cfg.theta_f == -45.0


def test_defaults():
    cfg = parse_text("")
    assert cfg == RunConfig()


def test_load_from_file(tmp_path):
    p = tmp_path / "run.ini"
    p.write_text(SAMPLE)
    assert load(p) == parse_text(SAMPLE)
    with pytest.raises(ConfigError):
        load(tmp_path / "missing.ini")


@pytest.mark.parametrize("name", preset_names())
def test_every_preset_loads_and_round_trips(name):
    cfg = load_preset(name)
    assert parse_text(serialize(cfg)) == cfg


def test_unknown_preset():
    with pytest.raises(ConfigError, match="available"):
        load_preset("nope")


modes = st.sampled_from(["laser_free", "electron_dressed", "both_dressed"])
pos = st.floats(1e-3, 1e12, allow_nan=False, allow_infinity=False)


@given(modes, pos, pos, st.floats(0, 1e10), st.floats(0, 180), st.floats(-180, 180),
       st.integers(0, 500), st.integers(0, 500), st.booleans())
def test_round_trip(mode, ekin, omega, e0, ti, tf, smax, nmax, ext):
    cfg = RunConfig(mode=mode, kinetic_energy=ekin, omega=omega, e0=e0, theta_i=ti, theta_f=tf,
                    smax=smax, nmax=nmax, auto_extend=ext).validate()
    assert parse_text(serialize(cfg)) == cfg


def test_sweep_round_trip():
    cfg = load_preset("angular-low-incidence")
    assert cfg.series_values == (0.0, 5.0, 15.0, 30.0, 45.0, 60.0)
    assert len(cfg.sweep_grid()) == 37
    assert parse_text(serialize(cfg)) == cfg


def test_grids():
    log = RunConfig(sweep_variable="e0", sweep_start=10, sweep_stop=1e8, sweep_count=8,
                    sweep_spacing="log").validate()
    assert log.sweep_grid()[0] == pytest.approx(10) and log.sweep_grid()[-1] == pytest.approx(1e8)
    s = RunConfig(sweep_variable="s", sweep_start=-3, sweep_stop=3).validate()
    assert s.sweep_grid() == [-3, -2, -1, 0, 1, 2, 3]
    explicit = parse_text("[sweep]\nvariable = theta_f\nvalues = 10, 20, 30\n")
    assert explicit.sweep_grid() == [10, 20, 30]


def test_overrides_beat_file_values():
    cfg = with_overrides(parse_text(SAMPLE), e0=5e5, smax=3, mode=None)
    assert cfg.e0 == 5e5 and cfg.smax == 3 and cfg.mode == "both_dressed"


@pytest.mark.parametrize("text,field,line", [
    ("[laser]\ne0 = -1\n", "e0", 2),
    ("[laser]\ne0 = strong\n", "e0", 2),
    ("[run]\nmode = x\n", "mode", None),
    ("[geometry]\ntheta_i_deg = 200\n", "theta_i_deg", 2),
    ("[sums]\nsmin = 5\nsmax = 2\n", "smin", 2),
    ("[laser]\ncolour = red\n", "colour", 2),
    ("[output]\nformat = xml\n", "format", None),
    ("[sweep]\nvariable = spin\n", "variable", None),
])
def test_validation_errors_name_the_field(text, field, line):
    with pytest.raises(ConfigError) as info:
        parse_text(text)
    assert info.value.field == field
    if line is not None:
        assert info.value.line == line


def test_unknown_section_and_malformed():
    with pytest.raises(ConfigError, match="section"):
        parse_text("[extras]\na = 1\n")
    with pytest.raises(ConfigError):
        parse_text("e0 = 1\n")
