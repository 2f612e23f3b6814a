import pytest

from xpm_cavity.core import on_resonance_od
from xpm_cavity.presets import (DEFAULT_OD, PresetError, available_presets,
                                format_preset, load_preset, parse_preset)


def test_rb_preset_ships_rb_parameters():
    assert "rb87" in available_presets()
    rb = load_preset("rb87")
    assert rb.mu2 == 8.4e-30
    assert rb.lambda_c == 780.2e-9 and rb.lambda_p == 776e-9
    assert rb.gamma1 == pytest.approx(2 * 3.141592653589793 * 6e6, rel=1e-15)
    assert rb.gamma2 == pytest.approx(2 * 3.141592653589793 * 0.67e6, rel=1e-15)
    assert on_resonance_od(rb) == pytest.approx(DEFAULT_OD, rel=1e-14)


def test_density_and_length_overrides():
    rb = load_preset("rb87", od=100, length=5e-3)
    assert on_resonance_od(rb) == pytest.approx(100, rel=1e-14)
    assert rb.length == 5e-3
    rb = load_preset("rb87", number_density=2e16, length=1e-3)
    assert rb.number_density == 2e16
    with pytest.raises(PresetError):
        load_preset("rb87", od=1, number_density=1e16)


def test_round_trip_through_file(tmp_path):
    rb = load_preset("rb87", od=42)
    path = tmp_path / "mine.preset"
    path.write_text(format_preset(rb, "mine"))
    assert load_preset(str(path)) == rb


@pytest.mark.parametrize("text, message", [
    ("mu1 1e-29", ":1: expected key = value"),
    ("mu1 = abc", "not a number"),
    ("bogus = 1", "unknown field"),
    ("mu1 = 1\nmu1 = 2", "duplicate"),
    ("mu1 = 1e-29", "missing"),
])
def test_parse_errors_name_the_problem(text, message):
    with pytest.raises(PresetError, match=message):
        parse_preset(text)


def test_unknown_preset():
    with pytest.raises(PresetError, match="unknown preset"):
        load_preset("cs133")
