import pytest

from quiver_branes import config


def test_defaults(monkeypatch):
    """Unset variables give the documented defaults."""
    for name in (
        "QUIVER_BRANES_TOL",
        "QUIVER_BRANES_RANK_RTOL",
        "QUIVER_BRANES_WITNESS_TOL",
        "QUIVER_BRANES_SEED",
        "QUIVER_BRANES_SAMPLES",
        "QUIVER_BRANES_FLOW_MAX_ITERS",
    ):
        monkeypatch.delenv(name, raising=False)
    assert config.default_tolerance() == 1e-10
    assert config.rank_rtol() == 1e-8
    assert config.witness_tolerance() == 1e-8
    assert config.default_seed() == 0
    assert config.default_samples() == 1000
    assert config.flow_max_iters() == 10_000


def test_overrides(monkeypatch):
    monkeypatch.setenv("QUIVER_BRANES_TOL", "1e-6")
    monkeypatch.setenv("QUIVER_BRANES_SEED", "42")
    monkeypatch.setenv("QUIVER_BRANES_SAMPLES", "25")
    assert config.default_tolerance() == 1e-6
    assert config.default_seed() == 42
    assert config.default_samples() == 25


@pytest.mark.parametrize("value", ["abc", "-1", "0"])
def test_invalid_tolerance_falls_back(monkeypatch, value):
    """Unparseable or non-positive tolerances fall back to the default."""
    monkeypatch.setenv("QUIVER_BRANES_TOL", value)
    assert config.default_tolerance() == 1e-10


def test_invalid_ints(monkeypatch):
    monkeypatch.setenv("QUIVER_BRANES_SEED", "seven")
    monkeypatch.setenv("QUIVER_BRANES_SAMPLES", "0")
    assert config.default_seed() == 0
    assert config.default_samples() == 1


def test_samples_drive_the_monad_report(monkeypatch, c_entry):
    """QUIVER_BRANES_SAMPLES sets the monad sample count."""
    from quiver_branes.engine import QuiverBranesEngine

    monkeypatch.setenv("QUIVER_BRANES_SAMPLES", "4")
    report = QuiverBranesEngine.monad(c_entry.X)
    assert report["samples"] == 10
