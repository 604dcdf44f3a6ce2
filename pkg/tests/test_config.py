import pytest
from hypothesis import given
from hypothesis import strategies as st

from p6tau.config import ENV_VAR, RunConfig, load_config, parse_config
from p6tau.errors import DomainError


def test_defaults():
    c = RunConfig()
    assert (c.tolerance, c.max_terms, c.output_format, c.seed) == (1e-8, 64, "json", 0)


@pytest.mark.parametrize("kw", [
    {"tolerance": 0.0}, {"tolerance": 0.1}, {"max_terms": 8}, {"max_terms": 512},
    {"output_format": "xml"},
])
def test_validation(kw):
    with pytest.raises(DomainError):
        RunConfig(**kw)


def test_updated_ignores_none():
    assert RunConfig().updated(tolerance=None, seed=5).seed == 5
    assert RunConfig().updated(tolerance=None).tolerance == 1e-8


def test_parse_comments_and_blanks():
    text = "# header\n\ntolerance = 1e-9\nseed=4 # trailing\n"
    assert parse_config(text) == {"tolerance": 1e-9, "seed": 4}


@pytest.mark.parametrize("text", ["tolerance 1e-9", "colour = red", "seed = many"])
def test_parse_errors(text):
    with pytest.raises(DomainError):
        parse_config(text)


def test_precedence(tmp_path, monkeypatch):
    f = tmp_path / "a.cfg"
    f.write_text("seed = 2\nmax_terms = 32\n")
    monkeypatch.setenv(ENV_VAR, str(f))
    c = load_config(max_terms=128)
    assert (c.seed, c.max_terms) == (2, 128)
    monkeypatch.delenv(ENV_VAR)
    assert load_config().seed == 0


@given(st.floats(1e-15, 1e-2), st.integers(16, 256), st.sampled_from(["csv", "json"]))
def test_round_trip_through_text(tol, terms, fmt):
    text = f"tolerance = {tol!r}\nmax_terms = {terms}\noutput_format = {fmt}\n"
    assert RunConfig(**parse_config(text)) == RunConfig(tol, terms, fmt)
