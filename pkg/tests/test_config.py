import pytest

from cyclorep.config import CONFIG_ENV, RunConfig, load_config, parse_config


def test_defaults():
    cfg = RunConfig()
    assert (cfg.precision, cfg.tol, cfg.memory_cap, cfg.format) == (50, 1e-10, 2**31, "text")
    assert cfg.workers >= 1


def test_parse_and_override():
    cfg = parse_config("precision = 80\ntol = 1e-8  # looser\nformat = json\n# comment\nmemory-cap = 1000\n")
    assert (cfg.precision, cfg.tol, cfg.format, cfg.memory_cap) == (80, 1e-8, "json", 1000)
    assert cfg.updated(format="csv", workers=None).format == "csv"


@pytest.mark.parametrize("text", ["format = xml", "tol = -1", "precision = 0", "colour = red", "workers = two"])
def test_invalid(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_env_path(tmp_path, monkeypatch):
    p = tmp_path / "run.conf"
    p.write_text("format = csv\n")
    monkeypatch.setenv(CONFIG_ENV, str(p))
    assert load_config().format == "csv"
    monkeypatch.delenv(CONFIG_ENV)
    assert load_config().format == "text"
