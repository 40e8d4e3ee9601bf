"""
Tests for configuration, parsing helpers and the sweep runner.
"""

import threading

import pytest

from oracledisc.config import Config, config
from oracledisc.runner import SweepRunner, chunked
from oracledisc.utils import format_duration, parse_float_list, parse_range


class TestConfig:

    def test_defaults(self):
        assert config.TOLERANCE > 0
        assert config.ENUMERATION_CAP >= 1
        assert config.tol(None) == config.TOLERANCE
        assert config.tol(1e-3) == 1e-3
        assert config.cap(2) == 2
        assert config.threads(0) == 1

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("ORACLE_DISC_THREADS", "3")
        monkeypatch.setenv("ORACLE_DISC_TOL", "1e-6")
        monkeypatch.setenv("ORACLE_DISC_DISCRIM_CAP", "6")
        monkeypatch.setenv("ORACLE_DISC_LOG_FILE", "logs/run.log")
        cfg = Config()
        assert cfg.DISCRIMINATION_CAP == 6
        assert cfg.THREADS == 3
        assert cfg.TOLERANCE == 1e-6
        assert cfg.LOG_FILE.name == "run.log"

    def test_invalid_values(self, monkeypatch):
        monkeypatch.setenv("ORACLE_DISC_THREADS", "0")
        with pytest.raises(ValueError):
            Config()

    def test_invalid_tolerance(self, monkeypatch):
        monkeypatch.setenv("ORACLE_DISC_TOL", "-1")
        with pytest.raises(ValueError):
            Config()

    @pytest.mark.parametrize("value", ["0", "17"])
    def test_invalid_discrimination_cap(self, monkeypatch, value):
        monkeypatch.setenv("ORACLE_DISC_DISCRIM_CAP", value)
        with pytest.raises(ValueError, match="ORACLE_DISC_DISCRIM_CAP"):
            Config()


class TestParsing:

    def test_float_list(self):
        assert parse_float_list("1e-5, 2e-5,") == [1e-5, 2e-5]

    @pytest.mark.parametrize("text", ["", "1,a"])
    def test_float_list_errors(self, text):
        with pytest.raises(ValueError):
            parse_float_list(text)

    def test_range(self):
        assert parse_range("1:100000:1000") == (1, 100000, 1000)
        assert parse_range("2:5") == (2, 5, 1)

    @pytest.mark.parametrize("text", ["5", "0:3", "5:2", "1:3:0", "a:b"])
    def test_range_errors(self, text):
        with pytest.raises(ValueError):
            parse_range(text)

    def test_format_duration(self):
        assert format_duration(0.0123) == "12.3ms"
        assert format_duration(2.5) == "2.5s"
        assert format_duration(125) == "2m 5s"


class TestRunner:

    def test_chunked(self):
        assert list(chunked(range(7), 3)) == [[0, 1, 2], [3, 4, 5], [6]]
        assert list(chunked([], 3)) == []

    def test_preserves_order(self):
        assert SweepRunner(threads=4).map(lambda x: x * x, range(50)) == [x * x for x in range(50)]

    def test_serial_runs_on_caller_thread(self):
        seen = SweepRunner(threads=1).map(lambda _: threading.get_ident(), range(3))
        assert set(seen) == {threading.get_ident()}

    def test_propagates_errors(self):
        def boom(x):
            raise RuntimeError(f"item {x}")

        with pytest.raises(RuntimeError, match="item 0"):
            SweepRunner(threads=2).map(boom, [0, 1])
