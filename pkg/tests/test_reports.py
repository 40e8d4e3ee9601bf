"""
Tests for report serialization, CSV output and Markdown rendering.
"""

import json

import numpy as np
import pytest

from oracledisc.classical import classical_report
from oracledisc.constants import SCHEMA_VERSION
from oracledisc.reports import (
    classical_csv,
    classical_to_dict,
    complex_pair,
    density_summary,
    matrix_to_list,
    sweep_csv,
    sweep_to_dict,
    table_one_to_dict,
    to_csv,
)
from oracledisc.linalg import DensityOperator
from oracledisc.oracle import table_one_formula
from oracledisc.templating import format_value, renderer
from oracledisc.thermal import advantage_sweep
from oracledisc.utils import dumps_json, write_json, write_text


class TestSerialization:

    def test_complex_pair(self):
        assert complex_pair(1 - 2j) == [1.0, -2.0]
        assert complex_pair(np.complex128(0.5)) == [0.5, 0.0]

    def test_matrix_is_row_major(self):
        m = np.array([[1, 2j], [3, 4]])
        assert matrix_to_list(m) == [[[1.0, 0.0], [0.0, 2.0]], [[3.0, 0.0], [4.0, 0.0]]]

    def test_density_summary(self):
        data = density_summary(DensityOperator.maximally_mixed(2))
        assert data["rank"] == 2
        assert data["purity"] == pytest.approx(0.5)
        assert "matrix" in data
        assert "matrix" not in density_summary(DensityOperator.maximally_mixed(2), include_matrix=False)

    def test_envelope(self):
        data = classical_to_dict(classical_report(2))
        assert data["schema_version"] == SCHEMA_VERSION
        assert data["command"] == "classical"
        assert data["success_by_k"][0] == {"k": 1, "success_probability": 0.5}

    def test_table_keys(self):
        assert table_one_to_dict(table_one_formula(3)) == {"00": 15, "01": 20, "10": 20, "11": 15}

    def test_json_is_deterministic(self):
        data = sweep_to_dict(1e-5, advantage_sweep(1e-5, 1, 5))
        assert dumps_json(data) == dumps_json(json.loads(dumps_json(data)))
        assert dumps_json(data).endswith("}\n")

    def test_json_rejects_nan(self):
        with pytest.raises(ValueError):
            dumps_json({"x": float("nan")})


class TestCsv:

    def test_sweep_header_and_booleans(self):
        text = sweep_csv(advantage_sweep(0.5, 1, 2))
        lines = text.splitlines()
        assert lines[0] == "n,epsilon,p_error_lower,advantage"
        assert lines[1].startswith("1,1.0,0.0,true")
        assert len(lines) == 3

    def test_classical_header(self):
        lines = classical_csv(classical_report(1)).splitlines()
        assert lines == ["k,success_probability", "1,0.5", "2,1.0"]

    def test_none_is_empty(self):
        assert to_csv(("a", "b"), [(None, False)]) == "a,b\n,false\n"


class TestFiles:

    def test_atomic_write_leaves_no_temp_file(self, tmp_path):
        target = tmp_path / "out" / "report.json"
        write_json(target, {"a": 1})
        assert json.loads(target.read_text(encoding="utf-8")) == {"a": 1}
        assert not (tmp_path / "out" / "report.json.tmp").exists()

    def test_overwrite(self, tmp_path):
        target = tmp_path / "report.txt"
        write_text(target, "first")
        write_text(target, "second")
        assert target.read_text(encoding="utf-8") == "second"


class TestMarkdown:

    def test_format_value(self):
        assert format_value(None) == "-"
        assert format_value(True) == "yes"
        assert format_value(0.1 + 0.2) == "0.3"
        assert format_value([[[1.0, 0.0]] * 2] * 2) == "2x2 matrix"

    def test_render_report(self):
        text = renderer.render_report(classical_to_dict(classical_report(2)))
        assert text.startswith("# classical (schema 1)")
        assert "| worst_case_queries | 3 |" in text
        assert "| k | success_probability |" in text
        assert "| 2 | 0.833333333333 |" in text

    def test_nested_sections(self):
        text = renderer.render_report({"schema_version": "1", "command": "x", "certainty": {"certain": False}})
        assert "## Certainty" in text
        assert "| certain | no |" in text
