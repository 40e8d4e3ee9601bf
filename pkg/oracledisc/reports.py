"""
Serialization of results into plain report dictionaries and CSV text.

Complex numbers become [re, im] pairs, matrices row-major nested lists and
truth tables hex strings. No timestamps, so equal inputs give equal bytes.
"""

import csv
import io
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

from .channels import ChannelReport
from .classical import ClassicalReport
from .constants import CLASSICAL_COLUMNS, RUN_COLUMNS, SCHEMA_VERSION, SWEEP_COLUMNS
from .discriminator import CertaintyReport, FunctionOutcome, Povm2
from .linalg import DensityOperator
from .oracle import TableOneKey
from .thermal import SweepRow, ThermalBoundReport

Report = Dict[str, Any]


def envelope(command: str) -> Report:
    return {"schema_version": SCHEMA_VERSION, "command": command}


def complex_pair(z: complex) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_list(m: np.ndarray) -> List[List[List[float]]]:
    return [[complex_pair(z) for z in row] for row in np.asarray(m)]


def _floats(values: Iterable[float]) -> List[float]:
    return [float(v) for v in values]


def density_summary(rho: DensityOperator, include_matrix: bool = True) -> Report:
    data = {
        "dim": rho.dim,
        "rank": rho.rank(),
        "purity": rho.purity(),
        "eigenvalues": _floats(rho.eigenvalues()),
    }
    if include_matrix:
        data["matrix"] = matrix_to_list(rho.matrix)
    return data


def channel_to_dict(report: ChannelReport, include_matrix: bool = True) -> Report:
    data = density_summary(report.output, include_matrix)
    data.update({
        "method": report.method.value,
        "functions_used": report.functions_used,
        "weights": report.weights,
    })
    return data


def povm_to_dict(povm: Povm2, include_matrix: bool = True) -> Report:
    data = {
        "rank_const": int(np.count_nonzero(np.linalg.eigvalsh(povm.pi_const) > 0.5)),
        "rank_bal": int(np.count_nonzero(np.linalg.eigvalsh(povm.pi_bal) > 0.5)),
    }
    if include_matrix:
        data["pi_const"] = matrix_to_list(povm.pi_const)
        data["pi_bal"] = matrix_to_list(povm.pi_bal)
    return data


def certainty_to_dict(report: CertaintyReport) -> Report:
    summary = report.eigen_summary
    return {
        "certain": report.certain,
        "commutator_norm": report.commutator_norm,
        "cond2_residual": report.cond2_residual,
        "rank": summary.rank,
        "r": _floats(summary.r),
        "lambdas": _floats(summary.lambdas),
        "lambda_residual": summary.lambda_residual,
    }


def thermal_to_dict(report: ThermalBoundReport) -> Report:
    return {
        "n": report.n,
        "alpha1": report.alpha1,
        "dev_trace_norm_exact": report.dev_trace_norm_exact,
        "dev_trace_norm_bound": report.dev_trace_norm_bound,
        "epsilon": report.epsilon,
        "p_error_lower": report.p_error_lower,
        "p_error_lower_exact": report.p_error_lower_exact,
        "advantage": report.advantage,
        "n_required": report.n_required,
        "couplings_ignored": report.couplings_ignored,
    }


def sweep_to_dict(alpha1: float, rows: Sequence[SweepRow]) -> Report:
    data = envelope("thermal-bound")
    data["alpha1"] = alpha1
    data["rows"] = [dict(zip(SWEEP_COLUMNS, row)) for row in rows]
    return data


def table_one_to_dict(counts: Dict[TableOneKey, int]) -> Dict[str, int]:
    return {f"{fx}{fy}": count for (fx, fy), count in counts.items()}


def outcome_to_dict(outcome: FunctionOutcome) -> Report:
    return {
        "table": outcome.function.to_hex(),
        "class": outcome.function_class.value,
        "p_const": outcome.probabilities.p_const,
        "p_bal": outcome.probabilities.p_bal,
        "correct": outcome.correct,
    }


def classical_to_dict(report: ClassicalReport) -> Report:
    data = envelope("classical")
    data.update({
        "n": report.n,
        "worst_case_queries": report.worst_case_queries,
        "success_by_k": [dict(zip(CLASSICAL_COLUMNS, row)) for row in report.success_by_k],
    })
    return data


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Header plus one line per row, `\\n` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    return to_csv(SWEEP_COLUMNS, rows)


def classical_csv(report: ClassicalReport) -> str:
    return to_csv(CLASSICAL_COLUMNS, report.success_by_k)


def run_csv(rows: Sequence[Report]) -> str:
    return to_csv(RUN_COLUMNS, ([row.get(c) for c in RUN_COLUMNS] for row in rows))

