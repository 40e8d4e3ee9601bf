"""
Command Line Interface for the oracle discrimination toolkit.
Provides commands for discrimination, thermal bounds, enumeration, single runs
and the classical baseline.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import typer

from .channels import ChannelReport, balanced_output, max_channel_deviation, random_balanced_weights
from .classical import classical_report, exact_success_probability
from .config import config
from .constants import (
    EXIT_NOT_PROMISE,
    EXIT_VALIDATION,
    EXPLICIT_QUBIT_CAP,
    RUN_ALL_CAP,
    FunctionClass,
    OutputFormat,
    PovmChoice,
    ThermalMode,
)
from .discriminator import (
    DiscriminationProblem,
    Povm2,
    certainty_conditions,
    closed_form_error,
    helstrom_error,
    helstrom_povm,
    misclassification_error,
    optimal_povm,
    optimal_state,
    outcome_sweep,
    povm_error,
)
from .errors import CapacityError, DomainError, OracleDiscError, ValidationError
from .linalg import DensityOperator, hermitian_eig, random_density, random_state
from .oracle import (
    OracleFunction,
    balanced_count,
    balanced_pair_sum,
    classify,
    enumerate_balanced,
    enumerate_constant,
    pair_sum_formula,
    table_one_counts,
    table_one_formula,
)
from .reports import (
    Report,
    certainty_to_dict,
    channel_to_dict,
    classical_csv,
    classical_to_dict,
    density_summary,
    envelope,
    outcome_to_dict,
    povm_to_dict,
    run_csv,
    sweep_csv,
    sweep_to_dict,
    table_one_to_dict,
    thermal_to_dict,
)
from .templating import renderer
from .thermal import (
    ThermalConfig,
    advantage_sweep,
    error_lower_bound,
    min_qubits_for_advantage,
    thermal_state,
)
from .utils import console, dumps_json, parse_float_list, parse_range, print_panel, setup_logging, write_text

app = typer.Typer(
    name="oracle-disc",
    help="Deutsch-Jozsa as discrimination between the constant and balanced oracle channels",
    no_args_is_help=True,
)

# Matrices are written out in full up to this many qubits
REPORT_MATRIX_QUBITS = 4


@app.callback()
def main_callback(
    log_level: str = typer.Option(config.LOG_LEVEL, "--log-level", help="Logging level"),
    log_file: Optional[Path] = typer.Option(config.LOG_FILE, "--log-file", help="Also log to this file"),
):
    setup_logging(log_level, log_file)


def _abort(error: Exception, code: int = EXIT_VALIDATION):
    console.print(f"[red]❌ {error}[/red]")
    raise typer.Exit(code)


def _emit(report: Report, fmt: OutputFormat, output: Optional[Path], csv_text: Optional[str] = None):
    """Write the report to `output` or stdout in the requested format."""
    if fmt is OutputFormat.CSV:
        if csv_text is None:
            raise ValidationError(f"CSV output is not available for the {report['command']} command")
        text = csv_text
    elif fmt is OutputFormat.MARKDOWN:
        text = renderer.render_report(report)
    else:
        text = dumps_json(report)

    if output:
        write_text(output, text)
        console.print(f"✅ Report written to [cyan]{output}[/cyan]")
    else:
        typer.echo(text, nl=False)


def _check_qubits(n: int):
    """Dense 2^n x 2^n matrices back every discrimination path."""
    if n < 1:
        raise ValidationError(f"Qubit count must be at least 1, got {n}")
    if n > config.DISCRIMINATION_CAP:
        raise CapacityError(
            f"n={n} exceeds the discrimination cap of {config.DISCRIMINATION_CAP} qubits "
            f"(raise ORACLE_DISC_DISCRIM_CAP, at most {EXPLICIT_QUBIT_CAP})"
        )


def _read_phases(source: str) -> List[float]:
    path = Path(source)
    if path.exists():
        data = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(data, list):
            raise ValidationError(f"{path} must hold a JSON list of phases")
        return [float(v) for v in data]
    return parse_float_list(source)


def _read_density_file(path: Path) -> DensityOperator:
    """JSON matrix of reals or of [re, im] pairs."""
    if not path.exists():
        raise ValidationError(f"Density matrix file not found: {path}")
    try:
        data = np.asarray(json.loads(path.read_text(encoding="utf-8")), dtype=np.float64)
    except (json.JSONDecodeError, ValueError, TypeError) as e:
        raise ValidationError(f"Invalid density matrix file {path}: {e}")
    if data.ndim == 3 and data.shape[-1] == 2:
        data = data[..., 0] + 1j * data[..., 1]
    elif data.ndim != 2:
        raise ValidationError(f"Density matrix in {path} has shape {data.shape}")
    return DensityOperator(data)


def parse_state(
    spec: str,
    n: int,
    rng: np.random.Generator,
    mode: ThermalMode = ThermalMode.LINEARIZED,
) -> Tuple[DensityOperator, Optional[ThermalConfig]]:
    """
    Build the initial state named by a state spec.

    Args:
        spec: uniform, phases:<file|list>, mixed:maximal, thermal:<alphas>,
            file:<path>, random:pure or random:mixed
        n: Qubit count
        rng: Generator for the random specs
        mode: Construction of thermal states

    Returns:
        The state and, for thermal specs, the thermal configuration
    """
    size = 1 << n
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()

    if kind == "uniform" and not arg:
        return optimal_state(n, np.zeros(size)).projector(), None
    if kind == "phases" and arg:
        return optimal_state(n, _read_phases(arg)).projector(), None
    if kind == "mixed" and arg == "maximal":
        return DensityOperator.maximally_mixed(size), None
    if kind == "thermal" and arg:
        cfg = ThermalConfig(n, tuple(parse_float_list(arg)))
        return thermal_state(cfg, mode), cfg
    if kind == "file" and arg:
        rho = _read_density_file(Path(arg))
        if rho.dim != size:
            raise ValidationError(f"Density matrix has dimension {rho.dim}, n={n} needs {size}")
        return rho, None
    if kind == "random" and arg == "pure":
        return random_state(size, rng).projector(), None
    if kind == "random" and arg == "mixed":
        return random_density(size, rng), None
    raise ValidationError(f"Unrecognized state spec: {spec!r}")


def _priors(text: Optional[str]) -> Tuple[float, float]:
    if text is None:
        return 0.5, 0.5
    values = parse_float_list(text)
    if len(values) != 2:
        raise ValidationError(f"--priors takes two comma-separated values, got {text!r}")
    return values[0], values[1]


@app.command()
def discriminate(
    n: int = typer.Option(..., "--qubits", "-n", help="Number of qubits"),
    state: str = typer.Option("uniform", "--state", "-s", help="Initial state spec"),
    priors: Optional[str] = typer.Option(None, "--priors", help="p_const,p_bal (default 0.5,0.5)"),
    bruteforce: bool = typer.Option(False, "--bruteforce", help="Cross-check the balanced channel by enumeration"),
    random_weights: bool = typer.Option(False, "--random-weights", help="Seeded non-uniform balanced-function weights"),
    thermal_mode: ThermalMode = typer.Option(ThermalMode.LINEARIZED, "--thermal-mode", help="Thermal state construction"),
    seed: int = typer.Option(0, "--seed", help="Seed for random states and weights"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Validation tolerance"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the report here"),
):
    """
    Minimum error, optimal measurement and certainty check for an initial state.
    """
    try:
        _check_qubits(n)
        rng = np.random.default_rng(seed)
        p_const, p_bal = _priors(priors)
        rho0, thermal_cfg = parse_state(state, n, rng, thermal_mode)

        weights = random_balanced_weights(n, rng) if random_weights else None
        channel: ChannelReport = balanced_output(rho0, weights)
        problem = DiscriminationProblem(rho0, channel.output, p_const, p_bal, tol=tol)
        povm = helstrom_povm(problem, tol=tol)
        certainty = certainty_conditions(rho0, tol=tol)
        matrices = n <= REPORT_MATRIX_QUBITS

        report = envelope("discriminate")
        report.update({
            "n": n,
            "state": state,
            "seed": seed,
            "priors": [p_const, p_bal],
            "rho_const": density_summary(problem.rho_const, matrices),
            "rho_bal": channel_to_dict(channel, matrices),
            "helstrom_error": helstrom_error(problem),
            "povm_error": povm_error(problem, povm) if problem.equal_priors else None,
            "misclassification_error": misclassification_error(problem, povm),
            "closed_form_error": closed_form_error(rho0, p_const) if weights is None else None,
            "povm": povm_to_dict(povm, matrices),
            "certainty": certainty_to_dict(certainty),
        })
        if bruteforce:
            report["max_channel_deviation"] = max_channel_deviation(rho0)
        if thermal_cfg is not None:
            report["thermal"] = thermal_to_dict(error_lower_bound(thermal_cfg))

        _emit(report, fmt, output)
    except MemoryError:
        _abort(CapacityError(f"Not enough memory for 2^{n} x 2^{n} matrices at n={n}"))
    except (OracleDiscError, ValueError) as e:
        _abort(e)


@app.command("thermal-bound")
def thermal_bound(
    alpha1: Optional[float] = typer.Option(None, "--alpha1", help="Largest polarization alpha_1"),
    n: Optional[int] = typer.Option(None, "--qubits", "-n", help="Qubit count (with --alpha1)"),
    alphas: Optional[str] = typer.Option(None, "--alphas", help="Comma-separated per-qubit polarizations"),
    config_file: Optional[Path] = typer.Option(None, "--config", help="YAML thermal configuration"),
    min_qubits: bool = typer.Option(False, "--min-qubits", help="Smallest n with an ensemble advantage"),
    sweep: Optional[str] = typer.Option(None, "--sweep", help="start:stop[:step] range of n"),
    as_csv: bool = typer.Option(False, "--csv", help="Shorthand for --format csv"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the report here"),
):
    """
    Lower bounds on the error for thermal NMR initial states.
    """
    if as_csv:
        fmt = OutputFormat.CSV
    try:
        cfg: Optional[ThermalConfig] = None
        if config_file is not None:
            cfg = ThermalConfig.from_yaml(config_file)
        elif alphas is not None:
            values = parse_float_list(alphas)
            cfg = ThermalConfig(len(values), tuple(values))
        elif alpha1 is not None and n is not None:
            cfg = ThermalConfig.uniform(n, alpha1)

        a1 = alpha1 if alpha1 is not None else (cfg.alpha1 if cfg is not None else None)
        if (min_qubits or sweep) and a1 is None:
            raise ValidationError("--min-qubits and --sweep need --alpha1, --alphas or --config")
        if a1 is not None and a1 <= 0 and (min_qubits or sweep):
            raise ValidationError(f"alpha1 must be positive, got {a1!r}")

        if sweep:
            start, stop, step = parse_range(sweep)
            rows = advantage_sweep(a1, start, stop, step)
            _emit(sweep_to_dict(a1, rows), fmt, output, sweep_csv(rows))
            return

        if min_qubits:
            report = envelope("thermal-bound")
            report.update({"alpha1": a1, "n_required": min_qubits_for_advantage(a1)})
            _emit(report, fmt, output)
            return

        if cfg is None:
            raise ValidationError("Give --alphas, --config, or both --alpha1 and --qubits")
        report = envelope("thermal-bound")
        report.update(thermal_to_dict(error_lower_bound(cfg)))
        report["alphas"] = list(cfg.sorted_alphas) if cfg.n <= EXPLICIT_QUBIT_CAP else None
        _emit(report, fmt, output)
    except (OracleDiscError, ValueError) as e:
        _abort(e)


@app.command("enumerate")
def enumerate_cmd(
    n: int = typer.Option(..., "--qubits", "-n", help="Number of qubits"),
    pair: Tuple[int, int] = typer.Option((None, None), "--pair", help="Arguments x y for the pair sum"),
    table: bool = typer.Option(False, "--table", help="Instance counts of each (f(x), f(y)) value pair"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the report here"),
):
    """
    Exhaustive sums over the balanced functions next to their closed forms.
    """
    try:
        given = pair[0] is not None and pair[1] is not None
        x, y = (pair[0], pair[1]) if given else (0, 1)
        size = 1 << n if n >= 1 else 0

        report = envelope("enumerate")
        report.update({"n": n, "balanced_count": balanced_count(n) if n >= 1 else 0})
        if given or not table:
            report.update({
                "pair": [x, y],
                "pair_sum": balanced_pair_sum(n, x, y),
                "closed_form": pair_sum_formula(n, x, y),
                "expected_off_diagonal": f"-{balanced_count(n)}/{size - 1}",
            })
        if table:
            tx, ty = (x, y) if x != y else (0, 1)
            report.update({
                "table_pair": [tx, ty],
                "table_counts": table_one_to_dict(table_one_counts(n, tx, ty)),
                "table_formula": table_one_to_dict(table_one_formula(n)),
            })
        _emit(report, fmt, output)
    except (OracleDiscError, ValueError) as e:
        _abort(e)


def _run_povm(choice: PovmChoice, rho0: DensityOperator, tol: Optional[float]) -> Povm2:
    if choice is PovmChoice.PROJECTOR:
        if rho0.rank() != 1:
            raise ValidationError("The projector measurement needs a pure initial state")
        return optimal_povm(hermitian_eig(rho0).vectors[0], tol=tol)
    return helstrom_povm(DiscriminationProblem.from_initial_state(rho0), tol=tol)


@app.command()
def run(
    n: int = typer.Option(..., "--qubits", "-n", help="Number of qubits"),
    state: str = typer.Option("uniform", "--state", "-s", help="Initial state spec"),
    function: Optional[List[str]] = typer.Option(None, "--function", "-f", help="Hex truth table, LSB = f(0)"),
    run_all: bool = typer.Option(False, "--all", help=f"Every constant and balanced function (n <= {RUN_ALL_CAP})"),
    povm_choice: PovmChoice = typer.Option(PovmChoice.HELSTROM, "--povm", help="Measurement"),
    seed: int = typer.Option(0, "--seed", help="Seed for random states"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Probability-one tolerance"),
    as_csv: bool = typer.Option(False, "--csv", help="Shorthand for --format csv"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the report here"),
):
    """
    One oracle call per function followed by the measurement.
    """
    if as_csv:
        fmt = OutputFormat.CSV
    neither: List[OracleFunction] = []
    try:
        _check_qubits(n)
        if run_all and n > RUN_ALL_CAP:
            raise ValidationError(f"--all is limited to n <= {RUN_ALL_CAP}, got {n}")
        if not run_all and not function:
            raise ValidationError("Give --function or --all")

        rho0, _ = parse_state(state, n, np.random.default_rng(seed))
        povm = _run_povm(povm_choice, rho0, tol)

        functions: List[OracleFunction] = []
        if run_all:
            functions = enumerate_constant(n) + list(enumerate_balanced(n, cap=RUN_ALL_CAP))
        for text in function or []:
            f = OracleFunction.from_hex(text, n)
            if classify(f) is FunctionClass.NEITHER:
                neither.append(f)
            else:
                functions.append(f)

        rows: List[Dict[str, Any]] = [outcome_to_dict(o) for o in outcome_sweep(rho0, povm, functions, tol=tol)]
        rows.extend(
            {"table": f.to_hex(), "class": FunctionClass.NEITHER.value, "p_const": None, "p_bal": None, "correct": False}
            for f in neither
        )

        report = envelope("run")
        report.update({
            "n": n,
            "state": state,
            "seed": seed,
            "povm": povm_choice.value,
            "functions": rows,
            "all_correct": bool(rows) and all(row["correct"] for row in rows),
        })
        _emit(report, fmt, output, run_csv(rows))
    except MemoryError:
        _abort(CapacityError(f"Not enough memory for 2^{n} x 2^{n} matrices at n={n}"))
    except (OracleDiscError, ValueError) as e:
        _abort(e)

    if neither:
        tables = ", ".join(f.to_hex() for f in neither)
        _abort(DomainError(f"Outside the promise (Neither): {tables}"), EXIT_NOT_PROMISE)


@app.command()
def classical(
    n: int = typer.Option(..., "--qubits", "-n", help="Number of qubits"),
    k: Optional[int] = typer.Option(None, "--k", help="Report the exact success probability for k queries"),
    max_k: Optional[int] = typer.Option(None, "--max-k", help="Last k in the table (default N/2 + 1)"),
    as_csv: bool = typer.Option(False, "--csv", help="Shorthand for --format csv"),
    fmt: OutputFormat = typer.Option(OutputFormat.JSON, "--format", help="Output format"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write the report here"),
):
    """
    Classical query baseline: success probability against the number of queries.
    """
    if as_csv:
        fmt = OutputFormat.CSV
    try:
        result = classical_report(n, max_k)
        report = classical_to_dict(result)
        if k is not None:
            exact = exact_success_probability(n, k)
            report.update({"k": k, "success_probability": float(exact), "exact": str(exact)})
        _emit(report, fmt, output, classical_csv(result))
    except (OracleDiscError, ValueError) as e:
        _abort(e)


@app.command()
def info():
    """
    Show the active configuration.
    """
    print_panel(
        "\n".join([
            f"Threads: {config.THREADS}",
            f"Tolerance: {config.TOLERANCE:g}",
            f"Rank tolerance: {config.RANK_TOLERANCE:g}",
            f"Enumeration cap: n <= {config.ENUMERATION_CAP}",
            f"Discrimination cap: n <= {config.DISCRIMINATION_CAP}",
            f"Log level: {config.LOG_LEVEL}",
        ]),
        title="oracle-disc",
    )


def main():
    """Main entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()
