# twistloop/main.py
"""Command-line entry point: data export, verification suites and the SU3 decomposer."""
import json
import logging
from pathlib import Path
from typing import List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table
from tabulate import tabulate

from twistloop import roots as rt
from twistloop import su3
from twistloop.config.manager import ConfigManager
from twistloop.core.engine import Engine
from twistloop.errors import ConfigError, TwistLoopError, UnsupportedCaseError
from twistloop.groupwords import TwistedGroup, random_rng
from twistloop.loopalg import LoopAlgebra, affine_cartan_from_form, left_null_vector
from twistloop.matrep import MatS
from twistloop.suites.checks import build_case

logger = logging.getLogger("twistloop")

app = typer.Typer(help="Twisted loop algebras and groups in exact arithmetic.", no_args_is_help=True)
su3_app = typer.Typer(help="SU3 over Q[z^(+-1/2)]: membership and reduction to generators.", no_args_is_help=True)
app.add_typer(su3_app, name="su3")

STATUS_STYLES = {"pass": "green", "fail": "red", "error": "bold red", "skip": "yellow"}


def configure_logging(level):
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _echo_json(data):
    typer.echo(json.dumps(data))


def _fail(message, code):
    typer.echo(f"ERROR: {message}", err=True)
    raise typer.Exit(code)


def _load_case(series, rank, r):
    try:
        return build_case(series.upper(), rank, r)
    except UnsupportedCaseError as e:
        _fail(str(e), 2)


def _load_matrix(path):
    """An SU3-shaped matrix from a JSON file; exits 2 on anything else."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            C = MatS.from_json(json.load(f))
    except (OSError, json.JSONDecodeError) as e:
        _fail(f"Cannot read matrix file '{path}': {e}", 2)
    except TwistLoopError as e:
        _fail(str(e), 2)
    if C.r != su3.R or C.dim != 3:
        _fail(f"Matrix in '{path}' is {C.dim}x{C.dim} over r={C.r}; SU3 needs 3x3 over r={su3.R}", 2)
    return C


@app.callback()
def main_callback(
    ctx: typer.Context,
    config: Path = typer.Option(Path("config.json"), "--config", help="Project configuration file."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr."),
):
    manager = ConfigManager(str(config))
    level = "DEBUG" if verbose else str(manager.get_setting("log_level", "WARNING")).upper()
    configure_logging(level)
    logger.debug("Main: using configuration '%s' (log level %s)", config, level)
    ctx.obj = {"config": str(config)}


# --- Data export ---

@app.command()
def fold(
    series: str = typer.Option("A", "--type", help="A, D or E."),
    rank: int = typer.Option(2, "--rank"),
    r: int = typer.Option(2, "--r", help="Order of the diagram automorphism."),
    as_json: bool = typer.Option(False, "--json"),
):
    """Folded root system: images, root types and correspondents."""
    fs, _ = _load_case(series, rank, r)
    data = fs.to_json()
    if as_json:
        _echo_json(data)
        return
    typer.echo(f"{fs.case} folds to {fs.label}; orbits {data['orbits']}")
    rows = [
        [tuple(row["image"]), row["type"], row["length"], "yes" if row["in_delta_sigma"] else "no",
         tuple(row["correspondent"]), " ".join(str(tuple(b)) for b in row["fiber"])]
        for row in data["roots"]
    ]
    typer.echo(tabulate(rows, headers=["image", "type", "length", "in Delta^sigma", "alpha", "fiber"]))


@app.command()
def constants(
    series: str = typer.Option("A", "--type"),
    rank: int = typer.Option(2, "--rank"),
    r: int = typer.Option(2, "--r"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Chevalley structure constants N and the automorphism signs k."""
    _, tbl = _load_case(series, rank, r)
    data = tbl.to_json()
    if as_json:
        _echo_json(data)
        return
    signs = [[tuple(row["alpha"]), row["value"], tbl.k_omega[tuple(row["alpha"])]] for row in data["k"]]
    typer.echo(tabulate(signs, headers=["alpha", "k", "k_omega"]))
    typer.echo("")
    pairs = [[tuple(row["alpha"]), tuple(row["beta"]), row["value"]] for row in data["N"]]
    typer.echo(tabulate(pairs, headers=["alpha", "beta", "N"]))


@app.command("affine-gcm")
def affine_gcm(
    series: str = typer.Option("A", "--type"),
    rank: int = typer.Option(2, "--rank"),
    r: int = typer.Option(2, "--r"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Affine GCM read off the loop algebra generators, with its null vector and -a_0."""
    fs, tbl = _load_case(series, rank, r)
    A = LoopAlgebra(fs, tbl).chev_generators().matrix
    top = rt.highest_a0(fs)
    data = {
        "case": fs.case,
        "matrix": A.tolist(),
        "matches_form": bool((A == affine_cartan_from_form(fs)).all()),
        "null_vector": list(left_null_vector(A)),
        "zk_exponents": list(TwistedGroup(fs, tbl).zk_exponents()),
        "neg_a0": list(top.neg_a0),
        "alpha": list(top.alpha),
        "type": top.tag,
        "coeffs": list(top.coeffs),
    }
    if as_json:
        _echo_json(data)
        return
    labels = [f"a{p}" for p in range(A.shape[0])]
    typer.echo(tabulate([[labels[p]] + row for p, row in enumerate(data["matrix"])], headers=[""] + labels))
    typer.echo(f"null vector {tuple(data['null_vector'])}, -a0 = {tuple(data['neg_a0'])} ({data['type']})")


# --- Verification ---

def _print_table(records):
    table = Table(title="twistloop verify")
    for col in ("suite", "case", "status", "detail"):
        table.add_column(col)
    for rec in records:
        style = STATUS_STYLES.get(rec["status"], "")
        table.add_row(rec["suite"], rec["case"], f"[{style}]{rec['status']}[/{style}]", rec["detail"])
    Console().print(table)


@app.command()
def verify(
    ctx: typer.Context,
    suite: List[str] = typer.Option(["all"], "--suite", help="Suite id, repeatable; 'all' runs every suite."),
    series: str = typer.Option("A", "--type"),
    rank: int = typer.Option(2, "--rank"),
    r: int = typer.Option(2, "--r"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    samples: Optional[int] = typer.Option(None, "--samples"),
    nmax: Optional[int] = typer.Option(None, "--nmax"),
    model: Optional[str] = typer.Option(None, "--model", help="natural or adjoint."),
    slow: Optional[bool] = typer.Option(None, "--slow/--no-slow"),
    workers: Optional[int] = typer.Option(None, "--workers"),
    as_json: bool = typer.Option(False, "--json"),
):
    """Run verification suites; exit 1 when any check fails."""
    overrides = {"type": series, "rank": rank, "r": r, "seed": seed, "samples": samples,
                 "nmax": nmax, "model": model, "slow": slow, "workers": workers}
    try:
        engine = Engine(ctx.obj["config"], overrides)
        records = engine.run(suite)
    except ConfigError as e:
        _fail(str(e), 2)
    if as_json:
        for rec in records:
            _echo_json(rec)
    else:
        _print_table(records)
    raise typer.Exit(Engine.exit_code(records))


# --- SU3 ---

@su3_app.command("check")
def su3_check(matrix: Path = typer.Argument(..., help="Matrix JSON file.")):
    """Exit 0 when the matrix lies in SU3(S), 1 otherwise."""
    C = _load_matrix(matrix)
    ok = su3.is_su3(C)
    _echo_json({"su3": ok})
    raise typer.Exit(0 if ok else 1)


@su3_app.command("decompose")
def su3_decompose(
    matrix: Path = typer.Argument(..., help="Matrix JSON file."),
    trace: bool = typer.Option(False, "--trace", help="Include the reduction steps."),
):
    """Write an SU3(S) matrix as a word in the generators."""
    C = _load_matrix(matrix)
    try:
        word, steps = su3.decompose(C)
    except TwistLoopError as e:
        _fail(str(e), 1)
    data = {"word": [atom.to_json() for atom in word]}
    if trace:
        data["trace"] = steps.to_json()
    _echo_json(data)


@su3_app.command("random-word")
def su3_random_word(
    length: int = typer.Option(4, "--len", min=0),
    seed: int = typer.Option(0, "--seed"),
    coeff: int = typer.Option(3, "--coeff", min=1),
    exp: int = typer.Option(4, "--exp", min=1),
):
    """A random generator word and its matrix."""
    word = su3.random_word(random_rng(seed), length, coeff, exp)
    _echo_json({"word": [atom.to_json() for atom in word], "matrix": su3.eval_su3_word(word).to_json()})


def main():
    app()


if __name__ == "__main__":
    main()
