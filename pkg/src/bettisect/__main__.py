"""Command-line interface."""
import cProfile
import sys
from importlib.metadata import version
from pathlib import Path
from pstats import Stats
from typing import Callable
from typing import Optional

import click

from bettisect._helpers import EngineSettings
from bettisect._helpers import Families
from bettisect._helpers import FieldSpec
from bettisect._helpers import Logger
from bettisect._helpers import Suites
from bettisect.betti_lib import betti_helper
from bettisect.betti_lib import invariants_helper
from bettisect.closure_lib import closure_helper
from bettisect.formulas_lib import predict_helper
from bettisect.formulas_lib import Quantities
from bettisect.graph_lib import load_ideal
from bettisect.graph_lib import parse_weights
from bettisect.ideal_lib import MonomialIdeal
from bettisect.polarize_lib import polarize_helper
from bettisect.verify_lib import verify_helper

##############
# UI functions
##############


@click.group()
@click.option("--debug", is_flag=True, help="Generate log file.")
@click.option(
    "--config",
    "config_path",
    default=None,
    type=click.Path(exists=True),
    help="Engine configuration .yaml file. Overrides BETTISECT_CONFIG.",
)
@click.version_option(version("bettisect"))
def cli(debug: bool, config_path: Optional[str]) -> None:
    """Main CLI entry point."""
    Logger(debug=debug)
    if config_path:
        EngineSettings().CUSTOM_CONFIG_PATH = Path(config_path)


def _field_option(function: Callable) -> Callable:
    return click.option(
        "--field",
        default=None,
        type=str,
        help="Coefficient field, gf:<p> or rational. Defaults to gf:32003.",
    )(function)


def _ideal_options(function: Callable) -> Callable:
    options = [
        click.option(
            "--ideal", default=None, type=str, help='A monomial ideal, e.g. "(x1^2*x2^2, x2*x3)".'
        ),
        click.option(
            "--graph",
            default=None,
            type=click.Path(exists=True),
            help="A weighted graph .json file; its edge ideal is used.",
        ),
        click.option(
            "--family",
            default=None,
            type=click.Choice([family.value for family in Families], case_sensitive=False),
            help="A graph family; requires --weights.",
        ),
        click.option(
            "--weights", default=None, type=str, help="Comma-separated edge weights, e.g. 2,1,1,1."
        ),
        click.option("--power", "t", default=1, type=click.IntRange(min=1), help="Power of the ideal."),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def _apply_field(field: Optional[str]) -> None:
    if field is None:
        return
    try:
        spec = FieldSpec.from_text(field)
    except ValueError as err:
        raise click.BadParameter(str(err), param_hint="--field") from err
    EngineSettings().override(field=spec)


def _load(
    ideal: Optional[str],
    graph: Optional[str],
    family: Optional[str],
    weights: Optional[str],
    t: int,
) -> MonomialIdeal:
    try:
        return load_ideal(ideal, graph, Families[family] if family else None, weights, t)
    except ValueError as err:
        raise click.UsageError(str(err)) from err


@click.command()
@_ideal_options
@_field_option
@click.option("--multigraded", is_flag=True, default=False, help="Include multigraded entries.")
@click.option("--json", "as_json", is_flag=True, default=False, help="Print JSON.")
def betti(
    ideal: Optional[str],
    graph: Optional[str],
    family: Optional[str],
    weights: Optional[str],
    t: int,
    field: Optional[str],
    multigraded: bool,
    as_json: bool,
) -> None:
    """Print the graded Betti numbers of S/I."""
    _apply_field(field)
    print(betti_helper(_load(ideal, graph, family, weights, t), multigraded, as_json))


@click.command()
@_ideal_options
@_field_option
@click.option("--json", "as_json", is_flag=True, default=False, help="Print JSON.")
def invariants(
    ideal: Optional[str],
    graph: Optional[str],
    family: Optional[str],
    weights: Optional[str],
    t: int,
    field: Optional[str],
    as_json: bool,
) -> None:
    """Print reg, pd and depth of S/I."""
    _apply_field(field)
    print(invariants_helper(_load(ideal, graph, family, weights, t), as_json))


@click.command()
@click.option(
    "--family",
    required=True,
    type=click.Choice([family.value for family in Families], case_sensitive=False),
    help="The graph family.",
)
@click.option("--weights", required=True, type=str, help="Comma-separated edge weights.")
@click.option("--power", "t", default=1, type=click.IntRange(min=1), help="Power of the edge ideal.")
@click.option(
    "--quantity",
    default="all",
    type=click.Choice(["all"] + [q.value for q in Quantities], case_sensitive=False),
    help="Restrict to one predicted quantity.",
)
def predict(family: str, weights: str, t: int, quantity: str) -> None:
    """Print the closed-form predictions for a weighted path or star as JSON."""
    try:
        parsed = parse_weights(weights)
    except ValueError as err:
        raise click.BadParameter(str(err), param_hint="--weights") from err
    selected = None if quantity == "all" else Quantities(quantity)
    print(predict_helper(Families[family], parsed, t, selected))


@click.command()
@_ideal_options
@click.option("--witness", is_flag=True, default=False, help="Print a monomial of the closure outside I.")
def closure(
    ideal: Optional[str],
    graph: Optional[str],
    family: Optional[str],
    weights: Optional[str],
    t: int,
    witness: bool,
) -> None:
    """Decide whether I is integrally closed."""
    print(closure_helper(_load(ideal, graph, family, weights, t), witness))


@click.command()
@_ideal_options
def polarize(
    ideal: Optional[str],
    graph: Optional[str],
    family: Optional[str],
    weights: Optional[str],
    t: int,
) -> None:
    """Print the polarization of I and the variable map."""
    print(polarize_helper(_load(ideal, graph, family, weights, t)))


@click.command()
@click.argument(
    "suite", type=click.Choice([suite.value for suite in Suites], case_sensitive=False)
)
@_field_option
@click.option("--max-n", default=None, type=click.IntRange(min=2), help="Largest number of vertices.")
@click.option("--max-weight", default=None, type=click.IntRange(min=1), help="Largest edge weight.")
@click.option("--max-power", "max_t", default=None, type=click.IntRange(min=1), help="Largest power.")
@click.option("--max-edges", default=None, type=click.IntRange(min=1), help="Largest number of edges.")
@click.option("--count", default=None, type=click.IntRange(min=1), help="Number of random ideals.")
@click.option("--seed", default=None, type=int, help="Seed of the random ideals.")
@click.option("--max-vars", default=None, type=click.IntRange(min=2), help="Most variables of a random ideal.")
@click.option("--max-gens", default=None, type=click.IntRange(min=1), help="Most generators of a random ideal.")
@click.option("--json", "json_path", default=None, type=click.Path(), help="Write the JSON report here.")
@click.option("--cache-dir", default=None, type=click.Path(), help="Directory of cached Betti tables.")
@click.option("--workers", default=None, type=click.IntRange(min=1), help="Worker processes.")
def verify(
    suite: str,
    field: Optional[str],
    max_n: Optional[int],
    max_weight: Optional[int],
    max_t: Optional[int],
    max_edges: Optional[int],
    count: Optional[int],
    seed: Optional[int],
    max_vars: Optional[int],
    max_gens: Optional[int],
    json_path: Optional[str],
    cache_dir: Optional[str],
    workers: Optional[int],
) -> None:
    """Run a verification suite; exit with code 1 on any mismatch."""
    _apply_field(field)
    EngineSettings().override(
        cache_dir=Path(cache_dir) if cache_dir else None, workers=workers
    )
    report = verify_helper(
        Suites(suite),
        json_path,
        max_n=max_n,
        max_weight=max_weight,
        max_t=max_t,
        max_edges=max_edges,
        count=count,
        seed=seed,
        max_vars=max_vars,
        max_gens=max_gens,
    )
    print(report.render())
    if report.mismatches:
        sys.exit(1)


cli.add_command(betti)
cli.add_command(invariants)
cli.add_command(predict)
cli.add_command(closure)
cli.add_command(polarize)
cli.add_command(verify)


if __name__ == "__main__":  # pragma: no cover
    profile = False
    if profile:
        with cProfile.Profile() as pr:
            cli(prog_name="bettisect")

        with open("profiling_stats.txt", "w+") as stream:
            stats = Stats(pr, stream=stream)
            stats.strip_dirs()
            stats.sort_stats("time")
            stats.dump_stats(".prof_stats")
            stats.print_stats()
    else:
        cli(prog_name="bettisect")
