"""Test cases for the __main__ module."""
import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import bettisect
from . import utils
from .utils import setup_logger  # noqa: F401 # setup_logger is an autouse fixture
from bettisect import __main__
from bettisect import _helpers

PATH_IDEAL = "(x1*x2, x2*x3)"


@pytest.fixture
def runner() -> CliRunner:
    """Fixture for invoking command-line interfaces."""
    return CliRunner()


def test_main_succeeds(runner: CliRunner) -> None:
    """It exits with a status code of zero."""
    result = runner.invoke(__main__.cli, ["--help"])
    assert result.exit_code == 0


class TestLogging:
    """Test logging functionality."""

    def test_debug_file(self, runner: CliRunner) -> None:
        """Ensure a log file is generated upon demand."""
        _helpers.Logger().clear()
        with runner.isolated_filesystem():
            _ = runner.invoke(__main__.cli, ["--debug", "invariants", "--ideal", PATH_IDEAL])
            log_path = Path.cwd() / "bettisect.log"
            assert log_path.is_file()

    def test_no_debug(self, runner: CliRunner) -> None:
        """Ensure a log file is not generated in non-debug mode."""
        _helpers.Logger().clear()
        with runner.isolated_filesystem():
            _ = runner.invoke(__main__.cli, ["invariants", "--ideal", PATH_IDEAL])
            log_path = Path.cwd() / "bettisect.log"
            assert not log_path.is_file()


class TestBetti:
    """Test the betti and invariants commands."""

    def test_betti_helper(self) -> None:
        """The text table lists the coarse Betti numbers of S/I."""
        output = bettisect.betti(bettisect.load_ideal(ideal=PATH_IDEAL))
        assert output.splitlines() == [
            "Betti numbers of S/I in 3 variables",
            "(0, 0): 1",
            "(1, 2): 2",
            "(2, 3): 1",
            "reg=1, pd=2, depth=1",
        ]

    def test_betti_json(self, runner: CliRunner) -> None:
        """Multigraded JSON output."""
        result = runner.invoke(
            __main__.cli, ["betti", "--ideal", PATH_IDEAL, "--json", "--multigraded"]
        )
        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["convention"] == "quotient"
        assert {"i": 2, "multidegree": [1, 1, 1], "count": 1} in document["multigraded"]

    def test_invariants_family(self, runner: CliRunner) -> None:
        """A family with weights and a power."""
        result = runner.invoke(
            __main__.cli, ["invariants", "--family", "path", "--weights", "2,1", "--power", "1"]
        )
        assert result.exit_code == 0
        assert result.output.strip() == "reg=3, pd=2, depth=1"

    def test_invariants_graph(self, runner: CliRunner) -> None:
        """A graph file, printed as JSON."""
        result = runner.invoke(
            __main__.cli, ["invariants", "--graph", str(utils.PATH_2111_GRAPH), "--json"]
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["depth"] == 2

    def test_field_option(self, runner: CliRunner) -> None:
        """The field option reaches the engine settings."""
        result = runner.invoke(
            __main__.cli, ["invariants", "--ideal", PATH_IDEAL, "--field", "rational"]
        )
        assert result.exit_code == 0
        assert str(_helpers.EngineSettings().field) == "rational"

    @pytest.mark.parametrize(
        "arguments",
        [
            ["invariants"],
            ["invariants", "--ideal", PATH_IDEAL, "--family", "path", "--weights", "1,1"],
            ["invariants", "--family", "path"],
            ["betti", "--ideal", "(x1*x2"],
        ],
    )
    def test_bad_input(self, runner: CliRunner, arguments) -> None:
        """Malformed or ambiguous inputs are usage errors."""
        result = runner.invoke(__main__.cli, arguments)
        assert result.exit_code == 2

    @pytest.mark.parametrize("field", ["gf:4", "foo", "gf:x"])
    @pytest.mark.parametrize("command", ["invariants", "betti"])
    def test_bad_field(self, runner: CliRunner, command: str, field: str) -> None:
        """Unknown fields and composite characteristics are rejected without a traceback."""
        result = runner.invoke(__main__.cli, [command, "--ideal", PATH_IDEAL, "--field", field])
        assert result.exit_code == 2
        assert "--field" in result.output
        assert not isinstance(result.exception, ValueError)


class TestPredict:
    """Test the predict command."""

    def test_predict_helper(self) -> None:
        """Three predictions for a power of a long path."""
        output = bettisect.predict(bettisect.Families.path, (2, 1, 1, 1), 2)
        assert len(json.loads(output)) == 3

    def test_predict(self, runner: CliRunner) -> None:
        """One quantity on demand."""
        result = runner.invoke(
            __main__.cli,
            [
                "predict",
                "--family",
                "path",
                "--weights",
                "2,1,1,1",
                "--power",
                "2",
                "--quantity",
                "depth_lower_bound",
            ],
        )
        assert result.exit_code == 0
        (prediction,) = json.loads(result.output)
        assert prediction["value"] == 2

    def test_bad_weights(self, runner: CliRunner) -> None:
        """Weights must be integers."""
        result = runner.invoke(__main__.cli, ["predict", "--family", "star", "--weights", "2,x"])
        assert result.exit_code == 2
        assert "Invalid weight list" in result.output


class TestClosureAndPolarize:
    """Test the closure and polarize commands."""

    def test_closure(self, runner: CliRunner) -> None:
        """A heavy 3-vertex path is not closed; its witness is printed."""
        result = runner.invoke(
            __main__.cli, ["closure", "--family", "path", "--weights", "2,2", "--witness"]
        )
        assert result.exit_code == 0
        assert result.output.splitlines()[1] == "witness: x1*x2^2*x3"

    def test_closure_helper(self) -> None:
        """Squarefree ideals are closed."""
        ideal = bettisect.load_ideal(ideal=PATH_IDEAL)
        assert bettisect.closure(ideal) == f"{ideal} is integrally closed"

    def test_polarize(self, runner: CliRunner) -> None:
        """The polarized ideal and the map are printed."""
        result = runner.invoke(__main__.cli, ["polarize", "--ideal", "(x1^2*x2^2, x2*x3)"])
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 2


class TestVerify:
    """Test the verify command."""

    def test_verify(self, runner: CliRunner) -> None:
        """A clean suite exits with zero and writes its report."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                __main__.cli,
                ["verify", "union", "--max-n", "2", "--max-weight", "1", "--json", "report.json"],
            )
            assert result.exit_code == 0
            assert result.output.startswith("union: 2 cases")
            report = json.loads((Path.cwd() / "report.json").read_text())
            assert report["summary"]["match"] == 2

    def test_verify_config(self, runner: CliRunner) -> None:
        """The configuration file option selects the field."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                __main__.cli,
                [
                    "--config",
                    str(utils.RATIONAL_CONFIG),
                    "verify",
                    "union",
                    "--max-n",
                    "2",
                    "--max-weight",
                    "1",
                    "--json",
                    "report.json",
                ],
            )
            assert result.exit_code == 0
            report = json.loads((Path.cwd() / "report.json").read_text())
            assert report["config"]["field"] == "rational"

    def test_verify_cache(self, runner: CliRunner, tmp_path: Path) -> None:
        """Betti tables land in the cache directory."""
        result = runner.invoke(
            __main__.cli,
            ["verify", "union", "--max-n", "2", "--max-weight", "1", "--cache-dir", str(tmp_path)],
        )
        assert result.exit_code == 0
        assert list(tmp_path.glob("*.json"))

    def test_unknown_suite(self, runner: CliRunner) -> None:
        """Suites are a fixed choice."""
        result = runner.invoke(__main__.cli, ["verify", "everything"])
        assert result.exit_code == 2

    def test_verify_bad_field(self, runner: CliRunner) -> None:
        """A bad field stops the suite before it runs."""
        result = runner.invoke(__main__.cli, ["verify", "union", "--field", "gf:4"])
        assert result.exit_code == 2
        assert "union:" not in result.output

    def test_verify_closure_edges(self, runner: CliRunner) -> None:
        """--max-edges bounds the closure sweep."""
        result = runner.invoke(
            __main__.cli,
            ["verify", "closure", "--max-n", "3", "--max-edges", "1", "--max-weight", "2"],
        )
        assert result.exit_code == 0
        assert "graphs: 2" in result.output

    def test_verify_corpus_options(self, runner: CliRunner) -> None:
        """--max-vars and --max-gens shape the random corpus."""
        with runner.isolated_filesystem():
            result = runner.invoke(
                __main__.cli,
                [
                    "verify",
                    "oracle",
                    "--count",
                    "3",
                    "--max-vars",
                    "2",
                    "--max-gens",
                    "3",
                    "--json",
                    "report.json",
                ],
            )
            assert result.exit_code == 0
            report = json.loads((Path.cwd() / "report.json").read_text())
            ideals = {case["params"]["ideal"] for case in report["cases"]}
            assert ideals and all("x3" not in ideal for ideal in ideals)
