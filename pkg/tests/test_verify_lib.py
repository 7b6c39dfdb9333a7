"""Test cases for the verify_lib module."""
import inspect
import json
import random

import pytest

from . import utils
from .utils import (  # noqa: F401 # setup_rational is used by pytest as string
    fixture_setup_rational,
)
from .utils import setup_logger  # noqa: F401 # setup_logger is an autouse fixture
from bettisect import verify_lib
from bettisect._helpers import Families
from bettisect._helpers import SkipReasons
from bettisect._helpers import Suites
from bettisect.formulas_lib import predict
from bettisect.formulas_lib import Prediction
from bettisect.formulas_lib import Quantities
from bettisect.formulas_lib import Sources
from bettisect.graph_lib import build_path
from bettisect.graph_lib import edge_ideal
from bettisect.ideal_lib import parse_ideal
from bettisect.ideal_lib import power
from bettisect.verify_lib import Verdicts


def assert_clean(report):
    """No mismatches and at least one asserted case."""
    assert report.mismatches == [], report.render()
    assert report.summary["match"] + report.summary["bound_satisfied"] > 0


class TestCaseHelpers:
    """Testing of the verdict helpers."""

    def test_judge(self):
        """Equalities match, bounds are satisfied, skipped stays skipped."""
        params = {"t": 1}
        equal = Prediction(quantity=Quantities.reg_quotient, value=3, source=Sources.star)
        bound = Prediction(quantity=Quantities.depth_lower_bound, value=1, source=Sources.path_depth_bound)
        assert verify_lib.judge(equal, 3, params).verdict == Verdicts.match
        assert verify_lib.judge(equal, 2, params).verdict == Verdicts.mismatch
        assert verify_lib.judge(bound, 2, params).verdict == Verdicts.bound_satisfied
        skipped = predict(Families.cycle, (1, 1, 1))[0]
        case = verify_lib.judge(skipped, 1, params)
        assert case.verdict == Verdicts.skipped
        assert case.reason == SkipReasons.not_applicable

    def test_bound_case(self):
        """Upper and lower bounds."""
        assert verify_lib.bound_case({}, "reg", 3, 2, upper=True).verdict == Verdicts.bound_satisfied
        assert verify_lib.bound_case({}, "depth", 3, 2, upper=False).verdict == Verdicts.mismatch

    def test_ideal_case(self):
        """Ideal equality ignores generator order."""
        left = parse_ideal("(x1*x2, x2*x3)")
        right = parse_ideal("(x2*x3, x1*x2)")
        assert verify_lib.ideal_case({}, left, right).verdict == Verdicts.match
        case = verify_lib.ideal_case({}, left, parse_ideal("(x1*x2)"))
        assert case.verdict == Verdicts.mismatch
        assert "!=" in case.note


class TestReport:
    """Testing of the Report model."""

    def test_json(self):
        """The JSON form has the summary but no wall-clock time."""
        report = verify_lib.Report(
            suite=Suites.star,
            config=verify_lib.report_config(utils.SMALL_CONFIG),
            cases=[verify_lib.equality_case({"t": 1}, "reg_quotient", 1, 2)],
            wall_clock=12.5,
        )
        document = json.loads(report.to_json())
        assert "wall_clock" not in document
        assert document["summary"]["mismatch"] == 1
        assert document["config"]["field"] == "gf:32003"
        assert "MISMATCH reg_quotient" in report.render()


class TestEngine:
    """Testing of the cached engine."""

    def test_cache(self, tmp_path):
        """Tables are stored once and read back."""
        config = utils.SMALL_CONFIG.model_copy(update={"cache_dir": tmp_path})
        ideal = parse_ideal("(x1^2*x2^2, x2*x3)")
        first = verify_lib.Engine(config).table(ideal)
        assert len(list(tmp_path.glob("*.json"))) == 1
        cache = verify_lib.ResultCache(tmp_path)
        assert cache.get(ideal, config.field) == first
        assert cache.get(ideal, utils.RATIONAL) is None
        assert verify_lib.Engine(config).invariants(ideal).reg == 3

    def test_key(self):
        """Keys depend on the field."""
        ideal = parse_ideal("(x1*x2)")
        assert verify_lib.ResultCache.key(ideal, utils.GF2) != verify_lib.ResultCache.key(
            ideal, utils.RATIONAL
        )

    def test_ambient_variables(self):
        """The depth is measured in the requested number of variables."""
        ideal = parse_ideal("(x1*x2)")
        assert verify_lib.Engine(utils.SMALL_CONFIG).invariants(ideal, n_vars=4).depth == 3


class TestPowersOfPaths:
    """Testing of worked depths of squared edge ideals."""

    @pytest.mark.parametrize("weights, depth", verify_lib.EXAMPLE_DEPTHS)
    def test_bounds_are_sharp(self, weights, depth):
        """The depth bound equals the known depth."""
        bounds = [
            p for p in predict(Families.path, weights, 2) if p.quantity == Quantities.depth_lower_bound
        ]
        assert [b.value for b in bounds] == [depth]

    def test_computed_depth(self):
        """The engine reproduces one of the depths."""
        ideal = power(edge_ideal(build_path((2, 1, 1, 1))), 2)
        assert verify_lib.Engine(utils.SMALL_CONFIG).invariants(ideal).depth == 2

    def test_two_weighted_edges(self):
        """Both orientations of a path with weights 2 and 3 match the engine."""
        computed = verify_lib.Engine(utils.SMALL_CONFIG).invariants(
            edge_ideal(build_path((1, 2, 1, 3, 1, 1)))
        )
        assert (computed.reg, computed.depth) == (6, 2)
        for weights in [(1, 2, 1, 3, 1, 1), (1, 1, 3, 1, 2, 1)]:
            cases = verify_lib._path_job(utils.SMALL_CONFIG, weights, 1)
            assert_clean(verify_lib.Report(suite=Suites.path, config={}, cases=cases))


class TestSuites:
    """Testing of the verification suites on small sweeps."""

    def test_star(self):
        """Star formulas hold."""
        assert_clean(verify_lib.verify_star_suite(3, 2, 2, config=utils.SMALL_CONFIG))

    def test_path(self):
        """Path formulas hold, non-closed paths are skipped."""
        report = verify_lib.verify_path_suite(5, 2, 1, config=utils.SMALL_CONFIG)
        assert_clean(report)
        assert any(c.reason == SkipReasons.not_integrally_closed for c in report.cases)

    def test_path_powers(self):
        """Power formulas hold for short paths."""
        assert_clean(verify_lib.verify_path_suite(4, 2, 2, config=utils.SMALL_CONFIG))

    def test_path_seven_vertices(self):
        """The sweep reaches paths with 7 vertices."""
        report = verify_lib.verify_path_suite(7, 2, 1, config=utils.SMALL_CONFIG)
        assert_clean(report)
        assert any(len(c.params["weights"]) == 6 for c in report.cases)

    def test_path_power_cutoff(self):
        """Paths longer than max_power_n are only checked for t = 1."""
        report = verify_lib.verify_path_suite(
            5, 1, 2, config=utils.SMALL_CONFIG, max_power_n=4
        )
        assert_clean(report)
        ts = {}
        for case in report.cases:
            ts.setdefault(len(case.params["weights"]) + 1, set()).add(case.params["t"])
        assert ts[4] == {1, 2}
        assert ts[5] == {1}

    def test_default_sweeps(self):
        """Default sweeps cover stars with 5 vertices, paths with 8 and t = 2 up to 7."""
        star = inspect.signature(verify_lib.verify_star_suite).parameters
        path = inspect.signature(verify_lib.verify_path_suite).parameters
        assert [star[k].default for k in ("max_n", "max_weight", "max_t")] == [5, 3, 3]
        assert [path[k].default for k in ("max_n", "max_weight", "max_t")] == [8, 3, 2]
        assert path["max_power_n"].default == 7

    def test_colon(self):
        """Colon and sum identities hold."""
        report = verify_lib.verify_colon_identities(3, 3, 2, 2, 2, config=utils.SMALL_CONFIG)
        assert_clean(report)
        assert {c.quantity for c in report.cases} == {"ideal_equality"}

    def test_splitting(self):
        """Variable-pivot splittings with a linear part are Betti splittings."""
        assert_clean(verify_lib.verify_splitting_suite(3, 2, config=utils.SMALL_CONFIG))

    def test_closure(self):
        """The forbidden-subgraph verdict agrees with the oracle."""
        report = verify_lib.verify_closure_suite(3, 3, 2, config=utils.SMALL_CONFIG)
        assert report.mismatches == []
        assert report.notes["selected_interpretation"] == "B"
        assert report.notes["graphs"] == "14"

    def test_oracle(self):
        """The engine agrees with the Taylor strand and the polarization."""
        report = verify_lib.verify_oracle_suite(
            5, 1, config=utils.SMALL_CONFIG, max_vars=4, max_gens=6
        )
        assert_clean(report)

    def test_oracle_corpus_limits(self):
        """The random corpus respects max_vars and max_gens."""
        report = verify_lib.verify_oracle_suite(
            8, 3, config=utils.SMALL_CONFIG, max_vars=3, max_gens=4
        )
        assert_clean(report)
        for case in report.cases:
            ideal = parse_ideal(case.params["ideal"])
            assert ideal.n_vars <= 3 and len(ideal) <= 4

    def test_oracle_cap_skips_taylor_only(self):
        """Above oracle_cap the polarization checks still run."""
        config = utils.SMALL_CONFIG.model_copy(update={"oracle_cap": 2})
        cases = verify_lib._oracle_job(config, parse_ideal("(x1*x2, x2*x3, x3*x4)"))
        verdicts = {c.quantity: c.verdict for c in cases}
        assert verdicts == {
            "engine_agreement": Verdicts.skipped,
            "hilbert_numerator": Verdicts.skipped,
            "polarization_betti": Verdicts.match,
            "polarization_depth": Verdicts.match,
        }
        assert all(
            c.reason == SkipReasons.resource_cap for c in cases if c.verdict == Verdicts.skipped
        )

    def test_exact_sequence(self):
        """The exact sequence inequalities hold."""
        assert_clean(
            verify_lib.verify_exact_sequence_suite(
                5, 2, config=utils.SMALL_CONFIG, max_vars=4, max_gens=6
            )
        )

    def test_exact_sequence_corpus_limits(self):
        """The exact sequence corpus respects max_vars and max_gens."""
        report = verify_lib.verify_exact_sequence_suite(
            6, 4, config=utils.SMALL_CONFIG, max_vars=2, max_gens=3
        )
        assert_clean(report)
        assert all(parse_ideal(c.params["ideal"]).n_vars <= 2 for c in report.cases)

    def test_corpus_defaults(self):
        """Default corpora hold 200 and 100 ideals in up to 6 variables."""
        oracle = inspect.signature(verify_lib.verify_oracle_suite).parameters
        exact = inspect.signature(verify_lib.verify_exact_sequence_suite).parameters
        assert oracle["count"].default == 200
        assert exact["count"].default == 100
        for parameters in (oracle, exact):
            assert (parameters["max_vars"].default, parameters["max_gens"].default) == (6, 12)

    def test_union(self):
        """reg and depth add over disjoint unions."""
        assert_clean(verify_lib.verify_disjoint_union_suite(3, 2, config=utils.SMALL_CONFIG))

    def test_workers(self):
        """Worker processes give the same cases."""
        config = utils.SMALL_CONFIG.model_copy(update={"workers": 2})
        parallel = verify_lib.verify_disjoint_union_suite(2, 2, config=config)
        serial = verify_lib.verify_disjoint_union_suite(2, 2, config=utils.SMALL_CONFIG)
        assert parallel.cases == serial.cases


class TestSplitting:
    """Testing of single splittings."""

    @pytest.mark.parametrize("pivot", [1, 3])
    def test_match(self, pivot):
        """Both end variables split the weighted path."""
        case = verify_lib.verify_betti_splitting(
            parse_ideal("(x1^2*x2^2, x2*x3)"), pivot, utils.SMALL_CONFIG
        )
        assert case.verdict == Verdicts.match

    def test_triangle(self):
        """The triangle splits at x1 with J = x1(x2, x3)."""
        case = verify_lib.verify_betti_splitting(parse_ideal("(x1*x2, x1*x3, x2*x3)"), 1)
        assert case.verdict == Verdicts.match

    def test_trivial(self):
        """A variable dividing every generator gives no splitting."""
        case = verify_lib.verify_betti_splitting(parse_ideal("(x1^2*x2^2, x2*x3)"), 2)
        assert case.verdict == Verdicts.skipped
        assert case.note == "trivial split"

    def test_not_linear(self):
        """J must have a linear resolution."""
        case = verify_lib.verify_betti_splitting(
            parse_ideal("(x1^2*x2, x1*x3^2, x2*x3)"), 1, utils.SMALL_CONFIG
        )
        assert case.note == "J is not linear"


class TestInputs:
    """Testing of the swept inputs."""

    def test_weighted_graphs(self):
        """Three underlying graphs on at most 3 vertices."""
        assert len(verify_lib.weighted_graphs(3, 3, 1)) == 3
        assert len(verify_lib.weighted_graphs(3, 3, 2)) == 2 + 4 + 8

    def test_random_ideal(self):
        """Random ideals are reproducible, proper and nonzero."""
        first = verify_lib.random_ideal(random.Random(7))
        assert first == verify_lib.random_ideal(random.Random(7))
        assert not first.is_zero and not first.is_unit
        assert 2 <= first.n_vars <= 6


class TestDispatch:
    """Testing of run_suite and verify_helper."""

    def test_run_suite(self):
        """Options a suite does not take are ignored."""
        report = verify_lib.run_suite(
            Suites.union, utils.SMALL_CONFIG, max_n=2, max_weight=1, count=3, seed=None
        )
        assert report.suite == Suites.union
        assert len(report.cases) == 2

    def test_run_colon(self):
        """max_n bounds both stars and paths of the colon suite."""
        report = verify_lib.run_suite(Suites.colon, utils.SMALL_CONFIG, max_n=3, max_weight=1, max_t=2)
        assert_clean(report)

    def test_run_closure(self):
        """max_n bounds the vertices and max_edges the edges of the closure sweep."""
        report = verify_lib.run_suite(
            Suites.closure, utils.SMALL_CONFIG, max_n=3, max_edges=2, max_weight=2
        )
        assert report.mismatches == []
        assert report.notes["graphs"] == str(2 + 4)

    def test_closure_defaults(self):
        """The default closure sweep reaches 5 vertices, 6 edges and weight 3."""
        parameters = inspect.signature(verify_lib.verify_closure_suite).parameters
        limits = [parameters[k].default for k in ("max_vertices", "max_edges", "max_weight")]
        assert limits == [5, 6, 3]

    def test_run_oracle(self):
        """max_vars and max_gens reach the random corpus."""
        report = verify_lib.run_suite(
            Suites.oracle, utils.SMALL_CONFIG, count=4, seed=5, max_vars=2, max_gens=3
        )
        assert len({c.params["ideal"] for c in report.cases}) <= 4
        assert all(parse_ideal(c.params["ideal"]).n_vars <= 2 for c in report.cases)

    def test_helper_writes_json(self, tmp_path):
        """The report lands in the given file."""
        target = tmp_path / "report.json"
        report = verify_lib.verify_helper(Suites.union, str(target), max_n=2, max_weight=1)
        assert json.loads(target.read_text())["suite"] == "union"
        assert report.config["field"] == "gf:32003"

    @pytest.mark.usefixtures("setup_rational")
    def test_helper_uses_settings(self):
        """The configured field reaches the report."""
        report = verify_lib.verify_helper(Suites.union, max_n=2, max_weight=1)
        assert report.config["field"] == "rational"
        assert report.config["lattice_cap"] == 20000
