"""Test cases for the formulas_lib module."""
import json

import pytest

from .utils import setup_logger  # noqa: F401 # setup_logger is an autouse fixture
from bettisect import formulas_lib
from bettisect._helpers import Families
from bettisect._helpers import NotApplicableError
from bettisect._helpers import SkipReasons
from bettisect.formulas_lib import Quantities
from bettisect.formulas_lib import Sources


def values(predictions):
    """The (quantity, value) pairs of applicable predictions."""
    return [(p.quantity, p.value) for p in predictions if p.applicable]


class TestRounding:
    """Testing of the integer divisions."""

    @pytest.mark.parametrize("x, floor, ceil", [(-1, -1, 0), (0, 0, 0), (4, 1, 2), (6, 2, 2)])
    def test_thirds(self, x, floor, ceil):
        """Floor and ceiling of x/3 for negative and positive x."""
        assert formulas_lib.floor3(x) == floor
        assert formulas_lib.ceil3(x) == ceil


class TestPrediction:
    """Testing of the Prediction model."""

    def test_holds(self):
        """Equalities and bounds compare differently."""
        equal = formulas_lib.Prediction(quantity=Quantities.reg_quotient, value=3, source=Sources.star)
        lower = formulas_lib.Prediction(quantity=Quantities.depth_lower_bound, value=2, source=Sources.path_depth_bound)
        upper = formulas_lib.Prediction(quantity=Quantities.reg_upper_bound, value=5, source=Sources.path_power_bound)
        assert equal.holds(3) and not equal.holds(4)
        assert lower.holds(3) and not lower.holds(1)
        assert upper.holds(5) and not upper.holds(6)
        assert lower.is_bound and not equal.is_bound

    def test_not_applicable(self):
        """Skipped predictions cannot be checked."""
        skipped = formulas_lib.not_applicable(Quantities.reg_quotient, Sources.none, "cycle")
        assert skipped.reason == SkipReasons.not_applicable
        with pytest.raises(NotApplicableError, match="not applicable"):
            skipped.holds(1)


class TestStarsAndTrivialPaths:
    """Testing of the star and trivial path formulas."""

    @pytest.mark.parametrize(
        "weights, t, reg", [((2, 1), 1, 3), ((2, 1), 2, 7), ((1, 1, 1), 1, 1), ((3, 2, 1), 2, 12)]
    )
    def test_star(self, weights, t, reg):
        """reg follows the largest weight; the depth is 1."""
        assert values(formulas_lib.star_invariants(weights, t)) == [
            (Quantities.reg_quotient, reg),
            (Quantities.depth_quotient, 1),
        ]

    @pytest.mark.parametrize(
        "n, t, reg, depth", [(2, 1, 1, 1), (4, 1, 1, 2), (5, 2, 4, 2), (7, 1, 2, 3), (4, 5, 9, 1)]
    )
    def test_trivial_path(self, n, t, reg, depth):
        """Closed forms for trivially weighted paths."""
        assert values(formulas_lib.trivial_path_invariants(n, t)) == [
            (Quantities.reg_quotient, reg),
            (Quantities.depth_quotient, depth),
        ]

    def test_trivial_path_arguments(self):
        """Paths need two vertices and t >= 1."""
        with pytest.raises(ValueError, match="at least 2"):
            formulas_lib.trivial_path_invariants(1)
        with pytest.raises(ValueError, match="at least 1"):
            formulas_lib.trivial_path_invariants(3, 0)


class TestSmallPaths:
    """Testing of the formulas for paths with at most 4 vertices."""

    @pytest.mark.parametrize(
        "weights, t, reg, depth",
        [((2,), 1, 3, 1), ((2, 1), 1, 3, 1), ((2, 1, 1), 1, 3, 2), ((1, 2, 1), 1, 3, 1),
         ((1, 2, 1), 2, 7, 1), ((2, 1, 3), 2, 11, 2)],
    )  # fmt: skip
    def test_equalities(self, weights, t, reg, depth):
        """reg = 2tw - 1 and the exact depths."""
        assert values(formulas_lib.small_path_invariants(weights, t)) == [
            (Quantities.reg_quotient, reg),
            (Quantities.depth_quotient, depth),
        ]

    def test_single_weighted_end(self):
        """Only depth >= 1 is known for a weighted end edge and t >= 2."""
        _, depth = formulas_lib.small_path_invariants((2, 1, 1), 2)
        assert depth.quantity == Quantities.depth_lower_bound
        assert depth.value == 1
        assert depth.source == Sources.small_path_depth_bound

    def test_not_closed(self):
        """Paths whose edge ideal is not closed are skipped."""
        reg, depth = formulas_lib.small_path_invariants((2, 2), 1)
        assert not reg.applicable
        assert depth.reason == SkipReasons.not_integrally_closed

    @pytest.mark.parametrize("weights", [(1, 1, 1), (2, 1, 1, 1)])
    def test_out_of_scope(self, weights):
        """Trivial or longer paths are not covered."""
        reg, _ = formulas_lib.small_path_invariants(weights)
        assert reg.reason == SkipReasons.not_applicable


class TestGeneralPaths:
    """Testing of the formulas for paths with at least 5 vertices."""

    @pytest.mark.parametrize(
        "weights, expected",
        [
            ((2, 1, 1, 1), ((2, 1, 1, 1), 1)),
            ((1, 1, 1, 2), ((2, 1, 1, 1), 1)),
            ((1, 2, 1, 1, 1), ((1, 2, 1, 1, 1), 2)),
            ((1, 2, 1, 3, 1, 1), ((1, 1, 3, 1, 2, 1), 3)),
            ((2, 1, 3, 1, 1, 1), ((1, 1, 1, 3, 1, 2), 4)),
            ((1, 2, 1, 2, 1), ((1, 2, 1, 2, 1), 2)),
            ((1, 1, 1, 1), None),
        ],
    )
    def test_normalize(self, weights, expected):
        """Orientation and distinguished index."""
        assert formulas_lib.normalize_path_weights(weights) == expected

    def test_normalize_covers_both_weighted_edges(self):
        """The heavier of two weighted edges is distinguished, never a third edge."""
        oriented, i = formulas_lib.normalize_path_weights((1, 2, 1, 3, 1, 1))
        assert oriented[i - 1] == 3
        assert oriented[i + 1] == 2

    @pytest.mark.parametrize(
        "weights",
        [(1, 2, 1, 3, 1), (2, 1, 3, 1, 1, 1), (1, 1, 1, 2, 1, 1, 1), (1, 2, 1, 3, 1, 1)],
    )
    def test_normalize_reversal(self, weights):
        """A weight list and its reverse normalize identically."""
        assert formulas_lib.normalize_path_weights(weights) == formulas_lib.normalize_path_weights(
            tuple(reversed(weights))
        )

    def test_path(self):
        """reg and depth for t = 1."""
        assert values(formulas_lib.path_invariants((2, 1, 1, 1))) == [
            (Quantities.reg_quotient, 4),
            (Quantities.depth_quotient, 2),
        ]

    @pytest.mark.parametrize("weights", [(1, 2, 1, 3, 1, 1), (1, 1, 3, 1, 2, 1)])
    def test_path_two_weighted_edges(self, weights):
        """The lighter edge two steps past the heavier one lowers the depth."""
        assert values(formulas_lib.path_invariants(weights)) == [
            (Quantities.reg_quotient, 6),
            (Quantities.depth_quotient, 2),
        ]

    def test_path_reversed(self):
        """The reversed path has the same invariants."""
        assert values(formulas_lib.path_invariants((1, 1, 1, 2))) == values(
            formulas_lib.path_invariants((2, 1, 1, 1))
        )

    def test_short_path(self):
        """Paths with fewer than 5 vertices are skipped."""
        reg, depth = formulas_lib.path_invariants((2, 1, 1))
        assert not reg.applicable and not depth.applicable

    def test_power_reg(self):
        """reg grows by 2w per power."""
        prediction = formulas_lib.path_power_reg((2, 1, 1, 1), 2)
        assert prediction.value == 8
        assert prediction.source == Sources.path_power
        assert formulas_lib.path_power_reg((1, 2, 1), 2).value == 7

    def test_power_reg_bound(self):
        """The upper bound names the heavy-end variant when w_1 is the largest."""
        bound = formulas_lib.path_power_reg_bound((2, 1, 1, 1), 3)
        assert bound.quantity == Quantities.reg_upper_bound
        assert bound.value == 12
        assert bound.source == Sources.path_power_bound_heavy_end
        assert formulas_lib.path_power_reg_bound((1, 2, 1, 1), 2).source == Sources.path_power_bound

    @pytest.mark.parametrize(
        "weights, t, bound",
        [
            ((2, 1, 1, 1), 2, 2),
            ((2, 1, 1, 1, 1), 2, 2),
            ((1, 2, 1, 3, 1), 2, 2),
            ((1, 1, 1, 2, 1, 1, 1), 2, 3),
            ((1, 2, 1, 1), 2, 1),
        ],
    )
    def test_depth_bound(self, weights, t, bound):
        """Lower bounds on the depth of squares."""
        prediction = formulas_lib.path_power_depth_bound(weights, t)
        assert prediction.quantity == Quantities.depth_lower_bound
        assert prediction.value == bound

    def test_depth_bound_first_power(self):
        """Depth bounds concern powers t >= 2."""
        with pytest.raises(ValueError, match="t >= 2"):
            formulas_lib.path_power_depth_bound((2, 1, 1, 1), 1)

    def test_depth_bound_equal_weights(self):
        """Two weighted edges of equal weight are not covered."""
        prediction = formulas_lib.path_power_depth_bound((2, 1, 2, 1), 2)
        assert not prediction.applicable
        assert prediction.reason == SkipReasons.not_applicable

    def test_not_closed(self):
        """Heavy 3-vertex paths are skipped."""
        prediction = formulas_lib.path_power_reg((2, 2, 1, 1), 2)
        assert prediction.reason == SkipReasons.not_integrally_closed


class TestRouter:
    """Testing of predict and its command-line helper."""

    def test_star(self):
        """Stars get reg and depth."""
        assert len(formulas_lib.predict(Families.star, (2, 1), 2)) == 2

    def test_cycle(self):
        """Cycles have no closed formula."""
        predictions = formulas_lib.predict(Families.cycle, (1, 1, 1))
        assert predictions and not any(p.applicable for p in predictions)

    def test_trivial_path(self):
        """Trivially weighted paths use their own formulas."""
        predictions = formulas_lib.predict(Families.path, (1, 1, 1, 1), 2)
        assert {p.source for p in predictions} == {Sources.trivial_path}

    def test_long_path_power(self):
        """Powers of long paths get reg, its bound and a depth bound."""
        quantities = [p.quantity for p in formulas_lib.predict(Families.path, (2, 1, 1, 1), 2)]
        assert quantities == [
            Quantities.reg_quotient,
            Quantities.reg_upper_bound,
            Quantities.depth_lower_bound,
        ]

    def test_bad_arguments(self):
        """Weights must be positive and t at least 1."""
        with pytest.raises(ValueError, match="positive"):
            formulas_lib.predict(Families.path, (2, 0))
        with pytest.raises(ValueError, match="at least 1"):
            formulas_lib.predict(Families.path, (2, 1), 0)

    def test_helper(self):
        """The helper prints JSON, optionally for one quantity."""
        everything = json.loads(formulas_lib.predict_helper(Families.path, (2, 1, 1, 1), 2))
        assert len(everything) == 3
        only = json.loads(
            formulas_lib.predict_helper(
                Families.path, (2, 1, 1, 1), 2, Quantities.depth_lower_bound
            )
        )
        assert only == [
            {
                "quantity": "depth_lower_bound",
                "value": 2,
                "applicable": True,
                "reason": None,
                "note": "",
                "source": "path-depth-bound",
            }
        ]
