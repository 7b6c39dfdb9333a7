"""Module providing closed-form predictions of reg and depth for weighted paths and stars.

Every predictor returns Prediction objects carrying the value, whether it is an
equality or a bound, and whether the hypotheses of the formula hold for the input.
"""
from enum import Enum
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from pydantic import BaseModel

from ._helpers import Families
from ._helpers import get_logger
from ._helpers import NotApplicableError
from ._helpers import SkipReasons
from .closure_lib import forbidden_subgraph_verdict
from .closure_lib import Interpretations
from .graph_lib import build_path
from .graph_lib import PathShape


class Quantities(Enum):
    """Predicted quantities."""

    reg_quotient = "reg_quotient"
    """reg(S/I^t), an equality."""
    depth_quotient = "depth_quotient"
    """depth(S/I^t), an equality."""
    depth_lower_bound = "depth_lower_bound"
    """A lower bound on depth(S/I^t)."""
    reg_upper_bound = "reg_upper_bound"
    """An upper bound on reg(S/I^t)."""


class Sources(Enum):
    """The closed formula a prediction comes from."""

    star = "star"
    trivial_path = "trivial-path"
    small_path = "small-path"
    small_path_depth_bound = "small-path-depth-bound"
    path = "path"
    path_power = "path-power"
    path_power_bound = "path-power-bound"
    path_power_bound_heavy_end = "path-power-bound-heavy-end"
    path_depth_bound_end = "path-depth-bound-end"
    path_depth_bound = "path-depth-bound"
    none = "none"


class Prediction(BaseModel, frozen=True):
    """A predicted invariant, meaningful only when applicable."""

    quantity: Quantities
    value: Optional[int] = None
    applicable: bool = True
    reason: Optional[SkipReasons] = None
    note: str = ""
    source: Sources

    @property
    def is_bound(self) -> bool:
        """True for bounds, False for equalities."""
        return self.quantity in (Quantities.depth_lower_bound, Quantities.reg_upper_bound)

    def holds(self, computed: int) -> bool:
        """Check a computed value against the prediction."""
        if not self.applicable or self.value is None:
            raise NotApplicableError(f"Prediction {self} is not applicable")
        if self.quantity == Quantities.depth_lower_bound:
            return computed >= self.value
        if self.quantity == Quantities.reg_upper_bound:
            return computed <= self.value
        return computed == self.value


def not_applicable(
    quantity: Quantities,
    source: Sources,
    note: str,
    reason: SkipReasons = SkipReasons.not_applicable,
) -> Prediction:
    """Build a prediction whose hypotheses do not hold."""
    return Prediction(
        quantity=quantity, applicable=False, reason=reason, note=note, source=source
    )


def floor3(x: int) -> int:
    """Floor of x/3, rounding towards minus infinity."""
    return x // 3


def ceil3(x: int) -> int:
    """Ceiling of x/3, rounding towards plus infinity."""
    return -((-x) // 3)


def _check(weights: Sequence[int], t: int) -> Tuple[int, ...]:
    weights = tuple(int(w) for w in weights)
    if not weights:
        raise ValueError("At least one weight is needed")
    if any(w < 1 for w in weights):
        raise ValueError(f"Weights {weights} must be positive")
    if t < 1:
        raise ValueError(f"Power t={t} must be at least 1")
    return weights


def path_weights_closed(weights: Sequence[int]) -> bool:
    """True iff the edge ideal of the weighted path is integrally closed."""
    return forbidden_subgraph_verdict(build_path(weights), Interpretations.B)


###############################################################################
# Stars and trivial paths
###############################################################################


def star_invariants(weights: Sequence[int], t: int = 1) -> Tuple[Prediction, Prediction]:
    """reg and depth of S/I(G)^t for a weighted star.

    reg = 2(t-1)w + w + sum(w_i - 1) with w the largest weight, and depth = 1.
    """
    weights = _check(weights, t)
    omega = max(weights)
    reg = 2 * (t - 1) * omega + omega + sum(w - 1 for w in weights)
    return (
        Prediction(quantity=Quantities.reg_quotient, value=reg, source=Sources.star),
        Prediction(quantity=Quantities.depth_quotient, value=1, source=Sources.star),
    )


def trivial_path_invariants(n: int, t: int = 1) -> Tuple[Prediction, Prediction]:
    """reg and depth of S/I(P)^t for the trivially weighted path on n vertices."""
    if n < 2:
        raise ValueError(f"A path needs at least 2 vertices, got {n}")
    if t < 1:
        raise ValueError(f"Power t={t} must be at least 1")
    reg = floor3(n + 1) + 2 * (t - 1)
    depth = max(ceil3(n - t + 1), 1)
    return (
        Prediction(quantity=Quantities.reg_quotient, value=reg, source=Sources.trivial_path),
        Prediction(
            quantity=Quantities.depth_quotient, value=depth, source=Sources.trivial_path
        ),
    )


###############################################################################
# Paths with at most 4 vertices
###############################################################################


def _small_path_depth(weights: Tuple[int, ...], t: int) -> Prediction:
    n = len(weights) + 1
    if n in (2, 3):
        return Prediction(
            quantity=Quantities.depth_quotient, value=1, source=Sources.small_path
        )
    w1, w2, w3 = weights
    if t == 1:
        depth = 2 if w2 == 1 else 1
        return Prediction(
            quantity=Quantities.depth_quotient, value=depth, source=Sources.small_path
        )
    if w1 == w3 == 1 and w2 > 1:
        return Prediction(
            quantity=Quantities.depth_quotient, value=1, source=Sources.small_path
        )
    if w1 > 1 and w3 > 1 and w2 == 1:
        return Prediction(
            quantity=Quantities.depth_quotient, value=2, source=Sources.small_path
        )
    # Remaining closed pattern: a single weighted end edge, only depth >= 1 is known
    return Prediction(
        quantity=Quantities.depth_lower_bound,
        value=1,
        source=Sources.small_path_depth_bound,
    )


def small_path_invariants(
    weights: Sequence[int], t: int = 1
) -> Tuple[Prediction, Prediction]:
    """reg and depth of S/I(P)^t for a non-trivial integrally closed path, n <= 4.

    reg = 2tw - 1 with w the largest weight. The depth is an equality except for
    t >= 2, n = 4 and a single weighted end edge, where only depth >= 1 is known.
    """
    weights = _check(weights, t)
    n = len(weights) + 1
    if n > 4:
        return (
            not_applicable(Quantities.reg_quotient, Sources.small_path, f"n={n} > 4"),
            not_applicable(Quantities.depth_quotient, Sources.small_path, f"n={n} > 4"),
        )
    if all(w == 1 for w in weights):
        note = "trivially weighted"
        return (
            not_applicable(Quantities.reg_quotient, Sources.small_path, note),
            not_applicable(Quantities.depth_quotient, Sources.small_path, note),
        )
    if not path_weights_closed(weights):
        note = f"{weights} is not integrally closed"
        reason = SkipReasons.not_integrally_closed
        return (
            not_applicable(Quantities.reg_quotient, Sources.small_path, note, reason),
            not_applicable(Quantities.depth_quotient, Sources.small_path, note, reason),
        )
    reg = 2 * t * max(weights) - 1
    return (
        Prediction(quantity=Quantities.reg_quotient, value=reg, source=Sources.small_path),
        _small_path_depth(weights, t),
    )


###############################################################################
# Paths with at least 5 vertices
###############################################################################


def _distinguished_indices(weights: Tuple[int, ...]) -> List[int]:
    """1-based i <= n - 3 with w_i >= 2, w_i >= w_{i+2} and w_j = 1 for j != i, i + 2."""
    n = len(weights) + 1
    return [
        i
        for i in range(1, n - 2)
        if weights[i - 1] >= 2
        and weights[i - 1] >= weights[i + 1]
        and all(w == 1 for k, w in enumerate(weights, start=1) if k not in (i, i + 2))
    ]


def normalize_path_weights(weights: Sequence[int]) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Orient a path so that edges i and i + 2 carry every non-trivial weight.

    The index i must satisfy i <= n - 3, w_i >= 2 and w_i >= w_{i+2}. An index whose
    pair leaves a weighted edge outside is never distinguished, so with two weighted
    edges the heavier one sits at i. When both orientations qualify (a single weighted
    edge, or two of equal weight) the lexicographically larger weight list is kept,
    then the smallest such index. A list and its reverse thus normalize identically.

    Returns:
        The oriented weights and the 1-based index i, or None if no orientation fits.
    """
    shape = PathShape.from_weights(weights)
    candidates = [
        w
        for w in {shape.weights, shape.reversed().weights}
        if _distinguished_indices(w)
    ]
    if not candidates:
        return None
    oriented = max(candidates)
    return oriented, _distinguished_indices(oriented)[0]


def _general_path_checks(
    weights: Tuple[int, ...], quantity: Quantities, source: Sources
) -> Optional[Prediction]:
    n = len(weights) + 1
    if n < 5:
        return not_applicable(quantity, source, f"n={n} < 5")
    if all(w == 1 for w in weights):
        return not_applicable(quantity, source, "trivially weighted")
    if not path_weights_closed(weights):
        return not_applicable(
            quantity,
            source,
            f"{weights} is not integrally closed",
            SkipReasons.not_integrally_closed,
        )
    return None


def _path_reg(weights: Tuple[int, ...], i: int) -> int:
    n = len(weights) + 1
    w_i, w_i2 = weights[i - 1], weights[i + 1]
    return (
        max(
            2 * w_i + floor3(i - 1) + floor3(n - i - 1),
            2 * w_i2 + floor3(i - 2) + floor3(n - i),
        )
        - 1
    )


def _path_depth(weights: Tuple[int, ...], i: int) -> int:
    n = len(weights) + 1
    a = 0 if weights[i + 1] == 1 else 1
    return min(ceil3(i) + ceil3(n - i - a), ceil3(i - 2) + ceil3(n - i - 2) + 1)


def path_invariants(weights: Sequence[int]) -> Tuple[Prediction, Prediction]:
    """reg and depth of S/I(P) for a non-trivial integrally closed path, n >= 5."""
    weights = _check(weights, 1)
    reg_skip = _general_path_checks(weights, Quantities.reg_quotient, Sources.path)
    depth_skip = _general_path_checks(weights, Quantities.depth_quotient, Sources.path)
    if reg_skip is not None or depth_skip is not None:
        return reg_skip, depth_skip  # type: ignore[return-value]
    normalized = normalize_path_weights(weights)
    if normalized is None:  # pragma: no cover
        note = f"No distinguished edge in {weights}"
        return (
            not_applicable(Quantities.reg_quotient, Sources.path, note),
            not_applicable(Quantities.depth_quotient, Sources.path, note),
        )
    oriented, i = normalized
    get_logger().debug(f"Path {weights} oriented as {oriented} with i={i}")
    return (
        Prediction(
            quantity=Quantities.reg_quotient,
            value=_path_reg(oriented, i),
            source=Sources.path,
        ),
        Prediction(
            quantity=Quantities.depth_quotient,
            value=_path_depth(oriented, i),
            source=Sources.path,
        ),
    )


def path_power_reg(weights: Sequence[int], t: int) -> Prediction:
    """reg(S/I(P)^t) = reg(S/I(P)) + 2(t-1)w for non-trivial integrally closed paths."""
    weights = _check(weights, t)
    n = len(weights) + 1
    if n <= 4:
        return small_path_invariants(weights, t)[0]
    skip = _general_path_checks(weights, Quantities.reg_quotient, Sources.path_power)
    if skip is not None:
        return skip
    base = path_invariants(weights)[0]
    value = base.value + 2 * (t - 1) * max(weights)  # type: ignore[operator]
    source = Sources.path if t == 1 else Sources.path_power
    return Prediction(quantity=Quantities.reg_quotient, value=value, source=source)


def path_power_reg_bound(weights: Sequence[int], t: int) -> Prediction:
    """The upper bound reg(S/I(P)^t) <= reg(S/I(P)) + 2(t-1)w, n >= 5."""
    weights = _check(weights, t)
    source = (
        Sources.path_power_bound_heavy_end
        if weights[0] == max(weights)
        else Sources.path_power_bound
    )
    skip = _general_path_checks(weights, Quantities.reg_upper_bound, source)
    if skip is not None:
        return skip
    value = path_power_reg(weights, t).value
    return Prediction(quantity=Quantities.reg_upper_bound, value=value, source=source)


def _end_depth_bound(weights: Tuple[int, ...], t: int) -> Optional[int]:
    """Bound for w_1 > w_3 and every other weight trivial."""
    n = len(weights) + 1
    w1, w3 = weights[0], weights[2]
    if not w1 > w3 or any(w != 1 for k, w in enumerate(weights, start=1) if k not in (1, 3)):
        return None
    floor_value = 1 if w3 == 1 else 2
    return max(ceil3(n - t + 1), floor_value)


def _inner_depth_bounds(weights: Tuple[int, ...], t: int) -> List[int]:
    """Bounds for w_i > w_{i+2} and every other weight trivial, t >= 2."""
    n = len(weights) + 1
    bounds = []
    for i in range(1, n - 2):
        w_i, w_i2 = weights[i - 1], weights[i + 1]
        if not w_i > w_i2:
            continue
        if any(w != 1 for k, w in enumerate(weights, start=1) if k not in (i, i + 2)):
            continue
        if w_i2 > 1:
            bounds.append(max(ceil3(n - t), 2))
        elif t == 2 and i % 3 == 1 and n % 3 == 2:
            bounds.append(ceil3(n - 1))
        else:
            bounds.append(max(ceil3(n - t), 1))
    return bounds


def path_power_depth_bound(weights: Sequence[int], t: int) -> Prediction:
    """The strongest known lower bound on depth(S/I(P)^t), n >= 5 and t >= 2.

    Both orientations of the path are tried. Two weighted edges of equal weight are
    not covered and yield a not-applicable prediction.
    """
    weights = _check(weights, t)
    if t < 2:
        raise ValueError(f"Depth bounds need t >= 2, got t={t}")
    skip = _general_path_checks(
        weights, Quantities.depth_lower_bound, Sources.path_depth_bound
    )
    if skip is not None:
        return skip

    best: Optional[Tuple[int, Sources]] = None
    for oriented in sorted({weights, tuple(reversed(weights))}):
        found = [(b, Sources.path_depth_bound) for b in _inner_depth_bounds(oriented, t)]
        end_bound = _end_depth_bound(oriented, t)
        if end_bound is not None:
            found.append((end_bound, Sources.path_depth_bound_end))
        for candidate in found:
            if best is None or candidate[0] > best[0]:
                best = candidate
    if best is None:
        return not_applicable(
            Quantities.depth_lower_bound,
            Sources.path_depth_bound,
            f"No depth bound covers {weights}",
        )
    return Prediction(
        quantity=Quantities.depth_lower_bound, value=best[0], source=best[1]
    )


###############################################################################
# Router
###############################################################################


def predict(family: Families, weights: Sequence[int], t: int = 1) -> List[Prediction]:
    """Every prediction available for a weighted graph of a family and a power.

    Args:
        family: The graph family.
        weights: The edge weights of the family member.
        t: The power of the edge ideal.

    Returns:
        List[Prediction]: Predictions, possibly not applicable ones. The list is never
        empty.
    """
    weights = _check(weights, t)
    if family == Families.star:
        return list(star_invariants(weights, t))
    if family == Families.cycle:
        note = "No closed formula for cycles"
        return [
            not_applicable(Quantities.reg_quotient, Sources.none, note),
            not_applicable(Quantities.depth_quotient, Sources.none, note),
        ]

    n = len(weights) + 1
    if all(w == 1 for w in weights):
        return list(trivial_path_invariants(n, t))
    if n <= 4:
        return list(small_path_invariants(weights, t))
    if t == 1:
        return list(path_invariants(weights))
    return [
        path_power_reg(weights, t),
        path_power_reg_bound(weights, t),
        path_power_depth_bound(weights, t),
    ]


def predict_helper(
    family: Families, weights: Sequence[int], t: int = 1, quantity: Optional[Quantities] = None
) -> str:
    """Return the JSON list of the predictions for a family member and a power.

    Args:
        family: The graph family.
        weights: The edge weights.
        t: The power of the edge ideal.
        quantity: Keep only the predictions of this quantity; all of them if None.

    Returns:
        The JSON text of the predictions.
    """
    predictions = predict(family, weights, t)
    if quantity is not None:
        predictions = [p for p in predictions if p.quantity == quantity]
    return "[" + ", ".join(p.model_dump_json() for p in predictions) + "]"
