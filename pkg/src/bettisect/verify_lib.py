"""Module verifying closed formulas and ideal identities against the Betti engine.

The engine output is the ground truth. Each suite sweeps a family of inputs, builds
VerificationCase records and assembles them into a Report.
"""
import hashlib
import itertools as it
import os
import random
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import networkx as nx  # type: ignore
from pydantic import BaseModel
from pydantic import computed_field
from pydantic import Field

from ._helpers import EngineConfig
from ._helpers import EngineSettings
from ._helpers import Families
from ._helpers import FieldSpec
from ._helpers import get_logger
from ._helpers import ResourceCapError
from ._helpers import SkipReasons
from ._helpers import Suites
from .betti_lib import alternating_sums
from .betti_lib import betti_taylor_strand
from .betti_lib import betti_upper_koszul
from .betti_lib import BettiTable
from .betti_lib import has_linear_resolution
from .betti_lib import invariants
from .betti_lib import Invariants
from .betti_lib import taylor_euler_characteristics
from .closure_lib import ClosureSample
from .closure_lib import Interpretations
from .closure_lib import is_integrally_closed
from .closure_lib import sample_graph
from .closure_lib import select_interpretation
from .formulas_lib import path_weights_closed
from .formulas_lib import predict
from .formulas_lib import Prediction
from .graph_lib import build_path
from .graph_lib import build_star
from .graph_lib import disjoint_union
from .graph_lib import edge_ideal
from .graph_lib import edge_ideal_without
from .graph_lib import from_networkx
from .graph_lib import WeightedGraph
from .ideal_lib import colon_monomial
from .ideal_lib import contains
from .ideal_lib import intersect
from .ideal_lib import MonomialIdeal
from .ideal_lib import power
from .ideal_lib import split_by_variable
from .ideal_lib import sum_monomial
from .polarize_lib import depth_shift
from .polarize_lib import polarize
from .ring_lib import Exponents
from .ring_lib import Monomial
from .ring_lib import VariableContext


class Verdicts(Enum):
    """Outcome of a verification case."""

    match = "match"
    bound_satisfied = "bound_satisfied"
    mismatch = "mismatch"
    skipped = "skipped"


class VerificationCase(BaseModel):
    """One comparison between a predicted and a computed value."""

    params: Dict[str, Any]
    quantity: str
    predicted: Optional[int] = None
    computed: Optional[int] = None
    verdict: Verdicts
    reason: Optional[SkipReasons] = None
    source: Optional[str] = None
    note: str = ""


class Report(BaseModel):
    """The cases of a suite with their summary.

    The wall-clock time is kept out of the JSON form so that reports of identical
    runs are byte-identical.
    """

    suite: Suites
    config: Dict[str, Any]
    cases: List[VerificationCase]
    notes: Dict[str, str] = Field(default_factory=dict)
    wall_clock: float = Field(default=0.0, exclude=True)

    @computed_field  # type: ignore[misc]
    @property
    def summary(self) -> Dict[str, int]:
        """Number of cases per verdict."""
        counts = {verdict.value: 0 for verdict in Verdicts}
        for case in self.cases:
            counts[case.verdict.value] += 1
        return counts

    @property
    def mismatches(self) -> List[VerificationCase]:
        """The failed cases."""
        return [c for c in self.cases if c.verdict == Verdicts.mismatch]

    def to_json(self) -> str:
        """Return the JSON text of the report."""
        return self.model_dump_json(indent=2)

    def render(self) -> str:
        """Text summary, listing every mismatch."""
        counts = ", ".join(f"{k}={v}" for k, v in self.summary.items())
        lines = [f"{self.suite.value}: {len(self.cases)} cases ({counts}) in {self.wall_clock:.1f}s"]
        for key, value in self.notes.items():
            lines.append(f"  {key}: {value}")
        for case in self.mismatches:
            lines.append(
                f"  MISMATCH {case.quantity} {case.params}: "
                f"predicted {case.predicted}, computed {case.computed} {case.note}".rstrip()
            )
        return "\n".join(lines)


def report_config(config: EngineConfig) -> Dict[str, Any]:
    """The configuration entries that affect the results."""
    return {
        "field": str(config.field),
        "lattice_cap": config.lattice_cap,
        "oracle_cap": config.oracle_cap,
        "closure_oracle_max_vertices": config.closure_oracle_max_vertices,
    }


###############################################################################
# Result cache and engine
###############################################################################


class ResultCache:
    """Betti tables stored as JSON files, keyed by ideal and field."""

    def __init__(self, directory: Path) -> None:
        """Class constructor."""
        self.directory = Path(directory).expanduser()
        self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(ideal: MonomialIdeal, field: FieldSpec) -> str:
        """sha256 of the canonical ideal text and the field."""
        text = f"{ideal.canonical_text()}|{field}"
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def _path(self, ideal: MonomialIdeal, field: FieldSpec) -> Path:
        return self.directory / f"{self.key(ideal, field)}.json"

    def get(self, ideal: MonomialIdeal, field: FieldSpec) -> Optional[BettiTable]:
        """Return the cached table, if any."""
        path = self._path(ideal, field)
        if not path.is_file():
            return None
        get_logger().debug(f"Cache hit for {ideal} in {path.name}")
        return BettiTable.from_json(path.read_text())

    def put(self, ideal: MonomialIdeal, field: FieldSpec, table: BettiTable) -> None:
        """Store a table; the file appears atomically."""
        path = self._path(ideal, field)
        with tempfile.NamedTemporaryFile(
            "w", dir=self.directory, suffix=".tmp", delete=False
        ) as fp:
            fp.write(table.to_json(multigraded=True))
            temp_name = fp.name
        os.replace(temp_name, path)


class Engine:
    """The Betti engine bound to an explicit configuration."""

    def __init__(self, config: EngineConfig) -> None:
        """Class constructor."""
        self.config = config
        self.cache = ResultCache(config.cache_dir) if config.cache_dir else None

    def table(self, ideal: MonomialIdeal) -> BettiTable:
        """Betti table of I, from the cache when possible."""
        if self.cache is not None:
            cached = self.cache.get(ideal, self.config.field)
            if cached is not None:
                return cached
        table = betti_upper_koszul(ideal, self.config.field, self.config.lattice_cap)
        if self.cache is not None:
            self.cache.put(ideal, self.config.field, table)
        return table

    def invariants(self, ideal: MonomialIdeal, n_vars: Optional[int] = None) -> Invariants:
        """reg, pd and depth of S/I, S having n_vars variables."""
        table = self.table(ideal)
        if n_vars is not None:
            table = BettiTable(table.convention, n_vars, table.multigraded)
        return invariants(table)


###############################################################################
# Case helpers and the worker pool
###############################################################################


def judge(prediction: Prediction, computed: int, params: Dict[str, Any]) -> VerificationCase:
    """Compare a computed value with a prediction."""
    if not prediction.applicable:
        verdict = Verdicts.skipped
    elif prediction.holds(computed):
        verdict = Verdicts.bound_satisfied if prediction.is_bound else Verdicts.match
    else:
        verdict = Verdicts.mismatch
    return VerificationCase(
        params=params,
        quantity=prediction.quantity.value,
        predicted=prediction.value,
        computed=computed,
        verdict=verdict,
        reason=prediction.reason,
        source=prediction.source.value,
        note=prediction.note,
    )


def equality_case(
    params: Dict[str, Any], quantity: str, predicted: int, computed: int, note: str = ""
) -> VerificationCase:
    """A case asserting predicted == computed."""
    verdict = Verdicts.match if predicted == computed else Verdicts.mismatch
    return VerificationCase(
        params=params,
        quantity=quantity,
        predicted=predicted,
        computed=computed,
        verdict=verdict,
        note=note,
    )


def bound_case(
    params: Dict[str, Any], quantity: str, bound: int, computed: int, upper: bool
) -> VerificationCase:
    """A case asserting computed <= bound (upper) or computed >= bound."""
    holds = computed <= bound if upper else computed >= bound
    return VerificationCase(
        params=params,
        quantity=quantity,
        predicted=bound,
        computed=computed,
        verdict=Verdicts.bound_satisfied if holds else Verdicts.mismatch,
    )


def ideal_case(
    params: Dict[str, Any], left: MonomialIdeal, right: MonomialIdeal
) -> VerificationCase:
    """A case asserting two ideals are equal."""
    same = left == right
    return VerificationCase(
        params=params,
        quantity="ideal_equality",
        verdict=Verdicts.match if same else Verdicts.mismatch,
        note="" if same else f"{left} != {right}",
    )


def skipped_case(
    params: Dict[str, Any], quantity: str, reason: SkipReasons, note: str = ""
) -> VerificationCase:
    """A case that was not asserted."""
    return VerificationCase(
        params=params, quantity=quantity, verdict=Verdicts.skipped, reason=reason, note=note
    )


Job = Tuple[Callable[..., List[VerificationCase]], Tuple[Any, ...]]


def _call(job: Job) -> List[VerificationCase]:
    function, args = job
    return function(*args)


def run_jobs(jobs: Sequence[Job], config: EngineConfig) -> List[VerificationCase]:
    """Run jobs in order, in worker processes when more than one worker is configured."""
    cases: List[VerificationCase] = []
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            for result in executor.map(_call, jobs):
                cases.extend(result)
    else:
        for job in jobs:
            cases.extend(_call(job))
    return cases


def _make_report(
    suite: Suites,
    config: EngineConfig,
    jobs: Sequence[Job],
    notes: Optional[Dict[str, str]] = None,
) -> Report:
    start = time.perf_counter()
    cases = run_jobs(jobs, config)
    report = Report(
        suite=suite,
        config=report_config(config),
        cases=cases,
        notes=notes or {},
        wall_clock=time.perf_counter() - start,
    )
    get_logger().debug(f"Suite {suite.value} finished: {report.summary}")
    return report


def _power_predictions_job(
    config: EngineConfig, family: Families, weights: Tuple[int, ...], max_t: int
) -> List[VerificationCase]:
    engine = Engine(config)
    graph = build_star(weights) if family == Families.star else build_path(weights)
    base = edge_ideal(graph)
    cases: List[VerificationCase] = []
    for t in range(1, max_t + 1):
        params = {"family": family.value, "weights": list(weights), "t": t}
        predictions = predict(family, weights, t)
        try:
            computed = engine.invariants(power(base, t))
        except ResourceCapError as err:
            get_logger().debug(f"Skipping {params}: {err}")
            cases.extend(
                skipped_case(params, p.quantity.value, SkipReasons.resource_cap, str(err))
                for p in predictions
            )
            continue
        for prediction in predictions:
            value = computed.reg if prediction.quantity.value.startswith("reg") else computed.depth
            cases.append(judge(prediction, value, params))
    return cases


###############################################################################
# Star and path suites
###############################################################################


def verify_star_suite(
    max_n: int = 5, max_weight: int = 3, max_t: int = 3, config: Optional[EngineConfig] = None
) -> Report:
    """Check the star formulas for reg and depth of every power up to max_t.

    Leaves are interchangeable, so weights are swept as non-increasing vectors.
    """
    config = config or EngineConfig()
    jobs: List[Job] = []
    for n in range(2, max_n + 1):
        for weights in it.combinations_with_replacement(range(max_weight, 0, -1), n - 1):
            jobs.append((_power_predictions_job, (config, Families.star, weights, max_t)))
    return _make_report(Suites.star, config, jobs)


def _path_job(
    config: EngineConfig, weights: Tuple[int, ...], max_t: int
) -> List[VerificationCase]:
    n = len(weights) + 1
    if any(w > 1 for w in weights):
        if n <= config.closure_oracle_max_vertices:
            closed = is_integrally_closed(edge_ideal(build_path(weights)))
        else:
            closed = path_weights_closed(weights)
        if not closed:
            params = {"family": Families.path.value, "weights": list(weights)}
            return [
                skipped_case(
                    params, "integrally_closed", SkipReasons.not_integrally_closed
                )
            ]
    return _power_predictions_job(config, Families.path, weights, max_t)


def verify_path_suite(
    max_n: int = 8,
    max_weight: int = 3,
    max_t: int = 2,
    config: Optional[EngineConfig] = None,
    max_power_n: int = 7,
) -> Report:
    """Check the path formulas for every weight vector up to reversal.

    Powers t >= 2 are only taken for paths with at most max_power_n vertices. Paths
    with at most closure_oracle_max_vertices vertices are tested for integral
    closedness by the LP oracle, longer ones by forbidden subgraphs.
    """
    config = config or EngineConfig()
    jobs: List[Job] = []
    for n in range(2, max_n + 1):
        top_t = max_t if n <= max_power_n else 1
        for weights in it.product(range(1, max_weight + 1), repeat=n - 1):
            if weights < tuple(reversed(weights)):
                continue
            jobs.append((_path_job, (config, weights, top_t)))
    return _make_report(Suites.path, config, jobs)


###############################################################################
# Colon identities
###############################################################################


def _variable(context: VariableContext, index: int, exponent: int = 1) -> Monomial:
    return Monomial.variable(context, index, exponent)


def star_colon_cases(weights: Tuple[int, ...], t: int) -> List[VerificationCase]:
    """The colon identities of a star with non-increasing weights, center x_n."""
    graph = build_star(weights)
    n = graph.n
    ctx = graph.context
    ideal = edge_ideal(graph)
    ideal_t = power(ideal, t)
    omega = weights[-1]
    leaf = _variable(ctx, n - 1, omega)
    center = _variable(ctx, n, omega)
    params: Dict[str, Any] = {"family": "star", "weights": list(weights), "t": t}

    rest = edge_ideal_without(graph, [n - 1])
    rest_t = power(rest, t) if not rest.is_zero else rest
    return [
        ideal_case(
            {**params, "identity": "star-colon-edge"},
            colon_monomial(ideal_t, leaf * center),
            power(ideal, t - 1),
        ),
        ideal_case(
            {**params, "identity": "star-colon-leaf"},
            sum_monomial(colon_monomial(ideal_t, leaf), center),
            MonomialIdeal(ctx, [center.exponents]),
        ),
        ideal_case(
            {**params, "identity": "star-sum-leaf"},
            sum_monomial(ideal_t, leaf),
            sum_monomial(rest_t, leaf),
        ),
    ]


def path_colon_cases(weights: Tuple[int, ...], t: int) -> List[VerificationCase]:
    """The colon identities of a path whose last edge is trivial."""
    graph = build_path(weights)
    n = graph.n
    ctx = graph.context
    ideal_t = power(edge_ideal(graph), t)
    x_last = _variable(ctx, n)
    x_prev = _variable(ctx, n - 1)
    params: Dict[str, Any] = {"family": "path", "weights": list(weights), "t": t}

    def without(vertex: int) -> MonomialIdeal:
        rest = edge_ideal_without(graph, [vertex])
        return rest if rest.is_zero else power(rest, t)

    return [
        ideal_case(
            {**params, "identity": "path-colon-edge"},
            colon_monomial(ideal_t, x_prev * x_last),
            power(edge_ideal(graph), t - 1),
        ),
        ideal_case(
            {**params, "identity": "path-colon-end"},
            sum_monomial(colon_monomial(ideal_t, x_last), x_prev),
            sum_monomial(without(n - 1), x_prev),
        ),
        ideal_case(
            {**params, "identity": "path-sum-end"},
            sum_monomial(ideal_t, x_last),
            sum_monomial(without(n), x_last),
        ),
        ideal_case(
            {**params, "identity": "path-sum-prev"},
            sum_monomial(ideal_t, x_prev),
            sum_monomial(without(n - 1), x_prev),
        ),
        ideal_case(
            {**params, "identity": "path-colon-prev"},
            sum_monomial(colon_monomial(ideal_t, x_prev), x_last),
            sum_monomial(colon_monomial(without(n), x_prev), x_last),
        ),
    ]


def short_path_colon_cases(w1: int, w3: int, t: int) -> List[VerificationCase]:
    """The colon identities of the path (w1, 1, w3) on 4 vertices, w1 >= w3 >= 2."""
    graph = build_path((w1, 1, w3))
    ctx = graph.context
    ideal = edge_ideal(graph)
    ideal_t = power(ideal, t)
    middle = Monomial(ctx, (0, 1, 1, 0))
    params: Dict[str, Any] = {"family": "path", "weights": [w1, 1, w3], "t": t}

    def expected(k: int) -> MonomialIdeal:
        return MonomialIdeal(
            ctx, [(k * w1, k * w1, 0, 0), (0, 1, 1, 0), (0, 0, k * w3, k * w3)]
        )

    cases = [
        ideal_case(
            {**params, "identity": "short-path-colon-middle"},
            colon_monomial(ideal_t, Monomial(ctx, (0, t - 1, t - 1, 0))),
            ideal,
        ),
        ideal_case(
            {**params, "identity": "short-path-sum-middle"},
            sum_monomial(ideal_t, middle),
            expected(t),
        ),
    ]
    for ell in range(1, t - 1):
        cases.append(
            ideal_case(
                {**params, "identity": "short-path-colon-sum", "l": ell},
                sum_monomial(
                    colon_monomial(ideal_t, Monomial(ctx, (0, ell, ell, 0))), middle
                ),
                expected(t - ell),
            )
        )
    return cases


def _colon_job(kind: str, args: Tuple[Any, ...]) -> List[VerificationCase]:
    if kind == "star":
        return star_colon_cases(*args)
    if kind == "path":
        return path_colon_cases(*args)
    return short_path_colon_cases(*args)


def verify_colon_identities(
    max_star_n: int = 5,
    max_path_n: int = 6,
    max_weight: int = 3,
    max_t: int = 3,
    max_short_weight: int = 4,
    config: Optional[EngineConfig] = None,
) -> Report:
    """Check the colon and sum identities of stars and paths by exact ideal equality."""
    config = config or EngineConfig()
    jobs: List[Job] = []
    ts = range(2, max_t + 1)
    for n in range(2, max_star_n + 1):
        for weights in it.combinations_with_replacement(range(max_weight, 0, -1), n - 1):
            for t in ts:
                jobs.append((_colon_job, ("star", (weights, t))))
    for n in range(3, max_path_n + 1):
        for head in it.product(range(1, max_weight + 1), repeat=n - 2):
            for t in ts:
                jobs.append((_colon_job, ("path", (head + (1,), t))))
    for w1 in range(2, max_short_weight + 1):
        for w3 in range(2, w1 + 1):
            for t in ts:
                jobs.append((_colon_job, ("short", (w1, w3, t))))
    return _make_report(Suites.colon, config, jobs)


###############################################################################
# Betti splittings
###############################################################################


def verify_betti_splitting(
    ideal: MonomialIdeal, pivot: int, config: Optional[EngineConfig] = None
) -> VerificationCase:
    """Check the splitting I = J + K, J the generators divisible by x_pivot.

    Requires both parts nonzero and J with a linear resolution; the case is skipped
    otherwise. The Betti numbers, reg and pd of I are compared with those derived from
    J, K and their intersection.
    """
    config = config or EngineConfig()
    params: Dict[str, Any] = {"ideal": str(ideal), "pivot": pivot}
    j_part, k_part = split_by_variable(ideal, pivot)
    if j_part.is_zero or k_part.is_zero:
        return skipped_case(params, "betti_splitting", SkipReasons.not_applicable, "trivial split")
    engine = Engine(config)
    try:
        if not has_linear_resolution(j_part, config.field, config.lattice_cap):
            return skipped_case(
                params, "betti_splitting", SkipReasons.not_applicable, "J is not linear"
            )
        table_i = engine.table(ideal).to_ideal().coarse
        table_j = engine.table(j_part).to_ideal().coarse
        table_k = engine.table(k_part).to_ideal().coarse
        table_jk = engine.table(intersect(j_part, k_part)).to_ideal().coarse
    except ResourceCapError as err:
        return skipped_case(params, "betti_splitting", SkipReasons.resource_cap, str(err))

    keys = set(table_i) | set(table_j) | set(table_k) | {(i + 1, j) for i, j in table_jk}
    expected = {
        (i, j): table_j.get((i, j), 0) + table_k.get((i, j), 0) + table_jk.get((i - 1, j), 0)
        for i, j in keys
    }
    expected = {key: value for key, value in expected.items() if value}

    notes = []
    if expected != table_i:
        notes.append(f"betti {table_i} != {expected}")

    def reg(table: Dict[Tuple[int, int], int]) -> int:
        return max(j - i for i, j in table)

    def pd(table: Dict[Tuple[int, int], int]) -> int:
        return max(i for i, _ in table)

    if reg(table_i) != max(reg(table_j), reg(table_k), reg(table_jk) - 1):
        notes.append("reg")
    if pd(table_i) != max(pd(table_j), pd(table_k), pd(table_jk) + 1):
        notes.append("pd")
    return VerificationCase(
        params=params,
        quantity="betti_splitting",
        verdict=Verdicts.mismatch if notes else Verdicts.match,
        note="; ".join(notes),
    )


def _splitting_job(config: EngineConfig, ideal: MonomialIdeal) -> List[VerificationCase]:
    return [verify_betti_splitting(ideal, pivot, config) for pivot in range(1, ideal.n_vars + 1)]


def verify_splitting_suite(
    max_n: int = 5, max_weight: int = 2, config: Optional[EngineConfig] = None
) -> Report:
    """Check every variable-pivot splitting over small paths and stars."""
    config = config or EngineConfig()
    jobs: List[Job] = []
    for n in range(2, max_n + 1):
        for weights in it.product(range(1, max_weight + 1), repeat=n - 1):
            jobs.append((_splitting_job, (config, edge_ideal(build_path(weights)))))
        for weights in it.combinations_with_replacement(range(max_weight, 0, -1), n - 1):
            jobs.append((_splitting_job, (config, edge_ideal(build_star(weights)))))
    return _make_report(Suites.splitting, config, jobs)


###############################################################################
# Worked examples
###############################################################################

# Weights of paths whose squared edge ideals have a known depth
EXAMPLE_DEPTHS: Tuple[Tuple[Tuple[int, ...], int], ...] = (
    ((2, 1, 1, 1), 2),
    ((2, 1, 1, 1, 1), 2),
    ((2, 1, 1, 1, 1, 1), 2),
    ((2, 1, 3, 1), 2),
    ((4, 1, 2, 1, 1), 2),
    ((2, 1, 3, 1, 1, 1), 2),
    ((1, 2, 1, 1), 1),
    ((1, 2, 1, 1, 1), 2),
    ((1, 2, 1, 1, 1, 1), 2),
    ((1, 1, 1, 2, 1, 1, 1), 3),
    ((1, 2, 1, 3, 1), 2),
    ((1, 2, 1, 3, 1, 1), 2),
    ((1, 2, 1, 3, 1, 1, 1), 2),
)


def _example_job(
    config: EngineConfig, weights: Tuple[int, ...], depth: int
) -> List[VerificationCase]:
    params: Dict[str, Any] = {"family": "path", "weights": list(weights), "t": 2}
    try:
        computed = Engine(config).invariants(power(edge_ideal(build_path(weights)), 2))
    except ResourceCapError as err:
        return [skipped_case(params, "depth_quotient", SkipReasons.resource_cap, str(err))]
    cases = [equality_case(params, "depth_quotient", depth, computed.depth)]
    for prediction in predict(Families.path, weights, 2):
        if prediction.quantity.value == "depth_lower_bound":
            cases.append(judge(prediction, computed.depth, params))
    return cases


def reproduce_examples(config: Optional[EngineConfig] = None) -> Report:
    """Reproduce the known depths of squared edge ideals of weighted paths."""
    config = config or EngineConfig()
    jobs: List[Job] = [
        (_example_job, (config, weights, depth)) for weights, depth in EXAMPLE_DEPTHS
    ]
    return _make_report(Suites.examples, config, jobs)


###############################################################################
# Integral closure
###############################################################################


def weighted_graphs(
    max_vertices: int, max_edges: int, max_weight: int
) -> List[WeightedGraph]:
    """Every weighted graph without isolated vertices, up to isomorphism of the
    underlying graph, from the networkx graph atlas."""
    graphs = []
    for nx_graph in nx.graph_atlas_g():
        if nx_graph.number_of_nodes() > max_vertices:
            break
        m = nx_graph.number_of_edges()
        if m == 0 or m > max_edges or any(d == 0 for _, d in nx_graph.degree):
            continue
        edges = list(nx_graph.edges)
        for weights in it.product(range(1, max_weight + 1), repeat=m):
            graphs.append(from_networkx(nx_graph, dict(zip(edges, weights))))
    return graphs


def _closure_job(graphs: List[WeightedGraph]) -> List[VerificationCase]:
    cases = []
    for graph in graphs:
        sample = sample_graph(graph)
        cases.append(
            VerificationCase(
                params={"graph": graph.to_json(), "verdict_a": sample.verdict_a},
                quantity="integrally_closed",
                predicted=int(sample.verdict_b),
                computed=int(sample.oracle),
                verdict=Verdicts.match if sample.verdict_b == sample.oracle else Verdicts.mismatch,
                source=Interpretations.B.value,
            )
        )
    return cases


def _closed_path_job(weights: Tuple[int, ...]) -> List[VerificationCase]:
    heavy = sum(1 for w in weights if w > 1)
    if heavy == 0 or not is_integrally_closed(edge_ideal(build_path(weights))):
        return []
    params: Dict[str, Any] = {"family": Families.path.value, "weights": list(weights)}
    return [bound_case(params, "nontrivial_weights", 2, heavy, upper=True)]


def _as_sample(case: VerificationCase) -> ClosureSample:
    return ClosureSample(
        graph=WeightedGraph.from_json(case.params["graph"]),
        oracle=bool(case.computed),
        verdict_a=case.params["verdict_a"],
        verdict_b=bool(case.predicted),
    )


def verify_closure_suite(
    max_vertices: int = 5,
    max_edges: int = 6,
    max_weight: int = 3,
    config: Optional[EngineConfig] = None,
) -> Report:
    """Compare the forbidden-subgraph verdicts with the LP oracle on small graphs.

    The interpretation agreeing with the oracle everywhere is recorded in the report
    notes and the cases are judged against it. Integrally closed non-trivial paths
    are also checked to carry at most two non-trivial weights.
    """
    config = config or EngineConfig()
    graphs = weighted_graphs(max_vertices, max_edges, max_weight)
    chunk = 64
    jobs: List[Job] = [
        (_closure_job, (graphs[k : k + chunk],)) for k in range(0, len(graphs), chunk)
    ]
    for n in range(2, max_vertices + 1):
        for weights in it.product(range(1, max_weight + 1), repeat=n - 1):
            jobs.append((_closed_path_job, (weights,)))
    report = _make_report(Suites.closure, config, jobs)

    closure_cases = [c for c in report.cases if c.quantity == "integrally_closed"]
    selected = select_interpretation(_as_sample(c) for c in closure_cases)
    if selected == Interpretations.A:
        for k, case in enumerate(report.cases):
            if case.quantity != "integrally_closed":
                continue
            predicted = int(case.params["verdict_a"])
            report.cases[k] = case.model_copy(
                update={
                    "predicted": predicted,
                    "verdict": Verdicts.match if predicted == case.computed else Verdicts.mismatch,
                    "source": Interpretations.A.value,
                }
            )
    report.notes["selected_interpretation"] = selected.value if selected else "none"
    report.notes["graphs"] = str(len(graphs))
    return report


###############################################################################
# Engine self-checks
###############################################################################


def random_ideal(
    rng: random.Random, max_vars: int = 6, max_gens: int = 12, max_exponent: int = 3
) -> MonomialIdeal:
    """Draw a proper nonzero monomial ideal."""
    n = rng.randint(2, max_vars)
    context = VariableContext.default(n)
    while True:
        gens = [
            tuple(rng.randint(0, max_exponent) for _ in range(n))
            for _ in range(rng.randint(1, max_gens))
        ]
        gens = [g for g in gens if any(g)]
        if gens:
            return MonomialIdeal(context, gens)


def _nonzero(entries: Dict[Exponents, int]) -> Dict[Exponents, int]:
    return {a: v for a, v in entries.items() if v}


def _oracle_job(config: EngineConfig, ideal: MonomialIdeal) -> List[VerificationCase]:
    params: Dict[str, Any] = {"ideal": str(ideal)}
    engine = Engine(config)
    try:
        table = engine.table(ideal)
        polarized, pmap = polarize(ideal)
        polarized_table = engine.table(polarized)
    except ResourceCapError as err:
        return [skipped_case(params, "engine_agreement", SkipReasons.resource_cap, str(err))]

    cases: List[VerificationCase] = []
    # Taylor comparisons need at most oracle_cap generators.
    try:
        taylor = betti_taylor_strand(ideal, config.field, config.oracle_cap)
        euler = taylor_euler_characteristics(ideal, config.oracle_cap)
    except ResourceCapError as err:
        get_logger().debug(f"No Taylor comparison for {ideal}: {err}")
        cases.extend(
            skipped_case(params, quantity, SkipReasons.resource_cap, str(err))
            for quantity in ("engine_agreement", "hilbert_numerator")
        )
    else:
        agree = table == taylor
        same_sums = _nonzero(alternating_sums(table)) == _nonzero(euler)
        cases.append(
            VerificationCase(
                params=params,
                quantity="engine_agreement",
                verdict=Verdicts.match if agree else Verdicts.mismatch,
                note="" if agree else f"{table.to_quotient().coarse} != {taylor.coarse}",
            )
        )
        cases.append(
            VerificationCase(
                params=params,
                quantity="hilbert_numerator",
                verdict=Verdicts.match if same_sums else Verdicts.mismatch,
            )
        )

    same_coarse = table.to_quotient().coarse == polarized_table.to_quotient().coarse
    cases.append(
        VerificationCase(
            params=params,
            quantity="polarization_betti",
            verdict=Verdicts.match if same_coarse else Verdicts.mismatch,
        )
    )
    cases.append(
        equality_case(
            params,
            "polarization_depth",
            invariants(table).depth + depth_shift(pmap),
            invariants(polarized_table).depth,
        )
    )
    return cases


def verify_oracle_suite(
    count: int = 200,
    seed: int = 0,
    config: Optional[EngineConfig] = None,
    max_vars: int = 6,
    max_gens: int = 12,
) -> Report:
    """Cross-check the upper Koszul engine on random ideals.

    Its tables are compared with the Taylor strand computation and with those of the
    polarization, and its alternating sums with the Hilbert series numerator. Ideals
    with more than oracle_cap generators skip the Taylor comparisons only.
    """
    config = config or EngineConfig()
    rng = random.Random(seed)
    jobs: List[Job] = [
        (_oracle_job, (config, random_ideal(rng, max_vars=max_vars, max_gens=max_gens)))
        for _ in range(count)
    ]
    return _make_report(Suites.oracle, config, jobs)


def _exact_sequence_job(
    config: EngineConfig, ideal: MonomialIdeal, index: int, exponent: int
) -> List[VerificationCase]:
    m = Monomial.variable(ideal.context, index, exponent)
    params: Dict[str, Any] = {"ideal": str(ideal), "monomial": str(m)}
    engine = Engine(config)
    try:
        middle = engine.invariants(ideal)
        left = engine.invariants(colon_monomial(ideal, m))
        right = engine.invariants(sum_monomial(ideal, m))
    except ResourceCapError as err:
        return [skipped_case(params, "exact_sequence", SkipReasons.resource_cap, str(err))]

    # 0 -> S/(I : m)(-d) -> S/I -> S/(I, m) -> 0
    reg_left = left.reg + exponent
    cases = [
        bound_case(params, "reg_exact_bound", max(reg_left, right.reg), middle.reg, upper=True),
        bound_case(
            params, "depth_exact_bound", min(left.depth, right.depth), middle.depth, upper=False
        ),
    ]
    if right.reg != reg_left - 1:
        cases.append(
            equality_case(params, "reg_exact", max(reg_left, right.reg), middle.reg)
        )
    if right.depth != left.depth - 1:
        cases.append(
            equality_case(params, "depth_exact", min(left.depth, right.depth), middle.depth)
        )
    return cases


def verify_exact_sequence_suite(
    count: int = 100,
    seed: int = 0,
    config: Optional[EngineConfig] = None,
    max_vars: int = 6,
    max_gens: int = 12,
) -> Report:
    """Check the regularity and depth inequalities of the colon-sum exact sequence.

    Random ideals I are paired with a power of a variable m outside I; wherever the
    inequalities are forced to be equalities, equality is checked too.
    """
    config = config or EngineConfig()
    rng = random.Random(seed)
    jobs: List[Job] = []
    while len(jobs) < count:
        ideal = random_ideal(rng, max_vars=max_vars, max_gens=max_gens)
        index = rng.randint(1, ideal.n_vars)
        exponent = rng.randint(1, 3)
        if contains(ideal, Monomial.variable(ideal.context, index, exponent)):
            continue
        jobs.append((_exact_sequence_job, (config, ideal, index, exponent)))
    return _make_report(Suites.exact, config, jobs)


def _union_job(
    config: EngineConfig, graph_1: WeightedGraph, graph_2: WeightedGraph
) -> List[VerificationCase]:
    params: Dict[str, Any] = {"graphs": [graph_1.to_json(), graph_2.to_json()]}
    engine = Engine(config)
    try:
        whole = engine.invariants(edge_ideal(disjoint_union(graph_1, graph_2)))
        part_1 = engine.invariants(edge_ideal(graph_1))
        part_2 = engine.invariants(edge_ideal(graph_2))
    except ResourceCapError as err:
        return [skipped_case(params, "disjoint_union", SkipReasons.resource_cap, str(err))]
    return [
        equality_case(params, "reg_quotient", part_1.reg + part_2.reg, whole.reg),
        equality_case(params, "depth_quotient", part_1.depth + part_2.depth, whole.depth),
    ]


def verify_disjoint_union_suite(
    max_n: int = 3, max_weight: int = 2, config: Optional[EngineConfig] = None
) -> Report:
    """Check that reg and depth add up over disjoint unions of paths and stars."""
    config = config or EngineConfig()
    graphs: List[WeightedGraph] = []
    for n in range(2, max_n + 1):
        for weights in it.product(range(1, max_weight + 1), repeat=n - 1):
            if weights >= tuple(reversed(weights)):
                graphs.append(build_path(weights))
        if n > 3:
            for weights in it.combinations_with_replacement(range(max_weight, 0, -1), n - 1):
                graphs.append(build_star(weights))
    jobs: List[Job] = [
        (_union_job, (config, g1, g2)) for g1, g2 in it.combinations_with_replacement(graphs, 2)
    ]
    return _make_report(Suites.union, config, jobs)


###############################################################################
# Dispatch
###############################################################################


def run_suite(
    suite: Suites, config: Optional[EngineConfig] = None, **options: Optional[int]
) -> Report:
    """Run a suite by name.

    Args:
        suite: The suite to run.
        config: The engine configuration, the resolved one if None.
        **options: max_n, max_weight, max_t, max_edges, max_vars, max_gens, count or
            seed; None values and options the suite does not take are ignored.

    Returns:
        Report: The suite report.
    """
    config = config or EngineSettings().config
    given = {key: value for key, value in options.items() if value is not None}

    def pick(*names: str) -> Dict[str, int]:
        return {name: given[name] for name in names if name in given}

    if suite == Suites.star:
        return verify_star_suite(config=config, **pick("max_n", "max_weight", "max_t"))
    if suite == Suites.path:
        return verify_path_suite(config=config, **pick("max_n", "max_weight", "max_t"))
    if suite == Suites.colon:
        limits = pick("max_weight", "max_t")
        if "max_n" in given:
            limits.update(max_star_n=given["max_n"], max_path_n=given["max_n"])
        return verify_colon_identities(config=config, **limits)
    if suite == Suites.splitting:
        return verify_splitting_suite(config=config, **pick("max_n", "max_weight"))
    if suite == Suites.examples:
        return reproduce_examples(config=config)
    if suite == Suites.closure:
        limits = pick("max_weight", "max_edges")
        if "max_n" in given:
            limits["max_vertices"] = given["max_n"]
        return verify_closure_suite(config=config, **limits)
    if suite == Suites.oracle:
        return verify_oracle_suite(
            config=config, **pick("count", "seed", "max_vars", "max_gens")
        )
    if suite == Suites.exact:
        return verify_exact_sequence_suite(
            config=config, **pick("count", "seed", "max_vars", "max_gens")
        )
    return verify_disjoint_union_suite(config=config, **pick("max_n", "max_weight"))


def verify_helper(
    suite: Suites, json_path: Optional[str] = None, **options: Optional[int]
) -> Report:
    """Run a suite with the configured engine settings.

    Args:
        suite: The suite to run.
        json_path: Where to write the JSON report, if anywhere.
        **options: Sweep limits passed on to :func:`run_suite`.

    Returns:
        The report.
    """
    config = EngineSettings().config
    get_logger().debug(f"Running suite {suite.value} with {report_config(config)}")
    report = run_suite(suite, config, **options)
    if json_path is not None:
        Path(json_path).write_text(report.to_json())
        get_logger().info(f"Report written to {json_path}")
    return report
