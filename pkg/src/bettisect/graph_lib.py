"""Module providing edge-weighted graphs and their edge ideals."""
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import networkx as nx  # type: ignore
from pydantic import BaseModel
from pydantic import field_validator
from pydantic import model_validator
from pydantic import PositiveInt

from ._helpers import Families
from ._helpers import get_logger
from .ideal_lib import MonomialIdeal
from .ideal_lib import parse_ideal
from .ideal_lib import power
from .ring_lib import VariableContext


class Edge(BaseModel, frozen=True, extra="forbid"):
    """An edge {u, v} with weight w, 1-based vertices, u < v."""

    u: PositiveInt
    v: PositiveInt
    w: PositiveInt = 1

    @model_validator(mode="after")
    def _check_order(self) -> "Edge":
        if self.u == self.v:
            raise ValueError(f"Loop at vertex {self.u} is not allowed")
        if self.u > self.v:
            raise ValueError(f"Edge ({self.u}, {self.v}) must satisfy u < v")
        return self


class WeightedGraph(BaseModel, frozen=True, extra="forbid"):
    """A simple edge-weighted graph without isolated vertices."""

    n: PositiveInt
    edges: Tuple[Edge, ...]

    @field_validator("edges", mode="before")
    @classmethod
    def _orient_edges(cls, value: Any) -> Any:
        # Accept either orientation in documents; store u < v
        oriented = []
        for edge in value:
            if isinstance(edge, dict) and edge.get("u", 0) > edge.get("v", 0):
                edge = {**edge, "u": edge["v"], "v": edge["u"]}
            oriented.append(edge)
        return oriented

    @model_validator(mode="after")
    def _check_graph(self) -> "WeightedGraph":
        seen = set()
        covered = set()
        for edge in self.edges:
            if edge.v > self.n:
                raise ValueError(f"Edge ({edge.u}, {edge.v}) exceeds n={self.n}")
            if (edge.u, edge.v) in seen:
                raise ValueError(f"Duplicate edge ({edge.u}, {edge.v})")
            seen.add((edge.u, edge.v))
            covered.update((edge.u, edge.v))
        isolated = set(range(1, self.n + 1)) - covered
        if isolated:
            raise ValueError(f"Isolated vertices {sorted(isolated)} are not allowed")
        return self

    @property
    def context(self) -> VariableContext:
        """The ring variables x1..xn."""
        return VariableContext.default(self.n)

    @property
    def weights(self) -> Tuple[int, ...]:
        """Edge weights in edge order."""
        return tuple(edge.w for edge in self.edges)

    @property
    def max_weight(self) -> int:
        """The largest edge weight."""
        return max(self.weights)

    def weight(self, u: int, v: int) -> int:
        """Weight of the edge {u, v}; 0 if absent."""
        a, b = min(u, v), max(u, v)
        for edge in self.edges:
            if edge.u == a and edge.v == b:
                return edge.w
        return 0

    @classmethod
    def from_json(cls, data: Any) -> "WeightedGraph":
        """Build from a JSON text or an already decoded dictionary."""
        if isinstance(data, (str, bytes)):
            return cls.model_validate_json(data)
        return cls.model_validate(data)

    def to_json(self) -> Dict[str, Any]:
        """Return the JSON document of the graph."""
        return self.model_dump(mode="json")

    def __str__(self) -> str:
        """__str__ dunder method."""
        edges = ", ".join(f"{e.u}-{e.v}:{e.w}" for e in self.edges)
        return f"G(n={self.n}; {edges})"


class PathShape(BaseModel, frozen=True, extra="forbid"):
    """A weighted path x1 - x2 - ... - xn; weights[i-1] is the weight of {x_i, x_i+1}."""

    n: int
    weights: Tuple[PositiveInt, ...]

    @model_validator(mode="after")
    def _check_shape(self) -> "PathShape":
        if self.n < 2:
            raise ValueError(f"A path needs at least 2 vertices, got {self.n}")
        if len(self.weights) != self.n - 1:
            raise ValueError(
                f"A path on {self.n} vertices needs {self.n - 1} weights, got {len(self.weights)}"
            )
        return self

    @classmethod
    def from_weights(cls, weights: Sequence[int]) -> "PathShape":
        """Build the shape of the path with the given edge weights."""
        return cls(n=len(weights) + 1, weights=tuple(weights))

    def reversed(self) -> "PathShape":
        """The same path read from the other end."""
        return PathShape(n=self.n, weights=tuple(reversed(self.weights)))

    @property
    def is_trivial(self) -> bool:
        """True if all weights are 1."""
        return all(w == 1 for w in self.weights)


###############################################################################
# Families
###############################################################################


def _check_weights(weights: Sequence[int], minimum: int) -> Tuple[int, ...]:
    weights = tuple(int(w) for w in weights)
    if len(weights) < minimum:
        raise ValueError(f"At least {minimum} weights are needed, got {len(weights)}")
    if any(w < 1 for w in weights):
        raise ValueError(f"Weights {weights} must be positive")
    return weights


def build_star(weights: Sequence[int]) -> WeightedGraph:
    """Build the star with center x_n and leaf x_i joined with weight weights[i-1]."""
    weights = _check_weights(weights, 1)
    n = len(weights) + 1
    edges = [Edge(u=i, v=n, w=w) for i, w in enumerate(weights, start=1)]
    return WeightedGraph(n=n, edges=tuple(edges))


def build_path(weights: Sequence[int]) -> WeightedGraph:
    """Build the path x1 - ... - xn with edge i = {x_i, x_i+1} of weight weights[i-1]."""
    shape = PathShape.from_weights(_check_weights(weights, 1))
    edges = [Edge(u=i, v=i + 1, w=w) for i, w in enumerate(shape.weights, start=1)]
    return WeightedGraph(n=shape.n, edges=tuple(edges))


def build_cycle(weights: Sequence[int]) -> WeightedGraph:
    """Build the cycle on len(weights) vertices; the last weight closes {x_n, x_1}."""
    weights = _check_weights(weights, 3)
    n = len(weights)
    edges = [Edge(u=i, v=i + 1, w=w) for i, w in enumerate(weights[:-1], start=1)]
    edges.append(Edge(u=1, v=n, w=weights[-1]))
    return WeightedGraph(n=n, edges=tuple(edges))


def build_family(family: Families, weights: Sequence[int]) -> WeightedGraph:
    """Dispatch to the builder of a graph family."""
    if family == Families.path:
        return build_path(weights)
    elif family == Families.star:
        return build_star(weights)
    elif family == Families.cycle:
        return build_cycle(weights)
    else:
        raise ValueError(f"Unsupported family {family}")  # pragma: no cover


###############################################################################
# Edge ideals and subgraphs
###############################################################################


def _edge_exponents(n: int, edge: Edge) -> Tuple[int, ...]:
    exponents = [0] * n
    exponents[edge.u - 1] = edge.w
    exponents[edge.v - 1] = edge.w
    return tuple(exponents)


def edge_ideal(graph: WeightedGraph) -> MonomialIdeal:
    """Return I(G_w), one generator (x_u x_v)^w per edge."""
    ideal = MonomialIdeal(graph.context, (_edge_exponents(graph.n, e) for e in graph.edges))
    if len(ideal) != len(graph.edges):
        raise RuntimeError(f"Edge ideal of {graph} lost generators on minimalization")
    return ideal


def edge_ideal_without(graph: WeightedGraph, removed: Iterable[int]) -> MonomialIdeal:
    """Return I(G minus A), kept in the ring of G."""
    removed_set = set(removed)
    kept = (
        _edge_exponents(graph.n, e)
        for e in graph.edges
        if e.u not in removed_set and e.v not in removed_set
    )
    return MonomialIdeal(graph.context, kept)


def delete_vertices(
    graph: WeightedGraph, removed: Iterable[int]
) -> Tuple[WeightedGraph, int]:
    """Induced subgraph on the vertices not in A, renumbered in order.

    Returns:
        The subgraph and the number of vertices that became isolated and were dropped.

    Raises:
        ValueError: If A contains every vertex or no edge survives.
    """
    removed_set = set(removed)
    if not removed_set <= set(range(1, graph.n + 1)):
        raise ValueError(f"Vertices {sorted(removed_set)} are not all in {graph}")
    if len(removed_set) == graph.n:
        raise ValueError("Cannot delete every vertex of a graph")

    kept_edges = [
        e for e in graph.edges if e.u not in removed_set and e.v not in removed_set
    ]
    if not kept_edges:
        raise ValueError(f"Deleting {sorted(removed_set)} from {graph} leaves no edges")
    survivors = sorted({e.u for e in kept_edges} | {e.v for e in kept_edges})
    dropped = graph.n - len(removed_set) - len(survivors)
    renumber = {old: new for new, old in enumerate(survivors, start=1)}
    edges = tuple(Edge(u=renumber[e.u], v=renumber[e.v], w=e.w) for e in kept_edges)
    get_logger().debug(
        f"Deleted {sorted(removed_set)} from {graph}, dropped {dropped} isolated vertices"
    )
    return WeightedGraph(n=len(survivors), edges=edges), dropped


def is_nontrivially_weighted(graph: WeightedGraph) -> bool:
    """True iff some edge has weight at least 2."""
    return any(e.w >= 2 for e in graph.edges)


def disjoint_union(graph_1: WeightedGraph, graph_2: WeightedGraph) -> WeightedGraph:
    """Place graph_2 on the vertices following those of graph_1."""
    shifted = [Edge(u=e.u + graph_1.n, v=e.v + graph_1.n, w=e.w) for e in graph_2.edges]
    return WeightedGraph(n=graph_1.n + graph_2.n, edges=graph_1.edges + tuple(shifted))


def to_networkx(graph: WeightedGraph) -> nx.Graph:
    """Return a networkx graph on 1..n with ``weight`` edge attributes."""
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(1, graph.n + 1))
    nx_graph.add_weighted_edges_from((e.u, e.v, e.w) for e in graph.edges)
    return nx_graph


def from_networkx(nx_graph: nx.Graph, weights: Dict[Tuple[int, int], int]) -> WeightedGraph:
    """Build a weighted graph from a networkx graph on 0..n-1 and a weight map.

    Isolated nodes are discarded and the rest renumbered from 1.
    """
    nodes = sorted(v for v in nx_graph.nodes if nx_graph.degree(v) > 0)
    renumber = {old: new for new, old in enumerate(nodes, start=1)}
    edges: List[Edge] = []
    for a, b in nx_graph.edges:
        u, v = sorted((renumber[a], renumber[b]))
        w = weights.get((a, b), weights.get((b, a), 1))
        edges.append(Edge(u=u, v=v, w=w))
    edges.sort(key=lambda e: (e.u, e.v))
    return WeightedGraph(n=len(nodes), edges=tuple(edges))


###############################################################################
# Command-line input
###############################################################################


def parse_weights(text: str) -> Tuple[int, ...]:
    """Parse a comma-separated weight list such as ``2,1,1,1``."""
    try:
        return tuple(int(token) for token in text.split(","))
    except ValueError as err:
        raise ValueError(f"Invalid weight list '{text}'") from err


def load_ideal(
    ideal: Optional[str] = None,
    graph: Optional[str] = None,
    family: Optional[Families] = None,
    weights: Optional[str] = None,
    t: int = 1,
) -> MonomialIdeal:
    """Build the ideal named on the command line, raised to the power t.

    Exactly one of an ideal text, a graph JSON file and a family with weights must be
    given.
    """
    given = [ideal is not None, graph is not None, family is not None]
    if sum(given) != 1:
        raise ValueError("Give exactly one of an ideal, a graph file or a family")
    if ideal is not None:
        result = parse_ideal(ideal)
    elif graph is not None:
        result = edge_ideal(WeightedGraph.from_json(Path(graph).read_text()))
    else:
        if weights is None:
            raise ValueError(f"Family {family.value} needs a weight list")  # type: ignore[union-attr]
        result = edge_ideal(build_family(family, parse_weights(weights)))  # type: ignore[arg-type]
    get_logger().debug(f"Loaded ideal {result}, raising to power {t}")
    return power(result, t)
