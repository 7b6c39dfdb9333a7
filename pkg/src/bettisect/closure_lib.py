"""Module deciding integral closedness of monomial ideals and edge ideals."""
import itertools as it
from enum import Enum
from functools import lru_cache
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import networkx as nx  # type: ignore
from pydantic import BaseModel
from pydantic import ConfigDict
from sympy import Matrix
from sympy.solvers.simplex import InfeasibleLPError
from sympy.solvers.simplex import linprog
from sympy.solvers.simplex import UnboundedLPError

from ._helpers import get_logger
from .graph_lib import edge_ideal
from .graph_lib import is_nontrivially_weighted
from .graph_lib import to_networkx
from .graph_lib import WeightedGraph
from .ideal_lib import contains_exponents
from .ideal_lib import max_exponents
from .ideal_lib import MonomialIdeal
from .ring_lib import Exponents
from .ring_lib import exponents_divide
from .ring_lib import format_exponents


class Interpretations(Enum):
    """Readings of the forbidden induced configurations of a weighted graph."""

    A = "A"
    """Forbid a 3-vertex path with both edges non-trivial, and a non-trivial triangle."""
    B = "B"
    """As A, and also two non-trivial edges inducing a 2K2."""


###############################################################################
# Newton polyhedron membership
###############################################################################


@lru_cache(maxsize=65536)
def _lp_member(gens: Tuple[Exponents, ...], a: Exponents) -> bool:
    # Maximize the total weight of a combination of generators lying below a.
    # A total of at least 1 rescales to a convex combination below a.
    n_vars = len(a)
    constraints = Matrix(n_vars, len(gens), lambda j, k: gens[k][j])
    try:
        optimum, _ = linprog([-1] * len(gens), constraints, list(a))
    except UnboundedLPError:
        return True
    except InfeasibleLPError:  # pragma: no cover
        return False
    return bool(-optimum >= 1)


def in_newton_polyhedron(a: Sequence[int], ideal: MonomialIdeal) -> bool:
    """Decide if x^a lies in the integral closure of I.

    That is, whether a is above a convex combination of generator exponents, decided by
    an exact rational linear program.

    Args:
        a: A non-negative exponent vector.
        ideal: The monomial ideal.

    Returns:
        bool: True iff a is in conv(exponents of the generators) + R^n_>=0.
    """
    a = tuple(int(x) for x in a)
    if len(a) != ideal.context.count or any(x < 0 for x in a):
        raise ValueError(f"Invalid point {a} for {ideal.context}")
    if ideal.is_zero:
        return False
    if contains_exponents(ideal, a):
        return True
    return _lp_member(ideal.exponents, a)


class NewtonMembershipQuery(BaseModel, frozen=True):
    """A point a and an ideal I, asking whether x^a is integral over I."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    point: Tuple[int, ...]
    ideal: MonomialIdeal

    def decide(self) -> bool:
        """Answer the query."""
        return in_newton_polyhedron(self.point, self.ideal)


def _box(bounds: Exponents) -> Iterator[Exponents]:
    return it.product(*(range(b + 1) for b in bounds))


def _maximal_non_members(ideal: MonomialIdeal) -> Iterator[Exponents]:
    """Box points outside I whose every unit step up leaves the box or enters I."""
    bounds = max_exponents(ideal)
    for a in _box(bounds):
        if contains_exponents(ideal, a):
            continue
        maximal = True
        for j, bound in enumerate(bounds):
            if a[j] == bound:
                continue
            step = a[:j] + (a[j] + 1,) + a[j + 1 :]
            if not contains_exponents(ideal, step):
                maximal = False
                break
        if maximal:
            yield a


def closure_witness(ideal: MonomialIdeal) -> Optional[Exponents]:
    """Return an exponent vector of a monomial in the closure but not in I, if any."""
    if ideal.is_zero:
        raise ValueError("The zero ideal has no generators to close")
    for a in _maximal_non_members(ideal):
        if _lp_member(ideal.exponents, a):
            get_logger().debug(
                f"{format_exponents(a, ideal.context)} witnesses that {ideal} is not closed"
            )
            return a
    return None


def is_integrally_closed(ideal: MonomialIdeal) -> bool:
    """Decide if I equals its integral closure.

    Only the maximal non-members of I in the box below the generator exponents need to
    be tested, since the closure is closed under taking multiples.
    """
    return closure_witness(ideal) is None


def closure_generators(ideal: MonomialIdeal) -> MonomialIdeal:
    """Return the integral closure of I.

    Box points are visited by increasing degree; points above a closure generator
    already found are skipped.
    """
    if ideal.is_zero:
        raise ValueError("The zero ideal has no generators to close")
    found: List[Exponents] = []
    for a in sorted(_box(max_exponents(ideal)), key=sum):
        if any(exponents_divide(g, a) for g in found):
            continue
        if in_newton_polyhedron(a, ideal):
            found.append(a)
    return MonomialIdeal(ideal.context, found)


###############################################################################
# Forbidden induced subgraphs
###############################################################################


def _heavy_edges(graph: nx.Graph) -> List[Tuple[int, int]]:
    return sorted(
        (min(u, v), max(u, v)) for u, v, w in graph.edges(data="weight") if w >= 2
    )


def _heavy_p3(graph: nx.Graph) -> Iterator[Tuple[int, ...]]:
    """Induced paths u - v - w with both edges non-trivial."""
    for v in sorted(graph.nodes):
        heavy_neighbors = sorted(u for u in graph.neighbors(v) if graph[u][v]["weight"] >= 2)
        for u, w in it.combinations(heavy_neighbors, 2):
            if not graph.has_edge(u, w):
                yield (u, v, w)


def _heavy_triangles(graph: nx.Graph) -> Iterator[Tuple[int, ...]]:
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) < 3:
            continue
        if len(clique) > 3:
            break
        if all(graph[u][v]["weight"] >= 2 for u, v in it.combinations(clique, 2)):
            yield tuple(sorted(clique))


def _heavy_2k2(graph: nx.Graph) -> Iterator[Tuple[int, ...]]:
    """Two vertex-disjoint non-trivial edges with no edge between them."""
    for (a, b), (c, d) in it.combinations(_heavy_edges(graph), 2):
        if {a, b} & {c, d}:
            continue
        if not any(graph.has_edge(x, y) for x in (a, b) for y in (c, d)):
            yield (a, b, c, d)


def forbidden_configurations(
    graph: WeightedGraph, interpretation: Interpretations
) -> Iterator[Tuple[int, ...]]:
    """Yield the vertex sets of the forbidden induced configurations found in G.

    Two vertex-disjoint induced heavy 3-vertex paths contain a single one, so that
    configuration is covered by the 3-vertex path search.
    """
    nx_graph = to_networkx(graph)
    yield from _heavy_p3(nx_graph)
    yield from _heavy_triangles(nx_graph)
    if interpretation == Interpretations.B:
        yield from _heavy_2k2(nx_graph)


def forbidden_subgraph_verdict(
    graph: WeightedGraph, interpretation: Interpretations = Interpretations.B
) -> bool:
    """True iff no forbidden configuration occurs, i.e. I(G_w) is predicted closed.

    Trivially weighted graphs are always closed; the verdict is then True.
    """
    if not is_nontrivially_weighted(graph):
        get_logger().debug(f"{graph} is trivially weighted, forbidden subgraphs not applicable")
        return True
    for configuration in forbidden_configurations(graph, interpretation):
        get_logger().debug(
            f"{graph} contains forbidden configuration {configuration} under {interpretation.value}"
        )
        return False
    return True


class ClosureSample(BaseModel, frozen=True):
    """Oracle and combinatorial verdicts on one graph."""

    graph: WeightedGraph
    oracle: bool
    verdict_a: bool
    verdict_b: bool


def sample_graph(graph: WeightedGraph) -> ClosureSample:
    """Compute both verdicts and the oracle for a graph."""
    return ClosureSample(
        graph=graph,
        oracle=is_integrally_closed(edge_ideal(graph)),
        verdict_a=forbidden_subgraph_verdict(graph, Interpretations.A),
        verdict_b=forbidden_subgraph_verdict(graph, Interpretations.B),
    )


def select_interpretation(samples: Iterable[ClosureSample]) -> Optional[Interpretations]:
    """Pick the interpretation agreeing with the oracle on every sample.

    B is preferred when both agree; None is returned when neither does.
    """
    samples = list(samples)
    agree_b = all(s.verdict_b == s.oracle for s in samples)
    agree_a = all(s.verdict_a == s.oracle for s in samples)
    if agree_b:
        selected: Optional[Interpretations] = Interpretations.B
    elif agree_a:
        selected = Interpretations.A
    else:
        selected = None
    get_logger().debug(f"Selected interpretation {selected} over {len(samples)} graphs")
    return selected


def closure_helper(ideal: MonomialIdeal, witness: bool = False) -> str:
    """Report whether I is integrally closed, with a witness monomial if asked."""
    found = closure_witness(ideal)
    if found is None:
        return f"{ideal} is integrally closed"
    lines = [f"{ideal} is not integrally closed"]
    if witness:
        lines.append(f"witness: {format_exponents(found, ideal.context)}")
    return "\n".join(lines)
