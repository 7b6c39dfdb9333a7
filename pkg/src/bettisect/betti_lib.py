"""Module computing graded Betti numbers of monomial ideals.

Two independent algorithms are provided. The upper-Koszul algorithm computes
beta_{i,a}(I) as the reduced homology of the upper Koszul simplicial complex K^a(I)
for every multidegree a of the lcm lattice. The Taylor-strand algorithm computes
beta_{i,a}(S/I) as the homology of the multidegree-a strand of the Taylor complex
tensored with the residue field. Both agree on every ideal.
"""
from enum import Enum
from functools import lru_cache
from functools import reduce
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Tuple

from pydantic import BaseModel
from sympy.polys.matrices import DomainMatrix

from ._helpers import EngineSettings
from ._helpers import FieldSpec
from ._helpers import get_logger
from ._helpers import ResourceCapError
from .ideal_lib import MonomialIdeal
from .ring_lib import Exponents
from .ring_lib import exponents_divide
from .ring_lib import exponents_lcm
from .ring_lib import format_exponents
from .ring_lib import VariableContext


class Conventions(Enum):
    """Which module a Betti table describes."""

    ideal = "ideal"
    """The table of I, starting with the generators in homological degree 0."""
    quotient = "quotient"
    """The table of S/I, with beta_{0,0} = 1."""


def _resolve(
    field: Optional[FieldSpec], cap: Optional[int], cap_name: str
) -> Tuple[FieldSpec, int]:
    if field is not None and cap is not None:
        return field, cap
    config = EngineSettings().config
    return (
        field if field is not None else config.field,
        cap if cap is not None else getattr(config, cap_name),
    )


def _check_proper(ideal: MonomialIdeal) -> None:
    if ideal.is_zero:
        raise ValueError("Betti numbers of the zero ideal are not computed")
    if ideal.is_unit:
        raise ValueError("Betti numbers of the unit ideal are not computed")


###############################################################################
# LCM lattice
###############################################################################


class LcmLattice(BaseModel, frozen=True):
    """The lcms of all nonempty sets of generators, plus the bottom element 0."""

    context: VariableContext
    elements: Tuple[Tuple[int, ...], ...]

    @property
    def bottom(self) -> Tuple[int, ...]:
        """The bottom marker, lcm of the empty set."""
        return (0,) * self.context.count

    def __len__(self) -> int:
        """Number of elements, bottom excluded."""
        return len(self.elements)

    def __contains__(self, a: object) -> bool:
        """__contains__ dunder method."""
        return a in set(self.elements)


def lcm_lattice(ideal: MonomialIdeal, lattice_cap: Optional[int] = None) -> LcmLattice:
    """Close the generators of I under pairwise lcm.

    Raises:
        ResourceCapError: If the lattice grows beyond the cap.
    """
    _, cap = _resolve(FieldSpec(), lattice_cap, "lattice_cap")
    if ideal.is_zero:
        raise ValueError("The lcm lattice of the zero ideal is empty")
    elements = _lattice_elements(ideal.exponents, cap)
    return LcmLattice.model_construct(context=ideal.context, elements=elements)


def _lattice_elements(gens: Tuple[Exponents, ...], cap: int) -> Tuple[Exponents, ...]:
    elements = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                candidate = exponents_lcm(a, g)
                if candidate not in elements:
                    new.add(candidate)
        elements |= new
        if len(elements) > cap:
            raise ResourceCapError(
                f"lcm lattice exceeds the cap of {cap} elements ({len(gens)} generators)"
            )
        frontier = new
    get_logger().debug(f"lcm lattice of {len(gens)} generators has {len(elements)} elements")
    return tuple(sorted(elements, key=lambda e: (sum(e), e)))


def in_lcm_lattice(ideal: MonomialIdeal, a: Exponents) -> bool:
    """True iff a is the lcm of the generators dividing it."""
    dividing = [g for g in ideal.exponents if exponents_divide(g, a)]
    if not dividing:
        return False
    return reduce(exponents_lcm, dividing) == tuple(a)


###############################################################################
# Simplicial complexes and homology
###############################################################################


class SimplicialComplex:
    """A downward-closed set of faces on n vertices, faces stored as bit sets.

    The void complex has no faces; the complex {0} contains only the empty face.
    """

    n_vertices: int
    faces: frozenset

    def __init__(self, n_vertices: int, faces: Iterable[int]) -> None:
        """Class constructor."""
        self.n_vertices = n_vertices
        self.faces = frozenset(faces)

    @classmethod
    def from_facets(cls, n_vertices: int, facets: Iterable[int]) -> "SimplicialComplex":
        """Generate the complex from its facets."""
        faces = set()
        for facet in facets:
            sub = facet
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & facet
        return cls(n_vertices, faces)

    @property
    def is_void(self) -> bool:
        """True if there is no face at all."""
        return not self.faces

    def faces_as_sets(self) -> List[Tuple[int, ...]]:
        """Faces as sorted tuples of 1-based vertices."""
        return sorted(
            (tuple(j + 1 for j in range(self.n_vertices) if face >> j & 1) for face in self.faces),
            key=lambda f: (len(f), f),
        )

    def __eq__(self, other: object) -> bool:
        """__eq__ dunder method."""
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n_vertices == other.n_vertices and self.faces == other.faces

    def __repr__(self) -> str:
        """__repr__ dunder method."""
        return f"SimplicialComplex({self.faces_as_sets()})"


def matrix_rank(rows: List[List[int]], field: FieldSpec) -> int:
    """Rank of an integer matrix over the field."""
    if not rows or not rows[0]:
        return 0
    domain = field.domain()
    matrix = DomainMatrix(
        [[domain(v) for v in row] for row in rows], (len(rows), len(rows[0])), domain
    )
    return int(matrix.rank())


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _chain_homology(faces: Iterable[int], field: FieldSpec) -> Dict[int, int]:
    """Homology dimensions of a chain complex with bit-set bases, keyed by face size.

    The boundary of a face drops one element at a time with alternating sign by
    position; terms whose target is not a basis element are omitted.
    """
    by_size: Dict[int, List[int]] = {}
    for face in faces:
        by_size.setdefault(_popcount(face), []).append(face)
    index: Dict[int, Dict[int, int]] = {}
    for size, members in by_size.items():
        members.sort()
        index[size] = {face: i for i, face in enumerate(members)}

    ranks: Dict[int, int] = {}
    for size, members in by_size.items():
        if size == 0 or size - 1 not in index:
            continue
        targets = index[size - 1]
        rows = [[0] * len(members) for _ in targets]
        for column, face in enumerate(members):
            position = 0
            bits = face
            while bits:
                low = bits & -bits
                target = face ^ low
                if target in targets:
                    rows[targets[target]][column] = -1 if position % 2 else 1
                position += 1
                bits ^= low
        ranks[size] = matrix_rank(rows, field)

    return {
        size: len(members) - ranks.get(size, 0) - ranks.get(size + 1, 0)
        for size, members in by_size.items()
    }


def reduced_homology_dims(
    complex_: SimplicialComplex, field: Optional[FieldSpec] = None
) -> List[int]:
    """Reduced homology dimensions [H_{-1}, H_0, H_1, ...] over the field.

    The void complex yields [0], the complex {0} yields [1].
    """
    if field is None:
        field = EngineSettings().field
    if complex_.is_void:
        return [0]
    dims = _chain_homology(complex_.faces, field)
    top = max(dims)
    return [dims.get(size, 0) for size in range(top + 1)]


def _koszul_facets(ideal: MonomialIdeal, a: Exponents) -> List[int]:
    facets = set()
    for g in ideal.exponents:
        if exponents_divide(g, a):
            facets.add(sum(1 << j for j, (x, y) in enumerate(zip(g, a)) if x < y))
    # Keep the maximal ones only
    return [f for f in facets if not any(f != h and f & h == f for h in facets)]


def upper_koszul_complex(ideal: MonomialIdeal, a: Exponents) -> SimplicialComplex:
    """Return K^a(I), the squarefree b <= a with x^(a-b) in I, as supports.

    Raises:
        ValueError: If a is not in the lcm lattice of I.
    """
    a = tuple(a)
    if not in_lcm_lattice(ideal, a):
        raise ValueError(
            f"{format_exponents(a, ideal.context)} is not in the lcm lattice of {ideal}"
        )
    return SimplicialComplex.from_facets(ideal.context.count, _koszul_facets(ideal, a))


def _nerve_faces(facets: List[int]) -> List[int]:
    """Sets of facets with a common vertex, as bit sets over the facet list."""
    faces = [0]
    stack = [(0, -1, -1)]  # (face, last facet index, running intersection)
    while stack:
        face, last, common = stack.pop()
        for k in range(last + 1, len(facets)):
            meet = facets[k] if common == -1 else common & facets[k]
            if meet:
                new_face = face | (1 << k)
                faces.append(new_face)
                stack.append((new_face, k, meet))
    return faces


def _koszul_betti_at(
    ideal: MonomialIdeal, a: Exponents, field: FieldSpec
) -> Dict[int, int]:
    """beta_{i,a}(I) for all i, keyed by i."""
    facets = _koszul_facets(ideal, a)
    if facets == [0]:
        # a is a generator, the complex is {0}
        return {0: 1}
    if reduce(lambda x, y: x & y, facets):
        # Cone over a common vertex
        return {}
    support = reduce(lambda x, y: x | y, facets)
    if _popcount(support) <= len(facets):
        faces = SimplicialComplex.from_facets(ideal.context.count, facets).faces
    else:
        # Nerve of the facet cover, homotopy equivalent to the complex
        faces = frozenset(_nerve_faces(facets))
    dims = _chain_homology(faces, field)
    return {size: dim for size, dim in dims.items() if dim}


###############################################################################
# Betti tables
###############################################################################


class BettiEntry(BaseModel, extra="forbid"):
    """One multigraded Betti number."""

    i: int
    multidegree: List[int]
    count: int


class CoarseEntry(BaseModel, extra="forbid"):
    """One coarse Betti number beta_{i,j}."""

    i: int
    j: int
    count: int


class Invariants(BaseModel, frozen=True):
    """Regularity, projective dimension and depth of S/I."""

    reg: int
    pd: int
    depth: int

    @property
    def reg_ideal(self) -> int:
        """reg(I) = reg(S/I) + 1."""
        return self.reg + 1

    @property
    def pd_ideal(self) -> int:
        """pd(I) = pd(S/I) - 1."""
        return self.pd - 1

    def __str__(self) -> str:
        """__str__ dunder method."""
        return f"reg={self.reg}, pd={self.pd}, depth={self.depth}"


class BettiTableDocument(BaseModel, extra="forbid"):
    """JSON form of a Betti table."""

    convention: Conventions
    n_vars: int
    coarse: List[CoarseEntry]
    multigraded: Optional[List[BettiEntry]] = None
    invariants: Optional[Invariants] = None


class BettiTable:
    """Multigraded Betti numbers of I or S/I, with derived coarse numbers."""

    convention: Conventions
    n_vars: int
    multigraded: Dict[Tuple[int, Exponents], int]

    def __init__(
        self,
        convention: Conventions,
        n_vars: int,
        multigraded: Dict[Tuple[int, Exponents], int],
    ) -> None:
        """Class constructor."""
        self.convention = convention
        self.n_vars = n_vars
        self.multigraded = {key: value for key, value in multigraded.items() if value}

    @property
    def coarse(self) -> Dict[Tuple[int, int], int]:
        """beta_{i,j}, summing multigraded entries of total degree j."""
        coarse: Dict[Tuple[int, int], int] = {}
        for (i, a), count in self.multigraded.items():
            key = (i, sum(a))
            coarse[key] = coarse.get(key, 0) + count
        return dict(sorted(coarse.items()))

    def to_quotient(self) -> "BettiTable":
        """Return the table of S/I."""
        if self.convention == Conventions.quotient:
            return self
        entries = {(i + 1, a): count for (i, a), count in self.multigraded.items()}
        entries[(0, (0,) * self.n_vars)] = 1
        return BettiTable(Conventions.quotient, self.n_vars, entries)

    def to_ideal(self) -> "BettiTable":
        """Return the table of I."""
        if self.convention == Conventions.ideal:
            return self
        entries = {(i - 1, a): count for (i, a), count in self.multigraded.items() if i > 0}
        return BettiTable(Conventions.ideal, self.n_vars, entries)

    def __eq__(self, other: object) -> bool:
        """Equal as multigraded tables, after conversion to the same convention."""
        if not isinstance(other, BettiTable):
            return NotImplemented
        return (
            self.n_vars == other.n_vars
            and self.to_quotient().multigraded == other.to_quotient().multigraded
        )

    def invariants(self) -> Invariants:
        """Return reg, pd and depth of S/I."""
        return invariants(self)

    def render(self) -> str:
        """Text form: one ``(i, j): count`` line per coarse entry, then a summary."""
        lines = [f"({i}, {j}): {count}" for (i, j), count in self.coarse.items()]
        quotient_convention = self.convention == Conventions.quotient
        label = "S/I" if quotient_convention else "I"
        lines.insert(0, f"Betti numbers of {label} in {self.n_vars} variables")
        lines.append(str(self.invariants()))
        return "\n".join(lines)

    def to_document(self, multigraded: bool = False) -> BettiTableDocument:
        """Return the pydantic document of the table."""
        entries = None
        if multigraded:
            entries = [
                BettiEntry(i=i, multidegree=list(a), count=count)
                for (i, a), count in sorted(self.multigraded.items())
            ]
        return BettiTableDocument(
            convention=self.convention,
            n_vars=self.n_vars,
            coarse=[CoarseEntry(i=i, j=j, count=c) for (i, j), c in self.coarse.items()],
            multigraded=entries,
            invariants=self.invariants(),
        )

    def to_json(self, multigraded: bool = False) -> str:
        """Return the JSON text of the table."""
        return self.to_document(multigraded).model_dump_json(indent=2, exclude_none=True)

    @classmethod
    def from_json(cls, text: str) -> "BettiTable":
        """Rebuild a table from JSON text written with multigraded entries."""
        document = BettiTableDocument.model_validate_json(text)
        if document.multigraded is None:
            raise ValueError("Only tables with multigraded entries can be restored")
        entries = {(e.i, tuple(e.multidegree)): e.count for e in document.multigraded}
        return cls(document.convention, document.n_vars, entries)


def invariants(table: BettiTable) -> Invariants:
    """Compute reg, pd and depth of S/I from a Betti table.

    Args:
        table: A table in either convention, with its ambient variable count.

    Returns:
        Invariants: reg(S/I) = max(j - i), pd(S/I) = max i and depth = n - pd.
    """
    coarse = table.to_quotient().coarse
    reg = max(j - i for (i, j) in coarse)
    pd = max(i for (i, _) in coarse)
    return Invariants(reg=reg, pd=pd, depth=table.n_vars - pd)


###############################################################################
# Algorithms
###############################################################################


@lru_cache(maxsize=4096)
def _upper_koszul_entries(
    ideal: MonomialIdeal, field: FieldSpec, lattice_cap: int
) -> Tuple[Tuple[Tuple[int, Exponents], int], ...]:
    entries = []
    for a in _lattice_elements(ideal.exponents, lattice_cap):
        for i, count in _koszul_betti_at(ideal, a, field).items():
            entries.append(((i, a), count))
    return tuple(entries)


def betti_upper_koszul(
    ideal: MonomialIdeal,
    field: Optional[FieldSpec] = None,
    lattice_cap: Optional[int] = None,
) -> BettiTable:
    """Multigraded Betti numbers of I via upper Koszul complexes.

    Args:
        ideal: A proper nonzero monomial ideal.
        field: The coefficient field, the configured one if None.
        lattice_cap: Largest admissible lcm lattice, the configured one if None.

    Returns:
        BettiTable: The table of I (ideal convention).

    Raises:
        ResourceCapError: If the lcm lattice exceeds the cap.
        ValueError: For the zero or unit ideal.
    """
    _check_proper(ideal)
    field, lattice_cap = _resolve(field, lattice_cap, "lattice_cap")
    entries = dict(_upper_koszul_entries(ideal, field, lattice_cap))
    get_logger().debug(f"Upper Koszul Betti numbers of {ideal} over {field}: {entries}")
    return BettiTable(Conventions.ideal, ideal.context.count, entries)


def _taylor_subsets(
    ideal: MonomialIdeal, oracle_cap: int
) -> Dict[Exponents, List[int]]:
    gens = ideal.exponents
    if len(gens) > oracle_cap:
        raise ResourceCapError(
            f"{len(gens)} generators exceed the Taylor oracle cap of {oracle_cap}"
        )
    zero = (0,) * ideal.context.count
    lcms: List[Exponents] = [zero] * (1 << len(gens))
    strands: Dict[Exponents, List[int]] = {zero: [0]}
    for subset in range(1, 1 << len(gens)):
        low = subset & -subset
        lcms[subset] = exponents_lcm(lcms[subset ^ low], gens[low.bit_length() - 1])
        strands.setdefault(lcms[subset], []).append(subset)
    return strands


def betti_taylor_strand(
    ideal: MonomialIdeal,
    field: Optional[FieldSpec] = None,
    oracle_cap: Optional[int] = None,
) -> BettiTable:
    """Multigraded Betti numbers of S/I via strands of the Taylor complex.

    Raises:
        ResourceCapError: If I has more generators than the oracle cap.
        ValueError: For the zero or unit ideal.
    """
    _check_proper(ideal)
    field, oracle_cap = _resolve(field, oracle_cap, "oracle_cap")
    entries: Dict[Tuple[int, Exponents], int] = {}
    for a, subsets in _taylor_subsets(ideal, oracle_cap).items():
        for size, dim in _chain_homology(subsets, field).items():
            if dim:
                entries[(size, a)] = dim
    return BettiTable(Conventions.quotient, ideal.context.count, entries)


def taylor_euler_characteristics(
    ideal: MonomialIdeal, oracle_cap: Optional[int] = None
) -> Dict[Exponents, int]:
    """Sum of (-1)^|s| over generator subsets s with lcm a, for every a.

    These are the coefficients of the numerator of the multigraded Hilbert series
    of S/I.
    """
    _check_proper(ideal)
    _, oracle_cap = _resolve(FieldSpec(), oracle_cap, "oracle_cap")
    return {
        a: sum(-1 if _popcount(s) % 2 else 1 for s in subsets)
        for a, subsets in _taylor_subsets(ideal, oracle_cap).items()
    }


def alternating_sums(table: BettiTable) -> Dict[Exponents, int]:
    """Sum of (-1)^i beta_{i,a}(S/I), for every multidegree a."""
    sums: Dict[Exponents, int] = {}
    for (i, a), count in table.to_quotient().multigraded.items():
        sums[a] = sums.get(a, 0) + (-1) ** i * count
    return sums


def has_linear_resolution(
    ideal: MonomialIdeal,
    field: Optional[FieldSpec] = None,
    lattice_cap: Optional[int] = None,
) -> bool:
    """True iff I is generated in one degree d and beta_{i,j}(I) = 0 for j != i + d."""
    degrees = {sum(g) for g in ideal.exponents}
    if len(degrees) != 1:
        return False
    if len(ideal) == 1:
        return True
    (degree,) = degrees
    table = betti_upper_koszul(ideal, field, lattice_cap)
    return all(j == i + degree for (i, j) in table.coarse)


def ideal_invariants(
    ideal: MonomialIdeal,
    field: Optional[FieldSpec] = None,
    n_vars: Optional[int] = None,
    lattice_cap: Optional[int] = None,
) -> Invariants:
    """reg, pd and depth of S/I, S having n_vars variables (those of I by default)."""
    table = betti_upper_koszul(ideal, field, lattice_cap)
    if n_vars is not None:
        table = BettiTable(table.convention, n_vars, table.multigraded)
    return invariants(table)


###############################################################################
# Command-line helpers
###############################################################################


def betti_helper(ideal: MonomialIdeal, multigraded: bool = False, as_json: bool = False) -> str:
    """Compute the Betti table of S/I with the configured engine settings.

    Args:
        ideal: A proper nonzero monomial ideal.
        multigraded: Include the multigraded entries in the JSON output.
        as_json: Return JSON instead of the text table.

    Returns:
        The rendered table.
    """
    table = betti_upper_koszul(ideal).to_quotient()
    if as_json:
        return table.to_json(multigraded)
    return table.render()


def invariants_helper(ideal: MonomialIdeal, as_json: bool = False) -> str:
    """Compute reg, pd and depth of S/I with the configured engine settings."""
    result = ideal_invariants(ideal)
    if as_json:
        return result.model_dump_json(indent=2)
    return str(result)
