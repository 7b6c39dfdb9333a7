"""Module providing canonical monomial ideals and exact ideal operations."""
import itertools as it
import re
from functools import reduce
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ._helpers import check_type
from ._helpers import ContextMismatchError
from .ring_lib import check_context
from .ring_lib import Exponents
from .ring_lib import exponents_divide
from .ring_lib import exponents_lcm
from .ring_lib import exponents_quotient
from .ring_lib import format_exponents
from .ring_lib import grlex_key
from .ring_lib import Monomial
from .ring_lib import parse_monomial
from .ring_lib import VariableContext


_VAR_INDEX_RE = re.compile(r"\bx(\d+)\b")


def minimal_exponents(exponents: Iterable[Sequence[int]]) -> Tuple[Exponents, ...]:
    """Reduce exponent vectors to the divisibility-minimal ones, in canonical order."""
    candidates = sorted({tuple(e) for e in exponents}, key=sum)
    kept: List[Exponents] = []
    for cand in candidates:
        # A proper divisor has strictly smaller degree, hence was seen already
        if not any(exponents_divide(g, cand) for g in kept):
            kept.append(cand)
    return tuple(sorted(kept, key=grlex_key))


class MonomialIdeal:
    """A monomial ideal, stored as its unique minimal generating set.

    An empty generator list is the zero ideal; the single generator 1 is the unit
    ideal, which colon operations may produce.
    """

    __slots__ = ("context", "exponents")

    context: VariableContext
    exponents: Tuple[Exponents, ...]

    def __init__(
        self, context: VariableContext, exponents: Iterable[Sequence[int]] = ()
    ) -> None:
        """Class constructor.

        The generators are minimalized, deduplicated and sorted.
        """
        check_type("context", context, VariableContext)
        exponents = list(exponents)
        for e in exponents:
            # Validation is delegated to the Monomial constructor
            Monomial(context, e)
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "exponents", minimal_exponents(exponents))

    @classmethod
    def _from_minimal(
        cls, context: VariableContext, exponents: Tuple[Exponents, ...]
    ) -> "MonomialIdeal":
        ideal = cls.__new__(cls)
        object.__setattr__(ideal, "context", context)
        object.__setattr__(ideal, "exponents", exponents)
        return ideal

    @classmethod
    def zero(cls, context: VariableContext) -> "MonomialIdeal":
        """Return the zero ideal."""
        return cls._from_minimal(context, ())

    @classmethod
    def unit(cls, context: VariableContext) -> "MonomialIdeal":
        """Return the unit ideal (1)."""
        return cls._from_minimal(context, ((0,) * context.count,))

    def __setattr__(self, name: str, value: object) -> None:
        """Ideals are immutable."""
        raise AttributeError("MonomialIdeal is immutable")

    def __reduce__(self):  # type: ignore[no-untyped-def]
        """Pickle through the constructor."""
        return (_rebuild_ideal, (self.context, self.exponents))

    @property
    def gens(self) -> Tuple[Monomial, ...]:
        """The minimal generators as monomials."""
        return tuple(Monomial(self.context, e) for e in self.exponents)

    @property
    def is_zero(self) -> bool:
        """True for the zero ideal."""
        return len(self.exponents) == 0

    @property
    def is_unit(self) -> bool:
        """True for the unit ideal."""
        return len(self.exponents) == 1 and not any(self.exponents[0])

    @property
    def n_vars(self) -> int:
        """Number of ring variables."""
        return self.context.count

    def __len__(self) -> int:
        """Number of minimal generators."""
        return len(self.exponents)

    def __eq__(self, other: object) -> bool:
        """__eq__ dunder method."""
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.exponents == other.exponents and self.context == other.context

    def __hash__(self) -> int:
        """__hash__ dunder method."""
        return hash(self.exponents)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """__add__ dunder method."""
        return ideal_sum(self, other)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """__mul__ dunder method."""
        return product(self, other)

    def __pow__(self, t: int) -> "MonomialIdeal":
        """__pow__ dunder method."""
        return power(self, t)

    def __contains__(self, m: Monomial) -> bool:
        """__contains__ dunder method."""
        return contains(self, m)

    def __str__(self) -> str:
        """__str__ dunder method."""
        if self.is_zero:
            return "(0)"
        return (
            "(" + ", ".join(format_exponents(e, self.context) for e in self.exponents) + ")"
        )

    def __repr__(self) -> str:
        """__repr__ dunder method."""
        return f"MonomialIdeal{self}"

    def canonical_text(self) -> str:
        """A context-qualified text form, stable across runs."""
        return f"{self.context.count}:{','.join(self.context.names)}:{self}"

    def to_json(self) -> List[List[int]]:
        """Return the generators as a list of exponent vectors."""
        return [list(e) for e in self.exponents]

    @classmethod
    def from_json(
        cls, vectors: Sequence[Sequence[int]], context: Optional[VariableContext] = None
    ) -> "MonomialIdeal":
        """Build an ideal from a list of exponent vectors.

        Without a context, the default one is inferred from the vector length.
        """
        if context is None:
            if not vectors:
                raise ValueError("Cannot infer a context from an empty generator list")
            context = VariableContext.default(len(vectors[0]))
        return cls(context, vectors)


def _rebuild_ideal(
    context: VariableContext, exponents: Tuple[Exponents, ...]
) -> MonomialIdeal:
    return MonomialIdeal._from_minimal(context, exponents)


##########
# Construction
##########


def minimalize(
    gens: Sequence[Monomial], context: Optional[VariableContext] = None
) -> MonomialIdeal:
    """Build the ideal generated by a list of monomials.

    Args:
        gens: The monomials, all in the same context.
        context: Needed only when gens is empty.

    Returns:
        MonomialIdeal: The ideal with its minimal generating set.

    Raises:
        ContextMismatchError: If the monomials live in different contexts.
        ValueError: If neither a monomial nor a context is given.
    """
    if context is None:
        if not gens:
            raise ValueError("A context is needed to build an ideal without generators")
        context = gens[0].context
    for g in gens:
        if g.context != context:
            raise ContextMismatchError(f"Monomial {g} is not in context {context}")
    return MonomialIdeal._from_minimal(
        context, minimal_exponents(g.exponents for g in gens)
    )


def parse_ideal(text: str, context: Optional[VariableContext] = None) -> MonomialIdeal:
    """Parse an ideal in the ``(x1^2*x2^2, x2*x3)`` format.

    Without a context, the default context x1..xn is used, n being the largest
    variable index appearing in the text.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if context is None:
        indices = [int(i) for i in _VAR_INDEX_RE.findall(body)]
        if not indices:
            raise ValueError(f"Cannot infer the variables of ideal '{text}'")
        context = VariableContext.default(max(indices))
    body = body.strip()
    if body in ("", "0"):
        return MonomialIdeal.zero(context)
    gens = [parse_monomial(token, context) for token in body.split(",")]
    return minimalize(gens, context)


##########
# Operations
##########


def contains(ideal: MonomialIdeal, m: Monomial) -> bool:
    """Decide if m belongs to the ideal."""
    check_context(ideal.context, m.context)
    return contains_exponents(ideal, m.exponents)


def contains_exponents(ideal: MonomialIdeal, a: Sequence[int]) -> bool:
    """Decide if x^a belongs to the ideal."""
    return any(exponents_divide(g, a) for g in ideal.exponents)


def ideal_sum(ideal_1: MonomialIdeal, ideal_2: MonomialIdeal) -> MonomialIdeal:
    """Return I + J."""
    check_context(ideal_1.context, ideal_2.context)
    return MonomialIdeal._from_minimal(
        ideal_1.context, minimal_exponents(ideal_1.exponents + ideal_2.exponents)
    )


def sum_monomial(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """Return (I, m)."""
    check_context(ideal.context, m.context)
    return MonomialIdeal._from_minimal(
        ideal.context, minimal_exponents(ideal.exponents + (m.exponents,))
    )


def product(ideal_1: MonomialIdeal, ideal_2: MonomialIdeal) -> MonomialIdeal:
    """Return I * J."""
    check_context(ideal_1.context, ideal_2.context)
    products = (
        tuple(x + y for x, y in zip(a, b))
        for a, b in it.product(ideal_1.exponents, ideal_2.exponents)
    )
    return MonomialIdeal._from_minimal(ideal_1.context, minimal_exponents(products))


def power(ideal: MonomialIdeal, t: int) -> MonomialIdeal:
    """Return I^t, enumerating multisets of generators."""
    check_type("t", t, int)
    if t < 1:
        raise ValueError(f"Power t={t} must be at least 1")
    if t == 1:
        return ideal
    products = (
        tuple(map(sum, zip(*combination)))
        for combination in it.combinations_with_replacement(ideal.exponents, t)
    )
    return MonomialIdeal._from_minimal(ideal.context, minimal_exponents(products))


def colon_monomial(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """Return I : m."""
    check_context(ideal.context, m.context)
    return MonomialIdeal._from_minimal(
        ideal.context,
        minimal_exponents(exponents_quotient(g, m.exponents) for g in ideal.exponents),
    )


def intersect(ideal_1: MonomialIdeal, ideal_2: MonomialIdeal) -> MonomialIdeal:
    """Return the intersection of two ideals."""
    check_context(ideal_1.context, ideal_2.context)
    lcms = (
        exponents_lcm(a, b) for a, b in it.product(ideal_1.exponents, ideal_2.exponents)
    )
    return MonomialIdeal._from_minimal(ideal_1.context, minimal_exponents(lcms))


def colon_ideal(ideal_1: MonomialIdeal, ideal_2: MonomialIdeal) -> MonomialIdeal:
    """Return I : J, the intersection of I : g over the generators g of J."""
    check_context(ideal_1.context, ideal_2.context)
    if ideal_2.is_zero:
        raise ValueError("Colon by the zero ideal is not supported")
    return reduce(intersect, (colon_monomial(ideal_1, g) for g in ideal_2.gens))


def equals(ideal_1: MonomialIdeal, ideal_2: MonomialIdeal) -> bool:
    """Decide if two ideals have the same canonical generators."""
    return ideal_1 == ideal_2


def split_by_variable(
    ideal: MonomialIdeal, index: int
) -> Tuple[MonomialIdeal, MonomialIdeal]:
    """Split I into J (generators divisible by x_index) and K (the rest).

    The index is 1-based.
    """
    if not 1 <= index <= ideal.context.count:
        raise ValueError(f"Variable index {index} outside 1..{ideal.context.count}")
    j_gens = tuple(g for g in ideal.exponents if g[index - 1] > 0)
    k_gens = tuple(g for g in ideal.exponents if g[index - 1] == 0)
    return (
        MonomialIdeal._from_minimal(ideal.context, j_gens),
        MonomialIdeal._from_minimal(ideal.context, k_gens),
    )


def restrict_to(ideal: MonomialIdeal, variables: Iterable[int]) -> MonomialIdeal:
    """Keep the generators supported on the given 1-based variables."""
    allowed = {v - 1 for v in variables}
    kept = tuple(
        g for g in ideal.exponents if all(e == 0 or j in allowed for j, e in enumerate(g))
    )
    return MonomialIdeal._from_minimal(ideal.context, kept)


def max_exponents(ideal: MonomialIdeal) -> Exponents:
    """Return the componentwise maximum of the generator exponents."""
    if ideal.is_zero:
        return (0,) * ideal.context.count
    return tuple(max(column) for column in zip(*ideal.exponents))
