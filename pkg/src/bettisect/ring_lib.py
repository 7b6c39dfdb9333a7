"""Module providing variable contexts and exact monomial arithmetic."""
import re
from typing import Any
from typing import Dict
from typing import Iterable
from typing import List
from typing import Sequence
from typing import Tuple

from pydantic import BaseModel
from pydantic import model_validator
from pydantic import PositiveInt

from ._helpers import check_type
from ._helpers import ContextMismatchError


MAX_EXPONENT = 2**31 - 1  # Keep exponents within a signed machine word
Exponents = Tuple[int, ...]

_FACTOR_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*$")


class VariableContext(BaseModel, frozen=True):
    """The variables x1..xn of the polynomial ring S."""

    count: PositiveInt
    names: Tuple[str, ...]

    @model_validator(mode="before")
    @classmethod
    def _default_names(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("names") is None:
            data = dict(data)
            data["names"] = tuple(f"x{i}" for i in range(1, int(data["count"]) + 1))
        return data

    @model_validator(mode="after")
    def _check_names(self) -> "VariableContext":
        if len(self.names) != self.count:
            raise ValueError(
                f"Context has {self.count} variables but {len(self.names)} names"
            )
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Variable names {self.names} are not distinct")
        return self

    @classmethod
    def default(cls, count: int) -> "VariableContext":
        """Build the context x1..x<count>."""
        return cls(count=count, names=None)  # type: ignore[arg-type]

    def extend(self, names: Iterable[str]) -> "VariableContext":
        """Return a context with extra variables appended after the existing ones."""
        new_names = self.names + tuple(names)
        return VariableContext(count=len(new_names), names=new_names)

    def index_of(self, name: str) -> int:
        """Return the 0-based index of a variable name."""
        try:
            return self.names.index(name)
        except ValueError as err:
            raise ValueError(f"Unknown variable {name} in context {self}") from err

    def __str__(self) -> str:
        """__str__ dunder method."""
        return f"K[{', '.join(self.names)}]"


def check_context(a: VariableContext, b: VariableContext) -> None:
    """Raise if two contexts differ."""
    if a is not b and a != b:
        raise ContextMismatchError(f"Context mismatch: {a} vs {b}")


class Monomial:
    """A monomial x^a over a fixed variable context."""

    __slots__ = ("context", "exponents")

    context: VariableContext
    exponents: Exponents

    def __init__(self, context: VariableContext, exponents: Sequence[int]) -> None:
        """Class constructor."""
        check_type("context", context, VariableContext)
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != context.count:
            raise ValueError(
                f"Exponent vector {exponents} does not fit {context.count} variables"
            )
        for e in exponents:
            if e < 0:
                raise ValueError(f"Negative exponent in {exponents}")
            if e > MAX_EXPONENT:
                raise OverflowError(f"Exponent {e} is out of range")
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "exponents", exponents)

    def __setattr__(self, name: str, value: Any) -> None:
        """Monomials are immutable."""
        raise AttributeError("Monomial is immutable")

    def __reduce__(self) -> Tuple[Any, Tuple[VariableContext, Exponents]]:
        """Pickle through the constructor, so worker processes can receive it."""
        return (Monomial, (self.context, self.exponents))

    @classmethod
    def one(cls, context: VariableContext) -> "Monomial":
        """Return the constant monomial."""
        return cls(context, (0,) * context.count)

    @classmethod
    def variable(cls, context: VariableContext, index: int, power: int = 1) -> "Monomial":
        """Return x_index^power, with a 1-based index."""
        if not 1 <= index <= context.count:
            raise ValueError(f"Variable index {index} outside 1..{context.count}")
        exponents = [0] * context.count
        exponents[index - 1] = power
        return cls(context, exponents)

    def __eq__(self, other: object) -> bool:
        """__eq__ dunder method."""
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exponents == other.exponents and self.context == other.context

    def __hash__(self) -> int:
        """__hash__ dunder method."""
        return hash(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        """__mul__ dunder method."""
        return mul(self, other)

    def __str__(self) -> str:
        """__str__ dunder method."""
        return format_exponents(self.exponents, self.context)

    def __repr__(self) -> str:
        """__repr__ dunder method."""
        return f"Monomial({self})"

    @property
    def degree(self) -> int:
        """Total degree."""
        return total_degree(self)

    @property
    def is_one(self) -> bool:
        """True for the constant monomial."""
        return not any(self.exponents)


##########
# Arithmetic
##########


def mul(a: Monomial, b: Monomial) -> Monomial:
    """Multiply two monomials."""
    check_context(a.context, b.context)
    return Monomial(a.context, [x + y for x, y in zip(a.exponents, b.exponents)])


def divides(a: Monomial, b: Monomial) -> bool:
    """Decide if a divides b."""
    check_context(a.context, b.context)
    return exponents_divide(a.exponents, b.exponents)


def lcm(a: Monomial, b: Monomial) -> Monomial:
    """Least common multiple."""
    check_context(a.context, b.context)
    return Monomial(a.context, exponents_lcm(a.exponents, b.exponents))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    """Greatest common divisor."""
    check_context(a.context, b.context)
    return Monomial(a.context, [min(x, y) for x, y in zip(a.exponents, b.exponents)])


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """Return the colon quotient a : b, i.e. exponentwise max(a - b, 0)."""
    check_context(a.context, b.context)
    return Monomial(a.context, exponents_quotient(a.exponents, b.exponents))


def total_degree(a: Monomial) -> int:
    """Sum of the exponents."""
    return sum(a.exponents)


# Raw exponent-vector versions, used by the inner loops of the other modules


def exponents_divide(a: Exponents, b: Exponents) -> bool:
    """Componentwise a <= b."""
    return all(x <= y for x, y in zip(a, b))


def exponents_lcm(a: Exponents, b: Exponents) -> Exponents:
    """Componentwise max."""
    return tuple(x if x >= y else y for x, y in zip(a, b))


def exponents_quotient(a: Exponents, b: Exponents) -> Exponents:
    """Componentwise max(a - b, 0)."""
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


def grlex_key(exponents: Exponents) -> Tuple[int, Exponents]:
    """Sort key placing monomials in descending graded-lex order, x1 > x2 > ..."""
    return (-sum(exponents), tuple(-e for e in exponents))


###############################################################################
# Text format
###############################################################################


def format_exponents(exponents: Exponents, context: VariableContext) -> str:
    """Format an exponent vector as ``x1^2*x2``; the constant prints as ``1``."""
    factors: List[str] = []
    for name, e in zip(context.names, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return "1"
    return "*".join(factors)


def parse_monomial(text: str, context: VariableContext) -> Monomial:
    """Parse a monomial in the ``x1^2*x2^2`` format.

    Args:
        text: The monomial text. A missing ``^1`` is accepted, as is ``1``.
        context: The context naming the variables.

    Returns:
        Monomial: The parsed monomial.

    Raises:
        ValueError: On malformed factors or unknown variable names.
    """
    text = text.strip()
    if text == "" or text == "1":
        return Monomial.one(context)

    lookup: Dict[str, int] = {name: i for i, name in enumerate(context.names)}
    exponents = [0] * context.count
    for factor in text.split("*"):
        match = _FACTOR_RE.match(factor)
        if match is None:
            raise ValueError(f"Malformed monomial factor '{factor}' in '{text}'")
        name, power = match.group(1), match.group(2)
        if name not in lookup:
            raise ValueError(f"Unknown variable {name} in '{text}'")
        exponents[lookup[name]] += int(power) if power is not None else 1
    return Monomial(context, exponents)
