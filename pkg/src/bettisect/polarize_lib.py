"""Module providing the polarization of monomial ideals."""
from typing import Tuple

from pydantic import BaseModel

from ._helpers import get_logger
from .ideal_lib import max_exponents
from .ideal_lib import MonomialIdeal
from .ring_lib import check_context
from .ring_lib import Exponents
from .ring_lib import Monomial
from .ring_lib import VariableContext


class PolarizationMap(BaseModel, frozen=True):
    """Variable x_j of the source maps to x_j_1, ..., x_j_{a_j} of the target.

    Source variables unused by the ideal keep one target variable and are listed in
    ``unused`` (1-based), so ambient variable counts stay comparable.
    """

    source: VariableContext
    target: VariableContext
    widths: Tuple[int, ...]
    unused: Tuple[int, ...]

    @property
    def offsets(self) -> Tuple[int, ...]:
        """0-based target index of x_j_1 for every source variable x_j."""
        offsets = []
        position = 0
        for width in self.widths:
            offsets.append(position)
            position += width
        return tuple(offsets)

    def __str__(self) -> str:
        """__str__ dunder method."""
        lines = []
        for j, (name, offset, width) in enumerate(
            zip(self.source.names, self.offsets, self.widths), start=1
        ):
            targets = ", ".join(self.target.names[offset : offset + width])
            flag = "  (unused)" if j in self.unused else ""
            lines.append(f"{name} -> {targets}{flag}")
        return "\n".join(lines)


def build_polarization_map(ideal: MonomialIdeal) -> PolarizationMap:
    """Build the polarization map of an ideal from its maximal exponents."""
    bounds = max_exponents(ideal)
    widths = tuple(max(a, 1) for a in bounds)
    unused = tuple(j for j, a in enumerate(bounds, start=1) if a == 0)
    names = [
        f"{name}_{k}"
        for name, width in zip(ideal.context.names, widths)
        for k in range(1, width + 1)
    ]
    target = VariableContext(count=len(names), names=tuple(names))
    return PolarizationMap(source=ideal.context, target=target, widths=widths, unused=unused)


def _polarize_exponents(pmap: PolarizationMap, exponents: Exponents) -> Exponents:
    image = [0] * pmap.target.count
    for offset, width, e in zip(pmap.offsets, pmap.widths, exponents):
        if e > width:
            raise ValueError(f"Exponent {e} exceeds polarization width {width}")
        for k in range(e):
            image[offset + k] = 1
    return tuple(image)


def polarize_monomial(pmap: PolarizationMap, m: Monomial) -> Monomial:
    """Map x^a to the product of x_j_k over k <= a_j."""
    check_context(pmap.source, m.context)
    return Monomial(pmap.target, _polarize_exponents(pmap, m.exponents))


def polarize(ideal: MonomialIdeal) -> Tuple[MonomialIdeal, PolarizationMap]:
    """Polarize an ideal into a squarefree one with the same graded Betti numbers.

    Args:
        ideal: A nonzero monomial ideal.

    Returns:
        The polarized ideal and the polarization map.

    Raises:
        ValueError: For the zero ideal.
    """
    if ideal.is_zero:
        raise ValueError("Cannot polarize the zero ideal")
    pmap = build_polarization_map(ideal)
    polarized = MonomialIdeal(
        pmap.target, (_polarize_exponents(pmap, g) for g in ideal.exponents)
    )
    get_logger().debug(
        f"Polarized {ideal} into {len(pmap.target.names)} variables: {polarized}"
    )
    return polarized, pmap


def is_squarefree(ideal: MonomialIdeal) -> bool:
    """True iff every generator exponent is at most 1."""
    return all(e <= 1 for g in ideal.exponents for e in g)


def depth_shift(pmap: PolarizationMap) -> int:
    """Number of variables polarization adds, i.e. depth(S^P/I^P) - depth(S/I)."""
    return pmap.target.count - pmap.source.count


def polarize_helper(ideal: MonomialIdeal) -> str:
    """Return the polarized ideal followed by the polarization map."""
    polarized, pmap = polarize(ideal)
    return f"{polarized}\n{pmap}"
