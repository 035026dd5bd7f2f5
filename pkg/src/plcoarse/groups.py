"""The three homeomorphism groups and the structure maps between them.

* interval maps (``Carrier.INTERVAL``) form the endpoint-fixing group;
* line maps (``Carrier.LINE``) commute with integer translations;
* circle maps (``Carrier.CIRCLE``) are represented by their normalized lift.

The extension of an interval map to an equivariant line map ("hat") and the
restriction back are mutually inverse group isomorphisms between the interval
group and the isotropy subgroup ``{k : k(0) = 0}`` of the line group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .pl import Carrier, PLError, PLMap, identity

RatLike = Union[Fraction, int, str]


class NotInIsotropyError(PLError):
    """A basepoint-fixing map was required but k(0) != 0."""


@dataclass(frozen=True)
class CirclePoint:
    """A point of the circle R/Z, stored additively as a rational in [0, 1)."""

    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value)
        object.__setattr__(self, "value", v)
        if not (0 <= v < 1):
            raise PLError(f"circle points live in [0, 1), got {v}")

    @classmethod
    def from_rational(cls, r: RatLike) -> "CirclePoint":
        r = Fraction(r)
        return cls(r - math.floor(r))

    def __add__(self, other: "CirclePoint") -> "CirclePoint":
        return CirclePoint.from_rational(self.value + other.value)

    def __neg__(self) -> "CirclePoint":
        return CirclePoint.from_rational(-self.value)


def hat(f: PLMap) -> PLMap:
    """Extend an interval map to the equivariant line map agreeing on [0, 1]."""
    if f.carrier is not Carrier.INTERVAL:
        raise PLError("hat takes an interval map")
    return PLMap(f.nodes, Carrier.LINE)


def restrict(k: PLMap) -> PLMap:
    """Restrict a line map fixing 0 to the interval; inverse of :func:`hat`."""
    if k.carrier is not Carrier.LINE:
        raise PLError("restrict takes a line map")
    if k(0) != 0:
        raise NotInIsotropyError(f"k(0) = {k(0)} != 0")
    return PLMap(k.nodes, Carrier.INTERVAL)


def normalize_lift(g: PLMap) -> Tuple[PLMap, int]:
    """Split a line map into its normalized circle lift and integer part.

    Returns ``(c, n)`` with ``c(0)`` in [0, 1) and ``translation(n) o c = g``.
    """
    if g.carrier is not Carrier.LINE:
        raise PLError("normalize_lift takes a line map")
    n = math.floor(g(0))
    nodes = tuple((x, y - n) for x, y in g.nodes)
    return PLMap(nodes, Carrier.CIRCLE), n


def as_line(c: PLMap) -> PLMap:
    """Forget the circle normalization tag, keeping the same lift."""
    if c.carrier is not Carrier.CIRCLE:
        raise PLError("as_line takes a circle map")
    return PLMap(c.nodes, Carrier.LINE)


def circle_apply(f: PLMap, p: CirclePoint) -> CirclePoint:
    """Image of a circle point under a circle map (lift value mod 1)."""
    if f.carrier is not Carrier.CIRCLE:
        raise PLError("circle_apply takes a circle map")
    return CirclePoint.from_rational(f(p.value))


def make_translation(r: RatLike) -> PLMap:
    """The line map x -> x + r."""
    r = Fraction(r)
    return PLMap(((Fraction(0), r), (Fraction(1), r + 1)), Carrier.LINE)


def make_rotation(p: Union[CirclePoint, RatLike]) -> PLMap:
    """The circle map rotating by p (lift x -> x + p with p in [0, 1))."""
    p = p if isinstance(p, CirclePoint) else CirclePoint.from_rational(p)
    if p.value == 0:
        return identity(Carrier.CIRCLE)
    return PLMap(((Fraction(0), p.value), (Fraction(1), p.value + 1)), Carrier.CIRCLE)
