"""Strictly increasing piecewise-linear maps with exact rational nodes.

Three carriers share one representation:

* ``INTERVAL`` -- orientation-preserving homeomorphisms of [0, 1] fixing the
  endpoints; nodes run from (0, 0) to (1, 1).
* ``LINE`` -- homeomorphisms of the real line commuting with integer
  translations, stored on the fundamental domain [0, 1] (so the last node's
  y exceeds the first's by exactly 1) and extended by f(x + n) = f(x) + n.
* ``CIRCLE`` -- circle homeomorphisms via their unique lift with value at 0
  in [0, 1); a LINE map with that extra normalization.

Node lists are canonical (no three consecutive collinear nodes), so two maps
are equal as functions iff their node lists are equal.  All values are
immutable and all operations are pure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Tuple

from ._kernels import active as _K

Node = Tuple[Fraction, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class PLError(ValueError):
    """Base class for invalid piecewise-linear data or usage."""


class NonMonotoneError(PLError):
    """Node coordinates are not strictly increasing."""


class CarrierViolationError(PLError):
    """Endpoint constraints of the declared carrier are broken."""


class CarrierMismatchError(PLError):
    """Operation applied to maps living on different carriers."""


class OutOfDomainError(PLError):
    """Evaluation point outside the map's domain."""


class Carrier(enum.Enum):
    INTERVAL = "interval"
    LINE = "line"
    CIRCLE = "circle"

    @property
    def periodic(self) -> bool:
        return self is not Carrier.INTERVAL


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise PLError(f"floats are not allowed, got {value!r}")
    return Fraction(value)


@dataclass(frozen=True)
class PLMap:
    """A strictly increasing PL map, canonical and carrier-tagged."""

    nodes: Tuple[Node, ...]
    carrier: Carrier

    def __post_init__(self):
        nodes = tuple((_as_fraction(x), _as_fraction(y)) for x, y in self.nodes)
        if len(nodes) < 2:
            raise PLError("a PL map needs at least 2 nodes")
        for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
            if x1 <= x0:
                raise NonMonotoneError(f"x not strictly increasing at {x1}")
            if y1 <= y0:
                raise NonMonotoneError(f"y not strictly increasing near x={x1}")
        self._check_carrier(nodes, self.carrier)
        raw = _K.canonicalize(
            [(x.numerator, x.denominator, y.numerator, y.denominator) for x, y in nodes]
        )
        nodes = tuple((Fraction(xn, xd), Fraction(yn, yd)) for xn, xd, yn, yd in raw)
        object.__setattr__(self, "nodes", nodes)

    @staticmethod
    def _check_carrier(nodes, carrier):
        (x0, y0), (xl, yl) = nodes[0], nodes[-1]
        if carrier is Carrier.INTERVAL:
            if (x0, y0) != (ZERO, ZERO) or (xl, yl) != (ONE, ONE):
                raise CarrierViolationError("interval maps must fix 0 and 1")
        else:
            if x0 != ZERO or xl != ONE:
                raise CarrierViolationError("line maps are stored on x in [0, 1]")
            if yl != y0 + 1:
                raise CarrierViolationError("line maps need f(1) = f(0) + 1")
            if carrier is Carrier.CIRCLE and not (ZERO <= y0 < ONE):
                raise CarrierViolationError("circle lifts need f(0) in [0, 1)")

    @cached_property
    def _raw(self):
        return [
            (x.numerator, x.denominator, y.numerator, y.denominator)
            for x, y in self.nodes
        ]

    @classmethod
    def _from_raw(cls, raw, carrier: Carrier) -> "PLMap":
        return cls(
            tuple((Fraction(xn, xd), Fraction(yn, yd)) for xn, xd, yn, yd in raw),
            carrier,
        )

    @classmethod
    def from_nodes(cls, nodes: Iterable, carrier: Carrier) -> "PLMap":
        """Validate and canonicalize a node list (ints/strings coerced)."""
        return cls(tuple((Fraction(x), Fraction(y)) for x, y in nodes), carrier)

    def __call__(self, x) -> Fraction:
        """Exact evaluation; line/circle carriers accept any rational x."""
        x = _as_fraction(x)
        if self.carrier.periodic:
            yn, yd = _K.eval_periodic(self._raw, x.numerator, x.denominator)
        else:
            if not (ZERO <= x <= ONE):
                raise OutOfDomainError(f"{x} outside [0, 1]")
            yn, yd = _K.eval_nodes(self._raw, x.numerator, x.denominator)
        return Fraction(yn, yd)

    def compose(self, other: "PLMap") -> "PLMap":
        """self o other (apply ``other`` first)."""
        if self.carrier is not other.carrier:
            raise CarrierMismatchError(
                f"cannot compose {self.carrier.value} with {other.carrier.value}"
            )
        raw = _K.compose(self._raw, other._raw, self.carrier.periodic)
        if self.carrier is Carrier.CIRCLE:
            raw = _normalize_raw_lift(raw)
        return PLMap._from_raw(raw, self.carrier)

    def inverse(self) -> "PLMap":
        raw = _K.invert(self._raw, self.carrier.periodic)
        if self.carrier is Carrier.CIRCLE:
            raw = _normalize_raw_lift(raw)
        return PLMap._from_raw(raw, self.carrier)

    def derivative(self) -> "StepFn":
        slopes = _K.slopes(self._raw)
        return StepFn(
            tuple(x for x, _y in self.nodes),
            tuple(Fraction(n, d) for n, d in slopes),
        )

    def is_identity(self) -> bool:
        return self.nodes == ((ZERO, ZERO), (ONE, ONE))

    def breakpoints(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _y in self.nodes)


@dataclass(frozen=True)
class StepFn:
    """Piecewise-constant function: values[i] on [breakpoints[i], breakpoints[i+1]]."""

    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values) + 1:
            raise PLError("need exactly one value per segment")

    def integral(self) -> Fraction:
        """Exact integral over the whole breakpoint range."""
        total = ZERO
        for i, v in enumerate(self.values):
            total += v * (self.breakpoints[i + 1] - self.breakpoints[i])
        return total


def _normalize_raw_lift(raw):
    y0n, y0d = raw[0][2], raw[0][3]
    m = y0n // y0d
    return _K.shift_y(raw, -m) if m else raw


def identity(carrier: Carrier) -> PLMap:
    return PLMap(((ZERO, ZERO), (ONE, ONE)), carrier)


def validate(nodes: Sequence, carrier: Carrier) -> PLMap:
    """Build a canonical PLMap from raw node data (alias of from_nodes)."""
    return PLMap.from_nodes(nodes, carrier)


def refine(f: PLMap, g: PLMap) -> Tuple[StepFn, StepFn]:
    """Both derivatives as step functions on the union breakpoint grid."""
    if f.carrier is not g.carrier:
        raise CarrierMismatchError("refine needs matching carriers")
    xs, sf, sg = _K.refine(f._raw, g._raw)
    grid = tuple(Fraction(n, d) for n, d in xs)
    return (
        StepFn(grid, tuple(Fraction(n, d) for n, d in sf)),
        StepFn(grid, tuple(Fraction(n, d) for n, d in sg)),
    )


def interpolate(samples: Iterable, carrier: Carrier) -> PLMap:
    """PL map through the given strictly increasing sample points."""
    return PLMap.from_nodes(samples, carrier)


def power_map(exponent: int, grid_segments: int) -> PLMap:
    """PL interpolation of x**exponent on the uniform grid {i/m} of [0, 1]."""
    if exponent < 1 or grid_segments < 1:
        raise PLError("exponent and grid size must be positive")
    m = grid_segments
    return interpolate(
        [(Fraction(i, m), Fraction(i, m) ** exponent) for i in range(m + 1)],
        Carrier.INTERVAL,
    )
