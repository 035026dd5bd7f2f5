"""Deterministic, platform-independent random generation of PL maps.

The stream is "plcoarse-splitmix64-v1": the SplitMix64 counter generator
(64-bit golden-gamma increment followed by the murmur-style finalizer).  The
i-th raw output for a seed is a pure function of (seed, i), so per-sample
child seeds can be derived independently and reports replayed exactly on any
platform.

Generated maps have breakpoints at i/(node_count - 1); the y values are
normalized cumulative sums of positive rationals with bounded denominator,
plus a translation part for the line carrier (a rotation part for the
circle), so samples cover the whole group rather than just the maps fixing
the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pl import Carrier, PLMap

STREAM_NAME = "plcoarse-splitmix64-v1"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class BadSpecError(ValueError):
    """Generation parameters out of range."""


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """The splitmix64 generator; output i is _mix(seed + (i+1)*gamma)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def next_below(self, n: int) -> int:
        """Uniform-ish residue in [0, n); part of the versioned stream contract."""
        return self.next_u64() % n


def output_at(seed: int, index: int) -> int:
    """The index-th raw output of the stream for this seed (counter form)."""
    return _mix((seed + (index + 1) * _GAMMA) & _MASK)


def derive_seed(seed: int, index: int) -> int:
    """Child seed of sample ``index``; defined as the raw stream output."""
    return output_at(seed, index)


@dataclass(frozen=True)
class GenSpec:
    """Everything that determines one generated map."""

    seed: int
    node_count: int
    denom_bound: int
    carrier: Carrier

    def __post_init__(self):
        if not (0 <= self.seed <= _MASK):
            raise BadSpecError("seed must fit in 64 bits")
        if self.node_count < 2:
            raise BadSpecError("need at least 2 nodes")
        if self.denom_bound < 1:
            raise BadSpecError("denominator bound must be positive")


def gen_random(spec: GenSpec) -> PLMap:
    """Generate a valid PLMap as a pure function of the spec."""
    rng = SplitMix64(spec.seed)
    m = spec.node_count - 1
    increments = []
    for _ in range(m):
        den = 1 + rng.next_below(spec.denom_bound)
        num = 1 + rng.next_below(spec.denom_bound)
        increments.append(Fraction(num, den))
    total = sum(increments)
    if spec.carrier is Carrier.INTERVAL:
        offset = Fraction(0)
    elif spec.carrier is Carrier.LINE:
        den = 1 + rng.next_below(spec.denom_bound)
        num = rng.next_below(4 * spec.denom_bound + 1) - 2 * spec.denom_bound
        offset = Fraction(num, den)
    else:
        den = 1 + rng.next_below(spec.denom_bound)
        num = rng.next_below(den)
        offset = Fraction(num, den)
    nodes = [(Fraction(0), offset)]
    acc = Fraction(0)
    for i in range(m):
        acc += increments[i]
        nodes.append((Fraction(i + 1, m), offset + acc / total))
    return PLMap(tuple(nodes), spec.carrier)
