"""Coarse-geometry layer: word metrics, boundedness certificates, and
quasi-isometry witnesses.

The central constructions:

* breadth-first word metrics on finite groups, and the max formula
  ``rho_ST(h*k) = max(rho_S(h), rho_T(k))`` for exact factorizations with
  commuting generating sets;
* the straight-line homotopy pulling an interval map to the identity, whose
  derivative distance scales exactly linearly, and the telescoping
  factorization it induces: any interval map is a product of n factors each
  within delta of the identity, n = max(1, ceil(d_star(f, id)/delta));
* witnesses that every line map sits within a uniformly bounded d_sum
  distance of a translation, making the translation axis coarsely dense.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .groups import hat, make_translation, restrict
from .metrics import d_star, d_sum
from .pl import Carrier, PLError, PLMap, identity
from .zappa_szep import FiniteGroup, ZSData


class OutOfRangeError(PLError):
    """Homotopy parameter outside [0, 1]."""


class GroupSetError(ValueError):
    """A generating set fails the preconditions of a coarse check."""


# ---------------------------------------------------------------------------
# word metrics on finite groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WordMetricTable:
    """Exact word lengths from the identity over a symmetrized generating set.

    ``dist[g]`` is None when g is not reachable; ``generating`` is False in
    that case and the table is partial.
    """

    group: FiniteGroup
    gens: Tuple[int, ...]
    dist: Tuple[Optional[int], ...]
    generating: bool

    def unreachable(self) -> Tuple[int, ...]:
        return tuple(g for g, d in enumerate(self.dist) if d is None)


def symmetrize(group: FiniteGroup, gens: Sequence[int]) -> Tuple[int, ...]:
    """Close a generator list under inversion and add the identity."""
    s = set(gens)
    s.update(group.inv(g) for g in gens)
    s.add(group.identity)
    return tuple(sorted(s))


def word_metric_bfs(group: FiniteGroup, gens: Sequence[int]) -> WordMetricTable:
    """Breadth-first word lengths rho(1, g) over gens u gens^-1."""
    sym = symmetrize(group, gens)
    dist: List[Optional[int]] = [None] * group.order
    dist[group.identity] = 0
    queue = deque([group.identity])
    while queue:
        a = queue.popleft()
        for s in sym:
            b = group.mul(a, s)
            if dist[b] is None:
                dist[b] = dist[a] + 1
                queue.append(b)
    return WordMetricTable(group, sym, tuple(dist), None not in dist)


@dataclass(frozen=True)
class MaxFormulaReport:
    """Outcome of checking rho_ST(h*k) = max(rho_S(h), rho_T(k)) elementwise."""

    hypothesis_ok: bool
    checked: int
    violations: Tuple[int, ...]
    embeddings_ok: bool

    @property
    def formula_holds(self) -> bool:
        return self.hypothesis_ok and not self.violations


def zs_max_formula_check(
    zs: ZSData, s_elems: Sequence[int], t_elems: Sequence[int]
) -> MaxFormulaReport:
    """Check the product word metric against the factor word metrics.

    ``s_elems``/``t_elems`` are symmetric generating sets of H and K (global
    element indices, each containing the identity).  The commuting
    hypothesis S*T = T*S is tested first; when it fails the formula is not
    asserted and the report only records the failure.
    """
    group = zs.group
    s_set = set(s_elems)
    t_set = set(t_elems)
    for label, sub, sub_elems in (("S", s_set, zs.h_elems), ("T", t_set, zs.k_elems)):
        if group.identity not in sub:
            raise GroupSetError(f"{label} must contain the identity")
        if any(group.inv(x) not in sub for x in sub):
            raise GroupSetError(f"{label} must be symmetric")
        if not sub <= set(sub_elems):
            raise GroupSetError(f"{label} must lie in its factor subgroup")
    st = {group.mul(s, t) for s in s_set for t in t_set}
    ts = {group.mul(t, s) for s in s_set for t in t_set}
    if st != ts:
        return MaxFormulaReport(False, 0, (), False)
    rho_s = word_metric_bfs(group, tuple(s_set)).dist
    rho_t = word_metric_bfs(group, tuple(t_set)).dist
    rho_st = word_metric_bfs(group, tuple(st)).dist
    violations = []
    for g in group.elements():
        h, k = zs.h_of[g], zs.k_of[g]
        expect = max(rho_s[h], rho_t[k])
        if rho_st[g] != expect:
            violations.append(g)
    embeddings_ok = all(
        rho_st[h] == rho_s[h] for h in zs.h_elems
    ) and all(rho_st[k] == rho_t[k] for k in zs.k_elems)
    return MaxFormulaReport(True, group.order, tuple(violations), embeddings_ok)


# ---------------------------------------------------------------------------
# the straight-line homotopy and telescoping certificates
# ---------------------------------------------------------------------------


def homotopy_to_identity(f: PLMap, r) -> PLMap:
    """Convex blend (1-r)*f + r*id on f's breakpoint grid.

    r = 0 gives f, r = 1 gives the identity; strictly increasing for every
    r in [0, 1].
    """
    if f.carrier is not Carrier.INTERVAL:
        raise PLError("the homotopy is defined on interval maps")
    r = Fraction(r)
    if not (0 <= r <= 1):
        raise OutOfRangeError(f"homotopy parameter {r} outside [0, 1]")
    one = Fraction(1)
    return PLMap(tuple((x, (one - r) * y + r * x) for x, y in f.nodes), f.carrier)


def homotopy_distance(f: PLMap, r, s) -> Fraction:
    """d_star between two stages of the homotopy (computed directly).

    Equals |r - s| * d_star(f, id) exactly, hence is at most 2|r - s|.
    """
    return d_star(homotopy_to_identity(f, r), homotopy_to_identity(f, s))


def _ceil_div(a: Fraction, b: Fraction) -> int:
    q = a / b
    return -((-q.numerator) // q.denominator)


@dataclass(frozen=True)
class FactorizationCert:
    """A verified product decomposition into factors close to the identity.

    The factors compose (in list order) to the target exactly, every factor
    is within ``delta`` of the identity in d_star, and ``n`` follows the
    ceiling formula from the target's own distance to the identity.
    """

    target: PLMap
    delta: Fraction
    n: int
    factors: Tuple[PLMap, ...]
    per_factor_dist: Tuple[Fraction, ...]

    def problems(self) -> List[str]:
        """Re-derive every certificate invariant; empty means sound."""
        out = []
        ident = identity(self.target.carrier)
        product = ident
        for g in self.factors:
            product = product.compose(g)
        if product != self.target:
            out.append("factors do not recompose to the target")
        if len(self.factors) != self.n:
            out.append("factor count differs from n")
        for i, (g, d) in enumerate(zip(self.factors, self.per_factor_dist)):
            if d_star(g, ident) != d:
                out.append(f"factor {i} distance is misreported")
            if d > self.delta:
                out.append(f"factor {i} exceeds delta")
        expected_n = max(1, _ceil_div(d_star(self.target, ident), self.delta))
        if self.n != expected_n:
            out.append(f"n = {self.n} but the ceiling formula gives {expected_n}")
        return out

    def is_sound(self) -> bool:
        return not self.problems()


def factorize(f: PLMap, delta) -> FactorizationCert:
    """Write an interval map as n factors, each within delta of the identity.

    Telescoping through the homotopy: with F(r) the blend toward the
    identity, the i-th factor is F((i-1)/n) o F(i/n)^-1, so the product
    collapses to F(0) o F(1)^-1 = f and right-invariance of d_star makes
    each factor's distance exactly d_star(f, id)/n.
    """
    delta = Fraction(delta)
    if delta <= 0:
        raise PLError("delta must be positive")
    if f.carrier is not Carrier.INTERVAL:
        raise PLError("factorize takes an interval map")
    ident = identity(Carrier.INTERVAL)
    total = d_star(f, ident)
    n = max(1, _ceil_div(total, delta))
    factors = []
    dists = []
    for i in range(1, n + 1):
        left = homotopy_to_identity(f, Fraction(i - 1, n))
        right = homotopy_to_identity(f, Fraction(i, n))
        g = left.compose(right.inverse())
        factors.append(g)
        dists.append(d_star(g, ident))
    cert = FactorizationCert(f, delta, n, tuple(factors), tuple(dists))
    issues = cert.problems()
    if issues:
        raise AssertionError(f"internal certificate failure: {issues}")
    return cert


def factorize_isotropy(k: PLMap, delta) -> FactorizationCert:
    """Factorize a line map fixing 0 by conjugating through the interval.

    The restriction/extension pair preserves d_star, so the per-factor
    distances of the interval certificate carry over unchanged.
    """
    interval_cert = factorize(restrict(k), Fraction(delta))
    ident = identity(Carrier.LINE)
    factors = tuple(hat(g) for g in interval_cert.factors)
    dists = tuple(d_star(g, ident) for g in factors)
    if dists != interval_cert.per_factor_dist:
        raise AssertionError("distance preservation failed between carriers")
    cert = FactorizationCert(k, interval_cert.delta, interval_cert.n, factors, dists)
    issues = cert.problems()
    if issues:
        raise AssertionError(f"internal certificate failure: {issues}")
    return cert


# ---------------------------------------------------------------------------
# quasi-isometry witnesses for the line group and the circle bound
# ---------------------------------------------------------------------------

#: every line map is within this d_sum distance of its own translation part
DENSITY_BOUND = Fraction(3)

#: |f(0) - g(0)| <= d_sum(f, g) <= |f(0) - g(0)| + QI_ADDITIVE_SLACK
QI_ADDITIVE_SLACK = Fraction(6)

#: d_sum between any two circle maps is at most this
CIRCLE_DIAMETER_BOUND = Fraction(5, 2)


@dataclass(frozen=True)
class QIWitness:
    """Proximity of a line map to the translation lattice.

    ``translation`` is g(0); ``nearest`` is the closest integer (ties to
    even); ``density_bound`` is d_sum(g, translation(g(0))), always <= 3.
    """

    g: PLMap
    translation: Fraction
    nearest: int
    density_bound: Fraction


def qi_witness(g: PLMap) -> QIWitness:
    if g.carrier is not Carrier.LINE:
        raise PLError("qi_witness takes a line map")
    r = g(0)
    bound = d_sum(g, make_translation(r))
    if bound > DENSITY_BOUND:
        raise AssertionError(f"density bound {bound} exceeds {DENSITY_BOUND}")
    return QIWitness(g, r, round(r), bound)


@dataclass(frozen=True)
class QICheck:
    """Two-sided comparison of d_sum with the translation-part distance."""

    lower: Fraction
    value: Fraction
    upper: Fraction
    lower_ok: bool
    upper_ok: bool


def qi_inequality_check(f: PLMap, g: PLMap) -> QICheck:
    """|f(0) - g(0)| <= d_sum(f, g) <= |f(0) - g(0)| + 6, exactly."""
    if f.carrier is not Carrier.LINE or g.carrier is not Carrier.LINE:
        raise PLError("qi_inequality_check takes line maps")
    gap = abs(f(0) - g(0))
    value = d_sum(f, g)
    upper = gap + QI_ADDITIVE_SLACK
    return QICheck(gap, value, upper, gap <= value, value <= upper)


def circle_diameter_check(f: PLMap, g: PLMap) -> Fraction:
    """d_sum of two circle maps, asserting the uniform bound 5/2."""
    if f.carrier is not Carrier.CIRCLE or g.carrier is not Carrier.CIRCLE:
        raise PLError("circle_diameter_check takes circle maps")
    value = d_sum(f, g)
    if value > CIRCLE_DIAMETER_BOUND:
        raise AssertionError(f"{value} exceeds the diameter bound {CIRCLE_DIAMETER_BOUND}")
    return value
