"""Zappa-Szep products: finite multiplication tables and the concrete
translation/isotropy decompositions of the line and circle groups.

A group G is an (internal) Zappa-Szep product of subgroups H and K when
H and K intersect trivially and every element factors uniquely as h*k.
The mutual actions alpha: K x H -> H and beta: K x H -> K are determined by
k*h = alpha(k, h) * beta(k, h), and conversely the external product on
H x K with operation (h1, k1)(h2, k2) = (h1 * alpha(k1, h2), beta(k1, h2) * k2)
rebuilds G.

For the line group the factors are the translations and the isotropy
subgroup {k : k(0) = 0}; for the circle group, the rotations and the maps
fixing the basepoint.  Both decompositions are computed exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from .groups import (
    CirclePoint,
    NotInIsotropyError,
    circle_apply,
    make_rotation,
    make_translation,
)
from .pl import Carrier, PLError, PLMap


class GroupTableError(ValueError):
    """Base class for defective finite-group data."""


class NotAGroupError(GroupTableError):
    """The multiplication table violates a group axiom."""


class NotSubgroupError(GroupTableError):
    """An element subset is not a subgroup."""


class NotExactFactorizationError(GroupTableError):
    """Some element has zero or several H*K factorizations."""


class InjectionNotHomError(GroupTableError):
    """A canonical injection into the external product fails to be a homomorphism."""


# ---------------------------------------------------------------------------
# finite groups as multiplication tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by named elements and a multiplication table.

    ``table[i][j]`` is the index of the product of elements i and j.  The
    axioms (Latin square, two-sided identity, associativity) are checked on
    construction; inverses then exist automatically.
    """

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int = field(init=False)
    inverse: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.names)
        if n == 0 or len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotAGroupError("table must be square and match the name list")
        for row in self.table:
            if any(not (0 <= v < n) for v in row):
                raise NotAGroupError("table entry out of range")
            if len(set(row)) != n:
                raise NotAGroupError("a row is not a permutation")
        for j in range(n):
            if len({self.table[i][j] for i in range(n)}) != n:
                raise NotAGroupError("a column is not a permutation")
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise NotAGroupError("no two-sided identity")
        _check_associative(self.table)
        inverse = [0] * n
        for a in range(n):
            b = self.table[a].index(ident)
            if self.table[b][a] != ident:
                raise NotAGroupError("one-sided inverse only")
            inverse[a] = b
        object.__setattr__(self, "identity", ident)
        object.__setattr__(self, "inverse", tuple(inverse))

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self.mul(a, b) in s and self.inv(a) in s for a in s for b in s)

    def subgroup_generated(self, gens: Iterable[int]) -> Tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens) + [self.inv(g) for g in gens]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(seen))


def _check_associative(table) -> None:
    t = np.asarray(table, dtype=np.int64)
    for a in range(len(table)):
        if not np.array_equal(t[t[a]], t[a][t]):
            raise NotAGroupError(f"associativity fails at element {a}")


def cyclic_group(n: int) -> FiniteGroup:
    names = tuple(str(i) for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(names, table)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    names = tuple(
        f"({a.names[i]},{b.names[j]})" for i in range(a.order) for j in range(b.order)
    )
    nb = b.order

    def idx(i, j):
        return i * nb + j

    table = tuple(
        tuple(
            idx(a.mul(i1, i2), b.mul(j1, j2))
            for i2 in range(a.order)
            for j2 in range(nb)
        )
        for i1 in range(a.order)
        for j1 in range(nb)
    )
    return FiniteGroup(names, table)


def _cycle_notation(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        parts.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
    return "".join(parts) if parts else "e"


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on points 1..n; the product p*q acts by x -> p(q(x))."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    names = tuple(_cycle_notation(p) for p in perms)
    table = tuple(
        tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms
    )
    return FiniteGroup(names, table)


def permutation_index(n: int, perm: Sequence[int]) -> int:
    """Index of a permutation tuple inside :func:`symmetric_group`'s ordering."""
    return list(itertools.permutations(range(n))).index(tuple(perm))


def subgroup_table(group: FiniteGroup, elems: Sequence[int]) -> FiniteGroup:
    """A subgroup re-indexed as a standalone FiniteGroup (order of ``elems``)."""
    if not group.is_subgroup(elems):
        raise NotSubgroupError("element set is not a subgroup")
    pos = {g: i for i, g in enumerate(elems)}
    names = tuple(group.names[g] for g in elems)
    table = tuple(tuple(pos[group.mul(a, b)] for b in elems) for a in elems)
    return FiniteGroup(names, table)


# ---------------------------------------------------------------------------
# internal decomposition and external rebuild
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZSData:
    """An exact factorization G = H*K with its mutual action tables.

    ``alpha[ki][hi]`` and ``beta[ki][hi]`` are positions into ``h_elems``
    and ``k_elems`` solving k*h = alpha * beta.  ``h_of``/``k_of`` give the
    unique factorization g = h*k of every group element.
    """

    group: FiniteGroup
    h_elems: Tuple[int, ...]
    k_elems: Tuple[int, ...]
    alpha: Tuple[Tuple[int, ...], ...]
    beta: Tuple[Tuple[int, ...], ...]
    h_of: Tuple[int, ...]
    k_of: Tuple[int, ...]


def zs_internal_decompose(
    group: FiniteGroup, h_elems: Sequence[int], k_elems: Sequence[int]
) -> ZSData:
    """Verify G = H*K is exact and extract the alpha/beta action tables."""
    h_elems = tuple(sorted(h_elems))
    k_elems = tuple(sorted(k_elems))
    for elems, label in ((h_elems, "H"), (k_elems, "K")):
        if not group.is_subgroup(elems):
            raise NotSubgroupError(f"{label} is not a subgroup")
    if set(h_elems) & set(k_elems) != {group.identity}:
        raise NotExactFactorizationError("H and K must intersect in the identity only")
    h_of = [-1] * group.order
    k_of = [-1] * group.order
    for h in h_elems:
        for k in k_elems:
            g = group.mul(h, k)
            if h_of[g] != -1:
                raise NotExactFactorizationError(
                    f"element {group.names[g]} factors more than once"
                )
            h_of[g] = h
            k_of[g] = k
    if -1 in h_of:
        missing = group.names[h_of.index(-1)]
        raise NotExactFactorizationError(f"element {missing} has no H*K factorization")
    h_pos = {h: i for i, h in enumerate(h_elems)}
    k_pos = {k: i for i, k in enumerate(k_elems)}
    alpha = []
    beta = []
    for k in k_elems:
        arow = []
        brow = []
        for h in h_elems:
            g = group.mul(k, h)
            arow.append(h_pos[h_of[g]])
            brow.append(k_pos[k_of[g]])
        alpha.append(tuple(arow))
        beta.append(tuple(brow))
    return ZSData(
        group, h_elems, k_elems, tuple(alpha), tuple(beta), tuple(h_of), tuple(k_of)
    )


def zs_external_build(
    h_group: FiniteGroup,
    k_group: FiniteGroup,
    alpha: Sequence[Sequence[int]],
    beta: Sequence[Sequence[int]],
) -> FiniteGroup:
    """Build the external product on H x K and verify it is one.

    Checks the group axioms, that both canonical injections are
    homomorphisms, and the inverse formula
    (h, k)^-1 = (alpha(k^-1, h^-1), beta(k^-1, h^-1)).
    """
    nh, nk = h_group.order, k_group.order
    if len(alpha) != nk or any(len(row) != nh for row in alpha):
        raise GroupTableError("alpha must be |K| x |H|")
    if len(beta) != nk or any(len(row) != nh for row in beta):
        raise GroupTableError("beta must be |K| x |H|")

    def idx(h, k):
        return h * nk + k

    names = tuple(
        f"({h_group.names[h]},{k_group.names[k]})"
        for h in range(nh)
        for k in range(nk)
    )
    table = tuple(
        tuple(
            idx(h_group.mul(h1, alpha[k1][h2]), k_group.mul(beta[k1][h2], k2))
            for h2 in range(nh)
            for k2 in range(nk)
        )
        for h1 in range(nh)
        for k1 in range(nk)
    )
    product = FiniteGroup(names, table)
    if product.identity != idx(h_group.identity, k_group.identity):
        raise NotAGroupError("identity is not (1_H, 1_K)")
    e_k = k_group.identity
    e_h = h_group.identity
    for h1 in range(nh):
        for h2 in range(nh):
            if product.mul(idx(h1, e_k), idx(h2, e_k)) != idx(h_group.mul(h1, h2), e_k):
                raise InjectionNotHomError("H -> H x K is not a homomorphism")
    for k1 in range(nk):
        for k2 in range(nk):
            if product.mul(idx(e_h, k1), idx(e_h, k2)) != idx(e_h, k_group.mul(k1, k2)):
                raise InjectionNotHomError("K -> H x K is not a homomorphism")
    for h in range(nh):
        for k in range(nk):
            hi, ki = h_group.inv(h), k_group.inv(k)
            expected = idx(alpha[ki][hi], beta[ki][hi])
            if product.inv(idx(h, k)) != expected:
                raise NotAGroupError("inverse formula fails")
    return product


def zs_rebuild_matches(zs: ZSData) -> bool:
    """Whether the external product rebuilt from ``zs`` maps isomorphically
    onto the original group via (h, k) -> h*k."""
    h_group = subgroup_table(zs.group, zs.h_elems)
    k_group = subgroup_table(zs.group, zs.k_elems)
    product = zs_external_build(h_group, k_group, zs.alpha, zs.beta)
    nk = k_group.order
    to_g = [
        zs.group.mul(zs.h_elems[i // nk], zs.k_elems[i % nk])
        for i in range(product.order)
    ]
    if sorted(to_g) != list(zs.group.elements()):
        return False
    return all(
        to_g[product.mul(a, b)] == zs.group.mul(to_g[a], to_g[b])
        for a in product.elements()
        for b in product.elements()
    )


# ---------------------------------------------------------------------------
# the concrete line and circle decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineDecomposition:
    """g = translation(translation_part) o isotropy, with isotropy(0) = 0."""

    translation: Fraction
    isotropy: PLMap


def _require_line_isotropy(k: PLMap) -> None:
    if k.carrier is not Carrier.LINE:
        raise PLError("expected a line map")
    if k(0) != 0:
        raise NotInIsotropyError(f"k(0) = {k(0)} != 0")


def _require_circle_isotropy(k: PLMap) -> None:
    if k.carrier is not Carrier.CIRCLE:
        raise PLError("expected a circle map")
    if k(0) != 0:
        raise NotInIsotropyError(f"lift value at 0 is {k(0)}, not 0")


def line_from_parts(r, k: PLMap) -> PLMap:
    """Assemble translation(r) o k from a translation part and isotropy part."""
    _require_line_isotropy(k)
    return make_translation(r).compose(k)


def line_parts(g: PLMap) -> LineDecomposition:
    """Split a line map as translation o isotropy (exact, mutually inverse
    with :func:`line_from_parts`)."""
    if g.carrier is not Carrier.LINE:
        raise PLError("expected a line map")
    r = g(0)
    k = make_translation(-r).compose(g)
    return LineDecomposition(r, k)


def circle_from_parts(p: CirclePoint, k: PLMap) -> PLMap:
    """Assemble rotation(p) o k from a rotation part and basepoint-fixing part."""
    _require_circle_isotropy(k)
    return make_rotation(p).compose(k)


def circle_parts(f: PLMap) -> Tuple[CirclePoint, PLMap]:
    """Split a circle map as rotation o basepoint-fixing map."""
    if f.carrier is not Carrier.CIRCLE:
        raise PLError("expected a circle map")
    p = CirclePoint(f(0))
    k = make_rotation(-p).compose(f)
    return p, k


def beta_line(k: PLMap, r) -> PLMap:
    """The isotropy part of k o translation(r): translation(k(r))^-1 o k o translation(r)."""
    _require_line_isotropy(k)
    r = Fraction(r)
    return (
        make_translation(-k(r)).compose(k).compose(make_translation(r))
    )


def beta_circle(k: PLMap, p: CirclePoint) -> PLMap:
    """The isotropy part of k o rotation(p) on the circle."""
    _require_circle_isotropy(k)
    kp = circle_apply(k, p)
    return make_rotation(-kp).compose(k).compose(make_rotation(p))


LinePair = Tuple[Fraction, PLMap]
CirclePair = Tuple[CirclePoint, PLMap]


def parts_product(
    a: Union[LinePair, CirclePair], b: Union[LinePair, CirclePair]
) -> Union[LinePair, CirclePair]:
    """Multiply two (translation-or-rotation part, isotropy part) pairs.

    Matches composition of the assembled maps exactly:
    ``parts(assemble(a) o assemble(b)) == parts_product(a, b)``.
    """
    pa, ka = a
    pb, kb = b
    if ka.carrier is Carrier.LINE:
        _require_line_isotropy(ka)
        _require_line_isotropy(kb)
        return Fraction(pa) + ka(Fraction(pb)), beta_line(ka, pb).compose(kb)
    _require_circle_isotropy(ka)
    _require_circle_isotropy(kb)
    if not isinstance(pa, CirclePoint) or not isinstance(pb, CirclePoint):
        raise PLError("circle pairs need CirclePoint parts")
    return pa + circle_apply(ka, pb), beta_circle(ka, pb).compose(kb)
