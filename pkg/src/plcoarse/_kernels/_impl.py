"""Exact rational kernels for strictly increasing piecewise-linear maps.

Every function here works on "raw nodes": a list of ``(xn, xd, yn, yd)``
integer 4-tuples, one per node, where each coordinate is a rational in lowest
terms with positive denominator, x strictly increasing, y strictly
increasing.  Maps on the line are stored on the fundamental domain [0, 1] and
extended by ``f(x + n) = f(x) + n``; for those the node lists satisfy
``x0 = 0, x_last = 1, y_last = y0 + 1``.

This module is plain Python by design: the build compiles a byte-identical
twin (``_impl_c``) with Cython, and ``plcoarse._kernels`` selects whichever
is available.  Keep it free of imports beyond the stdlib ``math.gcd``.
"""

from math import gcd

# ---------------------------------------------------------------------------
# scalar rational arithmetic on (numerator, denominator) pairs
# ---------------------------------------------------------------------------


def q_norm(n, d):
    """Reduce n/d to lowest terms with positive denominator."""
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


def q_add(an, ad, bn, bd):
    return q_norm(an * bd + bn * ad, ad * bd)


def q_sub(an, ad, bn, bd):
    return q_norm(an * bd - bn * ad, ad * bd)


def q_mul(an, ad, bn, bd):
    return q_norm(an * bn, ad * bd)


def q_div(an, ad, bn, bd):
    return q_norm(an * bd, ad * bn)


def q_cmp(an, ad, bn, bd):
    """Sign of a - b (denominators positive)."""
    t = an * bd - bn * ad
    if t > 0:
        return 1
    if t < 0:
        return -1
    return 0


def q_floor(n, d):
    return n // d


def q_ceil(n, d):
    return -((-n) // d)


def q_abs(n, d):
    return (-n, d) if n < 0 else (n, d)


def q_to_int_dist(n, d):
    """Distance from n/d to the nearest integer, as a reduced pair."""
    r = n % d
    if 2 * r > d:
        r = d - r
    return q_norm(r, d)


def sort_pairs(pairs):
    """Sort reduced (n, d) pairs exactly (insertion into a merge)."""
    items = list(pairs)
    if len(items) < 2:
        return items
    mid = len(items) // 2
    left = sort_pairs(items[:mid])
    right = sort_pairs(items[mid:])
    out = []
    i = 0
    j = 0
    while i < len(left) and j < len(right):
        if q_cmp(left[i][0], left[i][1], right[j][0], right[j][1]) <= 0:
            out.append(left[i])
            i += 1
        else:
            out.append(right[j])
            j += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out


def unique_sorted_pairs(pairs):
    """Exact ascending order with duplicates removed."""
    out = []
    for p in sort_pairs(pairs):
        if not out or out[-1] != p:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# node-list primitives
# ---------------------------------------------------------------------------


def canonicalize(nodes):
    """Drop interior nodes that are collinear with their neighbours.

    Input must already be strictly increasing in x and y; output is the
    unique minimal node list describing the same map.
    """
    out = []
    for node in nodes:
        while len(out) >= 2:
            ax, axd, ay, ayd = out[-2]
            bx, bxd, by, byd = out[-1]
            cx, cxd, cy, cyd = node
            lhs = q_mul(*q_sub(bx, bxd, ax, axd), *q_sub(cy, cyd, ay, ayd))
            rhs = q_mul(*q_sub(by, byd, ay, ayd), *q_sub(cx, cxd, ax, axd))
            if lhs == rhs:
                out.pop()
            else:
                break
        out.append(node)
    return out


def _segment_index(nodes, xn, xd):
    """Largest i with nodes[i].x <= x, capped at len-2 (binary search)."""
    lo = 0
    hi = len(nodes) - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if q_cmp(nodes[mid][0], nodes[mid][1], xn, xd) <= 0:
            lo = mid
        else:
            hi = mid - 1
    return lo


def eval_nodes(nodes, xn, xd):
    """Evaluate at x, which must lie within [first x, last x]."""
    i = _segment_index(nodes, xn, xd)
    ax, axd, ay, ayd = nodes[i]
    if ax == xn and axd == xd:
        return ay, ayd
    bx, bxd, by, byd = nodes[i + 1]
    t = q_div(*q_sub(xn, xd, ax, axd), *q_sub(bx, bxd, ax, axd))
    return q_add(ay, ayd, *q_mul(*t, *q_sub(by, byd, ay, ayd)))


def eval_periodic(nodes, xn, xd):
    """Evaluate a [0,1]-based equivariant map at any rational x."""
    n = xn // xd
    yn, yd = eval_nodes(nodes, xn - n * xd, xd)
    return yn + n * yd, yd


def preimage_nodes(nodes, yn, yd):
    """Inverse evaluation: y must lie within [first y, last y]."""
    lo = 0
    hi = len(nodes) - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if q_cmp(nodes[mid][2], nodes[mid][3], yn, yd) <= 0:
            lo = mid
        else:
            hi = mid - 1
    ax, axd, ay, ayd = nodes[lo]
    if ay == yn and ayd == yd:
        return ax, axd
    bx, bxd, by, byd = nodes[lo + 1]
    t = q_div(*q_sub(yn, yd, ay, ayd), *q_sub(by, byd, ay, ayd))
    return q_add(ax, axd, *q_mul(*t, *q_sub(bx, bxd, ax, axd)))


def shift_y(nodes, m):
    """Post-compose with translation by the integer m."""
    return [(xn, xd, yn + m * yd, yd) for (xn, xd, yn, yd) in nodes]


def slopes(nodes):
    """Per-segment derivative values."""
    out = []
    for i in range(len(nodes) - 1):
        ax, axd, ay, ayd = nodes[i]
        bx, bxd, by, byd = nodes[i + 1]
        out.append(q_div(*q_sub(by, byd, ay, ayd), *q_sub(bx, bxd, ax, axd)))
    return out


def rebase(nodes):
    """Re-chart an equivariant map given on [c, c+1] onto [0, 1].

    ``nodes`` must be a valid strictly increasing node list whose x-range has
    length exactly 1; the map extends by f(x + n) = f(x) + n.
    """
    xs = [(0, 1), (1, 1)]
    for (xn, xd, _yn, _yd) in nodes:
        r = xn - (xn // xd) * xd
        if r != 0:
            xs.append((r, xd))
    xs = unique_sorted_pairs(xs)
    cn, cd = nodes[0][0], nodes[0][1]
    out = []
    for (xn, xd) in xs:
        # smallest integer shift placing x inside [c, c+1)
        wn, wd = q_sub(cn, cd, xn, xd)
        m = q_ceil(wn, wd)
        yn, yd = eval_nodes(nodes, xn + m * xd, xd)
        out.append((xn, xd, yn - m * yd, yd))
    return canonicalize(out)


def invert(nodes, periodic):
    """Node list of the inverse map (re-based onto [0,1] when periodic)."""
    swapped = [(yn, yd, xn, xd) for (xn, xd, yn, yd) in nodes]
    if not periodic:
        return canonicalize(swapped)
    return rebase(swapped)


def compose(f_nodes, g_nodes, periodic):
    """Node list of f o g on the stored domain.

    Breakpoints are g's own plus the g-preimages of f's breakpoints (all
    integer translates that meet g's range, in the periodic case).
    """
    xs = [(xn, xd) for (xn, xd, _yn, _yd) in g_nodes]
    g0n, g0d = g_nodes[0][2], g_nodes[0][3]
    extra = []
    if periodic:
        residues = set()
        for (xn, xd, _yn, _yd) in f_nodes:
            r = xn - (xn // xd) * xd
            residues.add((r, xd) if r else (0, 1))
        for (rn, rd) in residues:
            # integers m with g(0) <= r + m <= g(0) + 1
            lo = q_ceil(*q_sub(g0n, g0d, rn, rd))
            hi = q_floor(*q_add(*q_sub(g0n, g0d, rn, rd), 1, 1))
            for m in range(lo, hi + 1):
                extra.append(preimage_nodes(g_nodes, rn + m * rd, rd))
    else:
        for (xn, xd, _yn, _yd) in f_nodes:
            extra.append(preimage_nodes(g_nodes, xn, xd))
    xs = unique_sorted_pairs(xs + extra)
    out = []
    for (xn, xd) in xs:
        yn, yd = eval_nodes(g_nodes, xn, xd)
        if periodic:
            zn, zd = eval_periodic(f_nodes, yn, yd)
        else:
            zn, zd = eval_nodes(f_nodes, yn, yd)
        out.append((xn, xd, zn, zd))
    return canonicalize(out)


# ---------------------------------------------------------------------------
# refinement and metric kernels (all on the stored domain [0, 1])
# ---------------------------------------------------------------------------


def refine(f_nodes, g_nodes):
    """Common breakpoint grid with per-segment slopes of both maps."""
    xs = unique_sorted_pairs(
        [(xn, xd) for (xn, xd, _yn, _yd) in f_nodes]
        + [(xn, xd) for (xn, xd, _yn, _yd) in g_nodes]
    )
    sf = slopes(f_nodes)
    sg = slopes(g_nodes)
    out_f = []
    out_g = []
    fi = 0
    gi = 0
    for j in range(len(xs) - 1):
        xn, xd = xs[j]
        while fi + 1 < len(f_nodes) - 1 and q_cmp(
            f_nodes[fi + 1][0], f_nodes[fi + 1][1], xn, xd
        ) <= 0:
            fi += 1
        while gi + 1 < len(g_nodes) - 1 and q_cmp(
            g_nodes[gi + 1][0], g_nodes[gi + 1][1], xn, xd
        ) <= 0:
            gi += 1
        out_f.append(sf[fi])
        out_g.append(sg[gi])
    return xs, out_f, out_g


def l1_slope_distance(f_nodes, g_nodes):
    """Integral over [0,1] of |f' - g'| (piecewise constant integrand)."""
    xs, sf, sg = refine(f_nodes, g_nodes)
    accn, accd = 0, 1
    for j in range(len(xs) - 1):
        dn, dd = q_abs(*q_sub(sf[j][0], sf[j][1], sg[j][0], sg[j][1]))
        if dn:
            wn, wd = q_sub(xs[j + 1][0], xs[j + 1][1], xs[j][0], xs[j][1])
            accn, accd = q_add(accn, accd, *q_mul(dn, dd, wn, wd))
    return accn, accd


def sup_distance(f_nodes, g_nodes):
    """max over [0,1] of |f - g| (attained at a refined breakpoint)."""
    xs, _sf, _sg = refine(f_nodes, g_nodes)
    best = (0, 1)
    for (xn, xd) in xs:
        fn, fd = eval_nodes(f_nodes, xn, xd)
        gn, gd = eval_nodes(g_nodes, xn, xd)
        dn, dd = q_abs(*q_sub(fn, fd, gn, gd))
        if q_cmp(dn, dd, best[0], best[1]) > 0:
            best = (dn, dd)
    return best


def sup_circle_distance(f_nodes, g_nodes):
    """max over one period of the circle distance between f(x) and g(x).

    With h = f - g (piecewise linear, 1-periodic), the pointwise circle
    distance is dist(h(x), Z).  On a segment where h runs from a to b it
    attains 1/2 iff [a, b] contains a half-odd-integer, and otherwise its
    maximum sits at an endpoint, so no explicit subdivision points are
    needed: only the segment endpoint values enter.
    """
    xs, _sf, _sg = refine(f_nodes, g_nodes)
    vals = []
    for (xn, xd) in xs:
        fn, fd = eval_nodes(f_nodes, xn, xd)
        gn, gd = eval_nodes(g_nodes, xn, xd)
        vals.append(q_sub(fn, fd, gn, gd))
    best = (0, 1)
    for j in range(len(vals)):
        dn, dd = q_to_int_dist(vals[j][0], vals[j][1])
        if q_cmp(dn, dd, best[0], best[1]) > 0:
            best = (dn, dd)
    for j in range(len(vals) - 1):
        an, ad = vals[j]
        bn, bd = vals[j + 1]
        if q_cmp(an, ad, bn, bd) > 0:
            an, ad, bn, bd = bn, bd, an, ad
        lo = q_ceil(2 * an, ad)
        hi = q_floor(2 * bn, bd)
        if lo <= hi and not (lo == hi and lo % 2 == 0):
            return 1, 2
    return best
