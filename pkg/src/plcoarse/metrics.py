"""Exact metrics and pseudometrics on the PL homeomorphism groups.

* ``d_inf`` -- the uniform distance: sup |f - g| on the interval and line
  (one period suffices on the line), and the sup of the circle distance
  between image points on the circle.
* ``d_star`` -- the L1 distance between derivatives over one period.  A
  metric on the interval group, only a pseudometric on the line and circle
  (it vanishes whenever f - g is constant).
* ``d_product`` -- the translation-part distance plus ``d_star``; the
  natural metric of the translation/isotropy product decomposition.
* ``d_sum`` -- ``d_inf + d_star``.

Everything returns an exact Fraction; there are no tolerances anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from ._kernels import active as _K
from .groups import CirclePoint
from .pl import Carrier, CarrierMismatchError, PLMap


def _check_same_carrier(f: PLMap, g: PLMap, *allowed: Carrier) -> Carrier:
    if f.carrier is not g.carrier:
        raise CarrierMismatchError(
            f"metric needs one carrier, got {f.carrier.value} and {g.carrier.value}"
        )
    if allowed and f.carrier not in allowed:
        names = ", ".join(c.value for c in allowed)
        raise CarrierMismatchError(f"metric defined on {names} only")
    return f.carrier


def d_inf(f: PLMap, g: PLMap) -> Fraction:
    """Uniform distance (exact sup, attained on the refined node grid)."""
    carrier = _check_same_carrier(f, g)
    if carrier is Carrier.CIRCLE:
        return Fraction(*_K.sup_circle_distance(f._raw, g._raw))
    return Fraction(*_K.sup_distance(f._raw, g._raw))


def d_star(f: PLMap, g: PLMap) -> Fraction:
    """L1 distance between derivatives over one period (exact integral)."""
    _check_same_carrier(f, g)
    return Fraction(*_K.l1_slope_distance(f._raw, g._raw))


def d_circle_point(p: CirclePoint, q: CirclePoint) -> Fraction:
    """Distance on R/Z: the minimum over integer shifts of |p - q|."""
    t = abs(p.value - q.value)
    return min(t, 1 - t)


def d_product(f: PLMap, g: PLMap) -> Fraction:
    """Translation-part distance plus d_star (line and circle carriers)."""
    carrier = _check_same_carrier(f, g, Carrier.LINE, Carrier.CIRCLE)
    if carrier is Carrier.LINE:
        base = abs(f(0) - g(0))
    else:
        base = d_circle_point(CirclePoint(f(0)), CirclePoint(g(0)))
    return base + d_star(f, g)


def d_sum(f: PLMap, g: PLMap) -> Fraction:
    """The right-invariant metric d_inf + d_star."""
    _check_same_carrier(f, g)
    return d_inf(f, g) + d_star(f, g)


METRICS = {
    "dinf": d_inf,
    "dstar": d_star,
    "sum": d_sum,
    "product": d_product,
}
