"""Sampled property suites: exact algebraic laws checked on seeded random maps.

Each suite draws its inputs from per-sample child seeds of one master seed
(stream ``plcoarse-splitmix64-v1``), so a report is replayable from the seed
and sample index alone.  Every check is an exact rational equality or
inequality; a single failure makes the whole run fail.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import coarse, metrics, zappa_szep
from .groups import CirclePoint, hat, make_rotation, make_translation, restrict
from .pl import Carrier, PLMap, identity
from .randgen import STREAM_NAME, GenSpec, SplitMix64, derive_seed, gen_random

MAX_NODES = 12
DENOM_BOUND = 1 << 16


class UnknownSuiteError(ValueError):
    """No suite registered under that name."""


def _spec(seed: int, carrier: Carrier, salt: int = 0) -> GenSpec:
    child = derive_seed(seed, salt)
    count = 2 + child % (MAX_NODES - 1)
    return GenSpec(derive_seed(child, 0), count, DENOM_BOUND, carrier)


def _draw(seed: int, carrier: Carrier, salt: int = 0) -> PLMap:
    return gen_random(_spec(seed, carrier, salt))


def _draw_rational(seed: int, salt: int) -> Fraction:
    rng = SplitMix64(derive_seed(seed, salt))
    den = 1 + rng.next_below(DENOM_BOUND)
    num = rng.next_below(4 * DENOM_BOUND + 1) - 2 * DENOM_BOUND
    return Fraction(num, den)


def _draw_unit(seed: int, salt: int) -> Fraction:
    rng = SplitMix64(derive_seed(seed, salt))
    den = 1 + rng.next_below(DENOM_BOUND)
    num = rng.next_below(den + 1)
    return Fraction(num, den)


# --- individual suites ------------------------------------------------------


def _suite_dinf_le_dstar(seed: int) -> Tuple[bool, str]:
    f = _draw(seed, Carrier.INTERVAL, 0)
    g = _draw(seed, Carrier.INTERVAL, 1)
    di, ds = metrics.d_inf(f, g), metrics.d_star(f, g)
    return di <= ds, f"d_inf={di} d_star={ds}"


def _suite_dstar_right_invariance(seed: int) -> Tuple[bool, str]:
    for salt, carrier in enumerate(Carrier):
        f = _draw(seed, carrier, 3 * salt)
        g = _draw(seed, carrier, 3 * salt + 1)
        u = _draw(seed, carrier, 3 * salt + 2)
        lhs = metrics.d_star(f.compose(u), g.compose(u))
        rhs = metrics.d_star(f, g)
        if lhs != rhs:
            return False, f"{carrier.value}: {lhs} != {rhs}"
    return True, "invariant on all carriers"


def _suite_dstar_translation_invariance(seed: int) -> Tuple[bool, str]:
    f = _draw(seed, Carrier.LINE, 0)
    g = _draw(seed, Carrier.LINE, 1)
    r = _draw_rational(seed, 2)
    s = _draw_rational(seed, 3)
    lhs = metrics.d_star(make_translation(r).compose(f), make_translation(s).compose(g))
    rhs = metrics.d_star(f, g)
    return lhs == rhs, f"{lhs} vs {rhs}"


def _suite_homotopy_linearity(seed: int) -> Tuple[bool, str]:
    f = _draw(seed, Carrier.INTERVAL, 0)
    rng = SplitMix64(derive_seed(seed, 1))
    den = 1 + rng.next_below(256)
    r = Fraction(rng.next_below(den + 1), den)
    den = 1 + rng.next_below(256)
    s = Fraction(rng.next_below(den + 1), den)
    direct = coarse.homotopy_distance(f, r, s)
    scaled = abs(r - s) * metrics.d_star(f, identity(Carrier.INTERVAL))
    if direct != scaled:
        return False, f"direct {direct} != scaled {scaled}"
    if direct > 2 * abs(r - s):
        return False, f"{direct} exceeds 2|r-s|"
    return True, f"d={direct}"


def _suite_certificate_soundness(seed: int) -> Tuple[bool, str]:
    f = _draw(seed, Carrier.INTERVAL, 0)
    delta = (Fraction(1), Fraction(1, 4), Fraction(1, 64))[derive_seed(seed, 1) % 3]
    cert = coarse.factorize(f, delta)
    issues = cert.problems()
    return not issues, f"n={cert.n}" if not issues else "; ".join(issues)


def _suite_metric_sandwich(seed: int) -> Tuple[bool, str]:
    for salt, carrier in enumerate((Carrier.LINE, Carrier.CIRCLE)):
        f = _draw(seed, carrier, 2 * salt)
        g = _draw(seed, carrier, 2 * salt + 1)
        d = metrics.d_product(f, g)
        s = metrics.d_sum(f, g)
        if not (d <= s <= 2 * d):
            return False, f"{carrier.value}: d={d} sum={s}"
    return True, "sandwich holds"


def _suite_pseudometric_degeneracy(seed: int) -> Tuple[bool, str]:
    r = _draw_rational(seed, 0)
    if r == 0:
        r = Fraction(1, 1 + derive_seed(seed, 1) % DENOM_BOUND)
    tau = make_translation(r)
    ident = identity(Carrier.LINE)
    ds = metrics.d_star(tau, ident)
    dsum = metrics.d_sum(tau, ident)
    return ds == 0 and dsum == abs(r), f"d_star={ds} d_sum={dsum} |r|={abs(r)}"


def _suite_qi_witness(seed: int) -> Tuple[bool, str]:
    g = _draw(seed, Carrier.LINE, 0)
    h = _draw(seed, Carrier.LINE, 1)
    w = coarse.qi_witness(g)
    if w.density_bound > coarse.DENSITY_BOUND:
        return False, f"density bound {w.density_bound}"
    chk = coarse.qi_inequality_check(g, h)
    if not (chk.lower_ok and chk.upper_ok):
        return False, f"{chk.lower} <= {chk.value} <= {chk.upper} fails"
    r = _draw_rational(seed, 2)
    s = _draw_rational(seed, 3)
    iso = metrics.d_sum(make_translation(r), make_translation(s))
    if iso != abs(r - s):
        return False, f"translation embedding distorted: {iso} != |{r}-{s}|"
    return True, f"bound={w.density_bound}"


def _suite_circle_boundedness(seed: int) -> Tuple[bool, str]:
    f = _draw(seed, Carrier.CIRCLE, 0)
    g = _draw(seed, Carrier.CIRCLE, 1)
    value = coarse.circle_diameter_check(f, g)
    p = CirclePoint.from_rational(_draw_unit(seed, 2))
    q = CirclePoint.from_rational(_draw_unit(seed, 3))
    rot_diam = metrics.d_star(make_rotation(p), make_rotation(q))
    return rot_diam == 0, f"d_sum={value} rotation d_star={rot_diam}"


def _suite_hat_isometry(seed: int) -> Tuple[bool, str]:
    f = _draw(seed, Carrier.INTERVAL, 0)
    g = _draw(seed, Carrier.INTERVAL, 1)
    hf, hg = hat(f), hat(g)
    if restrict(hf) != f or hat(restrict(hf)) != hf:
        return False, "round trip failed"
    if hat(f.compose(g)) != hf.compose(hg):
        return False, "extension is not a homomorphism"
    lhs, rhs = metrics.d_star(hf, hg), metrics.d_star(f, g)
    return lhs == rhs, f"{lhs} vs {rhs}"


def _suite_group_axioms(seed: int) -> Tuple[bool, str]:
    for salt, carrier in enumerate(Carrier):
        f = _draw(seed, carrier, 3 * salt)
        g = _draw(seed, carrier, 3 * salt + 1)
        h = _draw(seed, carrier, 3 * salt + 2)
        ident = identity(carrier)
        if f.compose(g).compose(h) != f.compose(g.compose(h)):
            return False, f"{carrier.value}: associativity"
        if f.compose(ident) != f or ident.compose(f) != f:
            return False, f"{carrier.value}: identity"
        if f.compose(f.inverse()) != ident or f.inverse().compose(f) != ident:
            return False, f"{carrier.value}: inverse"
    return True, "group axioms hold"


def _suite_eval_compose(seed: int) -> Tuple[bool, str]:
    for salt, carrier in enumerate(Carrier):
        f = _draw(seed, carrier, 3 * salt)
        g = _draw(seed, carrier, 3 * salt + 1)
        x = _draw_unit(seed, 3 * salt + 2)
        if carrier is not Carrier.INTERVAL:
            x += derive_seed(seed, 100 + salt) % 7 - 3
        fg = f.compose(g)
        if fg(x) != f(g(x)):
            return False, f"{carrier.value}: eval mismatch at {x}"
        if carrier is not Carrier.INTERVAL and g(x + 1) != g(x) + 1:
            return False, f"{carrier.value}: equivariance fails at {x}"
    return True, "eval/compose agree"


def _suite_ivt_ball(seed: int) -> Tuple[bool, str]:
    k = hat(_draw(seed, Carrier.INTERVAL, 0))
    s = 2 * _draw_unit(seed, 1) - 1
    v = k(s)
    return -1 <= v <= 1, f"k({s}) = {v}"


def _suite_coset_diameter(seed: int) -> Tuple[bool, str]:
    k = hat(_draw(seed, Carrier.INTERVAL, 0))
    rs = [_draw_rational(seed, 1), _draw_rational(seed, 2), Fraction(0)]
    right = [make_translation(r).compose(k) for r in rs]
    for a in right:
        for b in right:
            if metrics.d_star(a, b) != 0:
                return False, "translate-then-k coset has positive diameter"
    left = [k.compose(make_translation(r)) for r in rs]
    diam = max(metrics.d_star(a, b) for a in left for b in left)
    if k.is_identity():
        return diam == 0, f"identity coset diameter {diam}"
    return diam > 0, f"k-then-translate diameter {diam}"


def _suite_zs_roundtrip(seed: int) -> Tuple[bool, str]:
    g = _draw(seed, Carrier.LINE, 0)
    d = zappa_szep.line_parts(g)
    if zappa_szep.line_from_parts(d.translation, d.isotropy) != g:
        return False, "line round trip failed"
    g2 = _draw(seed, Carrier.LINE, 1)
    d2 = zappa_szep.line_parts(g2)
    pr, pk = zappa_szep.parts_product(
        (d.translation, d.isotropy), (d2.translation, d2.isotropy)
    )
    if zappa_szep.line_from_parts(pr, pk) != g.compose(g2):
        return False, "line parts product mismatch"
    c = _draw(seed, Carrier.CIRCLE, 2)
    p, k = zappa_szep.circle_parts(c)
    if zappa_szep.circle_from_parts(p, k) != c:
        return False, "circle round trip failed"
    c2 = _draw(seed, Carrier.CIRCLE, 3)
    p2, k2 = zappa_szep.circle_parts(c2)
    qp, qk = zappa_szep.parts_product((p, k), (p2, k2))
    if zappa_szep.circle_from_parts(qp, qk) != c.compose(c2):
        return False, "circle parts product mismatch"
    return True, "round trips and products agree"


def _suite_beta_invariance(seed: int) -> Tuple[bool, str]:
    k = hat(_draw(seed, Carrier.INTERVAL, 0))
    l = hat(_draw(seed, Carrier.INTERVAL, 1))
    r = _draw_rational(seed, 2)
    s = _draw_rational(seed, 3)
    lhs = metrics.d_star(zappa_szep.beta_line(k, r), zappa_szep.beta_line(l, s))
    rhs = metrics.d_star(k, l.compose(make_translation(s - r)))
    return lhs == rhs, f"{lhs} vs {rhs}"


SUITES: Dict[str, Callable[[int], Tuple[bool, str]]] = {
    "dinf-le-dstar": _suite_dinf_le_dstar,
    "dstar-right-invariance": _suite_dstar_right_invariance,
    "dstar-translation-invariance": _suite_dstar_translation_invariance,
    "homotopy-linearity": _suite_homotopy_linearity,
    "certificate-soundness": _suite_certificate_soundness,
    "metric-sandwich": _suite_metric_sandwich,
    "pseudometric-degeneracy": _suite_pseudometric_degeneracy,
    "qi-witness": _suite_qi_witness,
    "circle-boundedness": _suite_circle_boundedness,
    "hat-isometry": _suite_hat_isometry,
    "group-axioms": _suite_group_axioms,
    "eval-compose": _suite_eval_compose,
    "ivt-ball": _suite_ivt_ball,
    "coset-diameter": _suite_coset_diameter,
    "zs-roundtrip": _suite_zs_roundtrip,
    "beta-invariance": _suite_beta_invariance,
}


@dataclass(frozen=True)
class SampleResult:
    index: int
    seed: int
    passed: bool
    detail: str


@dataclass(frozen=True)
class ExperimentReport:
    """Replayable record of one suite run."""

    suite: str
    stream: str
    seed: int
    count: int
    results: Tuple[SampleResult, ...]

    @property
    def failures(self) -> Tuple[SampleResult, ...]:
        return tuple(r for r in self.results if not r.passed)

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "stream", "seed", "count", "passed", "failed"])
        writer.writerow(
            [
                self.suite,
                self.stream,
                self.seed,
                self.count,
                len(self.results) - len(self.failures),
                len(self.failures),
            ]
        )
        writer.writerow([])
        writer.writerow(["index", "sample_seed", "passed", "detail"])
        for r in self.results:
            writer.writerow([r.index, r.seed, "pass" if r.passed else "FAIL", r.detail])
        return buf.getvalue()


def run_suite(name: str, count: int, seed: int) -> ExperimentReport:
    """Run ``count`` samples of a registered suite under a master seed."""
    try:
        fn = SUITES[name]
    except KeyError:
        known = ", ".join(sorted(SUITES))
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {known}") from None
    results: List[SampleResult] = []
    for i in range(count):
        child = derive_seed(seed, i)
        passed, detail = fn(child)
        results.append(SampleResult(i, child, passed, detail))
    from .randgen import STREAM_NAME

    return ExperimentReport(name, STREAM_NAME, seed, count, tuple(results))
