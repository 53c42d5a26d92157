"""Newton polygons and non-archimedean root finding in K_{m,e}.

Convention: for f = sum a_i X^i the polygon is the lower convex hull of the
points (i, v(a_i)) (grid-unit valuations).  A segment of slope s and
horizontal length L certifies L roots of valuation -s.  Slopes are exact
Fractions; a root can only be represented when its slope is an integer
number of grid units, otherwise GridTooCoarse reports the missing divisor.

Roots are located by the classical descent: each segment yields a residual
polynomial over F_{q^m}; a simple residual root gives a Newton-ready seed,
a multiple residual root shifts the polynomial and recurses on the strictly
smaller slopes.  Root differences of the separable polynomials that appear
here are bounded away from each other, so the descent terminates.
"""

import logging
import math
from fractions import Fraction

from .cinf import INF, CInfApprox
from .errors import (GridTooCoarse, IndeterminateValuation, NoConvergence,
                     ResidueFieldTooSmall)

log = logging.getLogger(__name__)

_MAX_NEWTON_ITER = 64
_MAX_DESCENT = 32


class NewtonPolygon:
    """Lower hull of coefficient valuations.

    segments: list of (slope, length) with slope an exact Fraction in grid
    units and strictly increasing; ord0 counts exact-zero low coefficients
    (roots at the origin are not certified by the polygon).
    """

    def __init__(self, segments, ord0, degree):
        self.segments = segments
        self.ord0 = ord0
        self.degree = degree

    def root_valuations(self):
        """Multiset of certified root valuations as (valuation, count)."""
        return [(-s, l) for s, l in self.segments]

    def theta_slopes(self, e):
        return [(Fraction(s) / e, l) for s, l in self.segments]

    def __repr__(self):
        return "NewtonPolygon(%s, ord0=%d)" % (self.segments, self.ord0)


def _coefficient_points(coeffs):
    """(index, valuation) for determinate coefficients; precision floor of
    the indeterminate ones so the hull can be certified against them."""
    pts = []
    indeterminate = []
    for i, a in enumerate(coeffs):
        if a is None or a.is_exact_zero():
            continue
        if a.is_apparent_zero():
            indeterminate.append((i, a.prec))
        else:
            pts.append((i, a.valuation()))
    return pts, indeterminate


def newton_polygon(coeffs):
    """Polygon of a polynomial given as a dense list of CInfApprox."""
    pts, indet = _coefficient_points(coeffs)
    if not pts:
        raise IndeterminateValuation("all coefficients are zero to precision")
    ord0 = pts[0][0]
    degree = pts[-1][0]
    for i, p in indet:
        if i > degree:
            raise IndeterminateValuation(
                "coefficient %d is zero to precision %s but would raise the "
                "degree" % (i, p))
    # lower hull with strictly increasing slopes
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if Fraction(y2 - y1, x2 - x1) >= Fraction(pt[1] - y1, pt[0] - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = [(Fraction(y2 - y1, x2 - x1), x2 - x1)
                for (x1, y1), (x2, y2) in zip(hull, hull[1:])]

    def hull_value(i):
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                return Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (i - x1)
        return None

    # every coefficient must be known strictly below any level where it
    # could disturb the hull
    for i, p in indet:
        hv = hull_value(i)
        if hv is not None and p <= hv:
            raise IndeterminateValuation(
                "coefficient %d known only to precision %s, hull needs > %s"
                % (i, p, hv))
    return NewtonPolygon(segments, ord0, degree)


# ---------------------------------------------------------------------------


def _pow_cache(x, cache, n):
    """x^n with memoized binary powering (n >= 0)."""
    if n in cache:
        return cache[n]
    if n % 2 == 0:
        half = _pow_cache(x, cache, n // 2)
        val = half * half
    else:
        val = _pow_cache(x, cache, n - 1) * x
    cache[n] = val
    return val


def poly_eval(coeffs, x):
    """Evaluate a dense CInfApprox polynomial; skips structural zeros."""
    cfg = x.cfg
    cache = {0: cfg.one(), 1: x}
    acc = cfg.zero()
    for i, a in enumerate(coeffs):
        if a is None or a.is_exact_zero():
            continue
        acc = acc + a * _pow_cache(x, cache, i)
    return acc


def poly_derivative(coeffs):
    cfg = coeffs[0].cfg
    out = []
    for i, a in enumerate(coeffs[1:], start=1):
        out.append(a * (i % cfg.p))
    return out if out else [cfg.zero(prec=INF)]


def poly_shift(coeffs, x0):
    """Coefficients of f(x0 + h) as a polynomial in h."""
    cfg = x0.cfg
    p = cfg.p
    deg = len(coeffs) - 1
    cache = {0: cfg.one(), 1: x0}
    out = [cfg.zero(prec=INF) for _ in range(deg + 1)]
    for i, a in enumerate(coeffs):
        if a is None or a.is_exact_zero():
            continue
        for j in range(i + 1):
            b = math.comb(i, j) % p
            if b == 0:
                continue
            term = a * _pow_cache(x0, cache, i - j)
            if b != 1:
                term = term * b
            out[j] = out[j] + term
    return out


def newton_iterate(coeffs, seed, check_criterion=True):
    """Newton's method x <- x - f(x)/f'(x) from the seed.

    With check_criterion the classical condition |f(x0)| < |f'(x0)|^2 is
    required up front; it guarantees a unique root in the seed's disc.
    Returns (root, iterations).
    """
    deriv = poly_derivative(coeffs)
    x = seed
    fx = poly_eval(coeffs, x)
    dfx = poly_eval(deriv, x)
    if check_criterion:
        if dfx.is_apparent_zero():
            raise NoConvergence("derivative vanishes at the seed")
        if not fx.is_apparent_zero() and \
                fx.valuation() <= 2 * dfx.valuation():
            raise NoConvergence(
                "Newton criterion fails: v(f) = %s <= 2 v(f') = %s"
                % (fx.valuation(), 2 * dfx.valuation()))
    last = -INF
    for it in range(_MAX_NEWTON_ITER):
        if fx.is_apparent_zero():
            log.debug("newton converged after %d iterations", it)
            return x, it
        v = fx.valuation()
        if v <= last:
            # stalled at the precision floor
            log.debug("newton stalled at v(f)=%s after %d iterations", v, it)
            return x, it
        last = v
        x = x - fx / dfx
        fx = poly_eval(coeffs, x)
        dfx = poly_eval(deriv, x)
    raise NoConvergence("Newton iteration did not stabilize in %d steps"
                        % _MAX_NEWTON_ITER)


def hensel_root(coeffs, seed):
    """The unique root inside the seed's convergence disc.

    Requires the standard criterion |f(seed)| < |f'(seed)|^2; the result
    satisfies f(root) = 0 to the propagated working precision.
    """
    root, iters = newton_iterate(coeffs, seed, check_criterion=True)
    res = poly_eval(coeffs, root)
    target = seed.cfg.pass_threshold()
    if res.vbound() < target:
        raise NoConvergence(
            "root residual v = %s below certification threshold %d"
            % (res.vbound(), target))
    log.debug("hensel_root: %d iterations, residual v >= %s", iters,
              res.vbound())
    return root


def _segment_residual(coeffs, hull_i0, v0, slope, length):
    """Residual polynomial of a polygon segment, low degree first."""
    out = []
    for k in range(length + 1):
        i = hull_i0 + k
        line = v0 + slope * k
        a = coeffs[i] if i < len(coeffs) else None
        if line.denominator != 1 or a is None:
            out.append(0)
        else:
            out.append(a.terms.get(int(line), 0))
    return out


def _segment_roots(coeffs, i0, v0, slope, length, depth):
    """All roots hanging off one polygon segment (descending clusters)."""
    cfg = coeffs[-1].cfg
    threshold = cfg.pass_threshold()
    if slope.denominator != 1:
        raise GridTooCoarse(
            "polygon slope %s is not integral on the grid" % slope,
            hint="multiply e by %d (repeated p-denominators at deeper "
                 "descent levels indicate wildly ramified roots with no "
                 "theta-power-grid expansion at all)" % slope.denominator,
            needed_factor=slope.denominator)
    lam = int(slope)
    residual = _segment_residual(coeffs, i0, v0, slope, length)
    roots = []
    found = 0
    for z, mult in cfg.field.poly_roots(residual):
        if z == 0:
            continue
        x0 = cfg.monomial(-lam, z)
        if mult == 1:
            # Newton is invariant under affine rescaling, so a simple
            # residual root converges without the raw magnitude test
            r, _ = newton_iterate(coeffs, x0, check_criterion=False)
            if depth == 0 and poly_eval(coeffs, r).vbound() < threshold:
                raise NoConvergence(
                    "root from residual class %d did not certify to "
                    "threshold %d" % (z, threshold))
            roots.append(r)
        else:
            shifted = poly_shift(coeffs, x0)
            sub = [r for r in all_nonzero_roots(shifted, depth + 1)
                   if r.valuation() > -lam]
            if len(sub) != mult:
                raise NoConvergence(
                    "cluster descent found %d of %d roots at slope %d"
                    % (len(sub), mult, lam))
            roots.extend(x0 + h for h in sub)
        found += mult
    if found != length:
        raise ResidueFieldTooSmall(
            "segment of slope %d certifies %d roots but only %d residual "
            "roots lie in F_%d" % (lam, length, found, cfg.field.size),
            hint="increase the extension degree m")
    return roots


def _iter_segments(coeffs):
    polygon = newton_polygon(coeffs)
    pts, _ = _coefficient_points(coeffs)
    vals = dict(pts)
    i0 = polygon.ord0
    v0 = Fraction(vals[i0])
    for slope, length in polygon.segments:
        yield i0, v0, slope, length
        i0 += length
        v0 += slope * length


def all_nonzero_roots(coeffs, depth=0):
    """All roots of the polynomial that are units times grid monomials.

    Every segment must have an integral slope (GridTooCoarse otherwise) and
    every residual equation must split over F_{q^m} (ResidueFieldTooSmall
    otherwise); multiplicities descend recursively.  Returns a list of
    CInfApprox roots of length = degree - ord0.
    """
    if depth > _MAX_DESCENT:
        raise NoConvergence("root cluster descent exceeded %d levels"
                            % _MAX_DESCENT)
    roots = []
    for i0, v0, slope, length in _iter_segments(coeffs):
        roots.extend(_segment_roots(coeffs, i0, v0, slope, length, depth))
    return roots


def partial_nonzero_roots(coeffs):
    """Like all_nonzero_roots, but collects per-segment failures instead of
    raising: returns (roots, failures) with failures a list of error
    records.  Used to salvage the representable part of a torsion module
    whose other part is wildly ramified."""
    roots = []
    failures = []
    for i0, v0, slope, length in _iter_segments(coeffs):
        try:
            roots.extend(_segment_roots(coeffs, i0, v0, slope, length, 0))
        except (GridTooCoarse, NoConvergence, ResidueFieldTooSmall) as ex:
            failures.append({"slope": str(slope), "length": length,
                             **ex.record()})
    return roots, failures
