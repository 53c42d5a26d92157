"""Precision-tracked Laurent expansions in theta^(-1/e) over F_{q^m}.

A CInfApprox stores finitely many known terms of an element of the graded
field K_{m,e} = F_{q^m}((theta^(-1/e))) together with an absolute precision:
``terms`` maps a grid exponent n (the term is theta^(-n/e)) to a nonzero
field code, and every exponent >= ``prec`` is unknown.  The valuation of a
term is its grid exponent, so v(theta) = -e and |x| = q^(-v(x)/e).

Precision semantics (the only sound ones under truncation):

* "zero to precision" means no known nonzero term;
* add/sub:  prec = min(prec_a, prec_b);
* mul:      prec = min(prec_a + v(b), prec_b + v(a));
* div:      via Newton inversion of the leading term; when both inputs are
  exact the quotient is capped at relative depth ``cfg.rel_prec``, since an
  infinite expansion cannot be stored.

Values built from constants and theta-monomials are exact (infinite
precision) and stay exact under ring operations, so the polynomial data of
a computation never pays a truncation cost.
"""

import math
from fractions import Fraction

from .errors import (ConfigError, DivisionByApparentZero, GridTooCoarse,
                     IndeterminateValuation, PrecisionExhausted)
from .fields import FiniteField, is_prime

INF = math.inf


class FieldConfig:
    """Ambient computation context: the field tower, the exponent grid and
    the precision budget.

    e must be divisible by (q-1)*q^depth: the (q-1) part keeps the root
    (-theta)^(1/(q-1)) on the grid and the q^depth part keeps coefficient
    inverse-twists down to the configured depth representable.  Individual
    torsion computations may need finer grids still; they raise
    GridTooCoarse with the missing divisor rather than auto-refining.
    """

    def __init__(self, p, s=1, m=1, modulus=None, e=None, depth=2,
                 prec=240, rel_prec=None, t_terms=32, exp_depth=12,
                 pole_count=None, tower_cap=12, allow_char2=False):
        if not is_prime(p):
            raise ConfigError("p = %r is not prime" % (p,))
        if p == 2 and not allow_char2:
            raise ConfigError(
                "p = 2 is untested for the rank-2 theory",
                hint="pass allow_char2=True to proceed anyway")
        self.p = p
        self.s = s
        self.m = m
        self.q = p ** s
        self.depth = depth
        if e is None:
            e = (self.q - 1) * self.q ** depth
        if e <= 0 or e % ((self.q - 1) * self.q ** depth) != 0:
            raise ConfigError(
                "e = %d must be a positive multiple of (q-1)*q^depth = %d"
                % (e, (self.q - 1) * self.q ** depth))
        self.e = e
        self.field = FiniteField(p, s, m, modulus)
        self.modulus = self.field.modulus
        self.prec = int(prec)
        self.rel_prec = int(rel_prec) if rel_prec is not None else 4 * self.prec
        if self.rel_prec < self.prec:
            raise ConfigError("rel_prec must be at least prec")
        self.t_terms = t_terms
        self.exp_depth = exp_depth
        self.pole_count = pole_count
        self.tower_cap = tower_cap

    def pass_threshold(self, frac=0.8):
        """Grid valuation a residual must reach to count as zero."""
        return int(frac * self.prec)

    # -- element constructors -------------------------------------------------

    def zero(self, prec=INF):
        return CInfApprox(self, {}, prec)

    def one(self):
        return CInfApprox(self, {0: 1}, INF)

    def monomial(self, exp, coeff=1, prec=INF):
        """coeff * theta^(-exp/e); exp in grid units."""
        return CInfApprox(self, {int(exp): coeff}, prec)

    def theta(self, n=1):
        """theta^n for integer n (valuation -n*e)."""
        return CInfApprox(self, {-n * self.e: 1}, INF)

    def from_int(self, n):
        return CInfApprox(self, {0: self.field.from_int(n)}, INF)

    def from_coeff(self, code):
        return CInfApprox(self, {0: code}, INF)

    def from_theta_poly(self, codes):
        """sum codes[i] * theta^i from a list of field codes."""
        return CInfApprox(
            self, {-i * self.e: c for i, c in enumerate(codes) if c}, INF)

    def same_as(self, other):
        return (self.p, self.s, self.m, self.e, self.modulus) == \
               (other.p, other.s, other.m, other.e, other.modulus)

    def __repr__(self):
        return ("FieldConfig(p=%d, s=%d, m=%d, e=%d, prec=%d)"
                % (self.p, self.s, self.m, self.e, self.prec))


class CInfApprox:
    """One precision-tracked element of K_{m,e}; immutable after creation."""

    __slots__ = ("cfg", "terms", "prec", "_sorted")

    def __init__(self, cfg, terms, prec=INF):
        self.cfg = cfg
        if prec != INF:
            prec = int(prec)
            terms = {e: c for e, c in terms.items() if c and e < prec}
        else:
            terms = {e: c for e, c in terms.items() if c}
        self.terms = terms
        self.prec = prec
        self._sorted = None

    # -- inspection -----------------------------------------------------------

    def sorted_terms(self):
        if self._sorted is None:
            self._sorted = sorted(self.terms.items())
        return self._sorted

    def is_exact_zero(self):
        return not self.terms and self.prec == INF

    def is_apparent_zero(self):
        """No known nonzero term (exactly zero, or zero to precision)."""
        return not self.terms

    def valuation(self):
        """Grid valuation; INF for the exact zero.

        Raises IndeterminateValuation when the value is zero to finite
        precision, since its true valuation is then unknowable.
        """
        if self.terms:
            return min(self.terms)
        if self.prec == INF:
            return INF
        raise IndeterminateValuation(
            "value is zero to precision %s; valuation unknown" % self.prec)

    def vbound(self):
        """Best lower bound for the valuation: exact when terms are known,
        otherwise the precision.  This is what residual reports quote."""
        return min(self.terms) if self.terms else self.prec

    def theta_valuation(self):
        v = self.valuation()
        return v if v == INF else Fraction(v, self.cfg.e)

    def abs_log_q(self):
        """log_q |x| as a Fraction (-INF for the exact zero)."""
        v = self.valuation()
        return -INF if v == INF else Fraction(-v, self.cfg.e)

    def leading(self):
        """(exponent, coefficient) of the lowest known term."""
        if not self.terms:
            raise PrecisionExhausted("no known leading term")
        e = min(self.terms)
        return e, self.terms[e]

    def is_zero_to(self, threshold):
        """True when v(self) >= threshold is certified."""
        return self.vbound() >= threshold

    def equals(self, other, threshold=None):
        if threshold is None:
            threshold = self.cfg.pass_threshold()
        return (self - other).is_zero_to(threshold)

    # -- ring operations ------------------------------------------------------

    def _check(self, other):
        if self.cfg is not other.cfg and not self.cfg.same_as(other.cfg):
            raise ConfigError("operands built over different FieldConfigs")

    def __add__(self, other):
        if not isinstance(other, CInfApprox):
            return NotImplemented
        self._check(other)
        add = self.cfg.field.add
        prec = min(self.prec, other.prec)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                s = add(cur, c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return CInfApprox(self.cfg, out, prec)

    def __neg__(self):
        neg = self.cfg.field.neg
        return CInfApprox(self.cfg, {e: neg(c) for e, c in self.terms.items()},
                          self.prec)

    def __sub__(self, other):
        if not isinstance(other, CInfApprox):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.cfg.field.from_int(other))
        if not isinstance(other, CInfApprox):
            return NotImplemented
        self._check(other)
        va = min(self.terms) if self.terms else self.prec
        vb = min(other.terms) if other.terms else other.prec
        prec = min(self.prec + vb, other.prec + va)
        if not self.terms or not other.terms:
            return CInfApprox(self.cfg, {}, prec)
        F = self.cfg.field
        log, exp = F._log, F._exp
        order = F.size - 1
        addt = F._add
        out = {}
        ta = self.sorted_terms()
        tb = other.sorted_terms()
        if len(ta) > len(tb):
            ta, tb = tb, ta
        for ea, ca in ta:
            la = log[ca]
            limit = prec - ea
            if addt is not None:
                for eb, cb in tb:
                    if eb >= limit:
                        break
                    k = la + log[cb]
                    if k >= order:
                        k -= order
                    c = exp[k]
                    e = ea + eb
                    cur = out.get(e)
                    if cur is None:
                        out[e] = c
                    else:
                        s = addt[cur][c]
                        if s:
                            out[e] = s
                        else:
                            del out[e]
            else:
                fadd = F.add
                for eb, cb in tb:
                    if eb >= limit:
                        break
                    k = la + log[cb]
                    if k >= order:
                        k -= order
                    c = exp[k]
                    e = ea + eb
                    cur = out.get(e)
                    if cur is None:
                        out[e] = c
                    else:
                        s = fadd(cur, c)
                        if s:
                            out[e] = s
                        else:
                            del out[e]
        return CInfApprox(self.cfg, out, prec)

    __rmul__ = __mul__

    def scale(self, code):
        """Multiply by a field constant (code)."""
        if code == 0:
            return CInfApprox(self.cfg, {}, INF)
        mul = self.cfg.field.mul
        return CInfApprox(self.cfg,
                          {e: mul(c, code) for e, c in self.terms.items()},
                          self.prec)

    def shift(self, k):
        """Multiply by the grid monomial of valuation k (exact)."""
        return CInfApprox(self.cfg,
                          {e + k: c for e, c in self.terms.items()},
                          self.prec if self.prec == INF else self.prec + k)

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return CInfApprox(self.cfg, self.terms, prec)

    def inverse(self):
        """1/self by Newton iteration on x -> x(2 - self*x).

        A single-term value inverts exactly; otherwise the result is capped
        at relative precision cfg.rel_prec (or the propagated precision of
        self, whichever is smaller).
        """
        if not self.terms:
            raise DivisionByApparentZero(
                "divisor is zero to precision %s" % self.prec)
        cfg = self.cfg
        F = cfg.field
        v, lead = self.leading()
        if len(self.terms) == 1:
            out = CInfApprox(cfg, {-v: F.inv(lead)},
                             INF if self.prec == INF
                             else self.prec - 2 * v)
            return out
        window = cfg.rel_prec if self.prec == INF else min(self.prec - v,
                                                           cfg.rel_prec)
        b = self.truncate(v + window)
        x = CInfApprox(cfg, {-v: F.inv(lead)}, INF)
        one = cfg.one()
        # each sweep at least doubles the valuation of 1 - b*x
        for _ in range(64):
            err = one - b * x
            ev = err.vbound()
            if ev >= window:
                break
            x = (x + x * err).truncate(-v + window)
        prec = (-v + window) if self.prec == INF else self.prec - 2 * v
        return x.truncate(min(prec, -v + window))

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.scale(self.cfg.field.inv(self.cfg.field.from_int(other)))
        if not isinstance(other, CInfApprox):
            return NotImplemented
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.cfg.one()
        # peel off p-th powers, which are exact coefficient maps in char p
        p = self.cfg.p
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        base = self
        result = None
        while n > 0:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result.frob_p(k) if k else result

    def frob_p(self, k):
        """p^k-power map: termwise in characteristic p.

        For k < 0 every exponent must be divisible by p^|k| (the grid cannot
        express p-th roots of arbitrary monomials).
        """
        if k == 0:
            return self
        F = self.cfg.field
        if k > 0:
            scale = self.cfg.p ** k
            terms = {e * scale: F.frob_p(c, k) for e, c in self.terms.items()}
            prec = INF if self.prec == INF else self.prec * scale
            return CInfApprox(self.cfg, terms, prec)
        scale = self.cfg.p ** (-k)
        terms = {}
        for e, c in self.terms.items():
            if e % scale != 0:
                raise GridTooCoarse(
                    "exponent %d not divisible by p^%d under inverse twist"
                    % (e, -k),
                    hint="refine the grid: multiply e by p^%d" % (-k),
                    needed_factor=scale // math.gcd(e, scale))
            terms[e // scale] = F.frob_p(c, k)
        prec = INF if self.prec == INF else -(-self.prec // scale)
        return CInfApprox(self.cfg, terms, prec)

    def frobenius(self, n):
        """q^n-power map (n-fold twist); n may be negative."""
        return self.frob_p(n * self.cfg.s)

    # -- display --------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            bits = []
            for e, c in self.sorted_terms()[:6]:
                te = Fraction(-e, self.cfg.e)
                if te == 0:
                    bits.append("%d" % c)
                else:
                    bits.append("%d*th^(%s)" % (c, te))
            if len(self.terms) > 6:
                bits.append("...")
            body = " + ".join(bits)
        ptxt = "inf" if self.prec == INF else str(self.prec)
        return "<%s | prec %s>" % (body, ptxt)
