"""Truncated series and matrices in t with CInfApprox coefficients.

A TSeries knows its first T coefficients; ``tail`` is an optional grid
valuation bound for every dropped coefficient (INF marks an exact
polynomial, None means no information).  Twisting acts coefficientwise and
is only offered for n >= 0; difference equations are always checked in
their positively-twisted form.
"""

from .cinf import INF
from .errors import (ConfigError, DivergentEvaluation, PrecisionExhausted,
                     ShapeMismatch)


class TSeries:
    def __init__(self, cfg, coeffs, tail=None):
        self.cfg = cfg
        self.coeffs = list(coeffs)
        self.tail = tail

    @classmethod
    def from_poly(cls, cfg, coeffs):
        """Exact polynomial in t (tail = INF)."""
        out = []
        for c in coeffs:
            if isinstance(c, int):
                c = cfg.from_int(c)
            out.append(c)
        return cls(cfg, out, tail=INF)

    @classmethod
    def constant(cls, cfg, c):
        return cls.from_poly(cfg, [c])

    @classmethod
    def t_minus_theta(cls, cfg):
        return cls.from_poly(cfg, [-cfg.theta(), cfg.one()])

    @property
    def T(self):
        return len(self.coeffs)

    def known_through(self):
        """Index bound below which coefficients are known."""
        return INF if self.tail == INF else self.T

    def coeff(self, i):
        if i < len(self.coeffs):
            return self.coeffs[i]
        if self.tail == INF:
            return self.cfg.zero(INF)
        raise PrecisionExhausted("coefficient %d beyond truncation %d"
                                 % (i, self.T))

    def _min_coeff_vbound(self):
        vb = INF
        for c in self.coeffs:
            vb = min(vb, c.vbound())
        return vb

    def truncate(self, T):
        if T >= len(self.coeffs):
            if self.tail == INF:
                pad = [self.cfg.zero(INF)] * (T - len(self.coeffs))
                return TSeries(self.cfg, self.coeffs + pad, INF)
            return self
        return TSeries(self.cfg, self.coeffs[:T], self.tail)

    def _out_len(self, other, conv=False):
        la = INF if self.tail == INF else len(self.coeffs)
        lb = INF if other.tail == INF else len(other.coeffs)
        n = min(la, lb)
        if conv and n == INF:
            n = len(self.coeffs) + len(other.coeffs) - 1
        if n == INF:
            n = max(len(self.coeffs), len(other.coeffs))
        return int(n)

    def __add__(self, other):
        self._compat(other)
        n = self._out_len(other)
        out = [self.coeff(i) + other.coeff(i) for i in range(n)]
        tail = None
        if self.tail is not None and other.tail is not None:
            tail = min(self.tail, other.tail)
        return TSeries(self.cfg, out, tail)

    def __neg__(self):
        return TSeries(self.cfg, [-c for c in self.coeffs], self.tail)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._compat(other)
        cfg = self.cfg
        n = self._out_len(other, conv=True)
        na = min(len(self.coeffs), n)
        nb = min(len(other.coeffs), n)
        out = [cfg.zero(INF) for _ in range(n)]
        for i in range(na):
            a = self.coeffs[i]
            if a.is_exact_zero():
                continue
            for j in range(min(nb, n - i)):
                b = other.coeffs[j]
                if b.is_exact_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        tail = None
        if self.tail is not None and other.tail is not None:
            ta, tb = self.tail, other.tail
            va = min(self._min_coeff_vbound(), ta)
            vb = min(other._min_coeff_vbound(), tb)
            tail = min(ta + vb, tb + va)
        return TSeries(self.cfg, out, tail)

    def scale(self, c):
        """Multiply by a scalar CInfApprox."""
        tail = self.tail
        if c.is_exact_zero():
            tail = INF
        elif tail not in (None, INF):
            tail = tail + c.vbound()
        return TSeries(self.cfg, [c * a for a in self.coeffs], tail)

    def shift_t(self, k):
        """Multiply by t^k (k >= 0)."""
        pad = [self.cfg.zero(INF)] * k
        return TSeries(self.cfg, pad + self.coeffs, self.tail)

    def twist(self, n):
        """Coefficientwise q^n-power; negative twists are excluded to keep
        coefficients on the grid."""
        if n < 0:
            raise ConfigError("negative twists of t-series are not supported; "
                              "check the positively-twisted identity instead")
        if n == 0:
            return self
        tail = self.tail
        if tail not in (None, INF):
            tail = tail * self.cfg.q ** n
        return TSeries(self.cfg, [c.frobenius(n) for c in self.coeffs], tail)

    def specialize(self, t0):
        """Evaluate at t = t0 with a certified tail bound.

        Exact polynomials evaluate anywhere (Horner).  Truncated series need
        |t0| <= 1 and a tail bound; the dropped-tail error floor
        tail + T*v(t0) is folded into the precision of the result.
        """
        cfg = self.cfg
        if self.tail == INF:
            acc = cfg.zero(INF)
            for c in reversed(self.coeffs):
                acc = acc * t0 + c
            return acc
        if self.tail is None:
            raise DivergentEvaluation(
                "series carries no tail bound; cannot certify evaluation")
        v0 = t0.vbound()
        if v0 < 0:
            raise DivergentEvaluation(
                "|t0| > 1: truncated series cannot be certified here "
                "(pole-aware evaluation lives on the generating-function side)")
        acc = cfg.zero(INF)
        for c in reversed(self.coeffs):
            acc = acc * t0 + c
        if v0 == INF:
            return self.coeff(0)
        err_floor = self.tail + self.T * v0
        return acc.truncate(min(acc.prec, err_floor))

    def divide(self, other):
        """Series division; the divisor's constant term must be a unit."""
        self._compat(other)
        cfg = self.cfg
        b0 = other.coeff(0)
        if b0.is_apparent_zero():
            raise DivergentEvaluation("division by series with zero constant term")
        n = self._out_len(other)
        out = []
        for k in range(n):
            acc = self.coeff(k)
            for j in range(k):
                acc = acc - out[j] * other.coeff(k - j)
            out.append(acc / b0)
        return TSeries(cfg, out, None)

    def vbounds(self):
        """Per-coefficient valuation lower bounds (the residual report)."""
        return [c.vbound() for c in self.coeffs]

    def min_vbound(self):
        return min(self.vbounds()) if self.coeffs else INF

    def is_zero_to(self, threshold, count=None):
        n = len(self.coeffs) if count is None else min(count, len(self.coeffs))
        return all(self.coeffs[i].is_zero_to(threshold) for i in range(n))

    def _compat(self, other):
        if not isinstance(other, TSeries):
            raise ConfigError("expected a TSeries")

    def __repr__(self):
        return "TSeries(T=%d, tail=%r)" % (self.T, self.tail)


class TMatrix:
    """Dense matrix of TSeries entries."""

    def __init__(self, rows):
        if not rows or not rows[0]:
            raise ShapeMismatch("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeMismatch("ragged rows")
        self.rows = [list(r) for r in rows]
        self.cfg = rows[0][0].cfg

    @classmethod
    def identity(cls, cfg, n):
        one = TSeries.constant(cfg, cfg.one())
        zero = TSeries.constant(cfg, cfg.zero(INF))
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)])

    @property
    def shape(self):
        return len(self.rows), len(self.rows[0])

    def entry(self, i, j):
        return self.rows[i][j]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch("matrix addition needs equal shapes")
        return TMatrix([[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return TMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ShapeMismatch("matrix product %sx%s by %sx%s"
                                % (n, k, k2, m))
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.rows[i][0] * other.rows[0][j]
                for l in range(1, k):
                    acc = acc + self.rows[i][l] * other.rows[l][j]
                row.append(acc)
            out.append(row)
        return TMatrix(out)

    def twist(self, n):
        return TMatrix([[a.twist(n) for a in r] for r in self.rows])

    def transpose(self):
        n, m = self.shape
        return TMatrix([[self.rows[i][j] for i in range(n)]
                        for j in range(m)])

    def kronecker(self, other):
        """Kronecker product: block (i,j) is self[i][j] * other."""
        n, m = self.shape
        p, q = other.shape
        out = []
        for i in range(n):
            for k in range(p):
                row = []
                for j in range(m):
                    for l in range(q):
                        row.append(self.rows[i][j] * other.rows[k][l])
                out.append(row)
        return TMatrix(out)

    def det(self):
        """Cofactor expansion; fine for the small motive matrices."""
        n, m = self.shape
        if n != m:
            raise ShapeMismatch("determinant of a non-square matrix")
        if n == 1:
            return self.rows[0][0]
        if n == 2:
            return (self.rows[0][0] * self.rows[1][1]
                    - self.rows[0][1] * self.rows[1][0])
        acc = None
        for j in range(n):
            minor = TMatrix([r[:j] + r[j + 1:] for r in self.rows[1:]])
            term = self.rows[0][j] * minor.det()
            if j % 2 == 1:
                term = -term
            acc = term if acc is None else acc + term
        return acc

    def specialize(self, t0):
        """Entrywise evaluation at t0 -> nested lists of CInfApprox."""
        return [[a.specialize(t0) for a in r] for r in self.rows]

    def min_vbound(self):
        return min(a.min_vbound() for r in self.rows for a in r)

    def is_zero_to(self, threshold):
        return all(a.is_zero_to(threshold) for r in self.rows for a in r)

    def __repr__(self):
        return "TMatrix(%dx%d)" % self.shape
