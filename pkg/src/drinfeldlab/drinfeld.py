"""Drinfeld modules of rank 1 and 2 over a FieldConfig.

The module descriptor is rho_t = theta + kappa*tau + u*tau^2 (rank 2) or the
Carlitz module theta + tau (rank 1).  From the defining functional equation
exp(theta z) = rho_t(exp z) the exponential/logarithm coefficient tables
follow by recursion; torsion points come from the Newton-polygon solver;
periods from division towers over torsion seeds; quasi-periodic functions
from the unrolled difference equation.

Evaluation is always certified: exponential tails are bounded through the
integer valuation recursion on the coefficient tables, and the logarithm
refuses arguments outside a disc where its term valuations grow by at least
one theta-unit per step (safety factor q).

Coefficient tables extend lazily and are otherwise immutable; extend them
eagerly (exp_coeffs/log_coeffs) before sharing a module across threads.
All evaluations are pure.
"""

import logging

from .cinf import INF
from .errors import (ConfigError, DivergentEvaluation, IndependenceFailure,
                     NoConvergence, VerificationFailed)
from .roots import all_nonzero_roots, newton_iterate, partial_nonzero_roots
from .skew import SkewPoly

log = logging.getLogger(__name__)

_TAIL_SCAN = 64


class Biderivation:
    """delta determined by delta_t, a tau-polynomial with zero constant term."""

    def __init__(self, delta_t):
        if not delta_t.coeff(0).is_exact_zero():
            raise ConfigError("delta_t must have zero constant term")
        self.delta_t = delta_t
        self.cfg = delta_t.cfg

    @classmethod
    def tau(cls, cfg):
        """The biderivation t -> tau (differentials of the second kind)."""
        return cls(SkewPoly.from_list(cfg, [0, 1]))

    @classmethod
    def inner_one(cls, module):
        """delta_t = theta - rho_t; its quasi-periodic function is
        z - exp(z), the differential of the first kind."""
        cfg = module.cfg
        rho = module.skew()
        coeffs = [cfg.zero(INF)] + [-rho.coeff(i)
                                    for i in range(1, rho.degree() + 1)]
        return cls(SkewPoly(cfg, coeffs))

    def is_zero(self):
        return self.delta_t.is_zero()

    def min_coeff_valuation(self):
        vals = [c.valuation() for c in self.delta_t.coeffs[1:]
                if not c.is_apparent_zero()]
        return min(vals) if vals else INF


class Tower:
    """One period with its division tower e_n = exp(omega / theta^n)."""

    def __init__(self, omega, depth, chain, seed):
        self.omega = omega
        self.depth = depth
        self.chain = chain  # chain[n-1] = e_n
        self.seed = seed

    def exp_at_level(self, n):
        """exp(omega / theta^n) when the tower already knows it."""
        if 1 <= n <= len(self.chain):
            return self.chain[n - 1]
        return None


class Lattice:
    """Period basis with the data used to build it."""

    def __init__(self, omega1, omega2=None, towers=None):
        self.omega1 = omega1
        self.omega2 = omega2
        self.towers = towers or []

    @property
    def rank(self):
        return 1 if self.omega2 is None else 2

    def basis(self):
        return [self.omega1] if self.omega2 is None \
            else [self.omega1, self.omega2]


class DrinfeldModule:
    def __init__(self, cfg, rank, kappa=None, u=None):
        self.cfg = cfg
        if rank == 1:
            if kappa is not None or u is not None:
                raise ConfigError("rank 1 is the Carlitz module theta + tau")
            kappa = cfg.one()
            u = cfg.zero(INF)
        elif rank == 2:
            if kappa is None:
                kappa = cfg.zero(INF)
            if isinstance(kappa, int):
                kappa = cfg.from_int(kappa)
            if isinstance(u, int):
                u = cfg.from_int(u)
            if u is None or u.is_apparent_zero():
                raise ConfigError("rank 2 needs a nonzero tau^2 coefficient")
        else:
            raise ConfigError("only ranks 1 and 2 are supported")
        self.rank = rank
        self.kappa = kappa
        self.u = u
        self._exp = [cfg.one()]
        self._log = [cfg.one()]

    # -- descriptor -----------------------------------------------------------

    def skew(self):
        cfg = self.cfg
        if self.rank == 1:
            return SkewPoly(cfg, [cfg.theta(), cfg.one()])
        return SkewPoly(cfg, [cfg.theta(), self.kappa, self.u])

    def is_normalized(self):
        return self.rank == 1 or (self.u - self.cfg.one()).is_exact_zero()

    def action_poly(self):
        """rho_t as a dense ordinary polynomial (for the root machinery)."""
        return self.skew().dense_coeffs()

    def __repr__(self):
        if self.rank == 1:
            return "DrinfeldModule(Carlitz, q=%d)" % self.cfg.q
        return "DrinfeldModule(rank 2, kappa=%r, u=%r)" % (self.kappa, self.u)

    # -- exponential / logarithm tables ---------------------------------------

    def exp_coeffs(self, depth):
        """alpha_0..alpha_depth with
        alpha_i = (kappa alpha_{i-1}^q + u alpha_{i-2}^{q^2})/(theta^{q^i}-theta)."""
        cfg = self.cfg
        while len(self._exp) <= depth:
            i = len(self._exp)
            num = self.kappa * self._exp[i - 1].frobenius(1)
            if i >= 2:
                num = num + self.u * self._exp[i - 2].frobenius(2)
            den = cfg.theta(1).frobenius(i) - cfg.theta(1)
            self._exp.append(num / den)
        return self._exp[:depth + 1]

    def log_coeffs(self, depth):
        """beta_0..beta_depth, the compositional inverse table:
        beta_i = (beta_{i-1} kappa^{q^{i-1}} + beta_{i-2} u^{q^{i-2}})/(theta-theta^{q^i})."""
        cfg = self.cfg
        while len(self._log) <= depth:
            i = len(self._log)
            num = self._log[i - 1] * self.kappa.frobenius(i - 1)
            if i >= 2:
                num = num + self._log[i - 2] * self.u.frobenius(i - 2)
            den = cfg.theta(1) - cfg.theta(1).frobenius(i)
            self._log.append(num / den)
        return self._log[:depth + 1]

    def _coeff_vbounds(self, kind, upto):
        """Integer lower bounds for v(alpha_i) resp. v(beta_i)."""
        cfg = self.cfg
        e, q = cfg.e, cfg.q
        vk = self.kappa.valuation() if not self.kappa.is_apparent_zero() else INF
        vu = self.u.valuation() if not self.u.is_apparent_zero() else INF
        out = [0]
        for i in range(1, upto + 1):
            if kind == "exp":
                c1 = vk + q * out[i - 1] if i >= 1 else INF
                c2 = vu + q * q * out[i - 2] if i >= 2 else INF
            else:
                c1 = out[i - 1] + q ** (i - 1) * vk
                c2 = out[i - 2] + q ** (i - 2) * vu if i >= 2 else INF
            step = min(c1, c2) + q ** i * e
            out.append(step)
        return out

    def _tail_floor(self, kind, vz, start):
        """Certified floor for v(coefficient_i * z^{q^i}) over all i > start.

        b_i := bound_i + q^i vz obeys b_i >= min(vk + q b_{i-1},
        vu + q^2 b_{i-2}) + q^i e, so once the scanned b's sit above the
        floor and q^i e alone outweighs the damage a floor-level pair can
        do, every later term stays above the floor by induction.
        """
        cfg = self.cfg
        q, e = cfg.q, cfg.e
        end = start + _TAIL_SCAN
        bounds = self._coeff_vbounds(kind, end)
        terms = [bounds[i] + q ** i * vz for i in range(start + 1, end + 1)]
        floor = min(terms)
        vk = self.kappa.valuation() if not self.kappa.is_apparent_zero() else INF
        vu = self.u.valuation() if not self.u.is_apparent_zero() else INF
        if kind == "exp":
            worst = min(vk + q * floor, vu + q * q * floor)
            ok = worst + q ** end * e >= floor
        else:
            # increments scale with q^i; nonnegative increment coefficients
            # keep b_i >= min(b_{i-1}, b_{i-2}) >= floor forever
            inc1 = vk + (q - 1) * vz + q * e
            inc2 = vu + (q * q - 1) * vz + q * q * e
            ok = inc1 >= 0 and inc2 >= 0
        if not ok:
            raise DivergentEvaluation(
                "tail bound for %s evaluation did not stabilize" % kind)
        return floor

    # -- evaluation ------------------------------------------------------------

    def exp_eval(self, z):
        """exp(z); entire, so always certified."""
        if z.is_apparent_zero():
            return z
        cfg = self.cfg
        depth = cfg.exp_depth
        coeffs = self.exp_coeffs(depth)
        vz = z.valuation()
        acc = cfg.zero(INF)
        for i, a in enumerate(coeffs):
            acc = acc + a * z.frobenius(i)
        floor = self._tail_floor("exp", vz, depth)
        return acc.truncate(min(acc.prec, floor))

    def log_certificate(self, z, depth=None):
        """True when the logarithm series is certified at z: computed term
        valuations rise by at least e per step (safety factor q) and the
        tail bound recursion continues the climb."""
        if z.is_apparent_zero():
            return True
        cfg = self.cfg
        depth = depth if depth is not None else cfg.exp_depth
        e, q = cfg.e, cfg.q
        vz = z.valuation()
        bounds = self._coeff_vbounds("log", depth + _TAIL_SCAN)
        prev = vz
        for i in range(1, depth + _TAIL_SCAN + 1):
            cur = bounds[i] + q ** i * vz
            if cur < prev + e:
                return False
            prev = cur
        return True

    def log_eval(self, z):
        """log(z) inside the certified disc; DivergentEvaluation outside."""
        if z.is_apparent_zero():
            return z
        cfg = self.cfg
        depth = cfg.exp_depth
        if not self.log_certificate(z, depth):
            raise DivergentEvaluation(
                "logarithm not certified at v(z) = %s" % z.valuation())
        coeffs = self.log_coeffs(depth)
        acc = cfg.zero(INF)
        for i, b in enumerate(coeffs):
            acc = acc + b * z.frobenius(i)
        floor = self._tail_floor("log", z.valuation(), depth)
        return acc.truncate(min(acc.prec, floor))

    # -- torsion ---------------------------------------------------------------

    def torsion_polynomial(self):
        """rho_t(x)/x, whose roots are the nonzero t-torsion points."""
        cfg = self.cfg
        q = cfg.q
        deg = q ** self.rank - 1
        coeffs = [cfg.zero(INF) for _ in range(deg + 1)]
        coeffs[0] = cfg.theta()
        if self.rank == 1:
            coeffs[q - 1] = cfg.one()
        else:
            coeffs[q - 1] = self.kappa
            coeffs[q * q - 1] = self.u
        return coeffs

    def torsion_points(self, partial=False):
        """All q^rank - 1 nonzero t-torsion points, sorted by (valuation,
        leading coefficient code) for determinism.

        With partial=True the representable torsion is returned together
        with the per-segment failure records as (points, failures); the
        default insists on the full set.
        """
        key = lambda r: (r.valuation(), r.leading()[1])
        if partial:
            roots, failures = partial_nonzero_roots(self.torsion_polynomial())
            return sorted(roots, key=key), failures
        return sorted(all_nonzero_roots(self.torsion_polynomial()), key=key)

    def _scalar_multiple_of(self, x, y):
        """mu in F_q^x with x = mu*y (to working precision), else None."""
        cfg = self.cfg
        thr = cfg.pass_threshold()
        for mu in cfg.field.base_field_elements():
            if mu == 0:
                continue
            if (x - y.scale(mu)).is_zero_to(thr):
                return mu
        return None

    def lattice_seeds(self):
        """Torsion representatives of distinct F_q^x-orbits (rank many)."""
        points = self.torsion_points()
        seeds = [points[0]]
        if self.rank == 2:
            for x in points[1:]:
                if self._scalar_multiple_of(x, seeds[0]) is None:
                    seeds.append(x)
                    break
            else:
                raise IndependenceFailure(
                    "all torsion points are F_q-proportional")
        return seeds

    # -- periods ---------------------------------------------------------------

    def period_from_seed(self, seed):
        """Division tower: e_1 = seed, rho_t(e_{n+1}) = e_n with Newton seed
        e_n/theta; stops as soon as the logarithm certifies, returns
        omega = theta^n log(e_n)."""
        cfg = self.cfg
        chain = [seed]
        for n in range(1, cfg.tower_cap + 1):
            en = chain[-1]
            if self.log_certificate(en):
                omega = cfg.theta(n) * self.log_eval(en)
                resid = self.exp_eval(omega)
                if resid.vbound() < cfg.pass_threshold():
                    raise NoConvergence(
                        "period residual v = %s below threshold %d"
                        % (resid.vbound(), cfg.pass_threshold()))
                log.debug("tower converged at depth %d", n)
                return Tower(omega, n, chain, seed)
            poly = self.action_poly()
            poly[0] = poly[0] - en
            nxt, _ = newton_iterate(poly, en / cfg.theta())
            chain.append(nxt)
        raise NoConvergence("division tower exceeded cap %d" % cfg.tower_cap)

    def periods(self, seeds=None):
        """Period lattice basis from torsion seeds.

        Rank 2 certifies F_q[theta]-independence through a nonzero
        quasi-period bracket omega1*F(omega2) - omega2*F(omega1)."""
        if seeds is None:
            seeds = self.lattice_seeds()
        towers = [self.period_from_seed(s) for s in seeds]
        if self.rank == 1:
            return Lattice(towers[0].omega, None, towers)
        if len(towers) != 2:
            raise IndependenceFailure("rank 2 needs two seeds")
        lattice = Lattice(towers[0].omega, towers[1].omega, towers)
        b = self.legendre_bracket(lattice)
        if b.is_apparent_zero():
            raise IndependenceFailure(
                "quasi-period bracket vanishes to precision: seeds were "
                "dependent; retry with a different pair")
        return lattice

    def legendre_bracket(self, lattice):
        """omega1*F_tau(omega2) - omega2*F_tau(omega1)."""
        f1 = self.quasi_period_eval(lattice.omega1, lattice=lattice)
        f2 = self.quasi_period_eval(lattice.omega2, lattice=lattice)
        return lattice.omega1 * f2 - lattice.omega2 * f1

    # -- quasi-periodic functions ----------------------------------------------

    def quasi_period_coeffs(self, delta, depth):
        """c_1..c_depth with c_i (theta^{q^i} - theta) = sum_j d_j alpha_{i-j}^{q^j};
        the unique solution of the quasi-period functional equation."""
        cfg = self.cfg
        got = [cfg.zero(INF)]
        alphas = self.exp_coeffs(depth)
        d = delta.delta_t
        while len(got) <= depth:
            i = len(got)
            num = cfg.zero(INF)
            for j in range(1, min(i, d.degree()) + 1):
                dj = d.coeff(j)
                if dj.is_exact_zero():
                    continue
                num = num + dj * alphas[i - j].frobenius(j)
            den = cfg.theta(1).frobenius(i) - cfg.theta(1)
            got.append(num / den)
        return got[:depth + 1]

    def quasi_period_eval(self, lam, delta=None, lattice=None):
        """F_delta(lam) via the unrolled functional equation
        F(lam) = sum_{j>=0} theta^j * delta_t(exp(lam/theta^{j+1})).

        Converges for every lam (the exp values shrink geometrically).  When
        a lattice built from division towers is supplied and lam is one of
        its periods, the stored chain values exp(omega/theta^n) are reused.
        """
        cfg = self.cfg
        if delta is None:
            delta = Biderivation.tau(cfg)
        if delta.is_zero() or lam.is_apparent_zero():
            return cfg.zero(INF)
        tower = None
        if lattice is not None:
            for tw in lattice.towers:
                if tw.omega is lam:
                    tower = tw
                    break
        dmin = delta.min_coeff_valuation()
        e, q = cfg.e, cfg.q
        vlam = lam.valuation()
        target = cfg.rel_prec + max(0, -vlam)
        acc = cfg.zero(INF)
        theta_pow = cfg.one()
        floor = None
        for j in range(0, 4 * cfg.tower_cap + 64):
            w = tower.exp_at_level(j + 1) if tower else None
            if w is None:
                w = self.exp_eval(lam / cfg.theta(j + 1))
            acc = acc + theta_pow * delta.delta_t(w)
            theta_pow = theta_pow * cfg.theta()
            # dropped terms have v >= -(j+1)e + dmin + q(vlam + (j+2)e) and
            # climb by at least (q-1)e per step afterwards, valid once the
            # dropped arguments are small (exp acts as the identity there)
            floor = -(j + 1) * e + dmin + q * (vlam + (j + 2) * e)
            if floor >= target and vlam + (j + 2) * e >= 0:
                break
        return acc.truncate(min(acc.prec, floor))

    # -- normalization and morphisms --------------------------------------------

    def normalize(self):
        """Isomorphic module with tau^2-coefficient 1: returns (nu, x) with
        nu_t = x^{-1} rho_t x and x^{q^2-1} = 1/u."""
        cfg = self.cfg
        if self.rank != 2:
            raise ConfigError("normalization applies to rank 2")
        if self.is_normalized():
            return self, cfg.one()
        n = cfg.q ** 2 - 1
        if len(self.u.terms) == 1:
            exp_u, c_u = self.u.leading()
            if exp_u % n != 0:
                raise ConfigError(
                    "no (q^2-1)-st root of 1/u on the grid; refine e")
            x = cfg.monomial(-exp_u // n, cfg.field.nth_root(
                cfg.field.inv(c_u), n))
        else:
            # f(X) = u X^n - 1; any root works, pick the deterministic first
            coeffs = [-cfg.one()] + [cfg.zero(INF)] * (n - 1) + [self.u]
            x = sorted(all_nonzero_roots(coeffs),
                       key=lambda r: (r.valuation(), r.leading()[1]))[0]
        kappa_nu = self.kappa * (x ** (cfg.q - 1))
        nu = DrinfeldModule(cfg, 2, kappa_nu, cfg.one())
        check = self.u * x ** n - cfg.one()
        if not check.is_zero_to(cfg.pass_threshold()):
            raise VerificationFailed("x^(q^2-1) u = 1 fails to precision")
        return nu, x


def verify_morphism(e_poly, rho, rho_prime=None, threshold=None):
    """Check e rho_t = rho'_t e in the twisted ring, plus the adjoint-side
    square (rho_t)* e* = e* (rho'_t)*.  Returns a report dict."""
    if rho_prime is None:
        rho_prime = rho
    cfg = rho.cfg
    if threshold is None:
        threshold = cfg.pass_threshold()
    lhs = e_poly * rho.skew()
    rhs = rho_prime.skew() * e_poly
    diff = lhs - rhs
    resid = [diff.coeff(i).vbound()
             for i in range(max(diff.degree() + 1, 1))]
    ok = all(v >= threshold for v in resid)
    report = {
        "is_morphism": bool(ok),
        "residual_valuations": resid,
        "threshold": threshold,
    }
    if ok:
        adj = rho.skew().adjoint() * e_poly.adjoint() \
            - e_poly.adjoint() * rho_prime.skew().adjoint()
        aresid = [adj.coeff(i).vbound()
                  for i in range(max(adj.degree() + 1, 1))]
        report["adjoint_residual_valuations"] = aresid
        report["adjoint_ok"] = all(v >= threshold for v in aresid)
    return report


def compose_qlinear(outer, inner, depth):
    """Coefficients of the composition of two F_q-linear series given by
    coefficient tables (c_k = sum_{i+j=k} a_i b_j^{q^i})."""
    cfg = outer[0].cfg
    out = []
    for k in range(depth + 1):
        acc = cfg.zero(INF)
        for i in range(0, k + 1):
            if i >= len(outer) or k - i >= len(inner):
                continue
            acc = acc + outer[i] * inner[k - i].frobenius(i)
        out.append(acc)
    return out
