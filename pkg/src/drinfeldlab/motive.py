"""Rank-2 difference systems and their specializations.

This module assembles, for a normalized rank-2 Drinfeld module:

* the Carlitz objects: the product series Omega (rigid trivialization of
  the 1x1 system with multiplier t - theta) and the period pi_tilde :=
  -1/Omega(theta);
* the sign constant xi with xi^(q-1) = -1;
* the 2x2 multiplier matrix Phi and its trivialization Psi, built out of
  Anderson generating functions of a period basis, carried both as a
  truncated t-series matrix (for coefficientwise identities) and as
  pole/partial-fraction data (for the t = theta specialization);
* the period matrix P = Psi(theta)^(-1) and the Legendre-type invariant
  [(omega1 F(omega2) - omega2 F(omega1)) * Omega(theta)]^(q-1) = -1.

Every identity is checked in its positively-twisted form, e.g.
Psi = Phi^(1) Psi^(1), so that no series coefficient ever needs a q-th
root.
"""

from .agf import AndersonGF
from .cinf import INF
from .errors import (ConfigError, NotAUnit, ResidueFieldTooSmall,
                     SingularSpecialization)
from .tseries import TMatrix, TSeries


def designated_sign_root(cfg):
    """The fixed root of X^(q-1) = -1 in F_{q^2} (smallest code).

    All such roots lie in F_{q^2}; they exist there iff m is even.
    """
    F = cfg.field
    minus_one = F.neg(1)
    for c in range(2, F.size):
        if F.pow(c, cfg.q - 1) == minus_one and F.frob_q(c, 2) == c:
            return c
    raise ResidueFieldTooSmall(
        "no root of X^(q-1) = -1 in F_%d" % F.size,
        hint="use an even extension degree m so that F_{q^2} embeds")


def xi_constant(cfg):
    """The chosen xi with xi^(q-1) = -1, equivalently xi^(-1-twist) = -xi."""
    return cfg.from_coeff(designated_sign_root(cfg))


class OmegaData:
    """Truncated product form of the Carlitz trivialization.

    omega(t) = prefactor * prod_{i=1..I} (1 - t/theta^(q^i)), with
    prefactor = (-theta)^(-q/(q-1)) for the designated (q-1)-st root of
    -theta.  Dropped factors perturb any value by at least
    (q^(I+1) - 1) e grid units, which is folded into specializations.
    """

    def __init__(self, cfg, I=None, T=None):
        if cfg.e % (cfg.q - 1) != 0:
            raise ConfigError("(q-1) must divide e for the prefactor root")
        if I is None:
            I = 1
            while (cfg.q ** (I + 1) - 1) * cfg.e < cfg.rel_prec:
                I += 1
        if T is None:
            T = cfg.t_terms
        self.cfg = cfg
        self.I = I
        self.root_tag = designated_sign_root(cfg)
        # prefactor = (c0 * theta^(1/(q-1)))^(-q)
        c0 = self.root_tag
        exp = cfg.q * cfg.e // (cfg.q - 1)
        self.prefactor = cfg.monomial(exp, cfg.field.pow(
            cfg.field.inv(c0), cfg.q))
        series = TSeries.from_poly(cfg, [cfg.one()])
        for i in range(1, I + 1):
            series = series * TSeries.from_poly(
                cfg, [cfg.one(), -cfg.theta(-1).frobenius(i)])
        self.series = series.scale(self.prefactor).truncate(T)

    def tail_error(self):
        """Valuation floor of the dropped-factor perturbation, relative to
        the value it perturbs."""
        return (self.cfg.q ** (self.I + 1) - 1) * self.cfg.e

    def value_at(self, t0):
        """Specialize the finite product anywhere; the dropped factors are
        folded in as a relative error."""
        val = self.series.specialize(t0)
        if val.is_apparent_zero():
            return val
        return val.truncate(min(val.prec, val.valuation() + self.tail_error()))

    def pi_tilde(self):
        """-1/Omega(theta), the Carlitz period for this root choice."""
        return -self.value_at(self.cfg.theta()).inverse()

    def difference_residual(self, T=None):
        """Omega - (t - theta^q) Omega^(1); the truncated form leaves only
        the dropped-factor dust."""
        cfg = self.cfg
        if T is None:
            T = cfg.t_terms
        om = self.series.truncate(T)
        mult = TSeries.from_poly(cfg, [-cfg.theta().frobenius(1), cfg.one()])
        return (om - mult * om.twist(1)).truncate(T)


def phi_matrix(module):
    """Multiplier matrix of the associated difference system.

    Rank 1: the 1x1 matrix (t - theta).  Rank 2:
    [[0, 1], [(t-theta)/u^(-2), -kappa^(-1)/u^(-2)]].
    """
    cfg = module.cfg
    if module.rank == 1:
        return TMatrix([[TSeries.t_minus_theta(cfg)]])
    u2 = module.u.frobenius(-2)
    k1 = module.kappa.frobenius(-1)
    zero = TSeries.constant(cfg, cfg.zero(INF))
    one = TSeries.constant(cfg, cfg.one())
    return TMatrix([
        [zero, one],
        [TSeries.t_minus_theta(cfg).scale(u2.inverse()),
         TSeries.constant(cfg, -(k1 / u2))],
    ])


class MotiveMatrices:
    """Phi, Psi and the scaffolding shared by all rank-2 identity checks."""

    def __init__(self, module, lattice, T=None, pole_count=None):
        if not module.is_normalized() or module.rank != 2:
            raise ConfigError(
                "the trivialization display needs the normalized form u = 1; "
                "call normalize() first")
        cfg = module.cfg
        self.cfg = cfg
        self.module = module
        self.lattice = lattice
        self.T = T if T is not None else cfg.t_terms
        self.xi = xi_constant(cfg)
        self.omega = OmegaData(cfg, T=self.T)
        self.agf1 = AndersonGF(module, lattice.omega1, pole_count)
        self.agf2 = AndersonGF(module, lattice.omega2, pole_count)
        self.phi = phi_matrix(module)
        self.psi = self._build_psi()

    def _build_psi(self):
        """Psi = xi Omega [[-f2^(1), f1^(1)],
                           [kappa f2^(1) + f2^(2), -kappa f1^(1) - f1^(2)]]."""
        cfg = self.cfg
        T = self.T
        k = self.module.kappa
        f1 = self.agf1.series(T)
        f2 = self.agf2.series(T)
        f1_1, f1_2 = f1.twist(1), f1.twist(2)
        f2_1, f2_2 = f2.twist(1), f2.twist(2)
        rows = [
            [-f2_1, f1_1],
            [f2_1.scale(k) + f2_2, -(f1_1.scale(k) + f1_2)],
        ]
        scale = self.omega.series.truncate(T).scale(self.xi)
        return TMatrix([[(scale * a).truncate(T) for a in r] for r in rows])

    # -- coefficientwise identities ---------------------------------------------

    def difference_residual(self):
        """Psi - Phi^(1) Psi^(1), entrywise through T coefficients."""
        n = self.psi.shape[0]
        trunc = TMatrix([[a.truncate(self.T) for a in r] for r in self.psi.rows])
        prod = self.phi.twist(1) * trunc.twist(1)
        return TMatrix([[(trunc.rows[i][j] - prod.rows[i][j]).truncate(self.T)
                         for j in range(n)] for i in range(n)])

    def tensor_difference_residual(self):
        """Kronecker square: Psi x Psi against Phi x Phi."""
        pp = self.phi.kronecker(self.phi)
        qq = TMatrix([[a.truncate(self.T) for a in r]
                      for r in self.psi.kronecker(self.psi).rows])
        prod = pp.twist(1) * qq.twist(1)
        return TMatrix([[(qq.rows[i][j] - prod.rows[i][j]).truncate(self.T)
                         for j in range(qq.shape[0])]
                        for i in range(qq.shape[0])])

    def wedge_residual(self):
        """det Psi - (det Phi)^(1) (det Psi)^(1): the wedge line, multiplier
        det Phi, trivialized by det Psi."""
        dphi = self.phi.det()
        dpsi = self.psi.det().truncate(self.T)
        return (dpsi - dphi.twist(1) * dpsi.twist(1)).truncate(self.T)

    def sigma_invariance_residual(self):
        """x - x^(1) for x = det Psi / (xi Omega); the true ratio lies in
        F_q(t), so every coefficient is Frobenius-fixed.  Returns
        (residual, constant_term)."""
        cfg = self.cfg
        dpsi = self.psi.det().truncate(self.T)
        xiom = self.omega.series.truncate(self.T).scale(self.xi)
        x = dpsi.divide(xiom)
        return (x - x.twist(1)).truncate(self.T), x.coeff(0)

    # -- specialization at t = theta ----------------------------------------------

    def psi_at_theta(self):
        """Psi(theta) by pole-aware evaluation of the generating functions."""
        cfg = self.cfg
        th = cfg.theta()
        k = self.module.kappa
        f1_1 = self.agf1.eval_twisted(1, th)
        f1_2 = self.agf1.eval_twisted(2, th)
        f2_1 = self.agf2.eval_twisted(1, th)
        f2_2 = self.agf2.eval_twisted(2, th)
        s = self.xi * self.omega.value_at(th)
        return [
            [-s * f2_1, s * f1_1],
            [s * (k * f2_1 + f2_2), -s * (k * f1_1 + f1_2)],
        ]

    def reference_psi_at_theta(self):
        """(xi/pi_tilde) [[F(omega2), -F(omega1)], [omega2, -omega1]] from
        independently computed periods and quasi-periods."""
        lat = self.lattice
        mod = self.module
        F1 = mod.quasi_period_eval(lat.omega1, lattice=lat)
        F2 = mod.quasi_period_eval(lat.omega2, lattice=lat)
        s = self.xi / self.omega.pi_tilde()
        return ([[s * F2, -(s * F1)], [s * lat.omega2, -(s * lat.omega1)]],
                F1, F2)

    def specialization_residuals(self):
        """Entrywise difference between the two computations of Psi(theta)."""
        direct = self.psi_at_theta()
        ref, _, _ = self.reference_psi_at_theta()
        return [[direct[i][j] - ref[i][j] for j in range(2)]
                for i in range(2)]

    def period_matrix(self):
        """P = Psi(theta)^(-1); singular means the seeds were dependent.
        Returns (P, Psi(theta))."""
        m = self.psi_at_theta()
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det.is_apparent_zero():
            raise SingularSpecialization(
                "Psi(theta) is singular to precision: dependent lattice seeds")
        inv = det.inverse()
        P = [[m[1][1] * inv, -(m[0][1] * inv)],
             [-(m[1][0] * inv), m[0][0] * inv]]
        return P, m

    def legendre_invariant(self):
        """[(omega1 F(omega2) - omega2 F(omega1)) * Omega(theta)]^(q-1).

        The bracket is pi_tilde/xi up to the root choices, so the scaled
        bracket is a unit and its (q-1)-st power is exactly -1 in the
        residue field, independent of every choice made.  Returns a report
        dict with the exact residue-field value.
        """
        return self.legendre_invariant_for(self.lattice)

    def legendre_invariant_for(self, lattice):
        """Same invariant on another basis of the same lattice (used to
        certify invariance under rescaling and unimodular changes)."""
        cfg = self.cfg
        bracket = self.module.legendre_bracket(lattice)
        b = bracket * self.omega.value_at(cfg.theta())
        if b.is_apparent_zero() or b.valuation() != 0:
            raise NotAUnit(
                "scaled quasi-period bracket is not a unit "
                "(v = %s)" % (b.vbound() if b.is_apparent_zero()
                              else b.valuation()))
        lead = b.terms[0]
        resid = b - cfg.from_coeff(lead)
        value = cfg.field.pow(lead, cfg.q - 1)
        return {
            "unit_code": lead,
            "invariant_code": value,
            "is_minus_one": value == cfg.field.neg(1),
            "unit_tail_valuation": resid.vbound(),
        }
