import pytest

from drinfeldlab.cinf import FieldConfig, INF
from drinfeldlab.drinfeld import DrinfeldModule, Lattice
from drinfeldlab.errors import ConfigError, ResidueFieldTooSmall
from drinfeldlab.motive import (MotiveMatrices, OmegaData, phi_matrix,
                                xi_constant)


def test_omega_difference_relation(ctx3):
    cfg = ctx3.cfg
    om = OmegaData(cfg, T=32)
    res = om.difference_residual(32)
    assert res.is_zero_to(cfg.pass_threshold())


def test_omega_value_and_pi(ctx3):
    cfg = ctx3.cfg
    om = OmegaData(cfg)
    val = om.value_at(cfg.theta())
    pi = om.pi_tilde()
    # Omega(theta) * pi = -1 and v(pi) = -q e/(q-1)
    assert (val * pi + cfg.one()).is_zero_to(cfg.pass_threshold())
    assert pi.valuation() == -cfg.q * cfg.e // (cfg.q - 1)
    assert not val.is_apparent_zero()


def test_pi_vs_carlitz_period(ctx3):
    cfg = ctx3.cfg
    pi = OmegaData(cfg).pi_tilde()
    lat = ctx3.carlitz.periods()
    ratio = pi / lat.omega1
    assert ratio.valuation() == 0
    lead = ratio.terms[0]
    assert cfg.field.in_base_field(lead) and lead != 0
    assert (ratio - cfg.from_coeff(lead)).is_zero_to(cfg.pass_threshold())


def test_xi_constant(ctx3):
    cfg = ctx3.cfg
    xi = xi_constant(cfg)
    code = xi.terms[0]
    assert cfg.field.pow(code, cfg.q - 1) == cfg.field.neg(1)
    # xi^(-1-twist) = -xi
    assert (xi.frobenius(-1) + xi).is_exact_zero()
    # q = 3: xi^2 = -1 and xi generates F_9 over F_3
    assert cfg.field.mul(code, code) == cfg.field.neg(1)
    assert not cfg.field.in_base_field(code)


def test_xi_needs_even_extension():
    cfg = FieldConfig(3, 1, 1, e=18, prec=120)
    with pytest.raises(ResidueFieldTooSmall):
        xi_constant(cfg)


def test_phi_matrix_forms(ctx3, cfg_small):
    cfg = ctx3.cfg
    phi = phi_matrix(ctx3.module)
    # normalized: [[0, 1], [t - theta, -kappa^(-1)]]
    assert phi.entry(0, 0).coeff(0).is_exact_zero()
    assert (phi.entry(1, 0).coeff(1) - cfg.one()).is_exact_zero()
    assert (phi.entry(1, 0).coeff(0) + cfg.theta()).is_exact_zero()
    d = phi.det()
    ref = -phi.entry(1, 0)
    for i in range(2):
        assert (d.coeff(i) - ref.coeff(i)).is_exact_zero()
    # Carlitz analogue is the 1x1 matrix (t - theta)
    phiC = phi_matrix(DrinfeldModule(cfg_small, 1))
    assert phiC.shape == (1, 1)
    assert (phiC.entry(0, 0).coeff(0) + cfg_small.theta()).is_exact_zero()


def test_phi_matrix_general_u(ctx3):
    cfg = ctx3.cfg
    rho = DrinfeldModule(cfg, 2, cfg.one(), cfg.from_int(-1))
    phi = phi_matrix(rho)
    u2 = rho.u.frobenius(-2)
    ref = cfg.one() / u2
    assert (phi.entry(1, 0).coeff(1) - ref).is_zero_to(600)


def test_psi_difference_equation(ctx3):
    mot = ctx3.motive(16)
    assert mot.difference_residual().is_zero_to(ctx3.cfg.pass_threshold())


def test_psi_swap_basis(ctx3):
    # swapping (omega1, omega2) permutes the generating functions; the
    # difference equation still holds
    lat = ctx3.lattice
    swapped = Lattice(lat.omega2, lat.omega1, lat.towers)
    mot = MotiveMatrices(ctx3.module, swapped, T=8)
    assert mot.difference_residual().is_zero_to(ctx3.cfg.pass_threshold())


def test_sigma_invariance(ctx3):
    mot = ctx3.motive(16)
    res, x0 = mot.sigma_invariance_residual()
    assert res.is_zero_to(ctx3.cfg.pass_threshold())
    # observed constant behaviour of det Psi/(xi Omega) is reported, and
    # its leading coefficient lies in F_q
    lead = x0.terms.get(0, 0)
    assert ctx3.cfg.field.in_base_field(lead)


def test_specialization_cross_check(ctx3):
    mot = ctx3.motive(16)
    thr = ctx3.cfg.pass_threshold()
    S = mot.specialization_residuals()
    for i in range(2):
        for j in range(2):
            assert S[i][j].is_zero_to(thr), (i, j)


def test_period_matrix_inverse_and_entries(ctx3):
    cfg = ctx3.cfg
    thr = cfg.pass_threshold()
    mot = ctx3.motive(16)
    P, M = mot.period_matrix()
    for i in range(2):
        for j in range(2):
            prod = P[i][0] * M[0][j] + P[i][1] * M[1][j]
            want = cfg.one() if i == j else cfg.zero(INF)
            assert (prod - want).is_zero_to(thr)
    # P equals [[omega1, -F(omega1)], [omega2, -F(omega2)]]
    lat = ctx3.lattice
    mod = ctx3.module
    F1 = mod.quasi_period_eval(lat.omega1, lattice=lat)
    F2 = mod.quasi_period_eval(lat.omega2, lattice=lat)
    ref = [[lat.omega1, -F1], [lat.omega2, -F2]]
    for i in range(2):
        for j in range(2):
            assert (P[i][j] - ref[i][j]).is_zero_to(thr), (i, j)


def test_psi_theta_entries(ctx3):
    # entry (2,1) of (pi/xi) Psi(theta) is omega2; entry (1,1) is F(omega2)
    cfg = ctx3.cfg
    thr = cfg.pass_threshold()
    mot = ctx3.motive(16)
    M = mot.psi_at_theta()
    s = mot.omega.pi_tilde() / mot.xi
    lat = ctx3.lattice
    assert (s * M[1][0] - lat.omega2).is_zero_to(thr)
    F2 = ctx3.module.quasi_period_eval(lat.omega2, lattice=lat)
    assert (s * M[0][0] - F2).is_zero_to(thr)


def test_legendre_invariant(ctx3):
    mot = ctx3.motive(16)
    li = mot.legendre_invariant()
    assert li["is_minus_one"]
    assert li["unit_tail_valuation"] >= ctx3.cfg.pass_threshold()


def test_legendre_invariances(ctx3):
    cfg = ctx3.cfg
    mot = ctx3.motive(16)
    lat = ctx3.lattice
    # rescaling by each c in F_q^x
    for c in cfg.field.base_field_elements():
        if c == 0:
            continue
        scaled = Lattice(lat.omega1.scale(c), lat.omega2.scale(c),
                         lat.towers)
        assert mot.legendre_invariant_for(scaled)["is_minus_one"]
    # one unimodular change of basis
    uni = Lattice(lat.omega1 + cfg.theta() * lat.omega2, lat.omega2,
                  lat.towers)
    assert mot.legendre_invariant_for(uni)["is_minus_one"]


def test_tensor_constructions(ctx3):
    cfg = ctx3.cfg
    thr = cfg.pass_threshold()
    mot = ctx3.motive(16)
    assert mot.tensor_difference_residual().is_zero_to(thr)
    assert mot.wedge_residual().is_zero_to(thr)
    # det(Phi x Phi) = det(Phi)^4 and the wedge multiplier is det Phi
    pp = mot.phi.kronecker(mot.phi)
    d4 = pp.det()
    dphi = mot.phi.det()
    ref = dphi * dphi * dphi * dphi
    for i in range(min(d4.T, ref.T)):
        assert (d4.coeff(i) - ref.coeff(i)).is_exact_zero()


def test_motive_requires_normalized(ctx3):
    cfg = ctx3.cfg
    rho = DrinfeldModule(cfg, 2, cfg.one(), cfg.from_int(-1))
    with pytest.raises(ConfigError):
        MotiveMatrices(rho, ctx3.lattice, T=8)


def test_q5_tame_motive(ctx5):
    thr = ctx5.cfg.pass_threshold()
    mot = ctx5.motive(16)
    assert mot.difference_residual().is_zero_to(thr)
    assert mot.legendre_invariant()["is_minus_one"]


def test_carlitz_exponential_kills_pi(ctx3):
    # exp_C(pi) = 0: the product-series period generates the Carlitz lattice
    cfg = ctx3.cfg
    pi = OmegaData(cfg).pi_tilde()
    resid = ctx3.carlitz.exp_eval(pi)
    assert resid.vbound() >= cfg.pass_threshold()


@pytest.mark.parametrize("q,kappas", [(3, ("one", "two", "theta_inv")),
                                      (5, ("one", "two", "theta_inv"))])
def test_psi_difference_three_modules_per_q(request, q, kappas):
    # the difference equation must hold for several modules per q, not
    # just the headline sample
    ctx = request.getfixturevalue("ctx3" if q == 3 else "ctx5")
    cfg = ctx.cfg
    thr = cfg.pass_threshold()
    for name in kappas:
        kappa = {"one": cfg.one(), "two": cfg.from_int(2),
                 "theta_inv": cfg.theta(-1)}[name]
        rho = DrinfeldModule(cfg, 2, kappa, cfg.one())
        lat = rho.periods()
        mot = MotiveMatrices(rho, lat, T=8)
        assert mot.difference_residual().is_zero_to(thr), (q, name)


@pytest.mark.slow
def test_precision_scaling():
    # nothing is tuned to N = 240: the battery holds at doubled precision
    cfg = FieldConfig(3, 1, 4, e=72, prec=480)
    rho = DrinfeldModule(cfg, 2, cfg.one(), cfg.one())
    lat = rho.periods()
    thr = cfg.pass_threshold()  # now 384
    assert rho.exp_eval(lat.omega1).vbound() >= thr
    mot = MotiveMatrices(rho, lat, T=8)
    assert mot.difference_residual().is_zero_to(thr)
    assert mot.legendre_invariant()["is_minus_one"]
    om = OmegaData(cfg, T=8)
    assert om.difference_residual(8).is_zero_to(thr)
