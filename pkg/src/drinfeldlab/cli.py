"""Command-line front end.

Every command prints one JSON document on stdout (sorted keys, so output
is byte-deterministic for a fixed configuration) and machine-readable
error records on stderr.  Exit codes: 0 ok, 2 configuration error,
3 precision/grid error, 4 verification failure.
"""

import argparse
import json
import sys

from .agf import AndersonGF
from .cinf import INF
from .encoding import (canonical_dumps, decode_cinf, decode_module,
                       encode_agf, encode_cinf, encode_module)
from .errors import (ConfigError, DivergentEvaluation,
                     DivisionByApparentZero, GridTooCoarse,
                     IndeterminateValuation, IndependenceFailure,
                     NoConvergence, NotAUnit, PoleHit, PrecisionExhausted,
                     ResidueFieldTooSmall, SingularSpecialization,
                     VerificationFailed)
from .logext import ExtendedSystem, make_log_point
from .motive import MotiveMatrices, OmegaData
from .verify import context_q3, context_q5_tame, context_q5_wild, run_suite

_PRECISION_ERRORS = (GridTooCoarse, PrecisionExhausted, ResidueFieldTooSmall,
                     NoConvergence, DivergentEvaluation,
                     IndeterminateValuation, PoleHit, DivisionByApparentZero)
_VERIFY_ERRORS = (VerificationFailed, NotAUnit, SingularSpecialization,
                  IndependenceFailure)


def parse_value(cfg, text):
    """Tiny literal grammar for field values.

    Comma-separated terms; each term is an integer, ``theta^K``,
    ``C*theta^K`` (K an integer power) or ``@file.json`` holding a
    serialized value.
    """
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return decode_cinf(cfg, json.load(fh))
    acc = cfg.zero(INF)
    for term in text.split(","):
        term = term.strip()
        if "theta" in term:
            coeff = 1
            if "*" in term:
                ctext, term = term.split("*", 1)
                coeff = int(ctext)
            power = 1
            if "^" in term:
                power = int(term.split("^", 1)[1])
            acc = acc + cfg.theta(power) * coeff
        else:
            acc = acc + cfg.from_int(int(term))
    return acc


def builtin_context(tag):
    if tag in ("3", "q3"):
        return context_q3()
    if tag in ("5", "q5", "5-tame"):
        return context_q5_tame()
    if tag in ("5-wild",):
        return context_q5_wild()
    raise ConfigError("unknown builtin sample %r (use 3, 5 or 5-wild)" % tag)


def load_setup(args):
    """Resolve (cfg, module, context-or-None) from the flags."""
    if args.module or args.config:
        path = args.module or args.config
        with open(path) as fh:
            data = json.load(fh)
        if args.prec_n:
            data.setdefault("prec", {})["valuation_terms"] = args.prec_n
        if args.prec_t:
            data.setdefault("prec", {})["t_terms"] = args.prec_t
        cfg, module = decode_module(data)
        return cfg, module, None
    ctx = builtin_context(args.q or "3")
    cfg = ctx.cfg
    if args.prec_n and args.prec_n != cfg.prec:
        raise ConfigError("builtin samples have fixed precision; use a "
                          "--module file to change it")
    module = ctx.carlitz if args.rank1 else ctx.module
    return cfg, module, ctx


def emit(args, payload):
    if args.json:
        sys.stdout.write(canonical_dumps(payload) + "\n")
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2)
                         + "\n")


def cmd_exp_eval(args, cfg, module, ctx):
    z = parse_value(cfg, args.z)
    return {"command": "exp-eval", "value": encode_cinf(module.exp_eval(z))}


def cmd_log_eval(args, cfg, module, ctx):
    z = parse_value(cfg, args.z)
    return {"command": "log-eval", "value": encode_cinf(module.log_eval(z))}


def cmd_torsion(args, cfg, module, ctx):
    if args.partial:
        points, failures = module.torsion_points(partial=True)
    else:
        points, failures = module.torsion_points(), []
    return {
        "command": "torsion",
        "points": [encode_cinf(x) for x in points],
        "failures": failures,
    }


def cmd_periods(args, cfg, module, ctx):
    lat = module.periods()
    out = {
        "command": "periods",
        "omega1": encode_cinf(lat.omega1),
        "tower_depths": [t.depth for t in lat.towers],
    }
    if lat.omega2 is not None:
        out["omega2"] = encode_cinf(lat.omega2)
    return out


def cmd_quasi_period(args, cfg, module, ctx):
    if args.z is not None:
        z = parse_value(cfg, args.z)
        return {"command": "quasi-period",
                "value": encode_cinf(module.quasi_period_eval(z))}
    lat = module.periods()
    out = {"command": "quasi-period"}
    for i, om in enumerate(lat.basis(), start=1):
        out["F(omega%d)" % i] = encode_cinf(
            module.quasi_period_eval(om, lattice=lat))
    return out


def cmd_agf(args, cfg, module, ctx):
    u = parse_value(cfg, args.u)
    f = AndersonGF(module, u)
    return {"command": "agf", "agf": encode_agf(f)}


def cmd_omega(args, cfg, module, ctx):
    om = OmegaData(cfg, T=cfg.t_terms)
    res = om.difference_residual()
    return {
        "command": "omega",
        "I": om.I,
        "pi_tilde": encode_cinf(om.pi_tilde()),
        "difference_residual_valuations":
            ["inf" if v == INF else v for v in res.vbounds()],
        "threshold": cfg.pass_threshold(),
    }


def _motive_for(args, cfg, module, ctx):
    if ctx is not None and module is ctx.module:
        return ctx.motive(args.prec_t or 16)
    lat = module.periods()
    return MotiveMatrices(module, lat, T=args.prec_t or 16)


def cmd_psi(args, cfg, module, ctx):
    mot = _motive_for(args, cfg, module, ctx)
    sres, x0 = mot.sigma_invariance_residual()
    def vb(x):
        return ["inf" if v == INF else v for v in x]
    return {
        "command": "psi",
        "T": mot.T,
        "difference_residual": vb([mot.difference_residual().min_vbound()]),
        "tensor_residual": vb([mot.tensor_difference_residual().min_vbound()]),
        "wedge_residual": vb([mot.wedge_residual().min_vbound()]),
        "sigma_invariance_residual": vb([sres.min_vbound()]),
        "threshold": cfg.pass_threshold(),
    }


def cmd_specialize(args, cfg, module, ctx):
    mot = _motive_for(args, cfg, module, ctx)
    P, M = mot.period_matrix()
    spec = mot.specialization_residuals()
    li = mot.legendre_invariant()
    return {
        "command": "specialize",
        "psi_theta": [[encode_cinf(M[i][j]) for j in range(2)]
                      for i in range(2)],
        "period_matrix": [[encode_cinf(P[i][j]) for j in range(2)]
                          for i in range(2)],
        "cross_check_valuations":
            [["inf" if spec[i][j].vbound() == INF else spec[i][j].vbound()
              for j in range(2)] for i in range(2)],
        "legendre": {k: v for k, v in li.items()},
        "threshold": cfg.pass_threshold(),
    }


def cmd_log_point(args, cfg, module, ctx):
    lam = parse_value(cfg, args.z) if args.z else None
    alpha = parse_value(cfg, args.alpha) if args.alpha else None
    P = make_log_point(module, lam=lam, alpha=alpha)
    return {
        "command": "log-point",
        "lambda": encode_cinf(P.lam),
        "alpha": encode_cinf(P.alpha),
        "provenance": P.provenance,
    }


def cmd_extend(args, cfg, module, ctx):
    mot = _motive_for(args, cfg, module, ctx)
    points = [make_log_point(module, alpha=parse_value(cfg, a.strip()))
              for a in args.alphas.split(";")]
    system = ExtendedSystem(mot, points)
    res = system.difference_residual()
    return {
        "command": "extend",
        "n": system.n,
        "points": [{"lambda": encode_cinf(p.lam),
                    "alpha": encode_cinf(p.alpha)} for p in points],
        "difference_residual_valuation":
            "inf" if res.min_vbound() == INF else res.min_vbound(),
        "generators": [{"name": n, "value": encode_cinf(v)}
                       for n, v in system.generators()],
        "threshold": cfg.pass_threshold(),
    }


def cmd_verify(args, cfg, module, ctx):
    return run_suite(timings=args.timings)


def cmd_suggest(args, cfg, module, ctx):
    from .suggest import suggest_config
    kappa = [int(c) for c in (args.kappa_poly or "1").split(",")]
    u = [int(c) for c in (args.u_poly or "1").split(",")]
    rank = 1 if args.rank1 else 2
    out = suggest_config(args.p or 3, s=args.s or 1, rank=rank,
                         kappa_poly=kappa, u_poly=u)
    out["command"] = "suggest"
    return out


_COMMANDS = {
    "exp-eval": cmd_exp_eval,
    "log-eval": cmd_log_eval,
    "torsion": cmd_torsion,
    "periods": cmd_periods,
    "quasi-period": cmd_quasi_period,
    "agf": cmd_agf,
    "omega": cmd_omega,
    "psi": cmd_psi,
    "specialize": cmd_specialize,
    "log-point": cmd_log_point,
    "extend": cmd_extend,
    "verify": cmd_verify,
    "suggest": cmd_suggest,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="drinfeldlab",
        description="Exact-arithmetic identity checks for rank-1/2 Drinfeld "
                    "modules: periods, quasi-periods, logarithms and their "
                    "Frobenius difference systems.")
    ap.add_argument("command", choices=sorted(_COMMANDS))
    ap.add_argument("--config", help="JSON module/config descriptor")
    ap.add_argument("--module", help="synonym of --config")
    ap.add_argument("--q", help="builtin sample: 3, 5 or 5-wild")
    ap.add_argument("--rank1", action="store_true",
                    help="use the Carlitz module over the chosen sample field")
    ap.add_argument("--prec-n", type=int, help="valuation precision override")
    ap.add_argument("--prec-t", type=int, help="t-truncation override")
    ap.add_argument("--json", action="store_true",
                    help="compact canonical JSON (default is indented)")
    ap.add_argument("--timings", action="store_true",
                    help="include wall_time in verify reports")
    ap.add_argument("--partial", action="store_true",
                    help="torsion: return the representable part plus "
                         "failure records instead of erroring")
    ap.add_argument("--z", help="input value (literal grammar or @file)")
    ap.add_argument("--alpha", help="exponential image for log-point")
    ap.add_argument("--u", help="generating-function argument")
    ap.add_argument("--alphas", help="semicolon-separated alpha list (extend)")
    ap.add_argument("--p", type=int, help="characteristic (suggest)")
    ap.add_argument("--s", type=int, help="q = p^s exponent (suggest)")
    ap.add_argument("--kappa-poly", help="theta-polynomial of kappa as "
                    "comma-separated integers, low degree first (suggest)")
    ap.add_argument("--u-poly", help="theta-polynomial of u (suggest)")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "suggest":
            payload = cmd_suggest(args, None, None, None)
        else:
            cfg, module, ctx = load_setup(args)
            payload = _COMMANDS[args.command](args, cfg, module, ctx)
            payload["config"] = encode_module(module)
    except ConfigError as ex:
        sys.stderr.write(canonical_dumps(ex.record()) + "\n")
        return 2
    except _PRECISION_ERRORS as ex:
        sys.stderr.write(canonical_dumps(ex.record()) + "\n")
        return 3
    except _VERIFY_ERRORS as ex:
        sys.stderr.write(canonical_dumps(ex.record()) + "\n")
        return 4
    except (OSError, ValueError, json.JSONDecodeError) as ex:
        sys.stderr.write(canonical_dumps(
            {"error": type(ex).__name__, "message": str(ex)}) + "\n")
        return 2
    emit(args, payload)
    if args.command == "verify" and not payload["pass"]:
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
