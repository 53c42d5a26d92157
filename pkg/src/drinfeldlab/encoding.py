"""Canonical JSON encodings.

Field elements always travel with the grid denominator, the extension
degree and the modulus, so that every serialized value is self-describing
and re-parses to an equal value under the same configuration.  Exponent
lists are ascending and coefficients are F_p coordinate vectors in the
power basis of F_{q^m}; all dumps use sorted keys and fixed separators so
byte-identical output is a function of the data alone.
"""

import json

from .cinf import CInfApprox, FieldConfig, INF
from .errors import ConfigError
from .tseries import TSeries


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _prec_out(p):
    return "inf" if p == INF else int(p)


def _prec_in(p):
    return INF if p == "inf" else int(p)


def encode_cinf(x):
    cfg = x.cfg
    return {
        "e": cfg.e,
        "m": cfg.m,
        "modulus": list(cfg.modulus),
        "prec": _prec_out(x.prec),
        "terms": [[e, cfg.field.to_fp_vec(c)] for e, c in x.sorted_terms()],
    }


def decode_cinf(cfg, data):
    if data["e"] != cfg.e or data["m"] != cfg.m \
            or list(data["modulus"]) != list(cfg.modulus):
        raise ConfigError("serialized value belongs to a different tower")
    terms = {int(e): cfg.field.from_fp_vec(vec) for e, vec in data["terms"]}
    return CInfApprox(cfg, terms, _prec_in(data["prec"]))


def encode_tseries(F):
    out = {"T": F.T, "coeffs": [encode_cinf(c) for c in F.coeffs]}
    if F.tail is not None:
        out["tailBound"] = _prec_out(F.tail)
    return out


def decode_tseries(cfg, data):
    tail = data.get("tailBound")
    if tail is not None:
        tail = _prec_in(tail)
    return TSeries(cfg, [decode_cinf(cfg, c) for c in data["coeffs"]], tail)


def encode_agf(f):
    cfg = f.cfg
    return {
        "u": encode_cinf(f.u),
        "I": f.I,
        "terms": [[encode_cinf(cfg.theta(1).frobenius(i)),
                   encode_cinf(f.numerators[i])] for i in range(f.I)],
        "tailBound": None,
    }


def encode_config(cfg):
    return {
        "p": cfg.p, "s": cfg.s, "m": cfg.m,
        "modulus": list(cfg.modulus),
        "e": cfg.e, "depth": cfg.depth,
        "prec": {
            "valuation_terms": cfg.prec,
            "rel_terms": cfg.rel_prec,
            "t_terms": cfg.t_terms,
            "depth": cfg.exp_depth,
            "pole_count": cfg.pole_count,
            "tower_cap": cfg.tower_cap,
        },
    }


def decode_config(data):
    prec = data.get("prec", {})
    return FieldConfig(
        p=data["p"], s=data.get("s", 1), m=data.get("m", 1),
        modulus=tuple(data["modulus"]) if data.get("modulus") else None,
        e=data.get("e"), depth=data.get("depth", 2),
        prec=prec.get("valuation_terms", 240),
        rel_prec=prec.get("rel_terms"),
        t_terms=prec.get("t_terms", 32),
        exp_depth=prec.get("depth", 12),
        pole_count=prec.get("pole_count"),
        tower_cap=prec.get("tower_cap", 12),
        allow_char2=data.get("allow_char2", False),
    )


def encode_module(module):
    out = encode_config(module.cfg)
    out["rank"] = module.rank
    if module.rank == 2:
        out["kappa"] = encode_cinf(module.kappa)
        out["u"] = encode_cinf(module.u)
    else:
        out["kappa"] = None
        out["u"] = None
    return out


def decode_module(data, cfg=None):
    from .drinfeld import DrinfeldModule
    if cfg is None:
        cfg = decode_config(data)
    if data["rank"] == 1:
        return cfg, DrinfeldModule(cfg, 1)
    kappa = decode_cinf(cfg, data["kappa"])
    u = decode_cinf(cfg, data["u"])
    return cfg, DrinfeldModule(cfg, 2, kappa, u)
