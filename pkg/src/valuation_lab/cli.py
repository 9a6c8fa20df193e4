"""Command-line driver: one JSON document per invocation on stdout.

Exit status 0 on success, 1 on a domain error (JSON error object on stdout),
2 on a usage error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import closure, diagsim, extensions, hensel, valuation, valuegroup
from .config import Config, seed_from_env
from .errors import LabError
from .exact import factor_seed
from .numberfields import FieldTower, factor_over_field, minimal_polynomial
from .polyparse import parse_poly, parse_rational


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# argument decoding


def _tower(src, config):
    if not src:
        return FieldTower.rationals()
    try:
        levels_doc = json.loads(src)
    except json.JSONDecodeError as exc:
        raise LabError("PARSE_ERROR", f"tower is not valid JSON at offset {exc.pos}") from None
    if not isinstance(levels_doc, list) or not all(isinstance(l, dict) and {"name", "minpoly"} <= l.keys() for l in levels_doc):
        raise LabError("PARSE_ERROR", 'tower must be a list of {"name", "minpoly"} objects')
    K = FieldTower(config=config)
    for level in levels_doc:
        poly = parse_poly(level["minpoly"], field=K.top, constants=_gens(K))
        K = K.extend(level["name"], poly)
    return K


def _gens(K):
    return dict(zip(K.names, K.gens()))


def _poly(src, K):
    return parse_poly(src, field=K.top, constants=_gens(K))


def _element(src, K):
    p = parse_poly(src, var="\0", field=K.top, constants=_gens(K))
    return p.coeffs[0] if p.coeffs else K.top.zero


def _elem_str(x):
    return str(x) if isinstance(x, Fraction) else x.to_str()


def _pair(src):
    parts = src.split(",")
    if len(parts) != 2:
        raise LabError("PARSE_ERROR", f"expected 'a,b' but got {src!r}")
    return valuegroup.elem(parse_rational(parts[0]), parse_rational(parts[1]))


def _gens_list(src):
    return [_pair(s) for s in src.split(";") if s.strip()]


def _ints(src):
    try:
        return [int(s) for s in src.split(",") if s.strip()]
    except ValueError:
        raise LabError("PARSE_ERROR", f"expected comma-separated integers, got {src!r}") from None


def _valuation(K, p, index):
    if index is None:
        return p
    vals = extensions.absolute_valuations(K, p)
    if not 0 <= index < len(vals):
        raise LabError("INDEX_OUT_OF_RANGE", f"index {index} outside 0..{len(vals) - 1}")
    return vals[index]


def _poly_str(f):
    return f.to_str("x")


# ---------------------------------------------------------------------------
# verbs


def cmd_factor(args, config, out):
    K = _tower(args.tower, config)
    f = _poly(args.poly, K)
    facs = factor_over_field(f, K)
    _emit(
        {
            "factors": [{"factor": _poly_str(g), "multiplicity": m} for g, m in facs],
            "leading": _elem_str(f.lc()),
        },
        out,
    )


def cmd_minpoly(args, config, out):
    K = _tower(args.tower, config)
    a = _element(args.elem, K)
    over = K.prefix(args.over) if args.over is not None else None
    mp = minimal_polynomial(a, over, K.top)
    _emit({"degree": mp.degree(), "minpoly": _poly_str(mp)}, out)


def cmd_newton(args, config, out):
    f = parse_poly(args.poly)
    _emit(valuation.newton_polygon(f, args.p).to_json(), out)


def cmd_extensions(args, config, out):
    K = _tower(args.tower, config)
    g = _poly(args.poly, K)
    rep = extensions.extensions_of(K, _valuation(K, args.p, args.base_index), g)
    _emit(rep.to_json(), out)


def cmd_hensel_lift(args, config, out):
    f = parse_poly(args.poly)
    b, trace = hensel.hensel_lift_traced(f, parse_rational(args.seed_value), args.p, args.N, config)
    _emit(
        {
            "defects": trace.defects,
            "lift": b.to_json(),
            "root": str(b.to_integer()),
            "v_derivative": trace.k,
        },
        out,
    )


def cmd_hensel_set(args, config, out):
    K = _tower(args.tower, config)
    f = _poly(args.poly, K)
    _emit(hensel.hensel_set_membership(K, _valuation(K, args.p, args.base_index), f).to_json(), out)


def cmd_div(args, config, out):
    G = valuegroup.FGGroup(_gens_list(args.gens))
    _emit({"divides": valuegroup.div_query(G, _pair(args.x), args.k)}, out)


def cmd_group_extend(args, config, out):
    G = valuegroup.FGGroup(_gens_list(args.gens))
    H = valuegroup.extend_div(G, _pair(args.b), args.n)
    doc = {"group": H.to_json(), "index": valuegroup.subgroup_index(G, H)}
    if args.x is not None:
        x, k = _pair(args.x), args.k
        derived = H.div_query(x, k)
        doc["query"] = {"divides": derived, "oracle": H.lattice_div(x, k)}
    _emit(doc, out)


def cmd_padic_check(args, config, out):
    stage = closure.initial_stage(args.p, valuegroup.FGGroup(_gens_list(args.gens)))
    _emit(closure.formally_padic_check(stage), out)


def _schedule(src):
    out = []
    for item in src.split(","):
        if not item.strip():
            continue
        mono, sep, q = item.rpartition(":")
        if not sep:
            raise LabError("PARSE_ERROR", f"schedule entries look like 't:2', got {item!r}")
        out.append((closure.MonomialElem.parse(mono), _ints(q)[0]))
    return out


def cmd_padic_close(args, config, out):
    schedule = _schedule(args.schedule)
    stage = closure.initial_stage(args.p)
    _emit(stage.to_json(), out)
    for a, q in schedule:
        stage = closure.closure_stage(stage, a, q)
        _emit(stage.to_json(), out)


def cmd_weak_approx(args, config, out):
    K = _tower(args.tower, config)
    primes = _ints(args.primes)
    targets = [_element(t, K) for t in args.targets.split(",")]
    if K.depth == 0:
        vs = primes
    else:
        idx = _ints(args.indices) if args.indices else [0] * len(primes)
        if len(idx) != len(primes):
            raise LabError("BAD_ARGUMENT", "one index per prime")
        vs = [_valuation(K, p, i) for p, i in zip(primes, idx)]
    a = valuation.weak_approximation(vs, targets)
    handles = [valuation.as_handle(v) for v in vs]
    _emit(
        {
            "element": _elem_str(a),
            "checks": [
                {"v(a)": w.value(a).to_json(), "v(a - target)": w.value(a - t).to_json()}
                for w, t in zip(handles, targets)
            ],
        },
        out,
    )


def cmd_common_ext(args, config, out):
    K1 = _tower(args.tower1, config)
    K2 = _tower(args.tower2, config)
    u = _valuation(K1, args.p, args.index1 if K1.depth else None)
    w = _valuation(K2, args.p, args.index2 if K2.depth else None)
    _emit({"common": extensions.common_extension_exists(u, w)}, out)


def cmd_simulate(args, config, out):
    if args.which == "padic-adversary":
        rep = diagsim.sim_padic_adversary(args.p, args.q, args.m, _pair(args.gamma))
    else:
        oracle = diagsim.OracleApprox(_ints(args.members), args.budget)
        probes = None if args.probes is None else _ints(args.probes)
        if args.which == "no-comp-ext":
            rep = diagsim.sim_no_comp_ext(args.r, oracle, probes, config)
        else:
            rep = diagsim.sim_henselization(args.r, oracle, probes, config=config)
    _emit(rep, out)


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="valuation-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=None, help="factorization seed (default from VALUATION_LAB_SEED, else 0)")
    ap.add_argument("--refinement-limit", type=int, default=Config.refinement_limit)
    ap.add_argument("--value-cap", type=int, default=Config.value_precision_cap)
    ap.add_argument("--hensel-cap", type=int, default=Config.hensel_precision_cap)
    ap.add_argument("--tower-depth", type=int, default=Config.tower_depth)
    ap.add_argument("--degree-bound", type=int, default=Config.degree_bound)
    ap.add_argument("--probe-degree-bound", type=int, default=Config.probe_degree_bound)
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = verb("factor", cmd_factor, "factor a polynomial over Q or a tower")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--tower")

    sp = verb("minpoly", cmd_minpoly, "minimal polynomial of a tower element")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--elem", required=True)
    sp.add_argument("--over", type=int, help="depth of the subfield (default Q)")

    sp = verb("newton", cmd_newton, "p-adic Newton polygon")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)

    sp = verb("extensions", cmd_extensions, "extensions of a p-adic valuation")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--tower")
    sp.add_argument("--base-index", type=int)

    sp = verb("hensel-lift", cmd_hensel_lift, "Hensel lift of an approximate root")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--seed", dest="seed_value", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)

    sp = verb("hensel-set", cmd_hensel_set, "membership in the Hensel irreducibility set")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--tower")
    sp.add_argument("--base-index", type=int)

    sp = verb("div", cmd_div, "does k divide x in the group")
    sp.add_argument("--gens", required=True, help='generators "a,b;a,b;..." for a + b*r')
    sp.add_argument("--x", required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = verb("group-extend", cmd_group_extend, "adjoin a with n*a = b")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x")
    sp.add_argument("--k", type=int, default=1)

    sp = verb("padic-check", cmd_padic_check, "formally p-adic flags of a value group")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--p", type=int, default=2)

    sp = verb("padic-close", cmd_padic_close, "closure stages, one JSON document per line")
    sp.add_argument("--schedule", required=True, help='entries "monomial:q", e.g. "t:2,t:3"')
    sp.add_argument("--p", type=int, default=2)

    sp = verb("weak-approx", cmd_weak_approx, "weak approximation")
    sp.add_argument("--primes", required=True)
    sp.add_argument("--targets", required=True)
    sp.add_argument("--tower")
    sp.add_argument("--indices")

    sp = verb("common-ext", cmd_common_ext, "common extension of two valuations")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--tower1")
    sp.add_argument("--index1", type=int, default=0)
    sp.add_argument("--tower2")
    sp.add_argument("--index2", type=int, default=0)

    sp = verb("simulate", cmd_simulate, "replay a diagonal construction")
    sp.add_argument("which", choices=["no-comp-ext", "henselization", "padic-adversary"])
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--members", default="")
    sp.add_argument("--probes")
    sp.add_argument("--budget", type=int, default=3)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--gamma", default="0,1/2")
    sp.add_argument("--p", type=int, default=2)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    seed = args.seed if args.seed is not None else seed_from_env(0)
    config = Config(
        tower_depth=args.tower_depth,
        degree_bound=args.degree_bound,
        refinement_limit=args.refinement_limit,
        value_precision_cap=args.value_cap,
        hensel_precision_cap=args.hensel_cap,
        probe_degree_bound=args.probe_degree_bound,
        seed=seed,
    )
    token = factor_seed.set(seed)
    try:
        args.fn(args, config, out)
    except LabError as err:
        _emit(err.to_json(), out)
        print(f"error: {err}", file=sys.stderr)
        return 1
    finally:
        factor_seed.reset(token)
    return 0


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
