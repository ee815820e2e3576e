"""Command-line front end: ``polyadic <verb> [options]``.

Every verb prints one report, JSON by default::

    {"verb", "system", "params", "results": [...], "witnesses": [...], "evidence", "pass"}

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 sweep budget exceeded (see ``POLYADIC_BUDGET``).
"""
from __future__ import annotations

import argparse
import json
import sys as _sys

from . import analysis, chain, gallery, homomorphism
from .analysis import _plain
from .core import polyadic_power
from .errors import InvalidParams, PolyadicError, SweepBudgetExceeded
from .loader import binary_table, load_map, load_system, parse_element

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DIGITS = 12


def _round(x):
    if isinstance(x, float):
        return float(f"{x:.{DIGITS}g}")
    if isinstance(x, complex):
        return {"re": _round(x.real), "im": _round(x.imag)}
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _report(verb, system=None, params=None, results=(), witnesses=(), evidence=None, ok=True):
    return {"verb": verb,
            "system": system.describe() if system is not None else None,
            "params": params or {},
            "results": list(results),
            "witnesses": list(witnesses),
            "evidence": evidence,
            "pass": bool(ok)}


def _elements(sys, text):
    if text is not None:
        return [parse_element(sys, text)]
    return list(sys.elements()) if sys.finite else [sys.samples[0]]


# ---------------------------------------------------------------- verbs

def cmd_classify(args):
    sys = load_system(args.system)
    rep = analysis.classify(sys, args.budget)
    d = rep.to_dict()
    wits = [{"property": k, "witness": v} for k, v in d["witnesses"].items()]
    return _report("classify", sys, {}, [d], wits, d["evidence"], rep.group)


def cmd_quer(args):
    sys = load_system(args.system)
    results = []
    for g in _elements(sys, args.element):
        results.append({"g": g, "k": args.k, "value": analysis.querpower(sys, g, args.k)})
    return _report("quer", sys, {"k": args.k}, results, evidence="computed")


def cmd_power(args):
    sys = load_system(args.system)
    results = []
    for g in _elements(sys, args.element):
        results.append({"g": g, "ell": args.ell, "value": analysis.signed_power(sys, g, args.ell)})
    return _report("power", sys, {"ell": args.ell}, results, evidence="computed")


def cmd_decompose(args):
    sys = load_system(args.system)
    e = parse_element(sys, args.e)
    dec = chain.decompose(sys, e, args.q, budget=args.budget)
    checks = {
        "quasi_endomorphism": chain.check_quasi_endomorphism(dec),
        "quasi_fixed_point": chain.check_quasi_fixed_point(dec),
        "quasi_conjugation": chain.check_quasi_conjugation(dec),
        "chain": chain.check_chain(dec, args.budget),
    }
    result = dec.to_dict()
    if sys.finite:
        result["phi"] = dec.phi_table.tolist()
        result["star"] = dec.retract.star_table.tolist()
    result["checks"] = {k: v.to_dict() for k, v in checks.items()}
    wits = [{"check": k, "witness": v.witness} for k, v in checks.items() if not v.ok]
    ev = "exhaustive" if sys.finite else "sampled"
    return _report("decompose", sys, {"e": e, "q": args.q}, [result], wits, ev,
                   all(v.ok for v in checks.values()))


def cmd_verify_chain(args):
    sys = load_system(args.system)
    results, wits, ok = [], [], True
    for e in _elements(sys, args.e):
        rep = chain.verify_invariance(sys, e, args.qmax, args.budget, args.jobs)
        for entry in rep.entries:
            results.append({"e": e, **entry})
            if entry.get("witness") is not None:
                wits.append({"e": e, "q": entry["q"], "witness": entry["witness"]})
        ok = ok and rep.ok
    ev = "exhaustive" if sys.finite else "sampled"
    return _report("verify-chain", sys, {"qmax": args.qmax}, results, wits, ev, ok)


def _read_phi(text, m):
    if text in ("id", "identity"):
        return list(range(m))
    return load_map(text)


def cmd_reverse(args):
    B = binary_table(args.binary)
    phi = _read_phi(args.phi, B.shape[0])
    sys = chain.reverse_construct(B, phi, args.b, args.n, args.budget)
    rep = analysis.classify(sys, args.budget)
    e = sys.params["binary_identity"]
    result = {"n": args.n, "m": sys.m, "b": args.b, "e^<1>": polyadic_power(sys, e, 1),
              "group": rep.group, "classification": rep.to_dict()}
    return _report("reverse", sys, {"b": args.b, "n": args.n, "phi": phi}, [result],
                   evidence="exhaustive", ok=rep.group)


def cmd_hom_check(args):
    src = load_system(args.source)
    tgt = load_system(args.target)
    if not (src.finite and tgt.finite):
        raise InvalidParams("hom-check maps are index tables over finite carriers")
    phi = homomorphism.CarrierMap(src, tgt, load_map(args.map))
    params = {"map": phi.mapping.tolist()}
    if args.q is None:
        res = homomorphism.check_homomorphism(phi, budget=args.budget)
        wits = [] if res.ok else [{"check": "homomorphism", "witness": res.witness}]
        return _report("hom-check", src, params, [{"homomorphism": res.ok, **res.detail}],
                       wits, res.evidence, res.ok)
    e_s = parse_element(src, args.e or "0")
    e_t = parse_element(tgt, args.e_target if args.e_target is not None else (args.e or "0"))
    ds = chain.decompose(src, e_s, args.q, budget=args.budget)
    dt = chain.decompose(tgt, e_t, args.q, budget=args.budget)
    w = homomorphism.check_deformed_compatibility(phi, ds, dt, strict=False)
    params.update({"q": args.q, "e": e_s, "e_target": e_t, "target": tgt.describe()})
    wits = [{"check": k, "witness": v} for k, v in w.witnesses.items()]
    return _report("hom-check", src, params, [{**w.to_dict(), "theorem_consistent": w.consistent}],
                   wits, "exhaustive", w.premise and w.nary_ok and w.consistent)


def cmd_gallery_check(args):
    if args.system:
        systems = [load_system(args.system)]
    else:
        systems = [gallery.qadd(3, 0.5), gallery.qadd(4, 0.5), gallery.copula(),
                   gallery.qprod(0.5), gallery.qprod(0.9), gallery.binary_center(c=1),
                   gallery.derived_modular(5, 3, 2)]
    results, wits, ok = [], [], True
    for sys in systems:
        for which in gallery.reference_checks_for(sys.family):
            rep = gallery.reference_check(sys, which)
            d = rep.to_dict()
            d["system"] = sys.describe()
            results.append(d)
            wits += [{"family": sys.family, "which": which, **mm} for mm in rep.mismatches[:5]]
            ok = ok and rep.ok
    return _report("gallery-check", None, {}, results, wits, "reference", ok)


def cmd_enumerate_q(args):
    vals = chain.valid_q_values(args.n, args.qmax)
    results = [v._asdict() for v in vals]
    odd = chain.q_integrality_disagreements(args.n, args.qmax)
    return _report("enumerate-q", None, {"n": args.n, "qmax": args.qmax}, results,
                   [{"q": q, "note": "only one of ell_phi, ell_e is integral"} for q in odd],
                   "arithmetic", True)


VERBS = {
    "classify": cmd_classify, "quer": cmd_quer, "power": cmd_power, "decompose": cmd_decompose,
    "verify-chain": cmd_verify_chain, "reverse": cmd_reverse, "hom-check": cmd_hom_check,
    "gallery-check": cmd_gallery_check, "enumerate-q": cmd_enumerate_q,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker cap for parallel sweeps")
    common.add_argument("--budget", type=int, default=None,
                        help="sweep budget (default: POLYADIC_BUDGET or 10**7)")
    p = argparse.ArgumentParser(prog="polyadic", description="n-ary group toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("--system", required=True)
    s = sub.add_parser("quer", parents=[common])
    s.add_argument("--system", required=True)
    s.add_argument("--element")
    s.add_argument("--k", type=int, default=1)
    s = sub.add_parser("power", parents=[common])
    s.add_argument("--system", required=True)
    s.add_argument("--element")
    s.add_argument("--ell", type=int, required=True)
    s = sub.add_parser("decompose", parents=[common])
    s.add_argument("--system", required=True)
    s.add_argument("--e", required=True)
    s.add_argument("--q", type=int, default=1)
    s = sub.add_parser("verify-chain", parents=[common])
    s.add_argument("--system", required=True)
    s.add_argument("--e")
    s.add_argument("--qmax", type=int, default=9)
    s = sub.add_parser("reverse", parents=[common])
    s.add_argument("--binary", required=True, help="JSON table file, cyclic:m, z7units or s3")
    s.add_argument("--phi", default="id", help="JSON array file, inline list, or id")
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s = sub.add_parser("hom-check", parents=[common])
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--map", required=True)
    s.add_argument("--q", type=int)
    s.add_argument("--e")
    s.add_argument("--e-target", dest="e_target")
    s = sub.add_parser("gallery-check", parents=[common])
    s.add_argument("--system")
    s = sub.add_parser("enumerate-q", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--qmax", type=int, required=True)
    return p


def _text(report: dict) -> str:
    head = f"{report['verb']}: {'PASS' if report['pass'] else 'FAIL'}"
    if report["system"]:
        head += f"  system={json.dumps(report['system'])}"
    lines = [head]
    for r in report["results"]:
        lines.append("  " + json.dumps(r))
    for w in report["witnesses"]:
        lines.append("  witness " + json.dumps(w))
    if "error" in report:
        lines.append(f"  error: {report['error']}")
    return "\n".join(lines)


def main(argv=None, stdout=None) -> int:
    out = stdout or _sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        report = VERBS[args.verb](args)
        code = EXIT_PASS if report["pass"] else EXIT_FAIL
    except SweepBudgetExceeded as exc:
        report, code = _report(args.verb, ok=False), EXIT_BUDGET
        report["error"] = str(exc)
    except (InvalidParams, ValueError, OSError, json.JSONDecodeError) as exc:
        report, code = _report(args.verb, ok=False), EXIT_USAGE
        report["error"] = str(exc)
    except PolyadicError as exc:
        report, code = _report(args.verb, ok=False), EXIT_FAIL
        report["error"] = f"{type(exc).__name__}: {exc}"
    report = _round(_plain(report))
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=False), file=out)
    else:
        print(_text(report), file=out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
