"""Command-line front end: ``gmk <command> ...``.

Inputs and outputs are JSON (see docs/schemas).  ``--in`` accepts a file
path, ``-`` for standard input, or a literal JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import serialize
from .cyclotomic import DirichletChar
from .iteration import UnivExponent, default_exponent, nabla_univ
from .nearly import NearlyForm, nabla_pow
from .padic import PadicScalar, PrecisionError, default_prec
from .qexp import QExpansion, deplete, derive, disk_project, theta_chi_avg, theta_chi_direct, u_op, v_op
from .triple import TripleEigenData, TripleWeights, euler_E, euler_E1, triple_t, verify_theta_m_identity
from .verify import SUITES, RunConfig, run_suite
from .weights import WeightChar, eval_univ_char

EXIT_FAIL, EXIT_INPUT, EXIT_PRECISION = 1, 2, 3


class InputError(ValueError):
    pass


def _read(source: str):
    if source.lstrip().startswith(("{", "[", '"')):
        text, where = source, "<literal>"
    elif source == "-":
        text, where = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
        where = source
    try:
        return serialize.loads(text)
    except serialize.SchemaError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _expect(obj, cls, what: str):
    if not isinstance(obj, cls):
        raise InputError(f"expected {what}, got {type(obj).__name__}")
    return obj


def _int_list(text: str, count: int, what: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"{what} must be {count} comma-separated integers") from exc
    if len(vals) != count:
        raise InputError(f"{what} must be {count} comma-separated integers")
    return vals


def _need_p(args) -> int:
    if args.p is None:
        raise InputError("--p is required for this command")
    return args.p


def _prec(args) -> int:
    return args.prec if args.prec is not None else default_prec()


# -- commands -------------------------------------------------------------------


def cmd_weights(args):
    p, prec = _need_p(args), _prec(args)
    beta = PadicScalar.from_rational(Fraction(args.beta), p, prec)
    n = args.n or 1
    if args.char is not None:
        chi = _expect(_read(args.char), WeightChar, "a weight character")
        if chi.kind == "universal":
            return serialize.dump(chi(beta, D=args.trunc, I=args.cutoff, prec=prec))
        return serialize.dump(chi(beta))
    if args.kind == "classical":
        return serialize.dump(WeightChar.classical(p, args.k, prec=prec)(beta))
    if args.kind == "finite":
        return serialize.dump(WeightChar.finite_order(p, n, args.e)(beta))
    return serialize.dump(eval_univ_char(p, n, beta, D=args.trunc, I=args.cutoff, prec=prec))


_QEXP_OPS = ("deplete", "u", "v", "derive", "disk", "theta-chi", "theta-chi-avg", "nabla", "nabla-pow")
_OP_ALIASES = {"U": "u", "V": "v", "theta": "theta-chi"}


def cmd_qexp(args):
    op = _OP_ALIASES.get(args.op, args.op)
    obj = _read(args.input)
    if op in ("nabla", "nabla-pow"):
        F = _expect(obj, NearlyForm, "a nearly form")
        s = 1 if op == "nabla" else args.s
        if s is None:
            raise InputError("--s is required for nabla-pow")
        return serialize.dump(nabla_pow(F, s))
    if isinstance(obj, NearlyForm):
        # coefficient-level operators act on each filtration piece
        fn = {"deplete": deplete, "u": u_op, "v": v_op, "derive": derive}.get(op)
        if fn is None:
            raise InputError(f"--op {args.op} needs a q-expansion")
        return serialize.dump(obj.map_q(fn))
    f = _expect(obj, QExpansion, "a q-expansion")
    n = args.n or 1
    args.op = op
    if args.op == "deplete":
        out = deplete(f)
    elif args.op == "u":
        out = u_op(f)
    elif args.op == "v":
        out = v_op(f)
    elif args.op == "derive":
        out = derive(f)
    elif args.op == "disk":
        out = disk_project(f, args.gamma, n)
    else:
        if args.chi is None:
            raise InputError("--chi a,b is required for theta-chi")
        a, b = _int_list(args.chi, 2, "--chi")
        chi = DirichletChar(f.p, n, a, b)
        out = theta_chi_direct(f, chi) if args.op == "theta-chi" else theta_chi_avg(f, chi)
    return serialize.dump(out)


def cmd_gm(args):
    if args.gm_cmd == "verify":
        return cmd_verify(argparse.Namespace(**{**vars(args), "suite": args.suite}))
    F = _expect(_read(args.input), NearlyForm, "a nearly form")
    if args.gm_cmd == "nabla":
        return serialize.dump(nabla_pow(F, args.s))
    prec = _prec(args)
    s_arg = args.s.strip()
    if s_arg.lstrip("-").isdigit():
        S = default_exponent(F.p, F.n, int(s_arg), prec)
    else:
        S = _expect(_read(s_arg), UnivExponent, "a universal exponent")
    res = nabla_univ(F, S, prec=prec, I=args.cutoff)
    return {"value": serialize.dump(res.value), "exponent": serialize.dump(S),
            "cutoff": res.cutoff, "tail": res.tail}


def cmd_triple(args):
    k1, k2, k3 = _int_list(args.weights, 3, "--weights")
    w = TripleWeights(k1, k2, k3)
    s1, s2 = (_expect(_read(x), NearlyForm, "a nearly form") for x in args.input)
    if args.triple_cmd == "t":
        return serialize.dump(triple_t(w, s1, s2))
    rep = verify_theta_m_identity(w, s1, s2, strict=False)
    return {"weights": [k1, k2, k3], "m": rep.m, "ok": rep.ok, "residual_terms": rep.residual_terms,
            "residual_valuation": "inf" if rep.residual_valuation == float("inf") else rep.residual_valuation,
            "correction": [str(a) for a in rep.correction]}


def cmd_euler(args):
    d = _expect(_read(args.data), TripleEigenData, "eigen-data")
    E, E1 = euler_E(args.slot, d), euler_E1(args.slot, d)
    return {"E_p": serialize.dump(E.value), "E_p1": serialize.dump(E1.value),
            "factors": [serialize.dump(f) for f in E.factors],
            "factors_1": [serialize.dump(f) for f in E1.factors],
            "vanishing": E.vanishing or E1.vanishing,
            "m0": d.m0, "m_p": d.m_p}


def cmd_verify(args):
    cfg = RunConfig(p=args.p, n=args.n, prec=args.prec, seed=args.seed,
                    trunc=getattr(args, "trunc", None), cutoff=getattr(args, "cutoff", None),
                    window=getattr(args, "window", None), samples=getattr(args, "samples", None),
                    i_max=getattr(args, "i_max", None), random_i_max=getattr(args, "random_i_max", None),
                    m=getattr(args, "m", None), bound=getattr(args, "bound", "stated"))
    report = run_suite(args.suite, cfg)
    args._exit = report.exit_code
    return report.to_json()


# -- parser -----------------------------------------------------------------------


def _add_verify_opts(sp):
    sp.add_argument("--i-max", type=int, dest="i_max")
    sp.add_argument("--random-i-max", type=int, dest="random_i_max")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--trunc", type=int)
    sp.add_argument("--cutoff", type=int)
    sp.add_argument("--window", type=int)
    sp.add_argument("--bound", choices=("stated", "corrected"), default="stated")


def build_parser() -> argparse.ArgumentParser:
    def globals_parser(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without defaults, so a value given
        # before the subcommand is not overwritten
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        gp = argparse.ArgumentParser(add_help=False)
        gp.add_argument("--p", type=int, help="odd prime", **kw)
        gp.add_argument("--n", type=int, help="level", **kw)
        gp.add_argument("--prec", type=int, help="p-adic digits (default: GMK_DEFAULT_PREC or 20)", **kw)
        gp.add_argument("--seed", type=int, **(kw or {"default": 0}))
        gp.add_argument("--out", help="write JSON here instead of standard output", **kw)
        return gp

    common = globals_parser(True)
    ap = argparse.ArgumentParser(prog="gmk", description="p-adic Gauss-Manin iteration toolkit",
                                 parents=[globals_parser(False)])
    sub = ap.add_subparsers(dest="cmd", required=True)

    w = sub.add_parser("weights", parents=[common], help="evaluate weight characters")
    w.add_argument("action", choices=("eval",))
    w.add_argument("--char", help="WeightChar JSON (overrides --kind/--k/--e)")
    w.add_argument("--kind", choices=("classical", "finite", "universal"), default="classical")
    w.add_argument("--k", type=int, default=0)
    w.add_argument("--e", type=int, default=1)
    w.add_argument("--beta", required=True, help="a p-adic unit, as an integer or fraction")
    w.add_argument("--trunc", type=int)
    w.add_argument("--cutoff", type=int)
    w.set_defaults(func=cmd_weights)

    q = sub.add_parser("qexp", parents=[common], help="q-expansion operators")
    q.add_argument("action", choices=("apply",))
    q.add_argument("--op", choices=_QEXP_OPS + tuple(_OP_ALIASES), required=True)
    q.add_argument("--s", type=int, help="power for nabla-pow")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--gamma", type=int, default=1)
    q.add_argument("--chi", help="character data a,b")
    q.set_defaults(func=cmd_qexp)

    g = sub.add_parser("gm", parents=[common], help="Gauss-Manin powers and the universal iterate")
    gs = g.add_subparsers(dest="gm_cmd", required=True)
    gn = gs.add_parser("nabla", parents=[common], help="integer power by the closed form")
    gn.add_argument("--s", type=int, required=True)
    gn.add_argument("--in", dest="input", required=True)
    gi = gs.add_parser("iterate", parents=[common], help="universal iterate")
    gi.add_argument("--s", required=True, help="UnivExponent JSON or an integer m")
    gi.add_argument("--in", dest="input", required=True)
    gi.add_argument("--cutoff", type=int)
    gv = gs.add_parser("verify", parents=[common], help="run a gm suite")
    gv.add_argument("suite", choices=("pdiviter", "binom-lemma", "gmesp"))
    _add_verify_opts(gv)
    g.set_defaults(func=cmd_gm)

    t = sub.add_parser("triple", parents=[common], help="triple products")
    ts = t.add_subparsers(dest="triple_cmd", required=True)
    for name in ("t", "verify-theta"):
        tp = ts.add_parser(name, parents=[common])
        tp.add_argument("--weights", required=True, help="k1,k2,k3")
        tp.add_argument("--in", dest="input", nargs=2, required=True, metavar=("S1", "S2"))
    t.set_defaults(func=cmd_triple)

    e = sub.add_parser("euler", parents=[common], help="Euler factors from eigen-data JSON")
    e.add_argument("--data", required=True)
    e.add_argument("--slot", choices=("p0", "p"), default="p0")
    e.set_defaults(func=cmd_euler)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    _add_verify_opts(v)
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args._exit = 0
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"gmk {args.cmd}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionError as exc:
        print(f"gmk {args.cmd}: precision exhausted in {args.func.__name__[4:]}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, TypeError, ZeroDivisionError, NotImplementedError) as exc:
        print(f"gmk {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return args._exit


if __name__ == "__main__":
    sys.exit(main())
