"""Batch front end: algebra catalog, verification suites, table output.

Exit codes: 0 all checks passed, 1 verification failure, 2 input error.
Identical inputs and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .catalog import CATALOG, get_algebra
from .liealg import (AlgebraError, check_tensor_identity_F,
                     check_tensor_identity_f, dual_bases_F, dual_bases_f,
                     validate_algebra)
from .scalars import Scalar
from .pva import check_jacobi, check_skew, random_property_suite
from .spva import (check_susy_skew, check_susy_jacobi,
                   random_susy_property_suite, reduce_to_pva)
from .wclassical import (ReductionContext, compare_closed_direct,
                         solve_all_generators, w_bracket_direct,
                         w_bracket_closed, w_bracket_table)
from .swclassical import (SUSYReductionContext, compare_susy_closed_direct,
                          solve_all_susy_generators, susy_w_bracket_direct,
                          susy_w_bracket_table)
from .brst import (BRSTComplex, build_d, brst_bracket_table,
                   cohomology_generators, check_thm_5_9)

SUITES = ("skew", "jacobi", "lemma-3-4", "lemma-6-4", "thm-3-6", "thm-6-5",
          "d-squared", "thm-5-9", "prop-4-3")


class InputError(Exception):
    pass


def _parse_k(text) -> Scalar:
    if text in (None, "symbolic", "k"):
        return Scalar.k()
    try:
        return Scalar.rational(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise InputError("bad --k value %r (rational or 'symbolic')" % text)


def _max_weight(args):
    t = getattr(args, "max_weight", None)
    if t is None:
        return None
    try:
        return Fraction(t)
    except ValueError:
        raise InputError("bad --max-weight value %r" % t)


def _load(args):
    try:
        return get_algebra(args.algebra)
    except (KeyError, FileNotFoundError):
        raise InputError("unknown algebra %r (catalog: %s or a file path)"
                         % (args.algebra, ", ".join(sorted(CATALOG))))
    except AlgebraError as e:
        raise InputError(str(e))


def _emit(args, doc, text_lines):
    if args.format == "structured":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")


def cmd_validate(args):
    g = _load(args)
    report = validate_algebra(g)
    doc = {"command": "validate", "algebra": g.name, "violations": report}
    lines = ["%s: %s" % (g.name, "valid" if not report else "INVALID")]
    lines += ["  violation: %s" % r for r in report]
    _emit(args, doc, lines)
    return 0 if not report else 1


def _classical_ctx(args, g):
    if g.sl2 is None:
        raise InputError("algebra %s carries no sl2 triple" % g.name)
    return ReductionContext(g, k=_parse_k(args.k))


def _susy_ctx(args, g):
    if g.osp is None:
        raise InputError("algebra %s carries no osp(1|2) data" % g.name)
    return SUSYReductionContext(g, k=_parse_k(args.k))


def cmd_generators(args):
    g = _load(args)
    ctx = _classical_ctx(args, g)
    gens = solve_all_generators(ctx)
    cap = _max_weight(args)
    lines, objs = [], []
    for w in gens:
        shown = ctx.to_input(w.value).truncate_weight(cap)
        lines.append("w_%s = %s   (weight %s)"
                     % (ctx.gen_labels[w.index], shown.render(), w.weight))
        objs.append({"label": ctx.gen_labels[w.index], "weight": str(w.weight),
                     "value": shown.to_obj()})
    doc = {"command": "generators", "algebra": g.name,
           "alphabet": ctx.alph_in.to_obj(), "generators": objs}
    _emit(args, doc, lines)
    return 0


def cmd_bracket(args):
    g = _load(args)
    ctx = _classical_ctx(args, g)
    gens = {w.index: w for w in solve_all_generators(ctx)}
    i, j = args.i, args.j
    if not (0 <= i < len(gens) and 0 <= j < len(gens)):
        raise InputError("generator index out of range (have %d)" % len(gens))
    lp = (w_bracket_closed if args.route == "closed" else w_bracket_direct)(
        ctx, gens, i, j)
    lines = ["{w_%s lambda w_%s} = %s" % (ctx.gen_labels[i], ctx.gen_labels[j],
                                          lp.render())]
    doc = {"command": "bracket", "algebra": g.name, "i": i, "j": j,
           "route": args.route, "alphabet": ctx.gen_alph.to_obj(),
           "value": lp.to_obj()}
    _emit(args, doc, lines)
    return 0


def cmd_bracket_table(args):
    g = _load(args)
    ctx = _classical_ctx(args, g)
    gens = {w.index: w for w in solve_all_generators(ctx)}
    table = w_bracket_table(ctx, gens, route=args.route)
    lines = []
    for (i, j) in sorted(table.entries):
        lines.append("{w_%s lambda w_%s} = %s"
                     % (ctx.gen_labels[i], ctx.gen_labels[j],
                        table.entry(i, j).render()))
    doc = {"command": "bracket-table", "algebra": g.name, "route": args.route,
           "table": table.to_obj()}
    _emit(args, doc, lines)
    return 0


def cmd_susy_generators(args):
    g = _load(args)
    ctx = _susy_ctx(args, g)
    gens = solve_all_susy_generators(ctx)
    cap = _max_weight(args)
    lines, objs = [], []
    for w in gens:
        shown = ctx.to_input(w.value).truncate_weight(cap)
        lines.append("t_%s = %s   (weight %s)"
                     % (ctx.gen_labels[w.index], shown.render(), w.weight))
        objs.append({"label": ctx.gen_labels[w.index], "weight": str(w.weight),
                     "value": shown.to_obj()})
    doc = {"command": "susy-generators", "algebra": g.name,
           "alphabet": ctx.alph_in.to_obj(), "generators": objs}
    _emit(args, doc, lines)
    return 0


def cmd_susy_bracket(args):
    g = _load(args)
    ctx = _susy_ctx(args, g)
    gens = {w.index: w for w in solve_all_susy_generators(ctx)}
    i, j = args.i, args.j
    if not (0 <= i < len(gens) and 0 <= j < len(gens)):
        raise InputError("generator index out of range (have %d)" % len(gens))
    cp = susy_w_bracket_direct(ctx, gens, i, j)
    lines = ["{t_%s chi t_%s} = %s" % (ctx.gen_labels[i], ctx.gen_labels[j],
                                       cp.render())]
    doc = {"command": "susy-bracket", "algebra": g.name, "i": i, "j": j,
           "flavor": "chi", "alphabet": ctx.gen_alph.to_obj(),
           "value": cp.to_obj()}
    _emit(args, doc, lines)
    return 0


def cmd_brst_check(args):
    g = _load(args)
    ctx = _susy_ctx(args, g)
    diff = build_d(BRSTComplex(ctx), Scalar.c())
    report = diff.verify()
    ok = not report
    lines = ["%s {d_chi d}=0 (symbolic c)" % ("PASS" if ok else "FAIL")]
    lines += ["  %s" % r for r in report]
    doc = {"command": "brst-check", "algebra": g.name, "passed": ok,
           "violations": report}
    _emit(args, doc, lines)
    return 0 if ok else 1


def cmd_brst_generators(args):
    g = _load(args)
    ctx = _susy_ctx(args, g)
    cplx = BRSTComplex(ctx)
    diff = build_d(cplx, Scalar.imag())
    gens = cohomology_generators(cplx, diff)
    lines, objs = [], []
    for e in gens:
        lines.append("E_%s = %s   (weight %s)"
                     % (ctx.gen_labels[e.index], e.value.render(), e.weight))
        objs.append({"label": ctx.gen_labels[e.index], "weight": str(e.weight),
                     "value": e.value.to_obj()})
    doc = {"command": "brst-generators", "algebra": g.name,
           "alphabet": cplx.alph.to_obj(), "generators": objs}
    _emit(args, doc, lines)
    return 0


def cmd_brst_table(args):
    g = _load(args)
    ctx = _susy_ctx(args, g)
    cplx = BRSTComplex(ctx)
    diff = build_d(cplx, Scalar.imag())
    gens = {e.index: e for e in cohomology_generators(cplx, diff)}
    table = brst_bracket_table(cplx, diff, gens)
    lines = []
    for (i, j) in sorted(table.entries):
        lines.append("{E_%s chi E_%s} = %s"
                     % (ctx.gen_labels[i], ctx.gen_labels[j],
                        table.entry(i, j).render()))
    doc = {"command": "brst-table", "algebra": g.name, "table": table.to_obj()}
    _emit(args, doc, lines)
    return 0


def _suite_results(args, g, names):
    k = _parse_k(args.k)
    seed = args.seed
    route = getattr(args, "route", "both")
    table_route = "closed" if route == "closed" else "direct"
    results = {}

    def classical():
        ctx = ReductionContext(g, k=k)
        gens = {w.index: w for w in solve_all_generators(ctx)}
        return ctx, gens

    def susy():
        ctx = SUSYReductionContext(g, k=k)
        gens = {w.index: w for w in solve_all_susy_generators(ctx)}
        return ctx, gens

    for name in names:
        if name == "skew":
            ctx, gens = classical()
            bad = check_skew(ctx.table) + check_skew(
                w_bracket_table(ctx, gens, route=table_route))
            if g.osp is not None:
                sctx, sgens = susy()
                bad += check_susy_skew(sctx.table)
                bad += check_susy_skew(susy_w_bracket_table(sctx, sgens))
            results[name] = ["pair %s,%s" % p for p in bad]
        elif name == "jacobi":
            ctx, gens = classical()
            bad = check_jacobi(ctx.table) + check_jacobi(
                w_bracket_table(ctx, gens, route=table_route))
            bad += [f for f in random_property_suite(ctx.table, seed, rounds=2)]
            if g.osp is not None:
                sctx, sgens = susy()
                bad += check_susy_jacobi(sctx.table)
                bad += check_susy_jacobi(susy_w_bracket_table(sctx, sgens))
                bad += [f for f in random_susy_property_suite(sctx.table, seed,
                                                              rounds=2)]
            results[name] = ["%s" % (b,) for b in bad]
        elif name == "lemma-3-4":
            db = dual_bases_F(g, g.sl2)
            results[name] = ["t=%s" % t for t in check_tensor_identity_F(db)]
        elif name == "lemma-6-4":
            if g.osp is None:
                results[name] = []
                continue
            db = dual_bases_f(g, g.osp)
            results[name] = ["t=%s" % t for t in check_tensor_identity_f(db)]
        elif name == "thm-3-6":
            ctx, gens = classical()
            results[name] = ["pair %s,%s" % (a, b) for a, b, _, _ in
                             compare_closed_direct(ctx, gens)]
        elif name == "thm-6-5":
            if g.osp is None:
                results[name] = []
                continue
            sctx, sgens = susy()
            results[name] = ["pair %s,%s" % (a, b) for a, b, _, _ in
                             compare_susy_closed_direct(sctx, sgens)]
        elif name == "d-squared":
            if g.osp is None:
                results[name] = []
                continue
            sctx = SUSYReductionContext(g, k=k)
            results[name] = build_d(BRSTComplex(sctx), Scalar.c()).verify()
        elif name == "thm-5-9":
            if g.osp is None:
                results[name] = []
                continue
            results[name] = check_thm_5_9(g, k=k)
        elif name == "prop-4-3":
            if g.osp is None:
                results[name] = []
                continue
            sctx, sgens = susy()
            bad = []
            for label, table in (("affine", sctx.table),
                                 ("w", susy_w_bracket_table(sctx, sgens))):
                lt = reduce_to_pva(table)
                bad += ["%s %s,%s" % (label, a, b) for (a, b) in check_skew(lt)]
                bad += ["%s %s,%s,%s" % (label, a, b, c)
                        for (a, b, c) in check_jacobi(lt)]
            results[name] = bad
        else:
            raise InputError("unknown suite %r (have: %s)"
                             % (name, ", ".join(SUITES)))
    return results


def cmd_verify(args):
    g = _load(args)
    if g.sl2 is None:
        raise InputError("algebra %s carries no sl2 triple" % g.name)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    # thm-3-6 / thm-6-5 always compare both routes; --route picks the table
    # construction used by the axiom suites
    results = _suite_results(args, g, names)
    lines = []
    failed = False
    for name in names:
        bad = results[name]
        if bad:
            failed = True
            lines.append("FAIL %s (%d violations)" % (name, len(bad)))
            lines += ["  " + b for b in bad[:10]]
        else:
            lines.append("PASS %s" % name)
    doc = {"command": "verify", "algebra": g.name, "seed": args.seed,
           "results": results, "passed": not failed}
    _emit(args, doc, lines)
    return 1 if failed else 0


def cmd_susy_verify(args):
    g = _load(args)
    if g.osp is None:
        raise InputError("algebra %s carries no osp(1|2) data" % g.name)
    names = ["thm-6-5", "skew", "jacobi", "prop-4-3", "lemma-6-4"]
    if args.cross_brst:
        names += ["d-squared", "thm-5-9"]
    results = _suite_results(args, g, names)
    lines = []
    failed = False
    for name in names:
        bad = results[name]
        if bad:
            failed = True
            lines.append("FAIL %s (%d violations)" % (name, len(bad)))
            lines += ["  " + b for b in bad[:10]]
        else:
            lines.append("PASS %s" % name)
    doc = {"command": "susy-verify", "algebra": g.name, "results": results,
           "passed": not failed}
    _emit(args, doc, lines)
    return 1 if failed else 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="walg",
        description="Exact engine for classical and SUSY W-algebra structures")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k=True):
        sp.add_argument("--algebra", required=True,
                        help="catalog name (%s) or algebra file"
                        % ", ".join(sorted(CATALOG)))
        sp.add_argument("--format", choices=("text", "structured"),
                        default="text")
        if k:
            sp.add_argument("--k", default="symbolic",
                            help="level: a rational or 'symbolic'")
        sp.add_argument("--seed", type=int, default=2024)
        sp.add_argument("--max-weight", type=str, default=None, dest="max_weight",
                        help="truncate displayed values above this conformal "
                             "weight (debugging aid)")

    sp = sub.add_parser("validate", help="check all algebra axioms")
    common(sp, k=False)
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("generators", help="classical W generators")
    common(sp)
    sp.set_defaults(fn=cmd_generators)

    sp = sub.add_parser("bracket", help="classical W bracket of two generators")
    common(sp)
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp.add_argument("--route", choices=("direct", "closed"), default="direct")
    sp.set_defaults(fn=cmd_bracket)

    sp = sub.add_parser("bracket-table", help="full classical W table")
    common(sp)
    sp.add_argument("--route", choices=("direct", "closed"), default="direct")
    sp.set_defaults(fn=cmd_bracket_table)

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", default="all", help="one of %s or 'all'" % (SUITES,))
    sp.add_argument("--route", choices=("direct", "closed", "both"),
                    default="both")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("brst-check", help="d^2 = 0 with symbolic c")
    common(sp)
    sp.set_defaults(fn=cmd_brst_check)

    sp = sub.add_parser("brst-generators", help="H^0 generators (c = i)")
    common(sp)
    sp.set_defaults(fn=cmd_brst_generators)

    sp = sub.add_parser("brst-table", help="bracket table on H^0 (c = i)")
    common(sp)
    sp.set_defaults(fn=cmd_brst_table)

    sp = sub.add_parser("susy-generators", help="SUSY W generators")
    common(sp)
    sp.set_defaults(fn=cmd_susy_generators)

    sp = sub.add_parser("susy-bracket", help="SUSY W bracket of two generators")
    common(sp)
    sp.add_argument("i", type=int)
    sp.add_argument("j", type=int)
    sp.set_defaults(fn=cmd_susy_bracket)

    sp = sub.add_parser("susy-verify", help="SUSY verification suites")
    common(sp)
    sp.add_argument("--cross-brst", action="store_true",
                    help="also verify the BRST route and the equivalence")
    sp.set_defaults(fn=cmd_susy_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        sys.stderr.write("input error: %s\n" % e)
        return 2
    except AlgebraError as e:
        sys.stderr.write("input error: %s\n" % e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
