"""Command line front end.

Exit codes: 0 all pass or skipped, 1 a check failed, 2 usage or input error,
3 a resource budget ran out.  Form indices in output are 1-based so that they
match the y-variable names.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import blowup as bu
from .checks import CHECK_KINDS, FAIL, INCONCLUSIVE, CheckReport, run_all, run_check
from .corpus import builtin_corpus
from .exactnum import rational_str
from .groebner import Budget, BudgetExceeded, IdealHandle, budget_scope
from .hilbert import bigraded_hilbert_series, hilbert_series
from .io import InputError, arrangement_to_json, dumps, load_arrangement
from .matroid import (Arrangement, StretchedArrangement, circuits, contraction, intersection_lattice,
                      ot_hilbert_prediction, poincare_polynomial, stretched_products_factorization)
from .poly import parse_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
IDEAL_KINDS = ("ot", "sym", "rees", "fiber", "jacdual", "minors")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", default=[], metavar="PATH",
                        help="arrangement JSON file (repeatable)")
    common.add_argument("--order", default="degrevlex",
                        help="degrevlex, deglex, lex or perm:<variables>[:base]")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--max-basis", type=int, default=None)
    common.add_argument("--timeout-ms", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timings", action="store_true", help="include wall-clock millis in reports")

    p = argparse.ArgumentParser(prog="blowuplab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("circuits", parents=[common], help="minimal dependencies")
    sub.add_parser("lattice", parents=[common], help="flats with Moebius values")
    sub.add_parser("poincare", parents=[common], help="Poincare polynomial and predicted series")
    pp = sub.add_parser("products", parents=[common], help="a-fold products")
    pp.add_argument("--fold", type=int, default=None)
    ip = sub.add_parser("ideal", parents=[common], help="ideal generators")
    ip.add_argument("kind", choices=IDEAL_KINDS)
    ip.add_argument("--method", choices=bu.REES_METHODS, default="kernel")
    ip.add_argument("--p", type=int, default=None, help="minor size for 'minors'")
    ip.add_argument("--groebner", action="store_true", help="print the reduced Groebner basis")
    hp = sub.add_parser("hilbert", parents=[common], help="Hilbert series of the special fiber")
    hp.add_argument("--bigraded", action="store_true", help="bigraded series of T/Rees")
    sub.add_parser("decompose", parents=[common], help="primary components of the product ideal")
    sp = sub.add_parser("stretch", parents=[common], help="group proportional forms; factor products")
    sp.add_argument("--contract", type=int, default=None, metavar="I",
                    help="contract form I (1-based) instead")
    cp = sub.add_parser("check", parents=[common], help="run a check kind or 'all'")
    cp.add_argument("kind", choices=CHECK_KINDS + ("all",))
    sub.add_parser("corpus", parents=[common], help="run every check on the built-in corpus")
    return p


def _budget(args) -> Budget:
    timeout = args.timeout_ms
    if timeout is None and os.environ.get("BLOWUPLAB_BUDGET_MS"):
        try:
            timeout = int(os.environ["BLOWUPLAB_BUDGET_MS"])
        except ValueError:
            raise UsageError("BLOWUPLAB_BUDGET_MS must be an integer") from None
    b = Budget(timeout_ms=timeout)
    if args.max_degree is not None:
        b = Budget(b.max_basis, args.max_degree, b.max_reductions, b.timeout_ms)
    if args.max_basis is not None:
        b = Budget(args.max_basis, b.max_degree, b.max_reductions, b.timeout_ms)
    return b


def _inputs(args, allow_proportional: bool = False) -> list[tuple[str, object]]:
    if not args.input:
        raise UsageError("--input is required")
    return [(Path(p).stem, load_arrangement(p, allow_proportional)) for p in args.input]


def _simple_only(aid: str, a):
    if isinstance(a, StretchedArrangement):
        raise UsageError(f"{aid}: this command needs a simple arrangement")
    return a


def _ideal_json(ideal: IdealHandle, order=None, groebner: bool = False) -> dict:
    gens = list(ideal.groebner(order).elements) if groebner and not ideal.is_zero() else list(ideal.generators)
    out = {"ring": list(ideal.ring.names), "generators": [g.to_str(order) for g in gens]}
    out["ideal"] = "⟨0⟩" if not gens else "⟨" + ", ".join(out["generators"]) + "⟩"
    return out


def _emit(args, objs: list[dict], text_lines: list[str] | None = None):
    if args.format == "json":
        for o in objs:
            print(dumps(o))
    else:
        for line in (text_lines if text_lines is not None else [dumps(o) for o in objs]):
            print(line)


# ---------------------------------------------------------------- commands


def cmd_circuits(args):
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        cs = [{"support": [i + 1 for i in c.support], "coeffs": [rational_str(x) for x in c.coeffs]}
              for c in circuits(a)]
        objs.append({"arrangement": aid, "circuits": cs})
        lines.append(f"{aid}: {len(cs)} circuit(s)")
        lines += [f"  {c['support']} {c['coeffs']}" for c in cs]
    _emit(args, objs, lines)
    return EXIT_OK


def cmd_lattice(args):
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        flats = [{"closure": [i + 1 for i in F.closure], "rank": F.rank, "mobius": F.mobius}
                 for F in intersection_lattice(a)]
        objs.append({"arrangement": aid, "flats": flats})
        lines.append(f"{aid}:")
        lines += [f"  rank {f['rank']} {f['closure']} mu={f['mobius']}" for f in flats]
    _emit(args, objs, lines)
    return EXIT_OK


def cmd_poincare(args):
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        pi = poincare_polynomial(a)
        pred = ot_hilbert_prediction(a)
        objs.append({"arrangement": aid, "poincare": pi, "ot_prediction": pred.to_json()})
        lines.append(f"{aid}: pi = {_int_poly(pi, 't')}; predicted series {pred}")
    _emit(args, objs, lines)
    return EXIT_OK


def _int_poly(coeffs, var: str) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c:
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
    return " + ".join(parts) or "0"


def cmd_products(args):
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        fold = args.fold if args.fold is not None else a.n - 1
        try:
            prods = bu.fold_products(a, fold)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        objs.append({"arrangement": aid, "fold": fold, "products": [str(p) for p in prods]})
        lines.append(f"{aid} ({fold}-fold): " + ", ".join(str(p) for p in prods))
    _emit(args, objs, lines)
    return EXIT_OK


def cmd_ideal(args, budget):
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        with budget_scope(budget):
            if args.kind == "ot":
                ideal = bu.ot_ideal(a)
            elif args.kind == "sym":
                ideal = bu.symmetric_ideal(a)
            elif args.kind == "rees":
                ideal = bu.rees_ideal(a, args.method)
            elif args.kind == "fiber":
                ideal = bu.special_fiber_ideal(a)
            elif args.kind == "jacdual":
                ideal = bu.jacobian_dual_minors(a)
            else:
                p = args.p if args.p is not None else a.n - 1
                if not 1 <= p <= a.n - 1:
                    raise UsageError(f"--p must be between 1 and {a.n - 1}")
                ideal = bu.minors_ideal_of_syzygy(a, p)
            order = parse_order(args.order, ideal.ring)
            obj = {"arrangement": aid, "kind": args.kind}
            obj.update(_ideal_json(ideal, order, args.groebner))
        if args.kind == "jacdual":
            obj["matrix"] = [[str(e) for e in row] for row in bu.jacobian_dual(a).entries]
        objs.append(obj)
        lines.append(f"{aid} {args.kind}: {obj['ideal']}")
    _emit(args, objs, lines)
    return EXIT_OK


def cmd_hilbert(args, budget):
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        with budget_scope(budget):
            if args.bigraded:
                hs = bigraded_hilbert_series(bu.rees_ideal(a, "kernel"))
                objs.append({"arrangement": aid, "bigraded": hs.to_json(), "series": str(hs)})
                lines.append(f"{aid}: {hs}")
            else:
                hs = hilbert_series(bu.special_fiber_ideal(a))
                objs.append({"arrangement": aid, "series": hs.to_json(), "krull_dim": hs.krull_dim,
                             "h_vector": list(hs.h_vector), "reduction_number": hs.degree,
                             "predicted": ot_hilbert_prediction(a).to_json()})
                lines.append(f"{aid}: {hs} (dim {hs.krull_dim}, r = {hs.degree})")
    _emit(args, objs, lines)
    return EXIT_OK


def cmd_decompose(args, budget):
    from .groebner import ideal_equal, intersect_all
    objs, lines = [], []
    for aid, a in _inputs(args):
        a = _simple_only(aid, a)
        with budget_scope(budget):
            comps = bu.primary_component_ideals(a)
            equal = bool(comps) and ideal_equal(intersect_all([c for _, _, c in comps]), bu.product_ideal(a))
        cj = [{"flat": [i + 1 for i in F], "mobius": mu, "generators": [str(g) for g in c.generators]}
              for F, mu, c in comps]
        objs.append({"arrangement": aid, "components": cj, "intersection_equals_product_ideal": equal})
        lines.append(f"{aid}: intersection equals I: {equal}")
        lines += [f"  {c['flat']} mu={c['mobius']}" for c in cj]
    _emit(args, objs, lines)
    return EXIT_OK


def cmd_stretch(args):
    objs, lines = [], []
    for aid, a in _inputs(args, allow_proportional=True):
        if args.contract is not None:
            a = _simple_only(aid, a)
            if not 1 <= args.contract <= a.n:
                raise UsageError(f"--contract must be between 1 and {a.n}")
            b = contraction(a, args.contract - 1)
            obj = {"arrangement": aid, "contracted": args.contract, "stretched": arrangement_to_json(b),
                   "coordinates": [[rational_str(x) for x in b.coordinates.row(i)]
                                   for i in range(b.coordinates.rows)],
                   "sources": [[s + 1 for s in grp] for grp in b.sources]}
        else:
            b = a if isinstance(a, StretchedArrangement) else StretchedArrangement.trivial(a)
            obj = {"arrangement": aid, "stretched": arrangement_to_json(b)}
        if b.m >= 2:
            fac = stretched_products_factorization(b)
            obj["G"] = str(fac.G)
            obj["P"] = [{"support": i + 1, "tag": rational_str(t), "product": str(p)} for i, t, p in fac.entries]
            ys = bu.y_ring(b.m)
            obj["D"] = [str(ys.var(f"y{x + 1}") - ys.var(f"y{y + 1}") * c) for x, y, c in fac.relations]
        objs.append(obj)
        lines.append(f"{aid}: multiplicities {list(b.multiplicities)}; G = {obj.get('G')}; D = {obj.get('D')}")
    _emit(args, objs, lines)
    return EXIT_OK


def _status_exit(reports: list[CheckReport]) -> int:
    statuses = {r.status for r in reports}
    if FAIL in statuses:
        return EXIT_FAIL
    if INCONCLUSIVE in statuses:
        return EXIT_BUDGET
    return EXIT_OK


def _report_lines(args, reports: list[CheckReport]):
    reports = sorted(reports, key=lambda r: (r.arrangement, r.check))
    if args.format == "json":
        for r in reports:
            print(dumps(r.to_json(args.timings)))
    else:
        for r in reports:
            extra = f" ({r.details['reason']})" if r.status in ("skipped", "inconclusive") else ""
            timing = f" [{r.millis} ms]" if args.timings else ""
            print(f"{r.arrangement:28s} {r.check:24s} {r.status}{extra}{timing}")
            for w in r.witness or []:
                print(f"    {w}")


def cmd_check(args, budget):
    reports = []
    for aid, a in _inputs(args, allow_proportional=True):
        if args.kind == "all":
            reports += run_all(a, aid, budget, args.seed)
        else:
            reports.append(run_check(a, args.kind, aid, budget, args.seed))
    _report_lines(args, reports)
    return _status_exit(reports)


def _corpus_task(item):
    aid, a, budget, seed = item
    return run_all(a, aid, budget, seed)


def cmd_corpus(args, budget):
    items = [(aid, a, budget, args.seed) for aid, a in builtin_corpus()]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            batches = list(pool.map(_corpus_task, items))
    else:
        batches = [_corpus_task(it) for it in items]
    reports = [r for batch in batches for r in batch]
    _report_lines(args, reports)
    return _status_exit(reports)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        budget = _budget(args)
        cmd = args.command
        if cmd in ("ideal", "hilbert", "decompose", "check", "corpus"):
            return globals()[f"cmd_{cmd}"](args, budget)
        return globals()[f"cmd_{cmd}"](args)
    except (UsageError, InputError) as exc:
        print(f"blowuplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"blowuplab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"blowuplab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
