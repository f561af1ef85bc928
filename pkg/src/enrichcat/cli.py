"""Command-line front door.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or parse error,
3 an enumeration exceeded its budget.
"""

import argparse
import json
import sys
from itertools import product

from . import errors
from .barcomp import compose_bimodules, oracle_agreement, realization_truncation_check
from .bimodule import validate_bimodule
from .doublecat import build_composite_algebra, segal_check, validate_composite_algebra
from .enriched import is_complete_truncated, validate_category, validate_functor
from .errors import BudgetExceeded, EnrichCatError
from .funcat import FunSpace, completeness_check_fun, segal_check_fun
from .indexcat import (bar_cofinal_map, cofinality_probe, fiber_formula_suite, final_object_suite,
                       lambda_slice, sifted_probe)
from .report import Report
from .simplex import SimplexMap
from .workspace import WorkspaceError, parse

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _size(V, a):
    if V.kind == "finset":
        return f"{len(a)} elements"
    if V.kind == "finvect":
        return f"dimension {a.dim}"
    return "true" if a else "false"


def _budget(args):
    return args.bound if args.bound is not None else errors.DEFAULT_BUDGET


def cmd_validate(args):
    ws = parse(args.workspace)
    reports = []
    for name, C in ws.categories.items():
        r = validate_category(C)
        r.title = f"category {name}"
        reports.append(r)
    for name, M in ws.bimodules.items():
        r = validate_bimodule(M)
        r.title = f"bimodule {name}"
        reports.append(r)
    for name, F in ws.functors.items():
        r = validate_functor(F)
        r.title = f"functor {name}"
        reports.append(r)
    return reports, []


def cmd_compose(args):
    ws = parse(args.workspace)
    names = args.names
    if len(names) == 2:
        m, n = names
        middle = None
    elif len(names) == 3:
        m, middle, n = names
    else:
        raise _Usage("compose takes M N or M B N")
    M, N = ws.get("bimodules", m), ws.get("bimodules", n)
    if middle is not None and ws.get("categories", middle) is not M.right:
        raise _Usage(f"{m} does not end at category {middle}")
    W = compose_bimodules(M, N)
    V = M.backend
    lines = [f"composite {m};{n}: {M.left.name} -> {N.right.name}"]
    for x, z in product(M.left.objects, N.right.objects):
        lines.append(f"  ({x}, {z}): {_size(V, W.bimodule(x, z))}")
    agree = oracle_agreement(M, N, W)
    agree.title = "oracle agreement"
    lines.append(f"oracle agreement: {'exact' if agree.ok else 'mismatch'}")
    reports = [validate_bimodule(W.bimodule), agree]
    reports[0].title = "composite is a bimodule"
    if args.k_max:
        reports.append(realization_truncation_check(M, N, args.k_max))
    return reports, lines


def cmd_segal(args):
    ws = parse(args.workspace)
    ch = ws.get("chains", args.chain)
    A = build_composite_algebra(ch)
    r1 = validate_composite_algebra(A)
    r1.title = "composite algebra axioms"
    r2 = segal_check(A)
    r2.title = f"segal condition, chain {args.chain} (n = {ch.n})"
    return [r1, r2], []


def cmd_fun(args):
    ws = parse(args.workspace)
    C, D = ws.get("categories", args.source), ws.get("categories", args.target)
    S = FunSpace(C, D, bound=_budget(args))
    lines = [f"level {args.level}: {len(S.level(args.level))} functors"]
    reports = []
    if args.segal:
        if args.level < 2:
            raise _Usage("--segal needs --level >= 2")
        reports.append(segal_check_fun(C, D, args.level, space=S))
    if args.complete:
        reports.append(completeness_check_fun(C, D, bound=_budget(args)))
        lines.append(f"target gaunt: {'yes' if is_complete_truncated(D) else 'no'}")
    return reports, lines


def _ints(text):
    try:
        return tuple(int(t) for t in text.split(",") if t != "")
    except ValueError:
        raise _Usage(f"expected comma-separated integers, got {text!r}") from None


def _sets(sizes, letters="xyzuvw"):
    return [tuple(f"{letters[i % len(letters)]}{j}" for j in range(k)) for i, k in enumerate(sizes)]


def cmd_probe(args):
    rank = args.bound
    kind = args.probe
    if kind == "fiber":
        rank = 2 if rank is None else rank
        Xs = _sets(_ints(args.sizes or "2,2,2"))
        return [fiber_formula_suite(Xs, rank)], []
    if kind == "terminal":
        rank = 3 if rank is None else rank
        (X,) = _sets(_ints(args.sizes or "2"))
        return [final_object_suite(X, args.n, rank)], []
    if kind == "cofinal":
        rank = 3 if rank is None else rank
        sizes = _ints(args.sizes or "1,2,1")
        if len(sizes) != 3:
            raise _Usage("cofinal probe needs three sizes")
        X, Y, Z = _sets(sizes)
        rep = Report("cofinality of lists -> active slice", necessary_only=True)
        for x, z in product(X, Z):
            rep.merge(cofinality_probe(bar_cofinal_map(X, Y, Z, x, z, rank)), prefix=f"({x}, {z}) ")
        rep.notes.append(f"source rank <= {rank}, target rank <= {rank + 2}")
        return [rep], []
    if kind == "sifted":
        rank = 2 if rank is None else rank
        xi = _ints(args.xi or "0,0,2")
        if any(a > b for a, b in zip(xi, xi[1:])) or not xi or xi[-1] > args.n:
            raise _Usage(f"xi must be a monotone map into [{args.n}]")
        cat = lambda_slice(args.n, SimplexMap(xi, args.n), rank + 1)
        small = [o for o in cat.objects if o[0].rank <= rank]
        rep = sifted_probe(cat, small)
        rep.notes.append(f"objects of rank <= {rank} tested inside the rank {rank + 1} truncation")
        return [rep], []
    raise _Usage(f"unknown probe {kind!r}")


def cmd_suite(args):
    from .generators import random_finset_chain, random_finset_pair, rng_from

    rng = rng_from(args.seed)
    rep = Report(f"{args.suite} suite, seed {args.seed}, {args.count} instances")
    for i in range(args.count):
        if args.suite == "oracle":
            M, N = random_finset_pair(rng)
            rep.merge(oracle_agreement(M, N), prefix=f"#{i} ")
        else:
            A = build_composite_algebra(random_finset_chain(rng, 3))
            rep.merge(segal_check(A), prefix=f"#{i} ")
    return [rep], []


COMMANDS = {"validate": cmd_validate, "compose": cmd_compose, "segal": cmd_segal,
            "fun": cmd_fun, "probe": cmd_probe, "suite": cmd_suite}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None,
                        help="enumeration budget (for probe: the rank bound)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--machine", action="store_true", help="emit a stable JSON report")
    p = argparse.ArgumentParser(prog="enrichcat",
                                description="Checks for enriched categories, bimodules and their composites.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("validate", parents=[common], help="check every category, bimodule and functor")
    s.add_argument("workspace")
    s = sub.add_parser("compose", parents=[common], help="compose two bimodules and compare with the coend")
    s.add_argument("workspace")
    s.add_argument("names", nargs="+", metavar="NAME", help="M N, or M B N with B the middle category")
    s.add_argument("--k-max", type=int, default=0, help="also check the bar truncation up to this level")
    s = sub.add_parser("segal", parents=[common], help="build the composite algebra of a chain")
    s.add_argument("workspace")
    s.add_argument("chain")
    s = sub.add_parser("fun", parents=[common], help="functor spaces C x [n] -> D")
    s.add_argument("workspace")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--level", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--segal", action="store_true")
    g.add_argument("--complete", action="store_true")
    s = sub.add_parser("probe", parents=[common], help="finite probes of the indexing categories")
    s.add_argument("probe", choices=["fiber", "cofinal", "terminal", "sifted"])
    s.add_argument("--sizes", help="comma-separated object-set sizes")
    s.add_argument("--n", type=int, default=2, help="top of [n] for terminal and sifted")
    s.add_argument("--xi", help="target map for sifted, e.g. 0,0,2")
    s = sub.add_parser("suite", parents=[common], help="randomized FinSet suites")
    s.add_argument("suite", choices=["oracle", "segal"])
    s.add_argument("--count", type=int, default=20)
    return p


def _emit(args, reports, lines, out):
    ok = all(r.ok for r in reports)
    if args.machine:
        doc = {"command": args.command, "ok": ok, "lines": lines,
               "reports": [r.to_dict() for r in reports]}
        out.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
        for r in reports:
            out.write("\n".join(r.lines()) + "\n")
        out.write(f"overall: {'pass' if ok else 'FAIL'}\n")
    return EXIT_PASS if ok else EXIT_FAIL


def _error(args, code, message, err):
    if args is not None and args.machine:
        sys.stdout.write(json.dumps({"error": message, "exit": code}, sort_keys=True) + "\n")
    err.write(f"enrichcat: {message}\n")
    return code


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    saved = errors.DEFAULT_BUDGET
    if args.bound is not None and args.command != "probe":
        errors.DEFAULT_BUDGET = args.bound
    try:
        reports, lines = COMMANDS[args.command](args)
    except BudgetExceeded as e:
        return _error(args, EXIT_BUDGET, f"budget exceeded: {e}", err)
    except (WorkspaceError, _Usage, OSError) as e:
        return _error(args, EXIT_USAGE, str(e), err)
    except EnrichCatError as e:
        return _error(args, EXIT_USAGE, f"{type(e).__name__}: {e}", err)
    finally:
        errors.DEFAULT_BUDGET = saved
    return _emit(args, reports, lines, out)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
