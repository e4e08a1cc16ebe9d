"""Command-line entry point: ``bihom <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when at least one fails, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional

from .axioms import check_admissible, verify
from .catalog import catalog_entries, catalog_verify, get_entry
from .constructions import depolarize, direct_sum, polarize, tensor_product, yau_twist
from .documents import dump_algebra, load_algebra, load_representation, parse_matrix, read_json
from .errors import BiHomError
from .oracle import DEFAULT_SEED, confirm_report
from .report import Report, dump_report
from .representations import (
    check_assoc_representation,
    check_lie_representation,
    check_poisson_representation,
    semidirect_assoc,
    semidirect_lie,
    semidirect_poisson,
)
from .search import SearchSpec, parse_grid, run_search

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"{name} must be an integer, got {raw!r}")


def _common(p: argparse.ArgumentParser, output=False):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None, help="random seed (env BIHOM_SEED)")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (env BIHOM_JOBS)")
    if output:
        p.add_argument("--output", help="write the resulting document here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bihom", description="BiHom-Poisson algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify an algebra or representation document")
    p.add_argument("--input", help="algebra document")
    p.add_argument("--rep", help="representation document (includes its algebra)")
    p.add_argument("--checks", help="comma-separated subset of identity names")
    p.add_argument("--admissible", action="store_true", help="also run the admissibility check")
    _common(p)

    p = sub.add_parser("catalog", help="list, dump or verify built-in entries")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--verify", metavar="ID")
    g.add_argument("--dump", metavar="ID")
    _common(p)

    p = sub.add_parser("twist", help="Yau twist along two commuting morphisms")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", required=True, help="matrix document for the new alpha")
    p.add_argument("--beta", required=True, help="matrix document for the new beta")
    p.add_argument("--no-check", action="store_true", help="skip morphism/commuting preconditions")
    _common(p, output=True)

    for name, helptext in (("polarize", "split mu into bracket and symmetric product"),
                           ("depolarize", "recombine bracket + mu into one product")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--input", required=True)
        _common(p, output=True)

    for name, helptext in (("sum", "direct sum of two algebras"),
                           ("tensor", "tensor product with a BiHom-commutative associative algebra")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--left", required=True)
        p.add_argument("--right", required=True)
        _common(p, output=True)

    p = sub.add_parser("semidirect", help="semi-direct product with a representation")
    p.add_argument("--rep", required=True)
    _common(p, output=True)

    p = sub.add_parser("search", help="exhaustive search over a coefficient grid")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--grid", required=True, help='comma-separated rationals, e.g. "0,1,-1"')
    p.add_argument("--shape", choices=("diagonal", "general"), default="diagonal")
    p.add_argument("--products", choices=("mu", "bracket", "both"), default="both")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--symmetry", action="store_true", help="quotient by the basis swap e1 <-> e2")
    _common(p)
    return parser


# -- helpers ------------------------------------------------------------------


def _emit_reports(reports: List[Report], fmt: str, out) -> int:
    out.write(dump_report(reports if len(reports) != 1 else reports[0], format=fmt))
    if fmt == "json":
        out.write("\n")
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _confirm(doc: dict, report: Report, seed: int) -> None:
    try:
        if not confirm_report(doc, report, random.Random(seed)):
            sys.stderr.write("warning: numeric oracle disagrees with a symbolic verdict\n")
    except (KeyError, BiHomError):
        pass  # checks the oracle does not cover


def _write_doc(doc: dict, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def _construction_result(doc: dict, report: Report, args, out) -> int:
    _write_doc(doc, args.output)
    if args.format == "json":
        payload = {"document": doc, "report": report.to_dict()}
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        if not args.output:
            out.write(json.dumps(doc, indent=2) + "\n")
        out.write(dump_report(report))
    return EXIT_PASS if report.passed else EXIT_FAIL


def _verified(A, subject, seed) -> Report:
    report = verify(A, subject=subject)
    if A.kind == "plain":
        report.extend(check_admissible(A))
    _confirm(dump_algebra(A), report, seed)
    return report


# -- subcommands ----------------------------------------------------------------


REP_KEYS = ("module_dim", "rho_bracket", "rho_mu", "gamma", "nu")


def _cmd_verify(args, out) -> int:
    if not args.input and not args.rep:
        raise _UsageError("verify needs --input, --rep, or both")
    doc = read_json(args.input) if args.input else None
    reports = []
    if doc is not None:
        A = load_algebra(doc)
        checks = [c.strip() for c in args.checks.split(",")] if args.checks else None
        report = verify(A, subject=args.input, checks=checks)
        if args.admissible:
            report.extend(check_admissible(A))
        _confirm(doc, report, args.seed)
        reports.append(report)
    if args.rep:
        rep_doc = read_json(args.rep)
        if doc is not None:
            # the representation rides on the --input algebra
            rep_doc = {**doc, **{k: rep_doc[k] for k in REP_KEYS if k in rep_doc}}
        R = load_representation(rep_doc)
        checker = {
            "lie": check_lie_representation,
            "associative": check_assoc_representation,
            "poisson": check_poisson_representation,
        }.get(R.algebra.kind)
        if checker is None:
            raise _UsageError(f"no representation notion for kind {R.algebra.kind}")
        report = checker(R)
        report.subject = args.rep
        reports.append(report)
    return _emit_reports(reports, args.format, out)


def _cmd_catalog(args, out) -> int:
    if args.list:
        entries = catalog_entries()
        if args.format == "json":
            payload = [{"id": e.id, "source": e.source, "editorial_notes": list(e.editorial_notes)} for e in entries]
            out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        else:
            for e in entries:
                out.write(f"{e.id:8s} dim {e.document['dimension']}  {e.source}\n")
                for note in e.editorial_notes:
                    out.write(f"         note: {note}\n")
        return EXIT_PASS
    if args.dump:
        out.write(json.dumps(get_entry(args.dump).document, indent=2) + "\n")
        return EXIT_PASS
    results = catalog_verify(args.verify, seed=args.seed, jobs=args.jobs)
    return _emit_reports([r for _, r in results], args.format, out)


def _cmd_twist(args, out) -> int:
    doc = read_json(args.input)
    P = load_algebra(doc)
    alpha = parse_matrix(read_json(args.alpha), P.parameters, "alpha")
    beta = parse_matrix(read_json(args.beta), P.parameters, "beta")
    T = yau_twist(P, alpha, beta, check=not args.no_check)
    return _construction_result(dump_algebra(T), _verified(T, "twist", args.seed), args, out)


def _cmd_polarize(args, out) -> int:
    P = polarize(load_algebra(read_json(args.input)))
    return _construction_result(dump_algebra(P), _verified(P, "polarize", args.seed), args, out)


def _cmd_depolarize(args, out) -> int:
    A = depolarize(load_algebra(read_json(args.input)))
    return _construction_result(dump_algebra(A), _verified(A, "depolarize", args.seed), args, out)


def _cmd_sum(args, out) -> int:
    S = direct_sum(load_algebra(read_json(args.left)), load_algebra(read_json(args.right)))
    return _construction_result(dump_algebra(S), _verified(S, "sum", args.seed), args, out)


def _cmd_tensor(args, out) -> int:
    S = tensor_product(load_algebra(read_json(args.left)), load_algebra(read_json(args.right)))
    return _construction_result(dump_algebra(S), _verified(S, "tensor", args.seed), args, out)


def _cmd_semidirect(args, out) -> int:
    R = load_representation(read_json(args.rep))
    A = R.algebra
    fn = {"lie": semidirect_lie, "associative": semidirect_assoc, "poisson": semidirect_poisson}.get(A.kind)
    if fn is None:
        raise _UsageError(f"no semi-direct product for kind {A.kind}")
    S, report = fn(A, R)
    _confirm(dump_algebra(S), report, args.seed)
    return _construction_result(dump_algebra(S), report, args, out)


def _describe(doc: dict) -> str:
    n = doc["dimension"]
    diag = all(doc[m][i][j] == "0" for m in ("alpha", "beta") for i in range(n) for j in range(n) if i != j)
    if diag:
        maps = "alpha=diag({}) beta=diag({})".format(
            ",".join(doc["alpha"][i][i] for i in range(n)), ",".join(doc["beta"][i][i] for i in range(n)))
    else:
        maps = f"alpha={doc['alpha']} beta={doc['beta']}"

    def prods(key, sym):
        return " ".join(f"{sym}({i},{j})={c}e{k}" for i, j, k, c in doc.get(key) or [])

    parts = [maps]
    for key, sym in (("mu", "mu"), ("bracket", "br")):
        if key in doc:
            parts.append(prods(key, sym) or f"{key}=0")
    return "  ".join(parts)


def _cmd_search(args, out) -> int:
    spec = SearchSpec(
        dim=args.dim,
        grid=parse_grid(args.grid),
        morphism_shape=args.shape,
        products=args.products,
        symmetry_reduction=args.symmetry,
        **({"budget": args.budget} if args.budget is not None else {}),
    )
    result = run_search(spec, jobs=args.jobs)
    if args.format == "json":
        out.write(json.dumps(result.to_dict(), sort_keys=True, indent=2) + "\n")
        return EXIT_PASS
    out.write(f"examined {result.count_examined} candidates; {len(result.structures)} pass; "
              f"{len(result.uncatalogued)} uncatalogued\n")
    out.write("== matched\n")
    for idx, doc, m in zip(result.indices, result.structures, result.matches):
        if m:
            ids = ", ".join(
                eid + "{" + ", ".join(f"{k}={v}" for k, v in sorted(a.items())) + "}" for eid, a in m)
            out.write(f"#{idx}  {_describe(doc)}  -> {ids}\n")
    out.write("== uncatalogued\n")
    for pos in result.uncatalogued:
        out.write(f"#{result.indices[pos]}  {_describe(result.structures[pos])}\n")
    return EXIT_PASS


COMMANDS = {
    "verify": _cmd_verify,
    "catalog": _cmd_catalog,
    "twist": _cmd_twist,
    "polarize": _cmd_polarize,
    "depolarize": _cmd_depolarize,
    "sum": _cmd_sum,
    "tensor": _cmd_tensor,
    "semidirect": _cmd_semidirect,
    "search": _cmd_search,
}


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_PASS
    try:
        if args.seed is None:
            args.seed = _env_int("BIHOM_SEED", DEFAULT_SEED)
        if args.jobs is None:
            args.jobs = _env_int("BIHOM_JOBS", 1)
        if args.jobs < 1:
            raise _UsageError("--jobs must be at least 1")
        return COMMANDS[args.command](args, out)
    except _UsageError as e:
        sys.stderr.write(f"bihom {args.command}: {e}\n")
        return EXIT_USAGE
    except (BiHomError, ValueError, OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"bihom {args.command}: error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

