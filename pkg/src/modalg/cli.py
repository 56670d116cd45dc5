"""Command-line interface.

Exit codes: 0 member/holds/success, 1 non-member/fails/counterexample,
2 usage or parse error, 3 node budget exhausted.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import FiniteAlgebra, SignatureError
from .bridge import SPECS, check_c_axioms, represent_in_t4_power, translate, verify_embedding
from .builtins import BUILTINS, make_builtin
from .catalog import CATALOG_ORDER, PARAMETERIZED, UnknownSystem, catalog_reference, check_membership, diagnose, get_system
from .derived import IMPLICATIONS, derive_structure, format_binary, format_order, format_unary, implication_table
from .fileformat import AlgebraFileError, format_algebra, format_algebras, parse_algebras
from .search import CONJECTURES, DEFAULT_BUDGET, BudgetExceeded, EnumerationTask, check_conjecture, enumerate_models, enumerate_naive

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DERIVE_OPS = ("order", "join", "meet", "neg", "nabla", "delta", "impl")


class UsageError(Exception):
    pass


def _msg(exc):
    # KeyError wraps its message in quotes
    return exc.args[0] if exc.args and isinstance(exc.args[0], str) else str(exc)


def load_algebra(path, param=None, name=None):
    """``builtin:<name>``, ``-`` for stdin, or a file path."""
    if path.startswith("builtin:"):
        try:
            return make_builtin(path[len("builtin:"):], param)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if param is not None:
        raise UsageError("--param only applies to builtin:chain or to a parameterized system")
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    algebras = parse_algebras(text)
    if name is not None:
        algebras = [a for a in algebras if a.name == name]
        if not algebras:
            raise UsageError(f"no algebra named {name!r} in {path}")
    if len(algebras) != 1:
        raise UsageError(f"{path} holds {len(algebras)} algebras; select one with --name")
    return algebras[0]


def _split_params(args):
    """Route --param to the builtin when it takes one, else to the system."""
    builtin_param = system_param = None
    if args.path.startswith("builtin:chain"):
        builtin_param = args.param
    else:
        system_param = args.param
    if getattr(args, "system_param", None) is not None:
        system_param = args.system_param
    return builtin_param, system_param


def fail_line(law_id, witness, algebra):
    return f"FAIL {law_id} {witness.render(algebra)}"


def _print_membership(report, out):
    status = "member" if report.member else "non-member"
    out(f"{report.algebra.name}: {status} of {report.system}")
    for note in report.notes:
        out(f"note: {note}")
    for law_id, w in report.results:
        if w is None:
            out(f"ok   {law_id}")
    for law_id, w in report.failures:
        out(fail_line(law_id, w, report.algebra))


def cmd_check(args, out):
    builtin_param, system_param = _split_params(args)
    algebra = load_algebra(args.path, builtin_param, args.name)
    if args.system is None:
        for sid, verdict in diagnose(algebra):
            text = {True: "member", False: "non-member", None: "not applicable"}[verdict]
            out(f"{sid}: {text}")
        return EXIT_OK
    report = check_membership(algebra, args.system, system_param)
    _print_membership(report, out)
    if report.system == "C":
        c = check_c_axioms(algebra)
        out(f"VERDICT c-axioms m4-path {'PASS' if c.m4_verdict else 'FAIL'}")
        if not c.agree:
            out("WARNING: the C1-C8 verdict disagrees with the M4 path")
        out(f"VERDICT c-axioms agree {'PASS' if c.agree else 'FAIL'}")
    return EXIT_OK if report.member else EXIT_FAIL


def _parse_ops(text):
    ops = [o.strip() for o in text.split(",") if o.strip()]
    bad = [o for o in ops if o not in DERIVE_OPS]
    if bad or not ops:
        raise UsageError(f"unknown --ops entry {bad[0] if bad else text!r}; choose from {','.join(DERIVE_OPS)}")
    return ops


def _implications(algebra, ds):
    if ds.implications:
        return ds.implications
    if ds.neg is None:
        return None
    modal = FiniteAlgebra(algebra.name, algebra.labels, {"1": algebra.constants["1"]},
                          {"join": tuple(v for row in ds.join for v in row),
                           "meet": tuple(v for row in ds.meet for v in row),
                           "neg": tuple(ds.neg), "nabla": tuple(ds.nabla)},
                          {"join": 2, "meet": 2, "neg": 1, "nabla": 1})
    return {which: implication_table(modal, which) for which in IMPLICATIONS}


def cmd_derive(args, out):
    algebra = load_algebra(args.path, args.param, args.name)
    ops = _parse_ops(args.ops)
    ds = derive_structure(algebra)
    labels = algebra.labels
    status = EXIT_OK
    unary = []
    for op in ops:
        if op == "order":
            out("order:")
            out(format_order(labels, ds.order))
        elif op in ("join", "meet"):
            rows = getattr(ds, op)
            if rows is None:
                out(f"{op}: unavailable (no least element)")
                status = EXIT_FAIL
            else:
                out(format_binary(labels, op, rows))
        elif op in ("neg", "nabla", "delta"):
            col = getattr(ds, op)
            if col is None:
                out(f"{op}: unavailable (no least element)")
                status = EXIT_FAIL
            else:
                unary.append((op, col))
        elif op == "impl":
            tables = _implications(algebra, ds)
            if tables is None:
                out("impl: unavailable (no least element)")
                status = EXIT_FAIL
            else:
                for which in IMPLICATIONS:
                    out(format_binary(labels, which, tables[which]))
                    out("")
    if unary:
        out(format_unary(labels, unary))
    for text, at in ds.flags:
        where = "" if at is None else " at " + " ".join(labels[i] for i in at)
        out(f"note: {text}{where}")
    return status


def cmd_enumerate(args, out):
    try:
        task = EnumerationTask(args.system, args.size, args.param, node_budget=args.budget)
    except (UnknownSystem, ValueError) as exc:
        raise UsageError(_msg(exc)) from None
    result = enumerate_naive(task) if args.naive else enumerate_models(task, args.jobs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(format_algebras(result.models))
    else:
        for model in result.models:
            out(format_algebra(model))
    out(f"COUNT {result.count}")
    for key, value in result.stats.items():
        if key != "count":
            out(f"{key}={value}")
    return EXIT_OK


def _render_algebra(algebra, out):
    labels = algebra.labels
    for sym, v in algebra.constants.items():
        out(f"{sym} = {labels[v]}")
    unary = []
    for sym, arity in algebra.arities.items():
        if arity == 2:
            out(format_binary(labels, sym, algebra.binary(sym)))
        elif arity == 1:
            unary.append((sym, list(algebra.tables[sym])))
        else:
            out(f"{sym}/{arity}: " + " ".join(labels[v] for v in algebra.tables[sym]))
    if unary:
        out(format_unary(labels, unary))


def cmd_translate(args, out):
    algebra = load_algebra(args.path, args.param, args.name)
    try:
        report = translate(algebra, args.via)
    except ValueError as exc:
        out(f"error: {exc}")
        return EXIT_FAIL
    out(f"== input ({report.spec.source})")
    _render_algebra(report.source, out)
    out(f"== output ({report.spec.target})")
    _render_algebra(report.output, out)
    out("== verdicts")
    for law_id, w in report.source_report.failures:
        out(fail_line(law_id, w, report.source_report.algebra) + " (source)")
    for law_id, w in report.target_report.failures:
        out(fail_line(law_id, w, report.target_report.algebra) + " (target)")
    if report.round_trip and report.round_trip[1]:
        sym, at, a, b = report.round_trip[1]
        out(f"round-trip differs at {sym}({', '.join(at)}): {a} became {b}")
    for name, (ok, detail) in report.contracts.items():
        if not ok and detail:
            out(f"{name} fails at {detail}")
    for line in report.verdict_lines():
        out(line)
    return EXIT_OK if report.ok and report.source_report.member else EXIT_FAIL


def cmd_embed(args, out):
    algebra = load_algebra(args.path, args.param, args.name)
    report = check_membership(algebra, "M4")
    if not report.member:
        _print_membership(report, out)
        return EXIT_FAIL
    emb = represent_in_t4_power(algebra, args.max_k)
    if emb is None:
        out(f"VERDICT embed none-up-to k={args.max_k}")
        return EXIT_FAIL
    t4_labels = ("0", "a", "b", "1")
    for x, tup in enumerate(emb.images):
        out(f"{algebra.labels[x]} -> ({','.join(t4_labels[c] for c in tup)})")
    ok = verify_embedding(algebra, emb)
    out(f"VERDICT embed k={emb.k} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_search(args, out):
    if args.conjecture is None and args.law is None:
        raise UsageError(f"give --conjecture ({', '.join(CONJECTURES)} or <law>@<system>) or --law with --system")
    try:
        report = check_conjecture(args.conjecture, args.max_size, law_text=args.law, system=args.system,
                                  parameter=args.param, jobs=args.jobs, node_budget=args.budget,
                                  naive=args.naive)
    except (KeyError, ValueError) as exc:
        raise UsageError(_msg(exc)) from None
    for size, count in sorted(report.counts.items()):
        out(f"size={size} models={count}")
    if not report.holds:
        out(format_algebra(report.counterexample))
        alg = check_membership(report.counterexample, report.system, args.param).algebra
        out(fail_line(report.law_id, report.witness, alg))
    out(report.verdict_line())
    return EXIT_OK if report.holds else EXIT_FAIL


def cmd_catalog(args, out):
    if args.system is None:
        out(catalog_reference())
        return EXIT_OK
    system = get_system(args.system, args.param)
    out(f"{system.id}: {system.description}")
    out("signature: " + " ".join([*system.constants, *(f"{o}/{a}" for o, a in system.operations)]))
    for law in system.laws:
        out(f"{law.id}: {law.source}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="modalg", description="Finite-model workbench for G-algebras and 4-valued modal algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    systems = ", ".join(CATALOG_ORDER)

    def algebra_args(sp):
        sp.add_argument("path", help=f"algebra file, '-' for stdin, or builtin:<{'|'.join(BUILTINS)}>")
        sp.add_argument("--param", type=int, help="parameter of builtin:chain (or of the system)")
        sp.add_argument("--name", help="select one algebra from a multi-algebra file")

    sp = sub.add_parser("check", help="check membership in a system")
    algebra_args(sp)
    sp.add_argument("--system", help=f"one of {systems}; omit to diagnose against all")
    sp.add_argument("--system-param", type=int, help=f"n for {PARAMETERIZED}")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("derive", help="print derived order and tables")
    algebra_args(sp)
    sp.add_argument("--ops", default="order", help=f"comma-separated subset of {','.join(DERIVE_OPS)}")
    sp.set_defaults(func=cmd_derive)

    def search_args(sp):
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget")
        sp.add_argument("--naive", action="store_true", help="use the brute-force oracle")

    sp = sub.add_parser("enumerate", help="list all models of a given size up to isomorphism")
    sp.add_argument("--system", required=True)
    sp.add_argument("--param", type=int)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--out", help="write models to this file instead of stdout")
    search_args(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("translate", help="apply a translation between varieties")
    algebra_args(sp)
    sp.add_argument("--via", required=True, choices=list(SPECS))
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("embed", help="embed an M4 algebra into a power of T4")
    algebra_args(sp)
    sp.add_argument("--max-k", type=int, default=4)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("search", help="search small models for a counterexample")
    sp.add_argument("--conjecture", help=f"{', '.join(CONJECTURES)}, or <law-id>@<system>")
    sp.add_argument("--law", help="custom law text, checked within --system")
    sp.add_argument("--system")
    sp.add_argument("--param", type=int)
    sp.add_argument("--max-size", type=int, required=True)
    search_args(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("catalog", help="print the law catalog or one system")
    sp.add_argument("--system")
    sp.add_argument("--param", type=int)
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    def out(line=""):
        print(line, file=stdout)

    try:
        return args.func(args, out)
    except AlgebraFileError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except (UsageError, SignatureError, UnknownSystem) as exc:
        print(f"error: {_msg(exc)}", file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
