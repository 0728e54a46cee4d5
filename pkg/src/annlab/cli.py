"""Command-line entry point.

Every subcommand is seeded and writes a machine-readable report (JSON, or
CSV for the tabular experiments).  Exit codes: 0 success, 1 mathematical
assertion failed (a would-be theorem counterexample, i.e. an implementation
bug), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import capacity, grover, instances, qrac
from .errors import AnnLabError, Infeasible

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_USAGE = 2


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_json(obj, out: str | None) -> None:
    _write(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _int_list(text: str):
    return [int(tok) for tok in text.split(",") if tok]


def _load_code(args) -> instances.Code:
    if getattr(args, "code", None):
        with open(args.code) as fh:
            return instances.Code.from_json(json.load(fh))
    if args.n is None or args.code_length is None or args.min_dist is None:
        raise AnnLabError(
            "provide --code FILE or all of --n/--code-length/--min-dist")
    return instances.generate_code(args.n, args.code_length, args.min_dist,
                                   seed=args.seed,
                                   max_retries=args.max_retries)


def _build_scheme(args) -> qrac.QracScheme:
    if args.scheme == "2to1":
        return qrac.qrac_2to1()
    if args.scheme == "3to1":
        return qrac.qrac_3to1()
    return qrac.basis_encoding_qrac(args.n)


def _add_code_source(p, require=False):
    p.add_argument("--code", help="path to a code JSON file")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--code-length", type=int, default=None)
    p.add_argument("--min-dist", type=int, default=None)
    p.add_argument("--max-retries", type=int, default=100)


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annlab",
        description="Hard-instance / QRAC / Grover verification experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="report path (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        return p

    p = add("gen-code", help="draw and certify a random code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--code-length", type=int, required=True)
    p.add_argument("--min-dist", type=int, required=True)
    p.add_argument("--max-retries", type=int, default=100)

    p = add("build-instance", help="lift a code through a selector string")
    p.add_argument("--code", required=True)
    p.add_argument("--x", required=True, help="binary selector string")

    p = add("verify-forcing", help="exhaustive forcing sweep over selectors")
    _add_code_source(p)
    p.add_argument("--c", type=float, default=1.0)

    p = add("qrac-eval", help="worst-case success of a built-in scheme")
    p.add_argument("--scheme", choices=["2to1", "3to1", "basis"],
                   required=True)
    p.add_argument("--n", type=int, default=3, help="bits for basis scheme")

    p = add("nayak-check", help="memory-bound certificate for a scheme")
    p.add_argument("--scheme", choices=["2to1", "3to1", "basis"],
                   required=True)
    p.add_argument("--n", type=int, default=3)

    p = add("info-audit", help="mutual-information sandwich and chain rule")
    p.add_argument("--scheme", choices=["2to1", "3to1", "basis"],
                   required=True)
    p.add_argument("--n", type=int, default=2)

    p = add("sketch-reduce", help="run the sketch-to-QRAC reduction")
    _add_code_source(p)
    p.add_argument("--sketch", choices=["exhaustive", "noisy"],
                   default="exhaustive")
    p.add_argument("--p0", type=float, default=0.9,
                   help="per-query correctness of the noisy sketch")

    p = add("grover-sim", help="statevector search run")
    p.add_argument("--m", type=int, required=True, help="candidate set size")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--marked", default=None,
                   help="comma-separated marked indices (default: first t)")
    p.add_argument("--k", type=int, default=None,
                   help="iterations (default: analytic optimum)")

    p = add("grover-scaling", help="iteration-count scaling table")
    p.add_argument("--m-list", default="16,64,256,1024,4096")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--num-seeds", type=int, default=50)

    p = add("bbbv-hybrid", help="hybrid-distance experiment")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = add("vc-shatter", help="shattering check for the hard family")
    _add_code_source(p)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--p", type=float, default=0.85)

    return parser


def _cmd_gen_code(args) -> int:
    code = instances.generate_code(args.n, args.code_length, args.min_dist,
                                   seed=args.seed,
                                   max_retries=args.max_retries)
    _emit_json(code.to_json(), args.out)
    return EXIT_OK


def _cmd_build_instance(args) -> int:
    with open(args.code) as fh:
        code = instances.Code.from_json(json.load(fh))
    _emit_json(instances.build_instance(code, args.x).to_json(), args.out)
    return EXIT_OK


def _cmd_verify_forcing(args) -> int:
    code = _load_code(args)
    c = int(args.c) if float(args.c).is_integer() else args.c
    report = instances.verify_forcing_all(code, c)
    _emit_json(report.to_json(), args.out)
    if report.guaranteed and not report.ok:
        return EXIT_ASSERTION
    return EXIT_OK


def _cmd_qrac_eval(args) -> int:
    ev = qrac.evaluate_qrac(_build_scheme(args))
    if args.format == "csv":
        lines = ["x,i,p"] + [f"{r['x']},{r['i']},{r['p']!r}" for r in ev.table]
        _write("\n".join(lines) + "\n", args.out)
    else:
        _emit_json(ev.to_json(), args.out)
    return EXIT_OK


def _cmd_nayak_check(args) -> int:
    cert = qrac.certify_nayak(_build_scheme(args))
    _emit_json(cert.to_json(), args.out)
    return EXIT_OK if cert.satisfied else EXIT_ASSERTION


def _cmd_info_audit(args) -> int:
    report = qrac.information_audit(_build_scheme(args))
    _emit_json(report.to_json(), args.out)
    return EXIT_OK if (report.sandwich_ok and report.chain_ok) \
        else EXIT_ASSERTION


def _cmd_sketch_reduce(args) -> int:
    code = _load_code(args)
    if args.sketch == "exhaustive":
        sketch = qrac.ExhaustiveClassicalSketch(code)
    else:
        sketch = qrac.NoisyClassicalSketch(code, args.p0)
    scheme = qrac.sketch_to_qrac(sketch, code)
    ev = qrac.evaluate_qrac(scheme)
    cert = qrac.certify_nayak(scheme)
    _emit_json({"sketch": args.sketch, "evaluation": ev.to_json(),
                "certificate": cert.to_json()}, args.out)
    return EXIT_OK if cert.satisfied else EXIT_ASSERTION


def _cmd_grover_sim(args) -> int:
    if args.marked is not None:
        marked = frozenset(_int_list(args.marked))
    else:
        marked = frozenset(range(args.t))
    inst = grover.CandidateInstance(size=args.m, marked=marked)
    k = args.k if args.k is not None \
        else grover.optimal_iterations(args.m, inst.t)
    run = grover.grover_statevector(inst, k, seed=args.seed)
    _emit_json(run.to_json(), args.out)
    return EXIT_OK


def _cmd_grover_scaling(args) -> int:
    seeds = [args.seed + j for j in range(args.num_seeds)]
    table = grover.scaling_experiment(_int_list(args.m_list), args.t, seeds)
    if args.format == "csv":
        _write(table.to_csv(), args.out)
    else:
        _emit_json(table.to_json(), args.out)
    return EXIT_OK


def _cmd_bbbv_hybrid(args) -> int:
    report = grover.bbbv_hybrid(args.m, args.q)
    if args.format == "csv":
        _write(report.to_csv(), args.out)
    else:
        _emit_json(report.to_json(), args.out)
    return EXIT_OK if report.satisfied else EXIT_ASSERTION


def _cmd_vc_shatter(args) -> int:
    code = _load_code(args)
    family = capacity.hard_decision_family(code, r=args.r)
    report = capacity.shattering_check(family)
    _emit_json(report.to_json(p=args.p), args.out)
    if args.r == 0 and not report.shattered:
        return EXIT_ASSERTION
    return EXIT_OK


_COMMANDS = {
    "gen-code": _cmd_gen_code,
    "build-instance": _cmd_build_instance,
    "verify-forcing": _cmd_verify_forcing,
    "qrac-eval": _cmd_qrac_eval,
    "nayak-check": _cmd_nayak_check,
    "info-audit": _cmd_info_audit,
    "sketch-reduce": _cmd_sketch_reduce,
    "grover-sim": _cmd_grover_sim,
    "grover-scaling": _cmd_grover_scaling,
    "bbbv-hybrid": _cmd_bbbv_hybrid,
    "vc-shatter": _cmd_vc_shatter,
}


def run(argv) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args)
    except Infeasible as exc:
        _emit_json({"error": "infeasible", "message": str(exc),
                    "best_min_distance": exc.best_min_distance},
                   getattr(args, "out", None))
        return EXIT_ASSERTION
    except AnnLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
