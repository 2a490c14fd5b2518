"""Command-line entry point: ``usocount <subcommand> ...``.

Exit status: 0 on success, 1 on domain errors (degenerate right-hand side,
non-P-matrix, non-unique sink, ...), 2 on I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .census import census_classes, count_fixed_matrix_usos, enumerate_usos
from .checks import PROPERTIES
from .constructions import (
    antichain_function,
    k_family_matrix,
    k_family_rhs,
    local_uniformity_witness,
    monotone_uso,
    product_lower_bound,
    residual_records,
    sample_k_usos,
)
from .cube import bits, parse_bits, uniform_orientation
from .errors import UsoError
from .io import (
    antichain_from_json,
    beta_from_json,
    dumps,
    matrix_from_json,
    monotone_from_json,
    orientation_from_json,
    orientation_to_json,
    read_json,
    vector_from_json,
    vector_to_json,
    write_json,
)
from .lcp import induced_orientation, is_k_matrix, is_p_matrix, is_z_matrix, pivot_walk, solve_lcp
from .linalg import format_fraction


def _emit(summary: dict):
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")


def _write_orientation(phi, args):
    if args.out:
        write_json(args.out, orientation_to_json(phi))
    if getattr(args, "dot", None):
        Path(args.dot).write_text(phi.to_dot())
    if not args.out:
        sys.stdout.write(dumps(orientation_to_json(phi)))
    else:
        _emit({"n": phi.n, "out": args.out})


def _need_seed(args):
    if args.seed is None:
        raise ValueError("this subcommand is randomized and needs --seed")


def cmd_gen(args):
    if args.family == "uniform":
        if args.n is None:
            raise ValueError("--n is required for the uniform family")
        phi = uniform_orientation(args.n)
    elif args.family == "monotone":
        if args.f:
            f = monotone_from_json(read_json(args.f))
        elif args.antichain:
            k, members = antichain_from_json(read_json(args.antichain))
            f = antichain_function(members, k)
        else:
            raise ValueError("the monotone family needs --f or --antichain")
        if args.n is not None and args.n != f.k + 1:
            raise ValueError(f"a function of arity {f.k} gives a {f.k + 1}-cube, not {args.n}")
        phi = monotone_uso(f)
    else:
        if not args.beta:
            raise ValueError("the k-beta family needs --beta")
        beta = beta_from_json(read_json(args.beta))
        if args.n is not None and args.n != beta.n:
            raise ValueError("--n disagrees with the beta file")
        phi = induced_orientation(k_family_matrix(beta), k_family_rhs(beta.n))
    _write_orientation(phi, args)


def cmd_check(args):
    phi = orientation_from_json(read_json(args.input))
    print("true" if PROPERTIES[args.property](phi) else "false")


def cmd_induce(args):
    M = matrix_from_json(read_json(args.matrix))
    q = vector_from_json(read_json(args.q))
    _write_orientation(induced_orientation(M, q), args)


def cmd_solve(args):
    M = matrix_from_json(read_json(args.matrix))
    q = vector_from_json(read_json(args.q))
    sol = solve_lcp(M, q)
    _emit(
        {
            "basis": sorted(sol.basis),
            "vertex": bits(sol.vertex, len(M)),
            "w": [format_fraction(x) for x in sol.w],
            "z": [format_fraction(x) for x in sol.z],
        }
    )


def cmd_walk(args):
    M = matrix_from_json(read_json(args.matrix))
    q = vector_from_json(read_json(args.q))
    n = len(M)
    start = parse_bits(args.start) if args.start else 0
    if args.start and len(args.start) != n:
        raise ValueError("--start must have one bit per coordinate")
    if args.rule == "random":
        _need_seed(args)
    path = pivot_walk(M, q, start, args.rule, args.seed)
    _emit({"path": [bits(v, n) for v in path], "length": len(path) - 1, "rule": args.rule})


def cmd_matrix_class(args):
    M = matrix_from_json(read_json(args.matrix))
    _emit({"P": is_p_matrix(M), "Z": is_z_matrix(M), "K": is_k_matrix(M)})


def cmd_witness(args):
    M = matrix_from_json(read_json(args.matrix))
    w = local_uniformity_witness(M)
    if w is None:
        _emit({"k_matrix": True, "witness": None})
        return
    if args.out:
        write_json(args.out, vector_to_json(w.q))
    _emit(
        {
            "k_matrix": False,
            "q": [format_fraction(x) for x in w.q],
            "coords": [w.i, w.j],
            "violated": w.violated,
            "far_vertex": bits(w.far_vertex, len(M)),
        }
    )


def cmd_census(args):
    if args.sample_p is not None:
        _need_seed(args)
        report = census_classes(args.n, "sample-p", args.sample_p, args.seed)
    else:
        report = enumerate_usos(args.n, args.strategy)
    data = report.to_json()
    if args.report:
        write_json(args.report, data)
    data.pop("exemplars")
    _emit(data)


def cmd_umcount(args):
    _need_seed(args)
    M = matrix_from_json(read_json(args.matrix))
    res = count_fixed_matrix_usos(M, args.samples, args.seed, exact_n2=args.exact_n2)
    _emit(res.to_json())


def cmd_experiment(args):
    _need_seed(args)
    sample = sample_k_usos(args.n, args.trials, args.seed, workers=args.threads)
    records = [r for beta in sample.betas for r in residual_records(beta)]
    summary = {
        "experiment": "k-count",
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "distinct": sample.distinct,
        "degenerate": sample.degenerate,
        "product_bound": product_lower_bound(args.n),
        "meets_bound": sample.distinct >= product_lower_bound(args.n),
        "residual_checks": len(records),
        "residual_violations": sum(not r.within_bound for r in records),
    }
    if args.report:
        write_json(args.report, summary)
    _emit(summary)


def cmd_dot(args):
    phi = orientation_from_json(read_json(args.input))
    text = phi.to_dot()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="usocount", description="Unique-sink orientations from LCPs")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--threads", type=int, default=1, help="worker cap; never changes results")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an orientation from a family")
    g.add_argument("--family", choices=["uniform", "monotone", "k-beta"], required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--f", help="monotone function table JSON")
    g.add_argument("--antichain", help="antichain JSON (middle-layer bit strings)")
    g.add_argument("--beta", help="beta assignment JSON")
    g.add_argument("--out")
    g.add_argument("--dot")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="decide a property of an orientation")
    c.add_argument("--property", choices=sorted(PROPERTIES), required=True)
    c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("induce", help="orientation induced by LCP(M, q)")
    i.add_argument("--matrix", required=True)
    i.add_argument("--q", required=True)
    i.add_argument("--out")
    i.add_argument("--dot")
    i.set_defaults(func=cmd_induce)

    s = sub.add_parser("solve", help="solve a P-LCP")
    s.add_argument("--matrix", required=True)
    s.add_argument("--q", required=True)
    s.set_defaults(func=cmd_solve)

    w = sub.add_parser("walk", help="principal pivoting walk to the sink")
    w.add_argument("--matrix", required=True)
    w.add_argument("--q", required=True)
    w.add_argument("--rule", choices=["least-index", "random"], default="least-index")
    w.add_argument("--seed", type=int)
    w.add_argument("--start", help="start vertex as a bit string, coordinate 1 first")
    w.set_defaults(func=cmd_walk)

    m = sub.add_parser("matrix-class", help="P/Z/K membership")
    m.add_argument("--matrix", required=True)
    m.set_defaults(func=cmd_matrix_class)

    x = sub.add_parser("witness", help="right-hand side breaking local uniformity")
    x.add_argument("--matrix", required=True)
    x.add_argument("--out", help="write q as vector JSON")
    x.set_defaults(func=cmd_witness)

    ce = sub.add_parser("census", help="class tallies over small cubes")
    ce.add_argument("--n", type=int, required=True)
    mode = ce.add_mutually_exclusive_group()
    mode.add_argument("--enumerate", action="store_true", help="all orientations (default)")
    mode.add_argument("--sample-p", type=int, metavar="TRIALS", help="random P-LCP orientations")
    ce.add_argument("--strategy", choices=["brute", "incremental"], default="brute")
    ce.add_argument("--seed", type=int)
    ce.add_argument("--report")
    ce.set_defaults(func=cmd_census)

    u = sub.add_parser("umcount", help="USOs induced by a fixed matrix")
    u.add_argument("--matrix", required=True)
    u.add_argument("--samples", type=int, default=1000)
    u.add_argument("--seed", type=int)
    u.add_argument("--exact-n2", action="store_true")
    u.set_defaults(func=cmd_umcount)

    e = sub.add_parser("experiment", help="seeded experiments")
    e.add_argument("name", choices=["k-count"])
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--trials", type=int, required=True)
    e.add_argument("--seed", type=int)
    e.add_argument("--report")
    e.set_defaults(func=cmd_experiment)

    d = sub.add_parser("dot", help="graphviz export of an orientation")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return 2
    try:
        args.func(args)
    except UsoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
