"""Command-line front end: gen, solve, grover, macaulay, gatecount, estimate.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success, 1 domain
error (parse failure, unsatisfiable precondition, missing file), 2 usage
error.  Given identical flags and seed every subcommand's output is
byte-identical across runs; wall-clock timing is only emitted behind
``--timings`` so that default output stays reproducible.

Randomness is counter-based and fully specified: a 64-bit seed feeds numpy's
SeedSequence, which keys a Philox4x64-10 generator; parallel branches use
spawn keys (seed, branch).  Test vectors live in docs/formats.md.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import anf, circuits, estimator, macaulay, solver

_VARIANTS = {"det": "deterministic", "lv": "las-vegas"}


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input_path: str | None
    seed: int
    output_mode: str                 # text | json
    flags: dict


def make_rng(seed: int, spawn: tuple[int, ...] = ()) -> np.random.Generator:
    """Philox4x64-10 keyed through SeedSequence(seed, spawn_key=spawn)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=spawn)))


def _emit_json(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_system(path: str) -> anf.PolynomialSystem:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    return anf.parse_system(p.read_text())


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_gen(args) -> int:
    rng = make_rng(args.seed)
    system, planted = anf.random_system(args.n, args.m, rng, ensure_solution=args.plant)
    text = anf.serialize_system(system)
    Path(args.out).write_text(text)
    planted_str = None if planted is None else anf.assignment_to_string(planted)
    if args.json:
        _emit_json({
            "command": "gen",
            "n": args.n,
            "m": args.m,
            "seed": args.seed,
            "path": args.out,
            "planted": planted_str,
        })
    else:
        print(f"wrote {args.out} (n={args.n}, m={args.m}, seed={args.seed})")
        if planted_str is not None:
            print(f"planted root: {planted_str}")
    return 0


def _cmd_solve(args) -> int:
    system = _read_system(getattr(args, "in"))
    if args.auto_k:
        config = solver.SolveConfig(k=None, k_policy="gamma-optimal",
                                    variant=_VARIANTS[args.variant], backend=args.backend,
                                    jobs=args.jobs)
    else:
        if args.k is None:
            raise ValueError("either --k or --auto-k is required")
        config = solver.SolveConfig(k=args.k, variant=_VARIANTS[args.variant],
                                    backend=args.backend, jobs=args.jobs)
    report = solver.classical_boolean_solve(system, config, seed=args.seed)
    if args.json:
        _emit_json(report.to_json_dict(include_timing=args.timings))
    else:
        print(f"n={report.n} m={report.m} k={report.k} variant={report.variant} "
              f"backend={report.backend} witness_degree={report.witness_deg}")
        print(f"macaulay tests: {report.macaulay_tests}  certificates: "
              f"{report.certificates_found}  searches: {report.searches_run}")
        print(f"solutions ({len(report.solutions)}):")
        for a in report.solutions:
            print(f"  {anf.assignment_to_string(a)}")
        if args.timings:
            print(f"wall time: {report.wall_time:.3f}s")
    return 0


def _cmd_grover(args) -> int:
    system = _read_system(getattr(args, "in"))
    k = args.k
    if not 0 <= k <= system.n:
        raise ValueError(f"k={k} out of range 0..{system.n}")
    d0 = macaulay.witness_degree(system.m, system.n, k)
    oracle = solver.tabulate_branch_oracle(system, k, d0, backend=args.backend, seed=args.seed)
    marked = int(oracle.sum())
    rng = make_rng(args.seed)
    use_ceiling = args.iterations == "paper"
    explicit = None if args.iterations in ("auto", "paper") else int(args.iterations)
    stage1 = circuits.grover_search_sim(oracle, k, iterations=explicit, rng=rng,
                                        use_ceiling=use_ceiling)
    shots = np.array([stage1.sample(rng) for _ in range(args.shots)])
    hit_freq = float(np.mean(oracle[shots] != 0)) if args.shots else 0.0
    sim_result: dict | None = None
    if marked:
        config = solver.SolveConfig(k=k, backend=args.backend)
        try:
            qreport = solver.quantum_boolean_solve_sim(system, config, make_rng(args.seed, (1,)),
                                                       seed=args.seed)
            sim_result = qreport.to_json_dict()
        except solver.QuantumRetryExhausted:
            sim_result = None
    payload = {
        "command": "grover",
        "n": system.n,
        "m": system.m,
        "k": k,
        "seed": args.seed,
        "shots": args.shots,
        "witness_degree": d0,
        "stage1": {
            "marked": marked,
            "iterations": stage1.iterations,
            "iterations_floor_policy": stage1.iterations_floor_policy,
            "iterations_paper_ceiling": stage1.iterations_paper_ceiling,
            "theta": stage1.theta,
            "success_probability": stage1.success_probability,
            "measured_frequency": hit_freq,
        },
        "end_to_end": sim_result,
    }
    if args.json:
        _emit_json(payload)
    else:
        print(f"n={system.n} m={system.m} k={k} witness_degree={d0}")
        print(f"stage-1 marked branches: {marked} / {1 << k}")
        print(f"iterations: {stage1.iterations} (floor policy {stage1.iterations_floor_policy}, "
              f"ceiling formula {stage1.iterations_paper_ceiling})")
        print(f"exact success probability: {stage1.success_probability:.6f}")
        print(f"measured marked frequency over {args.shots} shots: {hit_freq:.4f}")
        if sim_result is not None and sim_result["assignment"]:
            print(f"verified root: {sim_result['assignment']}")
        elif marked == 0:
            print("no solution: branch predicate identically 0")
    return 0


def _cmd_macaulay(args) -> int:
    system = _read_system(getattr(args, "in"))
    k = args.k
    d0 = macaulay.witness_degree(system.m, system.n, k)
    d = args.d if args.d is not None else d0
    mac = macaulay.build_macaulay(system, d)
    bounds = None
    if 1 <= d < system.n / 2:
        rb, cb, sb = macaulay.proposition1_bounds(system.n, system.m, d)
        bounds = {"rows": rb, "cols": cb, "nonzeros": sb}
    if args.dump:
        text = macaulay.triplet_text(mac)
        if args.dump == "-":
            sys.stdout.write(text)
        else:
            Path(args.dump).write_text(text)
    payload = {
        "command": "macaulay",
        "n": system.n,
        "m": system.m,
        "k": k,
        "witness_degree": d0,
        "degree": d,
        "r_mac": mac.r_mac,
        "c_mac": mac.c_mac,
        "s_mac": mac.s_mac,
        "bounds": bounds,
    }
    if args.json:
        _emit_json(payload)
    elif args.dump != "-":
        print(f"witness degree d0(m={system.m}, n={system.n}, k={k}) = {d0}")
        print(f"Macaulay degree {d}: rows={mac.r_mac} cols={mac.c_mac} nonzeros={mac.s_mac}")
        if bounds:
            print(f"bounds: rows<{bounds['rows']:.1f} cols<{bounds['cols']:.1f} "
                  f"nonzeros<{bounds['nonzeros']:.1f}")
        else:
            print("bounds: n/a (require 1 <= d < n/2)")
    return 0


def _cmd_gatecount(args) -> int:
    if args.circuit == "qrs":
        if args.r is None:
            raise ValueError("--r is required for the qrs circuit")
        qrs = circuits.qrs_gate_count(args.n, args.r)
        payload = {"command": "gatecount", "circuit": "qrs", **qrs.to_json_dict()}
        if args.json:
            _emit_json(payload)
        else:
            print(f"qrs n={args.n} r={args.r}")
            for step, counts in payload["steps"].items():
                print(f"  {step}: {counts}")
            print(f"  total gates: {qrs.total_gates} (closed form {qrs.closed_form_total}, "
                  f"offset {qrs.accounting_offset})")
            print(f"  cnot equivalent: {qrs.cnot_equivalent}")
        return 0
    builders = {
        "inner-product": circuits.build_inner_product_circuit,
        "matvec": circuits.build_matvec_circuit,
        "matmul": circuits.build_matmul_circuit,
    }
    if args.circuit == "equality":
        circuit = circuits.build_equality_circuit()
    else:
        circuit = builders[args.circuit](args.n)
    cost = circuits.gate_cost(circuit)
    payload = {
        "command": "gatecount",
        "circuit": args.circuit,
        "n": args.n,
        "r": None,
        "wires": circuit.wire_count,
        "counts": cost.counts,
        "total_gates": cost.total_gates,
        "cnot_equivalent": cost.cnot_equivalent,
    }
    if args.json:
        _emit_json(payload)
    else:
        print(f"{args.circuit} n={args.n}: wires={circuit.wire_count} counts={cost.counts} "
              f"cnot_equivalent={cost.cnot_equivalent}")
    return 0


def _cmd_estimate(args) -> int:
    profile = estimator.ComplexityProfile(
        alpha=args.alpha, theta=args.theta,
        variant=_VARIANTS[args.variant], setting=args.setting,
    )
    result = estimator.minimize_exponent(profile)
    payload = {
        "command": "estimate",
        "alpha": args.alpha,
        "theta": args.theta,
        "variant": profile.variant,
        "setting": args.setting,
        "gamma_star": result.gamma_star,
        "exponent": result.exponent,
    }
    if args.security is not None:
        rows = [estimator.security_parameters(s) for s in args.security]
        payload["security_table"] = [r.to_json_dict() for r in rows]
    if args.compare_n is not None:
        payload["baselines"] = estimator.baseline_costs(args.compare_n, args.compare_n)
    if args.json:
        _emit_json(payload)
    else:
        print(f"setting={args.setting} variant={profile.variant} theta={args.theta} "
              f"alpha={args.alpha}")
        print(f"gamma* = {result.gamma_star:.4f}   exponent = {result.exponent:.4f}")
        if "security_table" in payload:
            print("security table (bits -> n, public key):")
            for row in payload["security_table"]:
                print(f"  {row['security_bits']:>4} -> n={row['n']}, {row['key_size']}")
        if "baselines" in payload:
            print(f"log2 attack costs at n=m={args.compare_n}:")
            for name, value in sorted(payload["baselines"].items(), key=lambda kv: kv[1]):
                print(f"  {name}: {value:.1f}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="64-bit seed (default 0)")
    p.add_argument("--json", action="store_true", help="emit a JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mqsolve",
                                     description="Boolean quadratic system solver toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random quadratic system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--plant", action="store_true", help="plant a random root")
    p.add_argument("--out", required=True, help="output path")
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="hybrid exact solver")
    p.add_argument("--in", required=True, help="system file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, default=None, help="specialized variable count")
    group.add_argument("--auto-k", action="store_true", help="pick k from the exponent minimizer")
    p.add_argument("--variant", choices=("det", "lv"), default="det")
    p.add_argument("--backend", choices=("dense", "sparse"), default="dense")
    p.add_argument("--jobs", type=int, default=int(os.environ.get("MQSOLVE_JOBS", "1")),
                   help="parallel branch workers (env MQSOLVE_JOBS)")
    p.add_argument("--timings", action="store_true", help="include wall-clock time in output")
    _add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("grover", help="simulated branch search statistics")
    p.add_argument("--in", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--backend", choices=("dense", "sparse"), default="dense")
    p.add_argument("--iterations", default="auto",
                   help="'auto' (floor policy), 'paper' (ceiling formula), or an integer")
    _add_common(p)
    p.set_defaults(func=_cmd_grover)

    p = sub.add_parser("macaulay", help="Macaulay matrix statistics and dump")
    p.add_argument("--in", required=True)
    p.add_argument("--k", type=int, default=0, help="specialization count for the witness degree")
    p.add_argument("--d", type=int, default=None, help="matrix degree (default: witness degree)")
    p.add_argument("--dump", default=None, help="write 'row col' triplets to a path, or '-' for stdout")
    _add_common(p)
    p.set_defaults(func=_cmd_macaulay)

    p = sub.add_parser("gatecount", help="reversible circuit gate counts")
    p.add_argument("--circuit", required=True,
                   choices=("inner-product", "matvec", "matmul", "qrs", "equality"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_gatecount)

    p = sub.add_parser("estimate", help="complexity exponents and security parameters")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=2.0)
    p.add_argument("--variant", choices=("det", "lv"), default="lv")
    p.add_argument("--setting", choices=("classical", "quantum"), default="classical")
    p.add_argument("--security", type=int, nargs="*", default=None,
                   help="security levels in bits for the parameter table")
    p.add_argument("--compare-n", type=int, default=None, dest="compare_n",
                   help="evaluate baseline attack costs at n=m=N")
    _add_common(p)
    p.set_defaults(func=_cmd_estimate)
    return parser


def dispatch(argv: list[str]) -> int:
    """Parse argv, validate flags, run the subcommand; exit code per module contract."""
    parser = build_parser()
    args = parser.parse_args(argv)
    args.run_config = RunConfig(
        subcommand=args.command,
        input_path=getattr(args, "in", None),
        seed=getattr(args, "seed", 0),
        output_mode="json" if getattr(args, "json", False) else "text",
        flags={k: v for k, v in vars(args).items() if k not in ("func", "command")},
    )
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, anf.ParseError,
            solver.QuantumRetryExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
