"""Command-line entry point: ``smlassort {solve,verify,benchmark,gen}``.

Exit codes: 0 success, 1 verification failed, 2 bad input or config,
3 model/method mismatch, 4 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import ConfigError, InstanceFormatError, ResourceLimitError, UnsupportedModelError
from .experiments import DEFAULT_SEED, FamilyConfig, default_grid, generate_instance, run_benchmark
from .instancefile import dump_instance, load_instance
from .optimize import (
    BOUND_SUBSET_CAP,
    BRUTE_FORCE_CAP,
    palm_solve_rol,
    solve_brute_force,
    solve_revenue_ordered,
    solve_rol,
    verify_optimality_bounds,
)
from .phenomena import scan_for_effects

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_RESOURCE = 4

SOLVERS = {
    "rol": solve_rol,
    "ro": solve_revenue_ordered,
    "brute": solve_brute_force,
    "palm-rol": palm_solve_rol,
}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    instance = load_instance(args.input)
    result = SOLVERS[args.method](instance)
    _emit(json.dumps(result.to_dict(instance), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    instance = load_instance(args.input)
    instance.require_sml()
    optimum = solve_brute_force(instance, cap=args.cap)
    report = verify_optimality_bounds(instance, optimum, subset_cap=args.subset_cap)
    max_size = args.max_size if args.max_size is not None else min(len(instance), 6)
    witnesses = scan_for_effects(instance, max_size, cap=args.cap)

    ids = ", ".join(map(str, instance.sorted_ids(optimum.assortment)))
    print(f"optimal assortment (brute force over {optimum.evaluations} subsets): {{{ids}}}")
    print(f"optimal revenue: {report.optimal_revenue:.10g}")
    if report.alpha_level1 is not None:
        print(f"level-1 weighted revenue: {report.alpha_level1:.10g}")
    if report.alpha_level2 is not None:
        print(f"level-2 weighted revenue: {report.alpha_level2:.10g}")
    print(f"level-1 utility share: {report.lambda_level1:.10g}")
    print("bound checks:")
    for c in report.checks:
        print(f"  [{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.lhs:.10g} >= {c.rhs:.10g}")
    if report.informational:
        print("per-product level-2 comparisons (informational, the bound only holds in aggregate):")
        for c in report.informational:
            rel = ">=" if c.passed else "<"
            print(f"  {c.name}: {c.lhs:.10g} {rel} {c.rhs:.10g}")
    print(f"effect witnesses (offer sets up to {max_size} products): {len(witnesses)}")
    for w in witnesses:
        print("  " + w.describe(instance))
    return EXIT_OK if report.passed else EXIT_FAILED


def _benchmark_configs(args) -> list[FamilyConfig]:
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        families = doc.get("families") if isinstance(doc, dict) else doc
        if not isinstance(families, list):
            raise ConfigError("config must be a list of families or an object with a 'families' list")
        configs = []
        for fam in families:
            if not isinstance(fam, dict):
                raise ConfigError(f"family entry must be an object, got {fam!r}")
            fam = dict(fam)
            fam.setdefault("instances", args.instances)
            fam.setdefault("seed", args.seed)
            configs.append(FamilyConfig.from_dict(fam))
        return configs
    if args.n1 is not None or args.n2 is not None or args.u0 is not None:
        return [
            FamilyConfig(
                n1=args.n1 if args.n1 is not None else 5,
                n2=args.n2 if args.n2 is not None else 5,
                u0=args.u0 if args.u0 is not None else 1.0,
                instances=args.instances,
                seed=args.seed,
            )
        ]
    return default_grid(instances=args.instances, seed=args.seed)


def cmd_benchmark(args) -> int:
    configs = _benchmark_configs(args)
    report = run_benchmark(configs)
    csv_text = report.to_csv()
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
        print(report.format_table())
    else:
        sys.stdout.write(csv_text)
        print(report.format_table(), file=sys.stderr)
    return EXIT_OK if not report.errors else EXIT_BAD_INPUT


def cmd_gen(args) -> int:
    config = FamilyConfig(args.n1, args.n2, args.u0, instances=args.index + 1, seed=args.seed)
    _emit(dump_instance(generate_instance(config, args.index)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smlassort", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a revenue-maximising assortment")
    p.add_argument("input", help="instance JSON file")
    p.add_argument("--method", choices=sorted(SOLVERS), default="rol")
    p.add_argument("--out", help="write the result here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check optimality bounds and scan for behavioural effects")
    p.add_argument("input", help="instance JSON file")
    p.add_argument("--max-size", type=int, default=None, help="largest offer set scanned for effects (default min(n, 6))")
    p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP, help="largest instance accepted for exhaustive work")
    p.add_argument("--subset-cap", type=int, default=BOUND_SUBSET_CAP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("benchmark", help="compare RO and ROL on seeded random families")
    p.add_argument("--config", help="JSON list of families (keys n1, n2, u0, instances, seed, ...)")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--u0", type=float)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("gen", help="write one random instance")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--u0", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except UnsupportedModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
