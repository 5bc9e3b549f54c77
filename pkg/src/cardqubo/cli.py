"""Command-line entry point: ``cardqubo {experiment,solve,oracle,gen}``.

Exit status is 0 on success, 2 for invalid input and 3 when an exhaustive
search would exceed its capacity guard.
"""

from __future__ import annotations

import argparse
import sys

from .constraint import PenaltySpec, apply_constraint, penalty_value, safe_alpha
from .errors import CapacityError, ValidationError
from .experiment import DEFAULT_ALPHAS, ExperimentConfig, run_experiment, write_histograms
from .instances import GENERATORS, load_matrix, save_matrix
from .solvers import SCHEDULES, brute_force, brute_force_cardinality, simulated_anneal

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _alphas(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid alpha list {text!r}") from None


def _load_instance(args):
    if args.instance.startswith("file:"):
        return load_matrix(args.instance[len("file:"):], symmetrize_input=args.symmetrize)
    if args.instance not in GENERATORS:
        raise ValidationError(f"instance must be gaussian, psd or file:PATH, got {args.instance!r}")
    if args.n is None:
        raise ValidationError("--n is required for generated instances")
    return GENERATORS[args.instance](args.n, args.seed)


def _add_instance_args(p, default_n=None):
    p.add_argument("--instance", default="gaussian", help="gaussian | psd | file:PATH")
    p.add_argument("--n", type=int, default=default_n)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symmetrize", action="store_true", help="symmetrize an asymmetric matrix file")


def _report(result, matrix_label: str) -> None:
    print(f"matrix: {matrix_label}")
    print(f"cost: {result.cost!r}")
    print(f"cardinality: {result.cardinality}")
    print(f"solution: {result.solution.bitstring()}")


def cmd_experiment(args) -> int:
    config = ExperimentConfig(
        n=args.n,
        m_target=args.m,
        alphas=args.alphas,
        trials=args.trials,
        instance=args.instance,
        seed=args.seed,
        schedule=args.schedule,
    )
    hist = run_experiment(config, workers=args.workers)
    write_histograms(hist, args.out)
    for alpha in sorted(hist.alphas):
        print(
            f"alpha={alpha:g} mode={hist.mode(alpha)} "
            f"frac@{config.m_target}={hist.fraction_at(alpha, config.m_target):.3f} "
            f"best={hist.best_cost[alpha]:.6g}"
        )
    print(f"wrote {args.out}")
    return EXIT_OK


def _constrained(a, args):
    if args.alpha is None or args.alpha == 0:
        return a, "A", None
    if args.alpha == "safe":
        alpha = safe_alpha(a)
    else:
        alpha = float(args.alpha)
    if args.m is None:
        raise ValidationError("--m is required when --alpha is positive")
    spec = PenaltySpec(a.n, args.m, alpha)
    return apply_constraint(a, spec), f"A + C(alpha={alpha:g}, M={args.m})", spec


def cmd_solve(args) -> int:
    a = _load_instance(args)
    matrix, label, spec = _constrained(a, args)
    result = simulated_anneal(matrix, SCHEDULES[args.schedule], seed=args.anneal_seed)
    _report(result, label)
    if spec is not None:
        print(f"data_cost: {result.cost - penalty_value(spec, result.cardinality)!r}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    a = _load_instance(args)
    if args.m is not None:
        _report(brute_force_cardinality(a, args.m), f"A restricted to |x|_1 = {args.m}")
    else:
        _report(brute_force(a), "A")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.instance not in GENERATORS:
        raise ValidationError(f"gen supports {sorted(GENERATORS)}, got {args.instance!r}")
    save_matrix(GENERATORS[args.instance](args.n, args.seed), args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def _alpha_arg(text: str):
    return text if text == "safe" else float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cardqubo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("experiment", help="multi-alpha histogram run, written as CSV")
    _add_instance_args(p, default_n=30)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--alphas", type=_alphas, default=DEFAULT_ALPHAS, help="comma-separated, e.g. 0,0.5,2")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--schedule", choices=sorted(SCHEDULES), default="fast")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("solve", help="anneal one matrix, optionally with the cardinality penalty")
    _add_instance_args(p)
    p.add_argument("--m", type=int)
    p.add_argument("--alpha", type=_alpha_arg, help="penalty weight, 0 for none, or 'safe'")
    p.add_argument("--schedule", choices=sorted(SCHEDULES), default="quality")
    p.add_argument("--anneal-seed", type=int, default=0)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exhaustive minimum, optionally restricted to cardinality --m")
    _add_instance_args(p)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a generated instance to a matrix file")
    p.add_argument("--instance", choices=sorted(GENERATORS), default="gaussian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"cardqubo: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValidationError, OSError) as exc:
        print(f"cardqubo: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
