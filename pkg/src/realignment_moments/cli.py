"""Command-line front end.

Exit status reports whether the computation succeeded; entanglement verdicts
are only ever in the structured output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import criteria as crit
from .explorer import Axis, EvaluationError, NoBracketError, bisect_threshold, sweep
from .moments import moments
from .realignment import bordered_realignment
from .reproduce import BETA_EX3, EXAMPLES, reproduce
from .states import (
    InvalidStateError,
    StateFamily,
    load_state,
    random_density_matrix,
    random_separable_state,
    save_state,
    state_to_dict,
)

NAMED_CONSTANTS = {"paper-ex3": BETA_EX3, "ex3": BETA_EX3}


def number(text: str) -> float:
    """Parse a decimal, an exact ratio like ``1/729``, or a named constant."""
    key = text.strip().lower()
    if key in NAMED_CONSTANTS:
        return NAMED_CONSTANTS[key]
    try:
        return float(Fraction(key))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(key)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def axis_spec(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(f"axis must be name:start:stop[:steps], got {text!r}")
    name = parts[0]
    start, stop = number(parts[1]), number(parts[2])
    steps = int(parts[3]) if len(parts) == 4 else None
    return name, start, stop, steps


def _dump(obj, fmt: str = "json") -> str:
    if fmt != "json":
        raise ValueError(f"format {fmt!r} not supported here")
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_state_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("state source")
    g.add_argument("--state", help="path to a JSON state file")
    g.add_argument("--family", help="bell-noise | werner | isotropic-b (gen also: random, random-separable)")
    g.add_argument("--p", type=number, help="family parameter (b for isotropic-b)")
    g.add_argument("--d", type=int, default=2, help="local dimension for werner")


def _add_param_args(p: argparse.ArgumentParser, alpha="1/729", beta="1/729", l=1) -> None:
    p.add_argument("--alpha", type=number, default=number(alpha))
    p.add_argument("--beta", type=number, default=number(beta),
                   help="number, ratio, or 'paper-ex3' for 1/(16*sqrt(2))")
    p.add_argument("--l", type=int, default=l, help="border size")


def _add_output_args(p: argparse.ArgumentParser, formats=("json",)) -> None:
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--format", choices=formats, default=formats[0])


def _state_from_args(args):
    if args.state and args.family:
        raise ValueError("give either --state or --family, not both")
    if args.state:
        return load_state(args.state)
    if not args.family:
        raise ValueError("a state source is required: --state PATH or --family TAG --p VALUE")
    if args.p is None:
        raise ValueError(f"--family {args.family} needs --p")
    return StateFamily(args.family, d=args.d)(args.p)


# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.family == "random":
        rho = random_density_matrix(args.dA, args.dB, args.seed)
    elif args.family == "random-separable":
        rho = random_separable_state(args.dA, args.dB, args.terms, args.seed)
    else:
        rho = _state_from_args(args)
    if args.out:
        save_state(rho, args.out)
    else:
        _emit(json.dumps(state_to_dict(rho)) + "\n", None)
    return 0


def cmd_detect(args) -> int:
    rho = _state_from_args(args)
    names = crit.CRITERIA if "all" in args.criterion else args.criterion
    opts = {}
    if args.max_order_H is not None:
        opts["max_order_H"] = args.max_order_H
    if args.max_order_B is not None:
        opts["max_order_B"] = args.max_order_B
    if args.include_H:
        opts["include_H"] = True
    reports = crit.run_all(rho, args.alpha, args.beta, args.l, criteria=names, **opts)
    _emit(_dump([r.to_dict() for r in reports]), args.out)
    return 0


def cmd_moments(args) -> int:
    rho = _state_from_args(args)
    b = bordered_realignment(rho, args.alpha, args.beta, args.l)
    seq = moments(b, args.K, a0_convention=args.a0)
    text = seq.to_csv() if args.format == "csv" else _dump(seq.to_dict())
    _emit(text, args.out)
    return 0


def _criterion_params(args) -> dict:
    params = {"alpha": args.alpha, "beta": args.beta, "l": args.l}
    if args.criterion in ("ccnr", "ppt", "zhang_corrected"):
        return {}
    if args.criterion == "shi_bound":
        params.pop("l")
    return params


def cmd_threshold(args) -> int:
    family = StateFamily(args.family, d=args.d)
    res = bisect_threshold(family, args.criterion, _criterion_params(args), args.lo, args.hi, args.tol)
    _emit(_dump(res.to_dict()), args.out)
    return 0


def cmd_sweep(args) -> int:
    if args.state:
        target = load_state(args.state)
    elif args.family:
        target = StateFamily(args.family, d=args.d)
    else:
        raise ValueError("sweep needs --state or --family")
    axes = [Axis(name, start, stop, steps if steps is not None else args.grid)
            for name, start, stop, steps in args.axis]
    rule = args.beta_rule
    if rule not in ("independent", "equal"):
        rule = number(rule)
    grid = sweep(target, axes, args.criterion, beta_rule=rule, alpha=args.alpha, beta=args.beta,
                 l=args.l, p=args.p, max_workers=args.workers)
    text = grid.to_csv() if args.format == "csv" else _dump(grid.to_dict())
    _emit(text, args.out)
    return 0


def cmd_reproduce(args) -> int:
    rep = reproduce(args.example)
    _emit(_dump(rep.to_dict()), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="realignment-moments",
                                     description="Entanglement detection via bordered realignment moments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a state file")
    _add_state_args(p)
    p.add_argument("--dA", type=int, default=2)
    p.add_argument("--dB", type=int, default=2)
    p.add_argument("--terms", type=int, default=4, help="product terms for random-separable")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("detect", help="evaluate separability criteria on a state")
    _add_state_args(p)
    _add_param_args(p)
    p.add_argument("--criterion", action="append", choices=crit.CRITERIA + ("all",), default=None)
    p.add_argument("--max-order-H", dest="max_order_H", type=int)
    p.add_argument("--max-order-B", dest="max_order_B", type=int)
    p.add_argument("--include-H", dest="include_H", action="store_true",
                   help="let H_k failures count toward the theorem2 verdict")
    _add_output_args(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("moments", help="moments of the bordered realignment matrix")
    _add_state_args(p)
    _add_param_args(p)
    p.add_argument("--K", type=int, help="highest moment order")
    p.add_argument("--a0", choices=("paper", "matrix-dimension"), default="paper")
    _add_output_args(p, ("json", "csv"))
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("threshold", help="bisect the verdict boundary along a family")
    p.add_argument("--family", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--criterion", required=True, choices=crit.CRITERIA)
    _add_param_args(p)
    p.add_argument("--lo", type=number)
    p.add_argument("--hi", type=number)
    p.add_argument("--tol", type=number, default=1e-7)
    _add_output_args(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sweep", help="evaluate a criterion over a parameter grid")
    _add_state_args(p)
    _add_param_args(p)
    p.add_argument("--criterion", default="theorem1", choices=crit.CRITERIA)
    p.add_argument("--axis", type=axis_spec, action="append", required=True,
                   help="name:start:stop[:steps] with name in p, alpha, beta, l")
    p.add_argument("--grid", type=int, default=21, help="default steps per axis")
    p.add_argument("--beta-rule", dest="beta_rule", default="independent",
                   help="independent | equal | c (beta = c * alpha)")
    p.add_argument("--workers", type=int, default=None)
    _add_output_args(p, ("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reproduce", help="rerun a worked example and compare thresholds")
    p.add_argument("example", type=int, choices=sorted(EXAMPLES))
    p.add_argument("--out")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "criterion", None) is None and args.command == "detect":
        args.criterion = ["all"]
    try:
        return args.func(args)
    except InvalidStateError as exc:
        print(f"error: invalid state ({exc.invariant}): {exc}", file=sys.stderr)
    except json.JSONDecodeError as exc:
        print(f"error: could not parse state file: {exc}", file=sys.stderr)
    except NoBracketError as exc:
        print(f"error: no bracket: {exc}", file=sys.stderr)
    except (EvaluationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
