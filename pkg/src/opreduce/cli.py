"""``opreduce`` command line: charpoly, rcf, reduce, verify, solve.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 internal-consistency error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .canonical import rational_canonical_form
from .charpoly import charpoly_faddeev, charpoly_via_minors, minor_sums
from .errors import InputError, InternalConsistencyError
from .exactmath import format_scalar, poly_to_strings
from .operators import (
    OperatorElement,
    backend_class,
    reconstruct_and_verify,
    solve_initial_value,
    solve_system,
    transform,
    verify_forward,
)
from .problem import ProblemFile, load_problem
from .randgen import random_int_vector
from .reduction import partially_reduce

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_STEPS = 25


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _rng(args, prob: ProblemFile):
    seed = args.seed if args.seed is not None else prob.seed
    return None if seed is None else random.Random(seed)


def _backend(args, prob: ProblemFile, default: str | None = None) -> str:
    if args.backend and prob.backend and args.backend != prob.backend:
        raise InputError(f"--backend {args.backend} conflicts with free_column backend {prob.backend}")
    name = args.backend or prob.backend or default
    if name is None:
        raise InputError("no backend: give --backend or free_column backend data")
    backend_class(name)
    return name


def _free_column(prob, backend, rng, window) -> list[OperatorElement]:
    """Problem's φ data, else seeded random data, else zeros."""
    if prob.free_column is not None:
        return prob.free_column
    cls = backend_class(backend)
    if rng is not None:
        return [cls(random_int_vector(rng, window + 1)) for _ in range(prob.n)]
    return [cls.zeros(window) for _ in range(prob.n)]


def cmd_charpoly(args, prob: ProblemFile) -> int:
    p = charpoly_via_minors(prob.matrix)
    if charpoly_faddeev(prob.matrix) != p:
        raise InternalConsistencyError("minor-sum and trace-recursion characteristic polynomials differ")
    n = prob.n
    _emit(args, {
        "n": n,
        "delta": [format_scalar(d) for d in minor_sums(prob.matrix)],
        "d": [format_scalar(p[n - k]) for k in range(1, n + 1)],
        "coefficients": poly_to_strings(p),
        "polynomial": str(p),
    })
    return EXIT_OK


def cmd_rcf(args, prob: ProblemFile) -> int:
    _emit(args, rational_canonical_form(prob.matrix).to_json())
    return EXIT_OK


def cmd_reduce(args, prob: ProblemFile) -> int:
    red = partially_reduce(prob.matrix)
    _emit(args, red.to_latex() if args.emit == "latex" else red.to_json())
    return EXIT_OK


def cmd_verify(args, prob: ProblemFile) -> int:
    backend = _backend(args, prob)
    rng = _rng(args, prob)
    red = partially_reduce(prob.matrix)
    if prob.solution is not None:
        x = prob.solution
        if args.steps is not None:
            x = [e.truncate(min(args.steps, e.range)) for e in x]
        phi = _free_column(prob, backend, rng, x[0].range - 1)
    else:
        steps = args.steps or prob.steps
        if steps is None:
            steps = prob.free_column[0].range + 1 if prob.free_column else DEFAULT_STEPS
        phi = _free_column(prob, backend, rng, steps - 1)
        x0 = prob.x0
        if x0 is None:
            if rng is None:
                raise InputError("x0: required when no solution is given (or pass --seed)")
            x0 = random_int_vector(rng, prob.n)
        x = solve_initial_value(prob.matrix, phi, x0, steps, backend)
    forward = verify_forward(prob.matrix, phi, x, backend, reduced=red)
    y = transform(red.P_inv, x)
    _, reverse = reconstruct_and_verify(red, y, phi, prob.matrix, backend)
    ok = forward.ok and reverse.ok
    _emit(args, {"ok": ok, "forward": forward.to_json(), "reverse": reverse.to_json()})
    if not ok:
        for rep in (forward, reverse):
            for line in rep.failures()[:10]:
                print(f"{rep.mode} residual: {line}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_solve(args, prob: ProblemFile) -> int:
    backend = _backend(args, prob, default="shift")
    rng = _rng(args, prob)
    red = partially_reduce(prob.matrix)
    biggest = max(s.size for s in red.subsystems)
    steps = args.steps or prob.steps or DEFAULT_STEPS
    # x's window is φ's window + 2 - (largest block order)
    phi = _free_column(prob, backend, rng, steps + biggest - 2)
    initials = prob.initials
    if initials is None:
        if rng is None:
            raise InputError("initials: required (one list of n_i values per block) or pass --seed")
        initials = [random_int_vector(rng, s.size) for s in red.subsystems]
    for i, (s, ini) in enumerate(zip(red.subsystems, initials)):
        if len(ini) != s.size:
            raise InputError(f"initials[{i}]: block {i + 1} has order {s.size}, got {len(ini)} values")
    x, y, report = solve_system(prob.matrix, phi, initials, reduced=red)
    _emit(args, {
        "backend": backend,
        "blocks": [poly_to_strings(s.poly) for s in red.subsystems],
        "x": [e.to_json() for e in x],
        "y": [e.to_json() for e in y],
        "report": report.to_json(),
    })
    return EXIT_OK


COMMANDS = {
    "charpoly": cmd_charpoly,
    "rcf": cmd_rcf,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "solve": cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opreduce",
        description="Partial reduction of linear first-order operator systems A(x) = Bx + φ.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("problem", help="JSON problem file")
        p.add_argument("--emit", choices=["json", "latex"], default="json")
        p.add_argument("--backend", choices=["shift", "dseries"])
        p.add_argument("--steps", type=int, help="window length N (shift) or degree D (dseries)")
        p.add_argument("--seed", type=int, help="seed for any data missing from the problem file")
        p.add_argument("--output", help="write output to PATH instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.steps is not None and args.steps < 1:
        print("error: --steps must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        prob = load_problem(args.problem)
        return COMMANDS[args.command](args, prob)
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
