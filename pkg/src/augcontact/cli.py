"""Command line entry point: ``augcontact study <problem> [options]``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .contact import ContactConfig, Formulation
from .harness import dump_solution, emit_outputs, run_study
from .problems import Benchmark, get_problem
from .solver import SolveSettings

#: first study level per problem; levels are uniform refinements of a 2x2 base
DEFAULT_START = {
    Benchmark.SMOOTH_OBSTACLE: 3,
    Benchmark.NONSMOOTH_OBSTACLE: 3,
    Benchmark.SIGNORINI: 2,
}
F2_DEFAULT_GAMMA0 = 10.0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="augcontact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    st = sub.add_parser("study", help="run a convergence study")
    st.add_argument("problem", choices=[b.value for b in Benchmark])
    st.add_argument("--levels", type=int, default=4, help="number of refinement levels")
    st.add_argument("--start-level", type=int, default=None,
                    help="first refinement level (problem default if omitted)")
    st.add_argument("--gamma0", type=float, default=None,
                    help="augmentation scale (problem default; 10 for f2/f2-alt)")
    st.add_argument("--delta", type=float, default=1.0, help="stabilization weight")
    st.add_argument("--gamma-exponent", type=float, default=1.0,
                    help="gamma = gamma0 * h**E (2 is the obstacle theory scaling)")
    st.add_argument("--formulation", choices=[f.value for f in Formulation], default="f1")
    st.add_argument("--tol", type=float, default=1e-10, help="Newton residual tolerance")
    st.add_argument("--max-newton", type=int, default=100)
    st.add_argument("--damping", type=float, default=1.0)
    st.add_argument("--overkill-extra", type=int, default=2,
                    help="extra refinements for the overkill reference (Signorini)")
    st.add_argument("--out", type=Path, default=Path("results"))
    st.add_argument("--dump-solution", action="store_true",
                    help="write x y u triples of the finest solution")
    st.add_argument("-v", "--verbose", action="store_true")
    return parser


def study(args) -> int:
    problem = get_problem(args.problem)
    formulation = Formulation(args.formulation)
    gamma0 = args.gamma0
    if gamma0 is None:
        gamma0 = F2_DEFAULT_GAMMA0 if formulation in (Formulation.F2, Formulation.F2_ALT) \
            else problem.gamma0
    cfg = ContactConfig(formulation, gamma0, args.delta, args.gamma_exponent / 2.0)
    settings = SolveSettings(args.tol, args.max_newton, args.damping)
    start = DEFAULT_START[problem.benchmark] if args.start_level is None else args.start_level
    table, sols = run_study(problem, cfg, args.levels, settings, start_level=start,
                            overkill_extra=args.overkill_extra, keep_solutions=True)
    print(table)
    paths = emit_outputs(table, args.out, problem.name)
    print(f"wrote {paths['csv']} and {paths['svg']}")
    if args.dump_solution and sols[-1] is not None:
        system, sol, _ = sols[-1]
        path = args.out / f"{problem.name}-solution.txt"
        dump_solution(system.mesh, sol.u_full, path)
        print(f"wrote {path}")
    return 0 if table.all_converged else 2


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "study":
        return study(args)
    return 1


if __name__ == "__main__":
    sys.exit(main())
