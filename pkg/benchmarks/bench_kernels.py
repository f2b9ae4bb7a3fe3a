"""Compare the compiled and numpy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--level L] [--repeat N]``.
"""
import argparse
import time

import numpy as np

from augcontact import _core
from augcontact.contact import ContactConfig, Formulation
from augcontact.harness import build_system
from augcontact.problems import get_problem
from augcontact.solver import semismooth_newton


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--level", type=int, default=5)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    p = get_problem("smooth-obstacle")
    mesh = p.mesh(args.level)
    sys = build_system(p, mesh)
    cfg = ContactConfig(Formulation.F1, p.gamma0)
    rng = np.random.default_rng(0)
    coords = np.ascontiguousarray(mesh.vertices[mesh.triangles])
    u_loc = np.ascontiguousarray(rng.standard_normal(sys.mult.cell_nodes.shape))
    lam = rng.standard_normal(sys.nl)
    gamma = cfg.gamma(sys.h)

    cases = {
        "element_stiffness": lambda: _core.element_stiffness(coords),
        "contact_local": lambda: _core.contact_local(cfg.formulation.code, sys.quad.phi,
                                                     sys.quad.weights, u_loc, lam, gamma),
        "newton solve": lambda: semismooth_newton(cfg, sys),
    }
    backends = ["python"] + (["compiled"] if _core.has_compiled() else [])
    print(f"smooth obstacle level {args.level}: {mesh.nv} nodes, {mesh.nt} triangles")
    print(f"{'kernel':<20}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    try:
        for name, fn in cases.items():
            row = []
            for b in backends:
                _core.use_backend(b)
                row.append(best_of(fn, args.repeat))
            speed = f"{row[0] / row[-1]:>9.1f}x" if len(row) > 1 else ""
            print(f"{name:<20}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row) + speed)
    finally:
        if _core.has_compiled():
            _core.use_backend("compiled")


if __name__ == "__main__":
    main()
