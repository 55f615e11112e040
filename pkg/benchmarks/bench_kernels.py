"""Time the compiled and pure-Python kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from scfgame.dynamics import CLAMP_TOL
from scfgame.kernels import available_backends
from scfgame.model import BASELINE
from scfgame.sweeps import default_initial_states

P = BASELINE.astuple()


def one_trajectory(mod):
    mod.integrate(P, 0.5, 0.5, 0.5, 0.01, 2000, 10, CLAMP_TOL)


def sweep_cells(mod):
    # one builtin sweep value: 28 initial states
    for s in default_initial_states():
        mod.integrate(P, s.x, s.y, s.z, 0.01, 2000, 10, CLAMP_TOL)


def field_calls(mod):
    for _ in range(10_000):
        mod.field(P, 0.25, 0.5, 0.75)


WORKLOADS = [("trajectory (2000 RK4 steps)", one_trajectory),
             ("28-cell sweep value", sweep_cells),
             ("10^4 field evaluations", field_calls)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    ref = {}
    for name, mod in backends.items():
        ref[name] = mod.integrate(P, 0.5, 0.5, 0.5, 0.01, 2000, 10, CLAMP_TOL)[1]
    if len(ref) > 1:
        a, b = ref.values()
        print(f"backends bit-identical: {np.array_equal(a, b)}")
    print(f"{'workload':32s}" + "".join(f"{n:>12s}" for n in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, fn in WORKLOADS:
        times = {n: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat)) for n, m in backends.items()}
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if "cython" in times and "python" in times:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
