"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--limit 1000000]

Each workload is run with both backends; results are checked for equality
before timings are reported.
"""

import argparse
import statistics
import time

import numpy as np

from cyclorep.congruence import residues_attained
from cyclorep.counting import count_Ad, represented_by_form
from cyclorep.kernels import BACKENDS


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), result


def workloads(limit):
    return [
        (f"A_4({limit:g})", lambda b: count_Ad(4, limit, backend=b)[1].members),
        (f"B_5({limit:g}) no height", lambda b: represented_by_form(5, limit, False, backend=b).members),
        (f"A_8({limit:g})", lambda b: count_Ad(8, limit, backend=b)[1].members),
        ("Phi_105 mod 512", lambda b: np.array(sorted(residues_attained(105, 512, backend=b).attained))),
        ("Phi_64 mod 509", lambda b: np.array(sorted(residues_attained(64, 509, backend=b).attained))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--limit", type=int, default=10**6)
    args = ap.parse_args()

    names = sorted(BACKENDS)
    print(f"backends: {', '.join(names)}")
    print(f"{'workload':<26}" + "".join(f"{n + ' (s)':>16}" for n in names) + f"{'speedup':>10}")
    for label, fn in workloads(args.limit):
        rows = {n: best_of(lambda: fn(n), args.repeat) for n in names}
        ref = rows[names[0]][2]
        if not all(np.array_equal(ref, r[2]) for r in rows.values()):
            raise SystemExit(f"{label}: backends disagree")
        line = f"{label:<26}" + "".join(f"{rows[n][0]:>16.4f}" for n in names)
        if "compiled" in rows:
            line += f"{rows['python'][0] / rows['compiled'][0]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
