"""Doubling experiment: wall time of one bar-representative computation on
Rips filtrations of circle samples whose simplex count doubles each step.

The scale sits just above the second-neighbor chord, so each circle of n
points yields n vertices, 2n edges, n triangles: 4n simplices total.
"""

import argparse
import math
import time

from cyclerad.filtrations import compute_persistence, rips_filtration
from cyclerad.fixtures import circle_cloud
from cyclerad.optimize import opt_pers_hom_rep


def one_run(n: int) -> tuple[int, float]:
    scale = 2 * math.sin(2 * math.pi / n) * 1.0001
    filtration = rips_filtration(circle_cloud(n), scale, max_dim=2)
    pers = compute_persistence(filtration, 1)
    finite = [iv for iv in pers.intervals() if iv.death is not None]
    target = max(finite, key=lambda iv: iv.death)
    t0 = time.perf_counter()
    opt_pers_hom_rep(filtration, target)
    return len(filtration), time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, nargs="+", default=[25, 50, 100])
    ap.add_argument("--repeats", type=int, default=3, help="keep the best of this many runs")
    args = ap.parse_args()

    print(f"{'points':>8} {'simplices':>10} {'seconds':>10} {'ratio':>8}")
    previous = None
    for n in args.points:
        best = math.inf
        for _ in range(args.repeats):
            n_simplices, seconds = one_run(n)
            best = min(best, seconds)
        ratio = "" if previous is None else f"{best / previous:8.2f}"
        print(f"{n:>8} {n_simplices:>10} {best:>10.4f} {ratio:>8}")
        previous = best


if __name__ == "__main__":
    main()
