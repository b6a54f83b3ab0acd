"""Closure status of w_m for integral weights, and degree trails for non-integral ones."""

import argparse

from spherevec.avmod import TMElement, w_generator
from spherevec.closure import Window, degree_sequence, generate
from spherevec.glmod import GLWeight
from spherevec.ring import LocalizedFun

BOUNDED = [(0, -2), (0, 2), (1, 1), (1, -1), (2, 0), (2, 2), (3, 1), (3, -1)]
NON_INTEGRAL = [(1, 0), (2, 1), (0, 1)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-D", type=int, default=6)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    print(f"{'(m,alpha)':>10}  {'deg w_m':>7}  {'status':<14} {'dim':>5} {'ops':>7} {'time':>7}")
    for m, alpha in BOUNDED:
        gen = w_generator(m, alpha)
        report = generate([gen], Window(abs(alpha + m) // 2 + 2, args.D), jobs=args.jobs)
        print(f"{str((m, alpha)):>10}  {-(alpha + m) // 2:>7}  {report.label:<14} {report.basis.dimension:>5} "
              f"{report.ops_applied:>7} {report.elapsed:>6.2f}s")

    print("\nnon-integral weights, closure of z^2 (x) v0:")
    for m, alpha in NON_INTEGRAL:
        start = TMElement.basis(GLWeight(m, alpha), 0, LocalizedFun.monomial(0, 0, 2))
        windows = [Window(K, args.D) for K in (2, 4, 6, 8)]
        degrees = degree_sequence([start], windows, jobs=args.jobs)
        print(f"{str((m, alpha)):>10}  K=2,4,6,8 -> min_degree {degrees}")


if __name__ == "__main__":
    main()
