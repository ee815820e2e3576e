"""Compare compiled and numpy sweep kernels on full (passing) sweeps.

    python3 benchmarks/bench_kernels.py --repeat 3
"""
import argparse
import time

from polyadic import chain, kernels
from polyadic.core import DerivedModular

CASES = [
    ("associativity", DerivedModular(7, 4, 3), lambda s, impl: kernels.first_assoc_failure(s, impl)),
    ("associativity", DerivedModular(12, 3, 5), lambda s, impl: kernels.first_assoc_failure(s, impl)),
    ("mediality", DerivedModular(5, 3, 1), lambda s, impl: kernels.first_medial_failure(s, impl)),
    ("mediality", DerivedModular(4, 3, 2), lambda s, impl: kernels.first_medial_failure(s, impl)),
]


def chain_case(m, n, q):
    sys = DerivedModular(m, n, 1)
    dec = chain.decompose(sys, 0, q)
    psi = chain._psi_tables(dec)
    star = dec.retract.star_table

    def run(s, impl):
        return kernels.first_chain_failure(s, star, psi, dec.b_q, impl)

    return (f"chain q={q}", sys, run)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    cases = CASES + [chain_case(7, 5, 5), chain_case(9, 5, 9)]
    if kernels.IMPLEMENTATION != "compiled":
        print("compiled kernels unavailable; timing the numpy backend only")
    print(f"{'sweep':<15}{'system':<28}{'tuples':>10}{'numpy s':>10}{'compiled s':>12}{'speedup':>9}")
    for name, sys, run in cases:
        length = {"associativity": 2 * sys.arity - 1, "mediality": sys.arity**2}.get(name, sys.arity)
        t_py, r_py = best_of(lambda: run(sys, "python"), args.repeat)
        line = f"{name:<15}{str(sys.describe()['m']) + '^' + str(length) + ' over n=' + str(sys.arity):<28}"
        line += f"{sys.m ** length:>10}{t_py:>10.3f}"
        if kernels.IMPLEMENTATION == "compiled":
            t_c, r_c = best_of(lambda: run(sys, None), args.repeat)
            assert r_c == r_py, "backends disagree"
            line += f"{t_c:>12.4f}{t_py / t_c:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
