"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both implementations are loaded side by side through ``kernels.load`` and run
on identical inputs; the script also asserts that their outputs agree.
"""
import argparse
import random
import timeit
from fractions import Fraction

from dcurrent import kernels
from dcurrent.pbw import JAY, XMINUS, XPLUS, Engine, UEAElement


def rational_matrix(rng, rows, cols):
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(cols)] for _ in range(rows)]


def pbw_workload():
    eng = Engine()
    x = UEAElement.gen(XPLUS, 0, eng) + UEAElement.gen(XMINUS, 1, eng) + UEAElement.gen(JAY, 2, eng)
    terms = (x ** 4).terms
    rule = lambda mono: eng.rule(mono, XMINUS, 3)
    for mono, _ in terms:
        rule(mono)  # warm the memo so only the kernel is timed
    return terms, rule


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    impls = {"compiled": kernels.load(True), "python": kernels.load(False)}
    if impls["compiled"] is impls["python"]:
        print("compiled extension not built; only the fallback is available")
        impls.pop("compiled")

    A = rational_matrix(rng, 24, 24)
    B = rational_matrix(rng, 24, 24)
    R = rational_matrix(rng, 30, 36)
    terms, rule = pbw_workload()
    cases = {
        "rref 30x36": lambda k: k.rref([list(r) for r in R], 36),
        "matmul 24x24": lambda k: k.matmul(A, B),
        "mul_terms (%d terms)" % len(terms): lambda k: k.mul_terms(terms, rule),
    }
    ref = {name: fn(impls["python"]) for name, fn in cases.items()}
    for name, fn in cases.items():
        for label, k in impls.items():
            assert fn(k) == ref[name], f"{label} disagrees on {name}"

    print(f"{'kernel':<24}" + "".join(f"{label:>12}" for label in impls) + "   speedup")
    for name, fn in cases.items():
        times = {}
        for label, k in impls.items():
            times[label] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{name:<24}" + "".join(f"{times[l] * 1e3:>10.2f}ms" for l in impls)
        if "compiled" in times:
            row += f"   {times['python'] / times['compiled']:.2f}x"
        print(row)


if __name__ == "__main__":
    main()
