"""Compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each backend runs in its own interpreter because the choice is made at
import time.  Reports the best of N runs per workload, in milliseconds.
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, random, sys, timeit
from fractions import Fraction
import cone_green
from cone_green import _backend as k
from cone_green.catalog import first_example, planted_operator, second_example
from cone_green.field import gr
from cone_green.green import verify_theorem_main
from cone_green.symbols import complete_symbol, invert_complete_symbol

repeat = int(sys.argv[1])
rng = random.Random(1)

def frac():
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))

def scalar():
    return k.GaussianRational(frac(), frac())

def inverse_terms(A, K):
    inv = invert_complete_symbol(complete_symbol(A), K)
    return [inv.shifted_term(j) for j in range(K + 1)]

p = [scalar() for _ in range(40)]
q = [scalar() for _ in range(40)]
M = [[scalar() for _ in range(12)] for _ in range(12)]
c = scalar()
A2 = planted_operator(random.Random(88), 2, 2)

work = {
    "field_mul_add": lambda: [x * y + x for x, y in zip(p, q)],
    "poly_mul_deg40": lambda: k.poly_mul(p, q),
    "taylor_shift_deg40": lambda: k.poly_taylor_shift(p, c),
    "rref_12x12": lambda: k.rref([row[:] for row in M], 12),
    "inverse_symbol_2x2_k6": lambda: inverse_terms(A2, 6),
    "green_first_example": lambda: verify_theorem_main(*first_example()),
    "green_second_example": lambda: verify_theorem_main(*second_example(gr("3/2"), gr("-2+i"))),
}
out = {"backend": cone_green.BACKEND}
for name, fn in work.items():
    number = 50 if name in ("field_mul_add", "poly_mul_deg40", "taylor_shift_deg40") else 1
    best = min(timeit.repeat(fn, number=number, repeat=repeat)) / number
    out[name] = best * 1000
print(json.dumps(out))
"""


def run(pure, repeat):
    env = dict(os.environ)
    env.pop("CONE_GREEN_PURE_PYTHON", None)
    if pure:
        env["CONE_GREEN_PURE_PYTHON"] = "1"
    res = subprocess.run([sys.executable, "-c", CHILD, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print raw timings")
    args = ap.parse_args()
    compiled = run(False, args.repeat)
    pure = run(True, args.repeat)
    if args.json:
        print(json.dumps({"compiled": compiled, "pure": pure}, indent=2))
        return
    if compiled["backend"] != "cython":
        print("compiled extension not built; both columns use the Python kernels")
    width = max(len(k) for k in compiled if k != "backend")
    print("%-*s %12s %12s %8s" % (width, "workload", "cython ms", "python ms", "speedup"))
    for name in compiled:
        if name == "backend":
            continue
        a, b = compiled[name], pure[name]
        print("%-*s %12.3f %12.3f %7.1fx" % (width, name, a, b, b / a))


if __name__ == "__main__":
    main()
