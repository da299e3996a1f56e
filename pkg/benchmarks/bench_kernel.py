"""Compiled kernel vs pure-Python fallback.

Runs a micro benchmark on the raw kernel functions and an end-to-end
workload (Qbar(t) certificate plus Q(t) structure of the classic triple)
once per backend, each in a fresh interpreter so the backend switch applies.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, timeit
from mwfamily import BACKEND, kernel as K
from mwfamily.family import make_triple, mw_certificate_qbar, mw_structure_qt
from mwfamily.polyring import Poly

repeat = int(sys.argv[1])
rng = random.Random(1)
def elem():
    return K.z_make(*(rng.randint(-10**9, 10**9) for _ in range(4)), rng.randint(1, 10**4))
polys = [tuple(elem() for _ in range(8)) for _ in range(20)]

def micro():
    for p in polys:
        for q in polys[:5]:
            K.p_mul(p, q)
            K.p_divmod(p, q)

def workload():
    t = Poly.t()
    tr = make_triple(t * t - 1, 2 * t, t * t + 1)
    mw_certificate_qbar(tr)
    mw_structure_qt(tr)

out = {"backend": BACKEND,
       "micro": min(timeit.repeat(micro, number=1, repeat=repeat)),
       "workload": min(timeit.repeat(workload, number=1, repeat=repeat))}
print(json.dumps(out))
"""


def run(pure, repeat):
    env = dict(os.environ)
    env.pop("MWFAMILY_PURE", None)
    if pure:
        env["MWFAMILY_PURE"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = [run(False, args.repeat), run(True, args.repeat)]
    if rows[0]["backend"] != "compiled":
        print("compiled kernel not built; only the pure-Python numbers are meaningful")
    print(f"{'backend':<10}{'micro (s)':>12}{'workload (s)':>15}")
    for r in rows:
        print(f"{r['backend']:<10}{r['micro']:>12.4f}{r['workload']:>15.4f}")
    if rows[0]["backend"] == "compiled":
        print(f"speedup    {rows[1]['micro'] / rows[0]['micro']:>11.2f}x"
              f"{rows[1]['workload'] / rows[0]['workload']:>14.2f}x")


if __name__ == "__main__":
    main()
