"""Compare the GMP extension kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py --sizes 4,8,16 --repeat 5

The end-to-end rows run ``drazin`` in a subprocess per backend, since the
backend is fixed when gdrazin is imported.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from gdrazin import _pykernels

try:
    from gdrazin import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _rand(rng, count, bound=50):
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 9)) for _ in range(count)]


def _time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


_E2E = """
import sys, time
from gdrazin import BACKEND, GenSpec, drazin, gen_element
from gdrazin.instance_gen import derive_seed
n = int(sys.argv[1])
mats = [gen_element(GenSpec(derive_seed(1, i), n, 3, "drazin_structured")) for i in range(20)]
t = time.perf_counter()
for a in mats:
    drazin(a)
print(BACKEND, (time.perf_counter() - t) / len(mats))
"""


def _end_to_end(n, pure):
    env = dict(os.environ)
    env.pop("GDRAZIN_PURE_PYTHON", None)
    if pure:
        env["GDRAZIN_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", _E2E, str(n)], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.split()[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,8,16")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("extension not built; nothing to compare", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'kernel':<16}{'n':>4}{'python (ms)':>14}{'gmp (ms)':>12}{'speedup':>10}")
    for n in sizes:
        a, b = _rand(rng, n * n), _rand(rng, n * n)
        ai, bi = _rand(rng, n * n), _rand(rng, n * n)
        rows = {
            "matmul real": lambda k: k.matmul(a, None, b, None, n, n, n),
            "matmul complex": lambda k: k.matmul(a, ai, b, bi, n, n, n),
            "rref": lambda k: k.rref(a, None, n, n, n),
        }
        for name, call in rows.items():
            tp = _time(lambda: call(_pykernels), args.repeat)
            tc = _time(lambda: call(_ckernels), args.repeat)
            print(f"{name:<16}{n:>4}{tp * 1e3:>14.3f}{tc * 1e3:>12.3f}{tp / tc:>9.1f}x")
        tp, tc = _end_to_end(n, True), _end_to_end(n, False)
        print(f"{'drazin (e2e)':<16}{n:>4}{tp * 1e3:>14.3f}{tc * 1e3:>12.3f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
