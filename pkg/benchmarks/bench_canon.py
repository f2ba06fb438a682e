"""Compare the compiled canonical-labeling kernel with the pure-Python fallback.

    python3 benchmarks/bench_canon.py [--graphs 2000] [--enum-n 7]
"""

import argparse
import random
import time

from phoeg import _canon_py
from phoeg.enumerate import canonical_keys

try:
    from phoeg import _ccore
except ImportError:
    _ccore = None


def random_graphs(count, rng):
    out = []
    for _ in range(count):
        n = rng.randint(4, 12)
        p = rng.random()
        rows = [0] * n
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < p:
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
        out.append((n, tuple(rows)))
    return out


def timed(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def canon_all(mod, graphs):
    for n, rows in graphs:
        mod.canon(n, rows)


def augment_all(mod, n, keys):
    from phoeg.enumerate import unpack_key

    for k in keys.tolist():
        g = unpack_key(n - 1, k)
        mod.augment(n - 1, g.rows)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--graphs", type=int, default=2000)
    ap.add_argument("--enum-n", type=int, default=7)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    graphs = random_graphs(args.graphs, random.Random(args.seed))
    parents = canonical_keys(args.enum_n - 1)
    mods = [("python", _canon_py)] + ([("compiled", _ccore)] if _ccore else [])
    results = {}
    for name, mod in mods:
        results[name] = (timed(canon_all, mod, graphs), timed(augment_all, mod, args.enum_n, parents))
    print(f"{'kernel':10s} {'canon x' + str(args.graphs):>14s} {'augment n=' + str(args.enum_n):>14s}")
    for name, (a, b) in results.items():
        print(f"{name:10s} {a:13.3f}s {b:13.3f}s")
    if "compiled" in results:
        (pa, pb), (ca, cb) = results["python"], results["compiled"]
        print(f"{'speedup':10s} {pa / ca:13.1f}x {pb / cb:13.1f}x")


if __name__ == "__main__":
    main()
