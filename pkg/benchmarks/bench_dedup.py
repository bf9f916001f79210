"""Time the compiled linkage kernel against the pure-Python fallback.

Both kernels run on the same randomly mutated compare keys; outputs are
asserted identical before any timing is reported. Run from the repo root:

    python3 benchmarks/bench_dedup.py --n 600 --threshold 0.75
"""

from __future__ import annotations

import argparse
import random
import string
import time

from refspect.dedup import _fallback

try:
    from refspect.dedup import _speedups
except ImportError:
    _speedups = None

_NAMES = ("kalkstein", "anderson", "smoyer", "patz", "basu", "gosling", "hajat", "kovats")
_SOURCES = ("climate res", "int j biometeorol", "environ health persp", "lancet", "epidemiology")


def make_keys(n: int, rng: random.Random) -> list[str]:
    """Compare keys where roughly half are light mutations of another key."""
    keys = []
    for _ in range(n):
        if keys and rng.random() < 0.5:
            base = list(rng.choice(keys))
            for _ in range(rng.randint(1, 2)):
                pos = rng.randrange(len(base))
                op = rng.random()
                if op < 0.4:
                    base[pos] = rng.choice(string.ascii_lowercase)
                elif op < 0.7:
                    del base[pos]
                else:
                    base.insert(pos, rng.choice(string.ascii_lowercase))
            keys.append("".join(base))
        else:
            name = rng.choice(_NAMES)
            initial = rng.choice(string.ascii_lowercase)
            keys.append(f"{name} {initial} {rng.choice(_SOURCES)}")
    return keys


def time_kernel(fn, keys: list[str], threshold: float, repeat: int) -> tuple[float, list]:
    best = float("inf")
    links = None
    for _ in range(repeat):
        start = time.perf_counter()
        links = fn(keys, threshold)
        best = min(best, time.perf_counter() - start)
    return best, links


def run(n: int, threshold: float, seed: int, repeat: int) -> int:
    keys = make_keys(n, random.Random(seed))
    print(f"{n} keys, threshold {threshold}, seed {seed}, best of {repeat}")

    py_time, py_links = time_kernel(_fallback.pairwise_links, keys, threshold, repeat)
    print(f"  python : {py_time * 1000:9.1f} ms   {len(py_links)} links")

    if _speedups is None:
        print("  c      : not built (pip install -e . compiles it)")
        return 0

    c_time, c_links = time_kernel(_speedups.pairwise_links, keys, threshold, repeat)
    assert list(c_links) == list(py_links), "kernels disagree"
    print(f"  c      : {c_time * 1000:9.1f} ms   {len(c_links)} links")
    print(f"  speedup: {py_time / c_time:9.1f}x  (outputs identical)")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=600, help="number of compare keys")
    parser.add_argument("--threshold", type=float, default=0.75)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--repeat", type=int, default=3, help="keep the best of this many runs")
    args = parser.parse_args()
    return run(args.n, args.threshold, args.seed, args.repeat)


if __name__ == "__main__":
    raise SystemExit(main())
