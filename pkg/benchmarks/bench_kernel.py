"""Time the full state sum on random pseudolinks with both kernels.

    python3 benchmarks/bench_kernel.py [--letters 8 10 12 14] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from nanophrase import builtin_alphabet, NanoPhrase
from nanophrase.jones import encode
from nanophrase.kernel import backend_module


def sample(n: int, seed: int) -> NanoPhrase:
    rng = random.Random(seed)
    ids = [f"L{i}" for i in range(n)]
    word = ids + ids
    rng.shuffle(word)
    return NanoPhrase.make(builtin_alphabet("alpha1"), [word], {a: rng.choice(("1", "-1")) for a in ids})


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--letters", type=int, nargs="+", default=[8, 10, 12, 14])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = backend_module("python")
    try:
        cy = backend_module("cython")
    except ImportError:
        cy = None
        print("compiled kernel not built; timing the Python kernel only")
    print(f"{'letters':>7} {'states':>8} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.letters:
        comps, proj, _ = encode(sample(n, n))
        t_py = best_of(lambda: py.state_counts(comps, proj, n), args.repeat)
        if cy is None:
            print(f"{n:>7} {1 << n:>8} {t_py:>10.4f}")
            continue
        assert py.state_counts(comps, proj, n) == cy.state_counts(comps, proj, n)
        t_cy = best_of(lambda: cy.state_counts(comps, proj, n), args.repeat)
        print(f"{n:>7} {1 << n:>8} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.0f}x")


if __name__ == "__main__":
    main()
