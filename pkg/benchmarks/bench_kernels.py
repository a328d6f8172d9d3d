"""Compare the compiled and pure-Python determinant kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]
"""
import argparse
import itertools
import random
import timeit

from extcontent import kernels


def cases(rng):
    ints8 = [[rng.randint(-9, 9) for _ in range(8)] for _ in range(8)]
    big5 = [[rng.randint(-(2 ** 80), 2 ** 80) for _ in range(5)] for _ in range(5)]
    flt8 = [[rng.uniform(-1, 1) for _ in range(8)] for _ in range(8)]
    tall = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(12)]
    tall_f = [[float(x) for x in r] for r in tall]
    rows6 = list(itertools.combinations(range(12), 6))
    full6 = [tuple(range(6))]
    sq6 = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(6)]
    sub3 = list(itertools.combinations(range(6), 3))
    return {
        "det_int 8x8 small entries": lambda k: k.det_int(ints8),
        "det_int 5x5 80-bit entries": lambda k: k.det_int(big5),
        "det_float 8x8": lambda k: k.det_float(flt8),
        "minor_dets_int 12x6, 924 row minors": lambda k: k.minor_dets_int(tall, rows6, full6),
        "minor_dets_float 12x6, 924 row minors": lambda k: k.minor_dets_float(tall_f, rows6, full6),
        "minor_dets_int compound 6x6 grade 3": lambda k: k.minor_dets_int(sq6, sub3, sub3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels not built; only the Python backend is available")
    rng = random.Random(args.seed)
    print(f"{'case':42s}" + "".join(f"{name:>14s}" for name in impls) + ("     speedup" if len(impls) > 1 else ""))
    for label, fn in cases(rng).items():
        results = {repr(fn(mod)) for mod in impls.values()}
        assert len(results) == 1 or "float" in label, f"backends disagree on {label}"
        times = {}
        for name, mod in impls.items():
            timer = timeit.Timer(lambda: fn(mod))
            number, _ = timer.autorange()
            times[name] = min(timer.repeat(args.repeat, number)) / number
        line = f"{label:42s}" + "".join(f"{times[n] * 1e6:12.1f}us" for n in impls)
        if len(impls) > 1:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
