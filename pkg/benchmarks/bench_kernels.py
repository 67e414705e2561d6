"""Time the numba and numpy kernel backends on the residue-spectrum workload.

    python3 benchmarks/bench_kernels.py --g 10 20 30 --repeat 3
"""
import argparse
import time

from dehnroots import _kernels
from dehnroots.enumeration import genus_spectrum
from dehnroots.pairing import max_degree_for_genus


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=int, nargs="+", default=[10, 20, 30])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    print(f"{'backend':8} {'g':>4} {'spectrum s':>11} {'m(g) s':>9} {'m(g)':>6}")
    for backend in _kernels.available_backends():
        _kernels.use_backend(backend)
        genus_spectrum(2)  # warm the JIT cache outside the timings
        max_degree_for_genus(2, with_root=False)
        for g in args.g:
            ts, spec = _time(lambda: genus_spectrum(g), args.repeat)
            tm, md = _time(lambda: max_degree_for_genus(g, with_root=False), args.repeat)
            print(f"{backend:8} {g:>4} {ts:>11.4f} {tm:>9.4f} {md.m:>6}")


if __name__ == "__main__":
    main()
