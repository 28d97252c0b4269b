"""Compare the compiled and pure-Python kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload is run under both backends; results must agree exactly, so the
benchmark doubles as a cross-check.
"""
import argparse
import time
from fractions import Fraction

from contact_fmethod import kernels
from contact_fmethod.dualizer import factorized_Da
from contact_fmethod.fischer import build_sl2_ops
from contact_fmethod.reps import RepParams
from contact_fmethod.scalars import GaussScalar
from contact_fmethod.singular import kernel_search
from contact_fmethod.weyl import FOURIER, PolyVec, VarSpace, slice_basis


def operator_products():
    # Weyl-algebra multiplication (mono_mul)
    return factorized_Da(2, 5).op


def operator_application():
    # applying X_s^6 to every monomial of a slice (mono_apply)
    _, _, X = build_sl2_ops(2)
    space = VarSpace(2, FOURIER)
    out = PolyVec(space)
    for b in slice_basis(space, 2, 3, z_free=True):
        v = PolyVec.monomial(space, b)
        for _ in range(6):
            v = X(v)
        out = out + v
    return out


def kernel():
    # exact nullspace (ff_reduce_row) of a singular-vector system
    ks = kernel_search(RepParams(2, GaussScalar(Fraction(1, 7))), 4, 3)
    return tuple(ks.vectors)


WORKLOADS = {
    "operator products": operator_products,
    "operator application": operator_application,
    "kernel search": kernel,
}


def best_of(fn, repeat):
    best, result = None, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':<22}" + "".join(f"{b:>12}" for b in backends) + "     speedup")
    for name, fn in WORKLOADS.items():
        times, results = {}, {}
        for b in backends:
            kernels.use_backend(b)
            times[b], results[b] = best_of(fn, args.repeat)
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"{name}: backends disagree")
        speed = f"{times['python'] / times['cython']:10.2f}x" if "cython" in times else "         -"
        print(f"{name:<22}" + "".join(f"{times[b]:>11.3f}s" for b in backends) + speed)


if __name__ == "__main__":
    main()
