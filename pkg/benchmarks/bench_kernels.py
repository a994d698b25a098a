"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeats 5] [--batch 256]

Each row is the best of ``--repeats`` runs; the speedup column is
python time / cython time.  The final row is a whole data-parallel training
step on the MNIST CNN, which also spends time in BLAS matmuls shared by both
backends.
"""
import argparse
import time

import numpy as np

from larsbench import _kernels_py, tensor
from larsbench.data import Batch
from larsbench.nn import build_mnist_cnn, init_params
from larsbench.optim import OptimizerConfig, TrainState
from larsbench.trainer import train_step

try:
    from larsbench import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(batch, rng):
    x1 = rng.normal(size=(batch, 1, 28, 28))
    x2 = rng.normal(size=(batch, 6, 14, 14))
    cols2 = _kernels_py.im2col(x2, 5, 2, 1)
    pooled, arg = _kernels_py.maxpool2x2(rng.normal(size=(batch, 6, 28, 28)))
    y = rng.normal(size=(batch, 6, 28, 28))
    return [
        ("im2col conv1", lambda k: k.im2col(x1, 5, 2, 1)),
        ("im2col conv2", lambda k: k.im2col(x2, 5, 2, 1)),
        ("col2im conv2", lambda k: k.col2im(cols2, x2.shape, 5, 2, 1)),
        ("maxpool fwd", lambda k: k.maxpool2x2(y)),
        ("maxpool bwd", lambda k: k.maxpool2x2_backward(pooled, arg, y.shape)),
    ]


def train_step_case(batch, rng):
    images = rng.uniform(size=(batch, 1, 28, 28))
    labels = rng.integers(0, 10, size=batch)
    net = init_params(build_mnist_cnn(), 0)

    def run(_):
        train_step(net, OptimizerConfig(kind="lars"), TrainState(), Batch(images, labels, 0), 4)

    return "train step (LARS, P=4)", run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--batch", type=int, default=256)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)

    print(f"batch {args.batch}, best of {args.repeats}")
    print(f"{'kernel':<24} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    rows = []
    for name, fn in kernel_cases(args.batch, rng):
        tp = best_of(lambda: fn(_kernels_py), args.repeats)
        tc = best_of(lambda: fn(_ckernels), args.repeats) if _ckernels else float("nan")
        rows.append((name, tp, tc))

    name, fn = train_step_case(args.batch, rng)
    timings = {}
    previous = tensor.BACKEND
    for backend in ("python", "cython"):
        if backend == "cython" and _ckernels is None:
            timings[backend] = float("nan")
            continue
        tensor.use_backend(backend)
        timings[backend] = best_of(lambda: fn(None), args.repeats)
    tensor.use_backend(previous)
    rows.append((name, timings["python"], timings["cython"]))

    for name, tp, tc in rows:
        print(f"{name:<24} {tp * 1e3:>10.2f} {tc * 1e3:>10.2f} {tp / tc:>7.2f}x")
    if _ckernels is None:
        print("compiled extension not built; only the numpy fallback was timed")
    return rows


if __name__ == "__main__":
    main()
