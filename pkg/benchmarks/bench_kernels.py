"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--size N]

Also checks that both backends return bit-identical results for every case.
"""

import argparse
import timeit

import numpy as np

from ccdassess import _kernels
from ccdassess.coherence import EstimatorWindow, coherence_array
from ccdassess.scene import AssetFootprint, GeoTransform
from ccdassess.zonal import rasterize_footprint


def cases(size):
    rng = np.random.default_rng(0)
    a = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    b = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    plane = rng.standard_normal((size, size))
    gt = GeoTransform.north_up(30.0, 50.5, 0.001)
    ang = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    r = 0.45 * size * 0.001 * (1 + 0.2 * np.sin(5 * ang))
    cx, cy = 30.0 + 0.0005 * size, 50.5 - 0.0005 * size
    ring = [(cx + ri * np.cos(t), cy + ri * np.sin(t)) for ri, t in zip(r, ang)]
    fp = AssetFootprint("bench", ring + [ring[0]])
    n = size * size
    return {
        "box_sum 9x9": lambda: _kernels.box_sum(plane, 4, 4, False),
        "box_sum 101x101 compensated": lambda: _kernels.box_sum(plane, 50, 50, True),
        f"philox {n} blocks": lambda: _kernels.philox4x64(n, 0, 12345, 0),
        "rasterize 64-vertex footprint": lambda: rasterize_footprint(fp, gt, size, size).bits,
        "coherence 9x9": lambda: coherence_array(a, b, EstimatorWindow(9, 9))[0],
    }


def _bytes(x):
    return b"".join(np.ascontiguousarray(v).tobytes() for v in (x if isinstance(x, tuple) else (x,)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=512)
    args = ap.parse_args()
    backends = _kernels.available_backends()
    print(f"size {args.size}x{args.size}, best of {args.repeat}; backends: {', '.join(backends)}")
    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends)
          + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in cases(args.size).items():
        times, outputs = [], []
        for b in backends:
            with _kernels.use_backend(b):
                outputs.append(_bytes(fn()))
                times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        same = all(o == outputs[0] for o in outputs)
        line = f"{name:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(backends) > 1:
            py = times[backends.index("python")]
            cc = times[backends.index("compiled")]
            line += f"{py / cc:11.1f}x"
        print(line + ("" if same else "   MISMATCH"))


if __name__ == "__main__":
    main()
