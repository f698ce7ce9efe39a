"""Time each hot kernel under the compiled and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json out.json]

Outputs agree across backends before any timing is reported.  The
``auto`` column is the backend the dispatcher picks by default.
"""

import argparse
import json
import sys
import timeit

import numpy as np

from plateau import kernels
from plateau.codes import build_defining_set
from plateau.field import build_field
from plateau.pfunc import quadratic
from plateau.search import batch_values, candidates, stride_sample


def cases():
    f35 = build_field(3, 5)
    f36 = build_field(3, 6)
    f53 = build_field(5, 3)
    bent = quadratic(f36, [1, 0, 0, 0])
    batch = batch_values(f35, candidates(f35, stride_sample(243**3, 256)))
    batch53 = batch_values(f53, candidates(f53, stride_sample(125**2, 256)))
    d0 = build_defining_set(quadratic(f36, [1, 0, 0, 0]), "D0", check=False).elements
    reps = np.array(f53.trace_matrix[1:, :24] != 0)
    return {
        "walsh_counts F_3^6": lambda b: kernels.walsh_counts(bent.values, f36.trace_matrix, 3, backend=b),
        "walsh_counts_batch 256 x F_3^5": lambda b: kernels.walsh_counts_batch(batch, f35.trace_matrix, 3, backend=b),
        "walsh_counts_batch 16 x F_3^5": lambda b: kernels.walsh_counts_batch(batch[:16], f35.trace_matrix, 3, backend=b),
        "walsh_counts_batch 256 x F_5^3": lambda b: kernels.walsh_counts_batch(batch53, f53.trace_matrix, 5, backend=b),
        "hyperplane_census F_3^6": lambda b: kernels.hyperplane_census(bent.values, f36.trace_matrix, 3, backend=b),
        "weight_counts D0 F_3^6": lambda b: kernels.weight_counts(f36.trace_matrix, d0, backend=b),
        "find_covering_pair 124 x 24": lambda b: kernels.find_covering_pair(reps, backend=b),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write results here")
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["cython"] if kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing numpy only", file=sys.stderr)
    if len(backends) > 1:
        backends.append(None)  # whatever the dispatcher picks
    rows = []
    head = "".join(f"{b or 'auto':>12s}" for b in backends)
    print(f"{'kernel':34s}{head}" + ("   numpy/auto" if len(backends) > 1 else ""))
    for name, fn in cases().items():
        outs = [fn(b) for b in backends]
        for o in outs[1:]:
            assert np.array_equal(np.asarray(o), np.asarray(outs[0])), f"{name}: backends disagree"
        times = {b: min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) for b in backends}
        line = f"{name:34s}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"{times['numpy'] / times[None]:12.1f}x"
        print(line)
        rows.append({"kernel": name, **{f"{b or 'auto'}_seconds": t for b, t in times.items()}})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
