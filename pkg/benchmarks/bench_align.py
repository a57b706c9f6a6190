"""Benchmark the compiled alignment kernel against the pure-Python one.

Runs the same seeded workload through both kernels, checks that they
produce identical costs and operation sequences, and prints a timing
table.  Usage:

    python3 benchmarks/bench_align.py [--pairs N] [--repeat R]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from miscuekit import _align_py


def load_kernels() -> dict[str, object]:
    kernels: dict[str, object] = {"pure": _align_py}
    try:
        from miscuekit import _align_fast
    except ImportError:
        print("compiled kernel not available; benchmarking pure only")
    else:
        kernels["compiled"] = _align_fast
    return kernels


def build_workload(pairs: int, seed: int) -> list[tuple[list[int], list[int]]]:
    """Seeded ref/hyp id pairs shaped like real prompt/transcript lengths."""
    rng = random.Random(seed)
    workload = []
    for _ in range(pairs):
        n = rng.randint(20, 120)
        ref = [rng.randrange(50) for _ in range(n)]
        hyp = list(ref)
        # sprinkle edits over roughly a fifth of the tokens
        for _ in range(max(1, n // 5)):
            kind = rng.randrange(3)
            pos = rng.randrange(max(1, len(hyp)))
            if kind == 0 and hyp:
                hyp[pos] = rng.randrange(50)
            elif kind == 1 and hyp:
                del hyp[pos]
            else:
                hyp.insert(pos, rng.randrange(50))
        workload.append((ref, hyp))
    return workload


def run_once(kernel, workload) -> float:
    start = time.perf_counter()
    for ref_ids, hyp_ids in workload:
        kernel.align_ids(ref_ids, hyp_ids, 4, 3, 3)
    return time.perf_counter() - start


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=300, help="alignments per run")
    parser.add_argument("--repeat", type=int, default=5, help="timed runs per kernel")
    parser.add_argument("--seed", type=int, default=13, help="workload seed")
    args = parser.parse_args()

    kernels = load_kernels()
    workload = build_workload(args.pairs, args.seed)

    reference = {
        name: [kernel.align_ids(r, h, 4, 3, 3) for r, h in workload]
        for name, kernel in kernels.items()
    }
    outputs = list(reference.values())
    if any(out != outputs[0] for out in outputs[1:]):
        print("MISMATCH: kernels disagree on the workload")
        return 1

    tokens = sum(len(r) for r, _ in workload)
    print(f"workload: {len(workload)} pairs, {tokens} reference tokens, seed {args.seed}")
    timings = {}
    for name, kernel in kernels.items():
        run_once(kernel, workload)  # warm-up
        times = [run_once(kernel, workload) for _ in range(args.repeat)]
        timings[name] = statistics.median(times)
        print(
            f"{name:>9}: median {timings[name] * 1000:8.1f} ms "
            f"over {args.repeat} runs (best {min(times) * 1000:.1f} ms)"
        )
    if "compiled" in timings:
        print(f" speedup: {timings['pure'] / timings['compiled']:.1f}x (pure/compiled)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
