#!/usr/bin/env python3
"""Benchmark the compiled contraction kernels against the pure-Python ones.

Micro level: timed calls to contract_flat on representative shapes.
Macro level: a full random-circuit contraction, run in a subprocess per
backend so each one selects its kernels at import.
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from cmath import exp

from stabtensor import _pykernels

try:
    from stabtensor import _ckernels
except ImportError:
    _ckernels = None

MACRO_SNIPPET = """
import time
import stabtensor
from stabtensor import oracles
from stabtensor.circuits import circuit_state

circuits = [oracles.random_clifford_circuit(6, 50, seed=s) for s in range(20)]
start = time.perf_counter()
for c in circuits:
    circuit_state(c)
elapsed = time.perf_counter() - start
print(f"{stabtensor.kernel_backend()} {elapsed:.4f}")
"""


def _random_data(rank: int, seed: int) -> list[complex]:
    return [exp(1j * ((seed + 1) * k * 0.7)) * (1 + (k % 5)) for k in range(1 << rank)]


def bench_contract(impl, rank_a, legs_a, rank_b, legs_b, repeats):
    a = _random_data(rank_a, 1)
    b = _random_data(rank_b, 2)
    impl.contract_flat(a, rank_a, legs_a, b, rank_b, legs_b)  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        impl.contract_flat(a, rank_a, legs_a, b, rank_b, legs_b)
    return (time.perf_counter() - start) / repeats


def run_micro() -> None:
    cases = [
        ("gate onto state, 6 wires", 7, [1], 2, [1], 3000),
        ("two-wire gate onto state", 8, [2, 5], 4, [2, 3], 2000),
        ("rank-10 x rank-4, 2 shared", 10, [3, 8], 4, [0, 1], 500),
        ("rank-12 x rank-3, 1 shared", 12, [6], 3, [0], 200),
    ]
    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.append(("compiled", _ckernels))
    print(f"{'case':<28} " + " ".join(f"{name:>12}" for name, _ in impls) +
          ("      speedup" if _ckernels else ""))
    for label, ra, la, rb, lb, reps in cases:
        times = [bench_contract(impl, ra, la, rb, lb, reps) for _, impl in impls]
        row = f"{label:<28} " + " ".join(f"{t * 1e6:>10.1f}us" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>10.1f}x"
        print(row)


def run_macro() -> None:
    print("\nmacro: contract 20 random 6-wire depth-50 circuits")
    for env_extra, label in (({}, "selected"), ({"STABTENSOR_PURE_PYTHON": "1"}, "python")):
        env = {**os.environ, **env_extra}
        out = subprocess.run(
            [sys.executable, "-c", MACRO_SNIPPET],
            capture_output=True, text=True, env=env, check=True,
        )
        backend, elapsed = out.stdout.split()
        print(f"  backend={backend:<9} total={float(elapsed):.3f}s")


if __name__ == "__main__":
    print(f"compiled kernels available: {_ckernels is not None}")
    run_micro()
    run_macro()
