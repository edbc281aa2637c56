"""Timing comparison of the compiled grid kernels against the numpy fallback.

Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from qrecycle._kernels import coherent_form, pyimpl
from qrecycle.channel import DampingParams, apply_channel, epr_state

try:
    from qrecycle._kernels import _fast
except ImportError:
    _fast = None


def time_call(fn, *args, repeat=200):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(label, impl, state, alphas):
    rows = []
    rows.append(("tier1_full", time_call(impl.tier1_full, state, alphas)))
    rows.append(("tier1_partial", time_call(impl.tier1_partial, state, alphas)))
    rows.append(("tier2_full", time_call(impl.tier2_full, state, 0.53, alphas)))
    rows.append(("tier2_partial", time_call(impl.tier2_partial, state, 0.53, alphas)))
    print(f"\n{label}")
    for name, t in rows:
        print(f"  {name:<15s} {t * 1e6:9.1f} us  ({len(alphas)} grid points)")
    return dict(rows)


def bench_sweep(backend_env):
    import os
    import subprocess
    import sys
    env = dict(os.environ)
    if backend_env:
        env["QRECYCLE_PURE_PYTHON"] = "1"
    else:
        env.pop("QRECYCLE_PURE_PYTHON", None)
    code = (
        "import time; from qrecycle import SweepSpec, SchemeKind, run_sweep;"
        "t0 = time.perf_counter();"
        "run_sweep(SweepSpec(SchemeKind.FULL, 0.7, 0.34, 0.43, 1e-3));"
        "print(f'{time.perf_counter() - t0:.2f}')"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    state = coherent_form(apply_channel(epr_state(), DampingParams(0.38)).mat)
    alphas = np.linspace(0.0, 1.0, 2003)[1:-1]

    py = bench_backend("numpy fallback", pyimpl, state, alphas)
    if _fast is None:
        print("\ncompiled kernel not built; skipping comparison")
        return
    cy = bench_backend("compiled (Cython)", _fast, state, alphas)

    print("\nspeedup (numpy / compiled)")
    for name in py:
        print(f"  {name:<15s} {py[name] / cy[name]:6.2f}x")

    print("\nend-to-end sweep (full scheme, F_th = 0.7, gamma 0.34..0.43)")
    t_py = bench_sweep(True)
    t_cy = bench_sweep(False)
    print(f"  numpy fallback : {t_py:.2f} s")
    print(f"  compiled       : {t_cy:.2f} s  ({t_py / t_cy:.2f}x)")


if __name__ == "__main__":
    main()
