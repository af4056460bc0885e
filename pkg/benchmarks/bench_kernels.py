"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

from simplecurrent import _pykernels
from simplecurrent.metric import direct_sum, hyperbolic_form, cyclic_form
from simplecurrent.pointed import build_category

try:
    from simplecurrent import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    for name, m in [
        ("Z8(3)+hyp(2)", direct_sum(cyclic_form(8, 3), hyperbolic_form(2))),
        ("hyp(4)+hyp(2)", direct_sum(hyperbolic_form(4), hyperbolic_form(2))),
    ]:
        cat = build_category(m, pentagon_limit=0, hexagon_limit=0)
        g = m.group
        yield name, "form_defect", (m.q_table, g.add_table, m.modulus)
        yield name, "pentagon_defect", (cat.omega_table.reshape(-1), g.add_table, cat.modulus)
        yield name, "hexagon_defect", (cat.omega_table, cat.c_table, g.add_table, cat.modulus)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'group':<16}{'kernel':<18}" + "".join(f"{b:>12}" for b, _ in backends) + f"{'speedup':>10}")
    for name, kernel, call_args in workloads():
        times = []
        for _, mod in backends:
            fn = getattr(mod, kernel)
            times.append(min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat)))
        speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else ""
        print(f"{name:<16}{kernel:<18}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
