"""Time the compiled and pure-Python Smith backends on net differentials.

    python benchmarks/bench_snf.py [--sizes 4 6 8] [--repeat 3]
"""

import argparse
import time

from tracehom import smith
from tracehom.cenet import CENet, NetEvent, compile_net
from tracehom.complex import build_complex


def ring_net(k):
    """k disjoint two-place rings; 2^k reachable markings."""
    places, events = [], []
    for i in range(k):
        p, q = len(places), len(places) + 1
        places += [f"p{i}", f"q{i}"]
        events.append(NetEvent(f"f{i}", frozenset({p}), frozenset({q})))
        events.append(NetEvent(f"g{i}", frozenset({q}), frozenset({p})))
    initial = frozenset(range(0, 2 * k, 2))
    return CENet(tuple(places), tuple(events), initial)


def pipeline_net(k):
    """Length-k pipeline: source, k-1 transfers, sink."""
    places = tuple(f"p{i}" for i in range(k))
    events = [NetEvent("in", frozenset(), frozenset({0}))]
    events += [NetEvent(f"t{i}", frozenset({i}), frozenset({i + 1})) for i in range(k - 1)]
    events.append(NetEvent("out", frozenset({k - 1}), frozenset()))
    return CENet(places, tuple(events))


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = smith.available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; only the python backend is available")
    print(f"{'net':<14}{'matrix':>14}{'nnz':>8}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for family, make in (("pipeline", pipeline_net), ("rings", ring_net)):
        for k in args.sizes:
            cx = build_complex(compile_net(make(k)))
            for n in range(1, cx.top_degree + 1):
                m = cx.differential(n)
                if m.n_rows * m.n_cols == 0:
                    continue
                timings, results = [], []
                for b in backends:
                    t, r = best_of(lambda: smith.smith_normal_form(m, b), args.repeat)
                    timings.append(t)
                    results.append(r)
                assert all(r == results[0] for r in results), "backends disagree"
                speed = f"{timings[-1] / timings[0]:.1f}x" if len(timings) == 2 else "-"
                label = f"{family}{k} d{n}"
                print(f"{label:<14}{f'{m.n_rows}x{m.n_cols}':>14}{len(m.entries):>8}"
                      + "".join(f"{t * 1e3:>10.2f}ms" for t in timings) + f"{speed:>10}")


if __name__ == "__main__":
    main()
