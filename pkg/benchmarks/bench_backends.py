"""Time the compiled search kernel against the pure-Python one.

Runs standalone S and O on a few kitchen goals plus raw heuristic throughput,
then prints a table with the speedup per row.

    python benchmarks/bench_backends.py [--goals 4,1] [--repeat 3]
"""

import argparse
import random
import statistics
import sys
import time

from vbplan import kitchen
from vbplan._backend import available_backends, kernel_class
from vbplan._pysearch import H_ADD, H_LMCUT, H_MAX
from vbplan.ground import instantiate
from vbplan.search import solve


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def solve_rows(goals, repeat, budget):
    domain = kitchen.build_domain()
    for goal in goals:
        task = instantiate(domain, kitchen.build_problem(goal))
        for kind in ("S", "O"):
            row = {}
            for backend in ("compiled", "python"):
                t, res = best_of(repeat, lambda: solve(task, kind, budget, backend=backend))
                row[backend] = (t, res)
            yield f"solve {kind} goal {goal}", row


def heuristic_rows(goal, samples, repeat):
    domain = kitchen.build_domain()
    task = instantiate(domain, kitchen.build_problem(goal))
    rng = random.Random(0)
    init = sorted(task.init)
    # random walks from the initial state give realistic evaluation points
    states = []
    for _ in range(samples):
        state = set(init)
        for _ in range(rng.randint(0, 8)):
            ok = [k for k, p in enumerate(task.pre) if state.issuperset(p)]
            if not ok:
                break
            k = rng.choice(ok)
            state = (state - set(task.delete[k])) | set(task.add[k])
        states.append(sorted(state))
    for name, code in (("h_add", H_ADD), ("h_max", H_MAX), ("lmcut", H_LMCUT)):
        row = {}
        for backend in ("compiled", "python"):
            k = kernel_class(backend)(task.n_atoms, task.pre, task.add, task.delete,
                                      sorted(task.goal))
            t, _ = best_of(repeat, lambda: [k.evaluate(s, code) for s in states])
            row[backend] = (t, None)
        yield f"{name} x{samples} goal {goal}", row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--goals", default="4,1")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--budget", type=float, default=150.0)
    ap.add_argument("--samples", type=int, default=200)
    args = ap.parse_args(argv)
    if "compiled" not in available_backends():
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    rows = list(heuristic_rows(args.goals.split(",")[0], args.samples, args.repeat))
    rows += list(solve_rows(args.goals.split(","), args.repeat, args.budget))
    print(f"{'case':<26} {'compiled s':>11} {'python s':>10} {'speedup':>8}  result")
    speedups = []
    for name, row in rows:
        (tc, rc), (tp, rp) = row["compiled"], row["python"]
        note, bound = "", " "
        if rc is not None:
            note = f"cost {rc.cost:g}, {rc.expansions} exp"
            if not rp.solved and rc.solved:
                # python ran out of budget, so its time is only a lower bound
                note += ", python timed out"
                bound = ">"
            elif (rc.cost, rc.expansions) != (rp.cost, rp.expansions):
                note += "  MISMATCH"
        speedups.append(tp / tc)
        print(f"{name:<26} {tc:>11.4f} {tp:>10.4f} {bound}{tp / tc:>6.1f}x  {note}")
    print(f"geometric mean speedup: {statistics.geometric_mean(speedups):.1f}x"
          " (timed-out rows count at their lower bound)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
