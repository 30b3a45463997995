"""Print the survivor lists of the worked examples (S4, A5, S3 wr S2, S5, 2.S5)."""
import time

from helpx.chartab import load_table
from helpx.help.solve import Solver, SolverConfig, is_trivial_case

RUNS = [
    ("S4", 4, 4, True),
    ("A5", 6, 3, True),
    ("72_40", 3, 3, True),
    ("72_40", 6, 3, True),
    ("S5", 4, 4, False),
    ("S5", 6, 3, False),
    ("S5", 12, 12, False),
    ("2.S5", 8, 4, False),
]


def main():
    for gid, n, m, wagner in RUNS:
        t = load_table(gid)
        t0 = time.perf_counter()
        rep = Solver(t, m, SolverConfig(wagner=wagner)).report(n)
        dt = time.perf_counter() - t0
        print(f"{t.id} order {n} conductor {m} wagner={'on' if wagner else 'off'}: {rep.classification}"
              f"  [{dt:.2f}s]")
        for c in rep.survivors:
            if is_trivial_case(t, c):
                continue
            print("   ", c.tower[1].format(t))


if __name__ == "__main__":
    main()
