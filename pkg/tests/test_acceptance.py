"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` or directly as a script.  Every
check compares exact values; nothing is rounded.

Survivor lists for S5 and 2.S5 are the plain HeLP survivors (Brauer
characters in, Wagner off), restricted to towers whose unit level is not
concentrated on a single class.  Two rows of the printed order-12 list for S5
have augmentation different from 1; they are corrected here so that
eps_4a + eps_6a = 1.
"""
from __future__ import annotations

import random
from math import gcd

import pytest

from helpx.chartab import fixture_dir, load_table
from helpx.cli import expected_table1, table1_row
from helpx.cyclotomic import CycNumber, galois_apply, make_root, one, phi, trace_to_Q, zero
from helpx.groupring import element_order, eigenvalue_multiplicities, load_unit, partial_augmentations
from helpx.help.filters import wagner_verdict
from helpx.help.lattice import enumerate_system
from helpx.help.solve import Solver, SolverConfig, is_trivial_case, trivial_tower
from helpx.help.types import PADistribution, TorsionCase

from oracles import brute_trace, close, scan
from test_lattice import random_system

I = make_root(4)
Z3 = make_root(3)
Z6 = make_root(6)
Z12 = make_root(12)
R = CycNumber.rational

PLAIN = SolverConfig(wagner=False)


def names(t, dist, keys):
    return tuple(dist[t.class_index(k)] for k in keys)


def single_class(case: TorsionCase) -> bool:
    return len(case.tower[1].support()) == 1


def open_cases(t, n, m, cfg=PLAIN):
    """Survivors that are neither group element towers nor single-class distributions."""
    return [c for c in Solver(t, m, cfg).survivors(n) if not is_trivial_case(t, c) and not single_class(c)]


def ind(t, name, order):
    return PADistribution.indicator(t.class_index(name), order)


# ---------------------------------------------------------------------------

def criterion_1():
    t = load_table("S4")
    sv = Solver(t, 4, SolverConfig(wagner=True)).survivors(4)
    trivial = [c for c in sv if is_trivial_case(t, c)]
    got = {names(t, c.tower[1], ("2a", "2b", "4a")) for c in sv if not is_trivial_case(t, c)}
    want = {(I, one(), -I), (1 + I, zero(), -I), (-I, one(), I), (1 - I, zero(), I)}
    ok = (got == want and len(trivial) == 1 and trivial[0] == trivial_tower(t, t.class_index("4a"), 4)
          and all(c.tower[2] == ind(t, "2b", 2) for c in sv))
    return ok, f"{len(got)} nontrivial + {len(trivial)} trivial"


def criterion_2():
    t = load_table("A5")
    sv = [c for c in Solver(t, 3).survivors(6) if not is_trivial_case(t, c)]
    got = {names(t, c.tower[1], ("2a", "3a")) for c in sv}
    want = {(-2 * Z3, 1 + 2 * Z3), (-2 * Z3 ** 2, 1 + 2 * Z3 ** 2)}
    ok = (got == want and len(sv) == 2
          and all(c.tower[3] == ind(t, "2a", 2) and c.tower[2] == ind(t, "3a", 3) for c in sv))
    return ok, f"{len(sv)} survivors"


def criterion_3():
    t = load_table("72_40")
    s = Solver(t, 3)
    s3 = [c for c in s.survivors(3) if not is_trivial_case(t, c)]
    got3 = {names(t, c.tower[1], ("3a", "3b")) for c in s3}
    ok3 = got3 == {(-Z3, -Z3 ** 2), (-Z3 ** 2, -Z3)}
    s6 = [c for c in s.survivors(6) if not is_trivial_case(t, c)]
    keys = ("2a", "2b", "2c", "6a", "6b")
    m1 = R(-1)
    want6 = {
        ("3b", (zero(), one(), one(), zero(), m1)),
        ("3b", (zero(), m1, one(), zero(), one())),
        ("3a", (one(), zero(), one(), m1, zero())),
        ("3a", (m1, zero(), one(), one(), zero())),
    }
    got6 = set()
    for c in s6:
        sq = next(k for k in ("3a", "3b") if c.tower[2] == ind(t, k, 3))
        got6.add((sq, names(t, c.tower[1], keys)))
    ok6 = got6 == want6 and len(s6) == 4 and all(c.tower[3] == ind(t, "2c", 2) for c in s6)
    return ok3 and ok6, f"order 3: {len(s3)}, order 6: {len(s6)}"


S5_ORDER4 = {(zero(), 1 - I, I), (one(), -I, I), (zero(), -I, 1 + I), (zero(), I, 1 - I), (zero(), 1 + I, -I),
             (one(), I, -I)}

S5_ORDER6 = {
    ("2b", (1 - 2 * Z6, one(), -1 + 2 * Z6, zero())),
    ("2b", (-1 + 2 * Z6, one(), 1 - 2 * Z6, zero())),
    ("2a", (2 * Z6, zero(), 1 - 2 * Z6, zero())),
    ("2a", (2 - 2 * Z6, zero(), -1 + 2 * Z6, zero())),
}

# columns: eps_2b(u^3), eps_4a(u^3), eps_2a(u^2), eps_3a(u^2), eps_2b(u), eps_4a(u), eps_6a(u)
S5_ORDER12 = {
    (1 - I, I, 2 * Z6, 1 - 2 * Z6, zero(), 1 + Z12 + Z12 ** 2, -Z12 - Z12 ** 2),
    (-I, 1 + I, 2 * Z6, 1 - 2 * Z6, one(), Z12 - Z12 ** 2, -Z12 + Z12 ** 2),
    (I, 1 - I, 2 * Z6, 1 - 2 * Z6, one(), -Z12 - Z12 ** 2, Z12 + Z12 ** 2),
    # printed as 1 + z - z^2, whose augmentation with the 6a entry is not 1
    (1 + I, -I, 2 * Z6, 1 - 2 * Z6, zero(), 1 - Z12 + Z12 ** 2, Z12 - Z12 ** 2),
    (1 - I, I, 2 - 2 * Z6, -1 + 2 * Z6, zero(), 2 - Z12 - Z12 ** 2 + Z12 ** 3, -1 + Z12 + Z12 ** 2 - Z12 ** 3),
    (-I, 1 + I, 2 - 2 * Z6, -1 + 2 * Z6, one(), -1 - Z12 + Z12 ** 2 + Z12 ** 3, 1 + Z12 - Z12 ** 2 - Z12 ** 3),
    (I, 1 - I, 2 - 2 * Z6, -1 + 2 * Z6, one(), -1 + Z12 + Z12 ** 2 - Z12 ** 3, 1 - Z12 - Z12 ** 2 + Z12 ** 3),
    # printed 6a entry -1 + z + z^2 + z^3 has the same defect
    (1 + I, -I, 2 - 2 * Z6, -1 + 2 * Z6, zero(), 2 + Z12 - Z12 ** 2 - Z12 ** 3, -1 - Z12 + Z12 ** 2 + Z12 ** 3),
}


def criterion_4():
    t = load_table("S5")
    c4 = open_cases(t, 4, 4)
    got4 = {names(t, c.tower[1], ("2a", "2b", "4a")) for c in c4}
    ok4 = got4 == S5_ORDER4 and len(c4) == 6 and all(c.tower[2] == ind(t, "2a", 2) for c in c4)

    c6 = open_cases(t, 6, 3)
    got6 = set()
    for c in c6:
        cube = next(k for k in ("2a", "2b") if c.tower[3] == ind(t, k, 2))
        got6.add((cube, names(t, c.tower[1], ("2a", "2b", "3a", "6a"))))
    ok6 = got6 == S5_ORDER6 and len(c6) == 4 and all(c.tower[2] == ind(t, "3a", 3) for c in c6)

    c12 = open_cases(t, 12, 12)
    got12 = {names(t, c.tower[3], ("2b", "4a")) + names(t, c.tower[2], ("2a", "3a"))
             + names(t, c.tower[1], ("2b", "4a", "6a")) for c in c12}
    ok12 = (got12 == S5_ORDER12 and len(c12) == 8
            and all(c.tower[6] == ind(t, "2a", 2) and c.tower[4] == ind(t, "3a", 3) for c in c12))
    verdict = ok4 and ok6 and ok12
    return verdict, f"order 4: {len(c4)}, order 6: {len(c6)}, order 12: {len(c12)}"


TWO_S5_ORDER8 = {(1 - I, zero(), zero(), I), (I, one(), zero(), -I), (-I, one(), I, zero()), (1 - I, zero(), I, zero()),
                 (1 + I, zero(), zero(), -I), (I, one(), -I, zero()), (-I, one(), zero(), I),
                 (1 + I, zero(), -I, zero())}


def criterion_5():
    t = load_table("2.S5")
    cs = open_cases(t, 8, 4)
    got = {names(t, c.tower[1], ("4a", "4b", "8a", "8b")) for c in cs}
    ok = (got == TWO_S5_ORDER8 and len(cs) == 8
          and all(c.tower[4] == ind(t, "2a", 2) and c.tower[2] == ind(t, "4b", 4) for c in cs))
    return ok, f"{len(cs)} survivors"


def expected_kind(t, n: int) -> str:
    """Trivial when G has elements of order n; otherwise nothing at all may survive."""
    return "Trivial" if any(c.order == n for c in t.classes) else "NoSolutions"


def all_trivial(t, conductor=None) -> list:
    bad = []
    s1 = Solver(t, 1) if conductor == 1 else None
    for n in range(2, t.exponent + 1):
        if t.exponent % n:
            continue
        rep = (s1 or Solver(t, n)).report(n)
        if rep.classification.kind != expected_kind(t, n):
            bad.append(f"{n}:{rep.classification}")
    return bad


def criterion_6():
    t = load_table("SL(2,5)")
    bad = all_trivial(t)
    orders = sorted({c.order for c in t.classes} - {1})
    return not bad, (", ".join(bad) if bad else f"Trivial at {orders}, no survivors at the other divisors of "
                                                   f"{t.exponent}")


def criterion_7():
    exp = expected_table1()
    settings = exp["settings"]
    reproduced, unreproduced, failed = [], [], []
    for row in exp["rows"]:
        got = table1_row(row["id"], settings)
        if row["status"] == "verified":
            (reproduced if got["remaining"] == row["remaining"] else failed).append(row["id"])
        else:
            # never counted as a pass: listed separately with the value we get
            unreproduced.append(f"{row['id']}={got['remaining']}")
    detail = f"{len(reproduced)}/{len(exp['rows'])} rows reproduced"
    if unreproduced:
        detail += "; unreproduced: " + ", ".join(unreproduced)
    if failed:
        detail += "; MISMATCH: " + ", ".join(failed)
    return not failed, detail


# the diagonal form of D(u) for the bundled S4 unit, with zeta = i
S4_UNIT_MU = {"1a": (1, 0, 0, 0), "1b": (1, 0, 0, 0), "2": (2, 0, 0, 0), "3a": (0, 0, 1, 2), "3b": (0, 2, 1, 0)}


def criterion_8():
    units = fixture_dir() / "units"
    u = load_unit(units / "s4_order4.json")
    t = u.group.table
    pa = partial_augmentations(u)
    ok4 = (element_order(u) == 4 and pa.augmentation() == one()
           and names(t, pa, ("1a", "2a", "2b", "3a", "4a")) == (zero(), I, one(), zero(), -I)
           and partial_augmentations(u ** 2) == PADistribution.indicator(t.class_index("2b"))
           and all(eigenvalue_multiplicities(t, u, k, 4) == v for k, v in S4_UNIT_MU.items()))
    v = load_unit(units / "s3_zeta9_order3.json")
    t3 = v.group.table
    pv = partial_augmentations(v)
    ok3 = element_order(v) == 3 and pv.is_trivial() and t3.classes[pv.support()[0]].order == 3
    return ok4 and ok3, f"S4 unit order {element_order(u)}, S3 unit order {element_order(v)}"


def _galois_image(c: TorsionCase, j: int) -> TorsionCase:
    return TorsionCase(c.order, c.conductor,
                       {d: PADistribution(c.tower[d].order, {k: galois_apply(x, j) for k, x in c.tower[d].values.items()})
                        for d in c.tower})


def criterion_9():
    notes = []
    rng = random.Random(20240)
    # solver vs box scan
    agree = 0
    for _ in range(150):
        nv, b = rng.randint(1, 4), rng.randint(1, 3)
        s = random_system(rng, nv, b, rng.randint(0, 3))
        agree += enumerate_system(s) == scan([(-b, b)] * nv, s.satisfied)
    notes.append(f"systems {agree}/150")
    # trace vs complex evaluation
    good = 0
    for _ in range(1200):
        n = rng.choice([1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24])
        x = CycNumber(n, [rng.randint(-9, 9) for _ in range(phi(n))])
        good += close(float(trace_to_Q(x)), brute_trace(x))
    notes.append(f"traces {good}/1200")
    # Galois closure of survivor sets
    runs = [("S4", 4, 4), ("A5", 6, 3), ("72_40", 6, 3), ("S5", 12, 12), ("2.S5", 8, 4)]
    closed = 0
    for gid, n, m in runs:
        sv = set(Solver(load_table(gid), m).survivors(n))
        closed += all(_galois_image(c, j) in sv for c in sv for j in range(1, m + 1) if gcd(j, m) == 1)
    notes.append(f"closure {closed}/{len(runs)}")
    # Wagner keeps group elements
    wag = True
    for gid in ("S4", "A5", "72_40", "S5", "2.S5", "48_29"):
        t = load_table(gid)
        for c in range(1, t.nclasses):
            for m in (1, t.classes[c].order, 4):
                wag &= not wagner_verdict(t, trivial_tower(t, c, m)).eliminated
    notes.append("wagner ok" if wag else "wagner FAILED")
    # conductor 1
    triv = not any(all_trivial(load_table(gid), 1) for gid in ("S4", "A5", "S5"))
    notes.append("conductor 1 Trivial" if triv else "conductor 1 FAILED")
    ok = agree == 150 and good == 1200 and closed == len(runs) and wag and triv
    return ok, ", ".join(notes)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8,
            criterion_9]


def line(k: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[k - 1]()
    return ok, f"criterion {k}: {'PASS' if ok else 'FAIL'}  ({detail})"


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, capsys):
    ok, text = line(k)
    with capsys.disabled():
        print("\n" + text)
    assert ok, text


if __name__ == "__main__":
    import sys
    results = [line(k) for k in range(1, 10)]
    for _, text in results:
        print(text)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
