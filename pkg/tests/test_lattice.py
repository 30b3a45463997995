"""The integer system and its enumerators, checked against a plain box scan."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpx.chartab import load_table
from helpx.cyclotomic import make_root, one
from helpx.errors import IncompleteTower, Unbounded, BrauerPrimeDividesOrder
from helpx.help.lattice import box_scan, derive_bounds, enumerate_propagate, enumerate_system
from helpx.help.system import (Block, ConstraintSystem, Row, build_system, characters, known_part, multiplicities,
                               variable_layout)
from helpx.help.types import PADistribution
from helpx.help.solve import Solver, SolverConfig

from oracles import scan

I = make_root(4)


def s4_tower():
    t = load_table("S4")
    return t, {2: PADistribution.indicator(t.class_index("2b"), 2)}


def test_layout():
    t = load_table("S4")
    lay = variable_layout(t, 4, 4)
    assert lay.conductor == 4
    assert [t.classes[c].name for c in lay.classes] == ["2a", "2b", "4a"]
    assert len(lay.variables) == 6
    assert variable_layout(t, 5).no_solutions
    assert variable_layout(t, 4, 1).conductor == 1
    assert variable_layout(t, 4, 12).conductor == 4


def test_known_part_and_multiplicities():
    t, tower = s4_tower()
    chars = characters(t)
    # u^2 in 2b, chi_3a(2b) = -1: D(u^2) has eigenvalues 1, -1, -1
    chi = chars[t.char_index("3a")]
    assert multiplicities(chi, {1: tower[2], 2: tower[2]}, 4, base=2) == (1, 2)
    # the known part for l = 0 is Tr(chi(u^2)) + Tr(chi(1)) = -1 + 3
    assert known_part(t, chi, 0, tower, 4) == 2


def test_incomplete_tower():
    t = load_table("S4")
    with pytest.raises(IncompleteTower):
        build_system(t, 4, {})


def test_brauer_prime_must_not_divide_order():
    t = load_table("S4")
    _, tower = s4_tower()
    with pytest.raises(BrauerPrimeDividesOrder):
        build_system(t, 4, tower, 4, brauer=(2,))


def test_s4_bounds_and_enumeration():
    t, tower = s4_tower()
    s = build_system(t, 4, tower, 4)
    b = derive_bounds(s)
    assert b is not None and all(-12 <= lo <= hi <= 12 for lo, hi in b)
    sols = enumerate_system(s)
    assert sols == sorted(sols)
    assert sols == enumerate_propagate(s)
    # the four nontrivial cases of order 4 plus the trivial tower of 4a
    dists = {tuple(sorted((t.classes[c].name, v) for c, v in s.decode(a).values.items())) for a in sols}
    case1 = (("2a", I), ("2b", one()), ("4a", -I))
    case2 = (("2a", 1 + I), ("4a", -I))
    assert case1 in dists and case2 in dists
    assert (("4a", one()),) in dists


def test_conductor_one_systems_match_box_scan():
    for gid in ("S4", "A5", "S3"):
        t = load_table(gid)
        for n in (2, 3, 4, 6):
            if t.exponent % n:
                continue
            for tower in Solver(t, 1, SolverConfig(wagner=False)).towers(n):
                s = build_system(t, n, tower, 1)
                b = derive_bounds(s)
                got = enumerate_system(s)
                if b is None:
                    assert got == []
                    continue
                assert got == box_scan(s, b) == enumerate_propagate(s)


def test_no_rows_is_unbounded():
    s = ConstraintSystem((("x", 0),), [], [], [])
    with pytest.raises(Unbounded):
        derive_bounds(s)
    with pytest.raises(Unbounded):
        enumerate_system(s)


def test_rank_deficient_is_unbounded():
    # x + y is bounded, x - y is not
    rows = [Row((1, 1), 0, 1, 0, 0), Row((-1, -1), 2, 1, 0, 1)]
    s = ConstraintSystem((("x", 0), ("y", 0)), rows, [Block("b", (0, 1), 2)], [])
    with pytest.raises(Unbounded):
        enumerate_system(s)


def test_caps_bound_each_row():
    t, tower = s4_tower()
    s = build_system(t, 4, tower, 4)
    for a in enumerate_system(s):
        mu = s.multiplicities(a)
        for blk in s.blocks:
            assert all(0 <= mu[i] <= blk.cap for i in blk.rows)
            assert sum(mu[i] for i in blk.rows) == blk.cap


# ---------------------------------------------------------------------------
# random systems

def random_system(rng: random.Random, nvars: int, bound: int, nblocks: int):
    """A system whose box [-bound, bound]^nvars is known independently.

    Every variable gets a two-row block x + B >= 0, -x + B >= 0 with cap 2B,
    which says exactly |x| <= B.  The other blocks are random.
    """
    rows, blocks = [], []
    for j in range(nvars):
        e = tuple(1 if k == j else 0 for k in range(nvars))
        m = tuple(-c for c in e)
        rows += [Row(e, bound, 1, len(blocks), 0), Row(m, bound, 1, len(blocks), 1)]
        blocks.append(Block(f"box{j}", (len(rows) - 2, len(rows) - 1), 2 * bound))
    for b in range(nblocks):
        k = rng.randint(1, 3)
        mod = rng.choice([1, 1, 2, 3])
        cap = rng.randint(1, 4)
        idx = []
        for ell in range(k):
            coeffs = tuple(rng.randint(-2, 2) for _ in range(nvars))
            const = rng.randint(-3, 6)
            idx.append(len(rows))
            rows.append(Row(coeffs, const, mod, len(blocks), ell))
        blocks.append(Block(f"r{b}", tuple(idx), cap))
    eq = []
    if rng.random() < 0.3:
        coeffs = tuple(rng.randint(-1, 1) for _ in range(nvars))
        eq.append((coeffs, rng.randint(-2, 2)))
    variables = tuple((j, 0) for j in range(nvars))
    return ConstraintSystem(variables, rows, blocks, eq)


@pytest.mark.parametrize("seed", range(120))
def test_random_systems_match_box_scan(seed):
    rng = random.Random(seed)
    nv = rng.randint(1, 4)
    bound = rng.randint(1, 4)
    s = random_system(rng, nv, bound, rng.randint(0, 3))
    box = [(-bound, bound)] * nv
    expect = scan(box, s.satisfied)
    assert enumerate_system(s) == expect
    assert sorted(enumerate_propagate(s)) == expect
    b = derive_bounds(s)
    if b is None:
        assert expect == []
    else:
        assert box_scan(s, b) == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_systems_hypothesis(seed):
    rng = random.Random(seed)
    nv = rng.randint(1, 3)
    bound = rng.randint(1, 3)
    s = random_system(rng, nv, bound, rng.randint(1, 3))
    assert enumerate_system(s) == scan([(-bound, bound)] * nv, s.satisfied)
