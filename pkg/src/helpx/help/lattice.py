"""Integer points of a ConstraintSystem.

Two enumerators live here.

``enumerate_system`` is the one used by the solver.  Every block (character)
has finitely many admissible multiplicity vectors, and once enough blocks are
fixed the rows determine alpha uniquely.  So the search runs over blocks, not
over variables: pick a multiplicity vector per block, keep an exact echelon
form of the rows seen so far, prune on inconsistent dependent rows, and at
full rank read off alpha, test integrality and check every row.

``enumerate_propagate`` is a plain variable-by-variable DFS with interval
propagation at every node.  It is slow but shares no logic with the block
search, which makes it a useful cross-check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm

from ..errors import Unbounded
from .system import ConstraintSystem, compositions


# ---------------------------------------------------------------------------
# exact echelon form that remembers how each pivot was combined

class _Echelon:
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.pivots = []  # (row, pivot column, combo {position: Fraction})

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, coeffs, pos: int):
        """Insert row number `pos`; returns None if independent, else the dependency combo."""
        r = [Fraction(a) for a in coeffs]
        combo = {pos: Fraction(1)}
        for prow, pc, pcombo in self.pivots:
            f = r[pc]
            if f:
                f = f / prow[pc]
                for j in range(self.nvars):
                    if prow[j]:
                        r[j] -= f * prow[j]
                for k, w in pcombo.items():
                    combo[k] = combo.get(k, 0) - f * w
        for j, a in enumerate(r):
            if a:
                self.pivots.append((r, j, {k: w for k, w in combo.items() if w}))
                return None
        return {k: w for k, w in combo.items() if w}

    def free_column(self) -> int | None:
        used = {pc for _, pc, _ in self.pivots}
        for j in range(self.nvars):
            if j not in used:
                return j
        return None

    def inverse(self) -> list[dict]:
        """alpha_j as a combination of row right-hand sides (full rank only)."""
        sol: dict[int, dict] = {}
        for prow, pc, pcombo in reversed(self.pivots):
            expr = dict(pcombo)
            for j in range(self.nvars):
                if j != pc and prow[j]:
                    for k, w in sol[j].items():
                        expr[k] = expr.get(k, 0) - prow[j] * w
            sol[pc] = {k: w / prow[pc] for k, w in expr.items() if w}
        return [sol[j] for j in range(self.nvars)]


def _integer_form(combo: dict) -> tuple:
    """(positions, integer weights, denominator) with combo = weights / denominator."""
    den = 1
    for w in combo.values():
        den = lcm(den, w.denominator)
    keys = sorted(combo)
    return tuple(keys), tuple(int(combo[k] * den) for k in keys), den


@dataclass
class _Plan:
    order: list  # block indices searched, in order
    positions: list  # positions[k] = rhs positions filled by block order[k]
    checks: list  # checks[k] = dependencies that become testable after block order[k]
    solve: list  # alpha_j = sum(w * rhs[pos]) / den
    base_checks: list  # dependencies among the equalities alone


def _make_plan(s: ConstraintSystem, order: list) -> _Plan:
    ech = _Echelon(s.nvars)
    base_checks = []
    pos = 0
    for coeffs, _ in s.equalities:
        dep = ech.add(coeffs, pos)
        if dep is not None:
            base_checks.append(_integer_form(dep))
        pos += 1
    used, positions, checks = [], [], []
    for b in order:
        if ech.rank == s.nvars:
            break
        here, deps = [], []
        for ri in s.blocks[b].rows:
            dep = ech.add(s.rows[ri].coeffs, pos)
            here.append(pos)
            if dep is not None:
                deps.append(_integer_form(dep))
            pos += 1
        used.append(b)
        positions.append(here)
        checks.append(deps)
    if ech.rank < s.nvars:
        j = ech.free_column()
        raise Unbounded(s.variables[j] if s.variables else None)
    solve = [_integer_form(c) if c else ((), (), 1) for c in ech.inverse()]
    return _Plan(used, positions, checks, solve, base_checks)


_plan_cache: dict = {}


def _plan_for(s: ConstraintSystem, order: list) -> _Plan:
    key = (tuple(c for c, _ in s.equalities),
           tuple(r.coeffs for r in s.rows), tuple(b.rows for b in s.blocks), tuple(order))
    plan = _plan_cache.get(key)
    if plan is None:
        if len(_plan_cache) > 4096:
            _plan_cache.clear()
        plan = _make_plan(s, order)
        _plan_cache[key] = plan
    return plan


def block_candidates(s: ConstraintSystem, b: int) -> list:
    blk = s.blocks[b]
    if blk.candidates is not None:
        return blk.candidates
    return list(compositions(blk.cap, len(blk.rows)))


def _check(form, rhs) -> bool:
    keys, weights, _ = form
    return sum(w * rhs[k] for k, w in zip(keys, weights)) == 0


def enumerate_system(s: ConstraintSystem) -> list[tuple]:
    """All integer alpha satisfying every row, sorted lexicographically."""
    if s.nvars == 0:
        return [()] if s.satisfied(()) else []
    if not s.blocks:
        raise Unbounded(s.variables[0])
    cands = [block_candidates(s, b) for b in range(len(s.blocks))]
    if any(not c for c in cands):
        return []
    order = sorted(range(len(s.blocks)), key=lambda b: (len(cands[b]), b))
    plan = _plan_for(s, order)

    rhs = [Fraction(0)] * (len(s.equalities) + sum(len(s.blocks[b].rows) for b in plan.order))
    for i, (_, r) in enumerate(s.equalities):
        rhs[i] = r
    if not all(_check(f, rhs) for f in plan.base_checks):
        return []

    found = set()
    depth = len(plan.order)

    def leaf():
        alpha = []
        for keys, weights, den in plan.solve:
            v = sum(w * rhs[k] for k, w in zip(keys, weights))
            if v % den:
                return
            alpha.append(int(v // den))
        alpha = tuple(alpha)
        if s.satisfied(alpha):
            found.add(alpha)

    def dfs(k):
        if k == depth:
            leaf()
            return
        b = plan.order[k]
        rows = [s.rows[ri] for ri in s.blocks[b].rows]
        for mu in cands[b]:
            for p, r, m in zip(plan.positions[k], rows, mu):
                rhs[p] = r.modulus * m - r.const
            if all(_check(f, rhs) for f in plan.checks[k]):
                dfs(k + 1)

    dfs(0)
    return sorted(found)


def enumerate_distributions(s: ConstraintSystem) -> list:
    return [s.decode(a) for a in enumerate_system(s)]


# ---------------------------------------------------------------------------
# interval propagation

def _linear_rows(s: ConstraintSystem) -> list:
    """Every constraint as (coeffs, lo, hi, modulus, residue)."""
    out = []
    for coeffs, r in s.equalities:
        out.append((coeffs, r, r, 1, 0))
    for row in s.rows:
        cap = s.blocks[row.block].cap
        out.append((row.coeffs, -row.const, row.modulus * cap - row.const, row.modulus, (-row.const) % row.modulus))
    for blk in s.blocks:
        rows = [s.rows[i] for i in blk.rows]
        if not rows:
            continue
        coeffs = tuple(sum(r.coeffs[j] for r in rows) for j in range(s.nvars))
        m = rows[0].modulus
        if any(r.modulus != m for r in rows):
            continue
        target = m * blk.cap - sum(r.const for r in rows)
        out.append((coeffs, target, target, 1, 0))
    return out


def _tighten(lo, hi, mod, res):
    if mod > 1:
        lo = lo + ((res - lo) % mod)
        hi = hi - ((hi - res) % mod)
    return lo, hi


def propagate(lin: list, bounds: list, max_rounds: int = 200) -> list | None:
    """Shrink integer bounds to a fixed point; None when some row becomes empty."""
    bounds = list(bounds)
    for _ in range(max_rounds):
        changed = False
        for coeffs, L, U, mod, res in lin:
            smin = smax = 0
            for a, (blo, bhi) in zip(coeffs, bounds):
                if a > 0:
                    smin += a * blo
                    smax += a * bhi
                elif a < 0:
                    smin += a * bhi
                    smax += a * blo
            L2, U2 = _tighten(max(L, smin), min(U, smax), mod, res)
            if L2 > U2:
                return None
            for j, a in enumerate(coeffs):
                if not a:
                    continue
                blo, bhi = bounds[j]
                rmin = smin - (a * blo if a > 0 else a * bhi)
                rmax = smax - (a * bhi if a > 0 else a * blo)
                # a*x in [L2 - rmax, U2 - rmin]
                lo, hi = Fraction(L2 - rmax, a), Fraction(U2 - rmin, a)
                if a < 0:
                    lo, hi = hi, lo
                nlo, nhi = max(blo, ceil(lo)), min(bhi, floor(hi))
                if nlo > nhi:
                    return None
                if (nlo, nhi) != (blo, bhi):
                    bounds[j] = (nlo, nhi)
                    changed = True
                    # refresh partial sums for the remaining variables of this row
                    smin = smax = 0
                    for a2, (l2, h2) in zip(coeffs, bounds):
                        if a2 > 0:
                            smin += a2 * l2
                            smax += a2 * h2
                        elif a2 < 0:
                            smin += a2 * h2
                            smax += a2 * l2
        if not changed:
            return bounds
    return bounds


def initial_box(s: ConstraintSystem) -> list:
    """Box from one full-rank set of rows, each confined to its admissible range."""
    if s.nvars == 0:
        return []
    ech = _Echelon(s.nvars)
    ranges = []
    for coeffs, r in s.equalities:
        ech.add(coeffs, len(ranges))
        ranges.append((Fraction(r), Fraction(r)))
    for row in s.rows:
        if ech.rank == s.nvars:
            break
        cap = s.blocks[row.block].cap
        ech.add(row.coeffs, len(ranges))
        ranges.append((Fraction(-row.const), Fraction(row.modulus * cap - row.const)))
    if ech.rank < s.nvars:
        j = ech.free_column()
        raise Unbounded(s.variables[j])
    out = []
    for combo in ech.inverse():
        lo = hi = Fraction(0)
        for k, w in combo.items():
            a, b = ranges[k]
            lo += w * (a if w > 0 else b)
            hi += w * (b if w > 0 else a)
        out.append((ceil(lo), floor(hi)))
    return out


def derive_bounds(s: ConstraintSystem) -> list | None:
    """Integer interval per variable; None means the system is infeasible."""
    if not s.rows and s.nvars:
        raise Unbounded(s.variables[0])
    box = initial_box(s)
    if any(lo > hi for lo, hi in box):
        return None
    return propagate(_linear_rows(s), box)


def enumerate_propagate(s: ConstraintSystem) -> list[tuple]:
    """Variable-order DFS with re-propagation at each node."""
    bounds = derive_bounds(s)
    if bounds is None:
        return []
    lin = _linear_rows(s)
    out = []

    def dfs(j, bounds):
        if j == s.nvars:
            alpha = tuple(lo for lo, _ in bounds)
            if s.satisfied(alpha):
                out.append(alpha)
            return
        lo, hi = bounds[j]
        for v in range(lo, hi + 1):
            b2 = list(bounds)
            b2[j] = (v, v)
            b2 = propagate(lin, b2)
            if b2 is not None:
                dfs(j + 1, b2)

    dfs(0, bounds)
    return out


def box_scan(s: ConstraintSystem, bounds: list) -> list[tuple]:
    """Every point of the box that satisfies the system (test oracle)."""
    return [a for a in itertools.product(*(range(lo, hi + 1) for lo, hi in bounds)) if s.satisfied(a)]
