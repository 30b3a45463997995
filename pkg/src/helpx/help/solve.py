"""Survivor sets over the divisor tower, classification and reports."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from ..chartab import CharacterTable, QuotientFusion, load_fusions, load_table, power_class
from ..cyclotomic import divisors, prime_divisors, zero
from ..errors import BrauerPrimeDividesOrder, MissingBrauerTable
from .filters import quotient_filter, wagner_verdict
from .lattice import enumerate_system
from .system import build_system
from .types import (NO_SOLUTIONS, TRIVIAL, Classification, PADistribution, SolveReport,
                    TorsionCase)

log = logging.getLogger(__name__)


@dataclass
class SolverConfig:
    wagner: bool = True
    # None: off; "auto": every bundled fusion of the table; or a list of QuotientFusion
    quotient: object = None
    # "auto": every bundled Brauer table whose prime does not divide the order
    brauer: object = "auto"
    # ring in which total ramification is tested for the Wagner congruence
    wagner_ring: str = "reduced"

    def brauer_primes(self, t: CharacterTable, n: int) -> tuple:
        if self.brauer == "auto":
            return tuple(p for p in sorted(t.brauer) if n % p)
        return tuple(p for p in (self.brauer or ()) if n % p and p in t.brauer)


@dataclass
class _OrderResult:
    survivors: list
    eliminated: dict = field(default_factory=lambda: {"help": 0, "wagner": 0, "quotient": 0})


def identity_case(conductor: int) -> TorsionCase:
    return TorsionCase(1, conductor, {1: PADistribution.indicator(0, 1)})


def trivial_tower(t: CharacterTable, c: int, conductor: int) -> TorsionCase:
    """Tower of a group element in class c."""
    n = t.classes[c].order
    tower = {d: PADistribution.indicator(power_class(t, c, d), n // d) for d in divisors(n)}
    return TorsionCase(n, conductor, tower)


def is_trivial_case(t: CharacterTable, case: TorsionCase) -> bool:
    """All partial augmentations of every power are those of one group element."""
    u = case.tower[1]
    if not u.is_trivial():
        return False
    c = u.support()[0]
    if t.classes[c].order != case.order:
        return False
    return case == trivial_tower(t, c, case.conductor)


class Solver:
    """Memoized survivor sets of one table at one coefficient conductor."""

    def __init__(self, t: CharacterTable, conductor: int, config: SolverConfig | None = None):
        self.table = t
        self.conductor = conductor
        self.config = config or SolverConfig()
        self._memo: dict[int, _OrderResult] = {}
        self._quotients = None

    # -- quotient data -----------------------------------------------------
    def quotients(self) -> list:
        if self._quotients is None:
            q = self.config.quotient
            if not q:
                fusions = []
            elif q == "auto":
                fusions = load_fusions(self.table.id)
            else:
                fusions = [f for f in q if f.source_id == self.table.id]
            sub_cfg = SolverConfig(self.config.wagner, "auto" if q == "auto" else None, self.config.brauer,
                                   self.config.wagner_ring)
            self._quotients = [(f, Solver(load_table(f.target_id), self.conductor, sub_cfg)) for f in fusions]
        return self._quotients

    # -- towers --------------------------------------------------------------
    def towers(self, n: int):
        """Compatible towers for the proper powers of a unit of order n."""
        primes = prime_divisors(n)
        pools = [self.survivors(n // p) for p in primes]
        if any(not pool for pool in pools):
            return
        for choice in itertools.product(*pools):
            tower = {}
            ok = True
            for p, sub in zip(primes, choice):
                for e, dist in sub.tower.items():
                    d = p * e
                    have = tower.get(d)
                    if have is None:
                        tower[d] = dist
                    elif have != dist:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield tower

    def survivors(self, n: int) -> list:
        return self.result(n).survivors

    def result(self, n: int) -> _OrderResult:
        res = self._memo.get(n)
        if res is None:
            res = self._solve(n)
            self._memo[n] = res
        return res

    def _solve(self, n: int) -> _OrderResult:
        t = self.table
        if n == 1:
            return _OrderResult([identity_case(self.conductor)])
        res = _OrderResult([])
        if t.exponent % n:
            return res
        brauer = self.config.brauer_primes(t, n)
        found = []
        for tower in self.towers(n):
            s = build_system(t, n, tower, self.conductor, brauer)
            sols = enumerate_system(s)
            if not sols:
                res.eliminated["help"] += 1
                continue
            for alpha in sols:
                full = dict(tower)
                full[1] = s.decode(alpha)
                found.append(TorsionCase(n, self.conductor, full))
        if self.config.wagner:
            kept = [c for c in found if not wagner_verdict(t, c, self.config.wagner_ring).eliminated]
            res.eliminated["wagner"] = len(found) - len(kept)
            found = kept
        for f, sub in self.quotients():
            kept = [c for c in found if not quotient_filter(c, f, sub.survivors).eliminated]
            res.eliminated["quotient"] += len(found) - len(kept)
            found = kept
        found.sort(key=lambda c: c.sort_key(t.nclasses))
        res.survivors = found
        log.debug("%s order %d: %d survivors %s", t.id, n, len(found), res.eliminated)
        return res

    def report(self, n: int) -> SolveReport:
        res = self.result(n)
        trivial = [is_trivial_case(self.table, c) for c in res.survivors]
        rep = SolveReport(self.table.id, n, self.conductor, list(res.survivors), dict(res.eliminated),
                          NO_SOLUTIONS, self.table, trivial)
        rep.classification = classify(rep)
        return rep


def classify(r: SolveReport) -> Classification:
    if not r.survivors:
        return NO_SOLUTIONS
    k = sum(1 for t in r.trivial if not t)
    return TRIVIAL if k == 0 else Classification("NontrivialSurvivors", k)


def solve_tower(t: CharacterTable, n: int, conductor: int | None = None,
                config: SolverConfig | None = None, solver: Solver | None = None) -> SolveReport:
    if conductor is None:
        conductor = n
    if config is not None and config.brauer != "auto":
        for p in config.brauer or ():
            if n % p == 0:
                raise BrauerPrimeDividesOrder(f"Brauer characters mod {p} need an order prime to {p}")
            if p not in t.brauer:
                raise MissingBrauerTable(f"{t.id} has no {p}-modular table")
    if solver is None:
        solver = Solver(t, conductor, config)
    return solver.report(n)


def generalized_traces(t: CharacterTable, dist: PADistribution) -> dict:
    """m -> sum of eps_x over classes of element order m."""
    out = {}
    for c, v in dist.values.items():
        m = t.classes[c].order
        out[m] = out.get(m, zero()) + v
    return {m: v for m, v in sorted(out.items()) if not v.is_zero()}


def genbp_report(r: SolveReport) -> list[dict]:
    rows = []
    for case in r.survivors:
        traces = generalized_traces(r.table, case.tower[1])
        ok = all(m == r.order for m in traces)
        rows.append({"traces": traces, "consistent": ok})
    return rows
