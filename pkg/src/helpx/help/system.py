"""The integer linear system on partial augmentations.

For a unit u of order n with partial augmentations
eps_x(u) = sum_b alpha[x, b] * zeta_g^b  (g the reduced coefficient conductor)
and a character chi, the multiplicity of zeta_n^l as an eigenvalue of D(u) is

    mu_l = ( sum_{x,b} alpha[x,b] Tr(chi(x) zeta_n^-l zeta_g^b)
             + sum_{1 != d | n} Tr_{Q(zeta_n^d)/Q}(chi(u^d) zeta_n^(-d l)) ) / n

and has to be a non-negative integer.  Each (chi, l) gives one row; the rows
of one character form a block whose multiplicities add up to chi(1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..chartab import CharacterTable, classes_of_order_dividing
from ..cyclotomic import CycNumber, canonical_conductor, divisors, phi, prime_divisors, ramanujan_traces, zero
from ..errors import BrauerPrimeDividesOrder, IncompleteTower
from .types import PADistribution


@dataclass(frozen=True)
class Layout:
    order: int
    conductor: int
    classes: tuple
    variables: tuple  # (class index, basis exponent)
    no_solutions: bool = False


def reduced_conductor(n: int, conductor: int | None) -> int:
    return canonical_conductor(gcd(n, n if conductor is None else conductor))


def variable_layout(t: CharacterTable, n: int, conductor: int | None = None) -> Layout:
    g = reduced_conductor(n, conductor)
    if t.exponent % n:
        return Layout(n, g, (), (), no_solutions=True)
    classes = tuple(c for c in classes_of_order_dividing(t, n) if c != 0)
    variables = tuple((c, b) for c in classes for b in range(phi(g)))
    return Layout(n, g, classes, variables)


@dataclass(frozen=True)
class Character:
    """Values of an ordinary or Brauer character on the ordinary classes (None where undefined)."""
    label: str
    values: tuple

    @property
    def degree(self) -> int:
        return int(self.values[0].rational_value())


def characters(t: CharacterTable, brauer: tuple = ()) -> list[Character]:
    out = [Character(f"chi_{name}", row) for name, row in zip(t.char_names, t.irreducibles)]
    for p in brauer:
        bt = t.brauer[p]
        for name, row in zip(bt.char_names, bt.irreducibles):
            vals = [None] * t.nclasses
            for c, v in zip(bt.classes, row):
                vals[c] = v
            out.append(Character(f"phi_{name}", tuple(vals)))
    return out


def character_value(dist: PADistribution, chi: Character) -> CycNumber:
    """chi(u) = sum_x eps_x(u) chi(x)."""
    total = zero()
    for c, v in dist.values.items():
        val = chi.values[c]
        if val is None:
            raise ValueError(f"{chi.label} is undefined on class {c}")
        total = total + v * val
    return total


def shifted_traces(y: CycNumber, k: int) -> list[Fraction]:
    """[Tr_{Q(zeta_k)/Q}(y * zeta_k^-l) for l in 0..k-1]; y must lie in Q(zeta_k)."""
    y = y.at(k)
    rt = ramanujan_traces(k)
    out = []
    for ell in range(k):
        s = Fraction(0)
        for j, c in enumerate(y.coords):
            if c:
                s += c * rt[(j - ell) % k]
        out.append(s)
    return out


def _tower_entry(tower: dict, d: int, n: int) -> PADistribution:
    if d == n and d not in tower:
        return PADistribution.indicator(0, 1)
    try:
        return tower[d]
    except KeyError:
        raise IncompleteTower(f"tower has no entry for u^{d}") from None


def known_parts(chi: Character, tower: dict, n: int) -> list[int]:
    """Sum over 1 != d | n of Tr_{Q(zeta_n^d)/Q}(chi(u^d) zeta_n^(-d l)), for every l."""
    total = [Fraction(0)] * n
    for d in divisors(n)[1:]:
        k = n // d
        y = character_value(_tower_entry(tower, d, n), chi)
        tr = shifted_traces(y, k)
        for ell in range(n):
            total[ell] += tr[ell % k]
    out = []
    for v in total:
        if v.denominator != 1:
            raise ValueError(f"non-integral known part {v} for {chi.label}")
        out.append(int(v))
    return out


def known_part(t: CharacterTable, chi, ell: int, tower: dict, n: int | None = None) -> int:
    if isinstance(chi, int):
        chi = characters(t)[chi]
    if n is None:
        n = max(tower)
    return known_parts(chi, tower, n)[ell % n]


def multiplicities(chi: Character, tower: dict, n: int, base: int = 1) -> tuple:
    """Eigenvalue multiplicities of D(v), v = u^base of order n/base, under chi.

    Entry l is the multiplicity of zeta_{n/base}^l; entries are Fractions and
    are non-negative integers for any genuine torsion unit.
    """
    k = n // base
    mu = [Fraction(0)] * k
    for e in divisors(k):
        y = character_value(_tower_entry(tower, base * e, n), chi)
        tr = shifted_traces(y, k // e)
        for ell in range(k):
            mu[ell] += tr[ell % (k // e)]
    return tuple(m / k for m in mu)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Row:
    """coeffs . alpha + const = modulus * mu with mu a non-negative integer."""
    coeffs: tuple
    const: int
    modulus: int
    block: int
    ell: int


@dataclass
class Block:
    label: str
    rows: tuple  # row indices
    cap: int  # multiplicities of the block add up to cap
    candidates: list | None = None  # admissible multiplicity vectors, if known


@dataclass
class ConstraintSystem:
    variables: tuple
    rows: list
    blocks: list
    equalities: list  # (coeffs, rhs): coeffs . alpha = rhs
    order: int = 0
    conductor: int = 1
    layout: Layout | None = None
    tower: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def multiplicities(self, alpha) -> list | None:
        """mu for every row, or None if some row is not a non-negative integer."""
        out = []
        for r in self.rows:
            s = r.const + sum(a * x for a, x in zip(r.coeffs, alpha) if a)
            if s < 0 or s % r.modulus:
                return None
            out.append(s // r.modulus)
        return out

    def satisfied(self, alpha) -> bool:
        for coeffs, rhs in self.equalities:
            if sum(a * x for a, x in zip(coeffs, alpha)) != rhs:
                return False
        mu = self.multiplicities(alpha)
        if mu is None:
            return False
        return all(sum(mu[i] for i in b.rows) == b.cap for b in self.blocks)

    def decode(self, alpha) -> PADistribution:
        g = self.conductor
        f = phi(g)
        coords: dict[int, list] = {}
        for (c, b), a in zip(self.variables, alpha):
            coords.setdefault(c, [0] * f)[b] = a
        return PADistribution(self.order, {c: CycNumber(g, v) for c, v in coords.items()})

    def encode(self, dist: PADistribution) -> tuple:
        g = self.conductor
        out = []
        for c, b in self.variables:
            out.append(dist[c].at(g).coords[b])
        return tuple(int(x) for x in out)


@lru_cache(maxsize=None)
def _row_coefficients(table_key, chi_values: tuple, classes: tuple, n: int, g: int) -> tuple:
    """Integer coefficient rows [l][var] = Tr(chi(x) zeta_n^-l zeta_g^b)."""
    rt = ramanujan_traces(n)
    step = n // g
    f = phi(g)
    lifted = [chi_values[c].at(n).coords for c in classes]
    rows = []
    for ell in range(n):
        row = []
        for coords in lifted:
            for b in range(f):
                s = Fraction(0)
                for j, a in enumerate(coords):
                    if a:
                        s += a * rt[(j - ell + b * step) % n]
                row.append(int(s))
        rows.append(tuple(row))
    return tuple(rows)


def lifted_candidates(n: int, cap: int, sub_mu: dict) -> list:
    """Multiplicity vectors for D(u) compatible with those of every D(u^p).

    sub_mu[p] is the multiplicity vector (length n/p) of D(u^p).  Eigenvalues
    of D(u) are p-th roots of eigenvalues of D(u^p), so candidates come from
    distributing each multiplicity of u^p over its p lifts.
    """
    primes = sorted(sub_mu)
    p = primes[0]
    k = n // p
    base = sub_mu[p]
    choices = []
    for lp in range(k):
        m = base[lp]
        lifts = [lp + t * k for t in range(p)]
        choices.append([(lifts, comp) for comp in compositions(m, p)])
    out = []
    for combo in itertools.product(*choices):
        mu = [0] * n
        for lifts, comp in combo:
            for ell, c in zip(lifts, comp):
                mu[ell] += c
        ok = True
        for q in primes[1:]:
            kq = n // q
            push = [0] * kq
            for ell, c in enumerate(mu):
                push[ell % kq] += c
            if tuple(push) != tuple(sub_mu[q]):
                ok = False
                break
        if ok:
            out.append(tuple(mu))
    out.sort()
    return out


def compositions(total: int, parts: int):
    """All tuples of `parts` non-negative integers adding up to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def build_system(t: CharacterTable, n: int, tower: dict, conductor: int | None = None,
                 brauer: tuple = (), candidates: bool = True) -> ConstraintSystem:
    """Rows for every (character, l), block caps chi(1), augmentation equalities."""
    for p in brauer:
        if n % p == 0:
            raise BrauerPrimeDividesOrder(f"Brauer characters mod {p} need an order prime to {p}")
    for d in divisors(n)[1:-1]:
        _tower_entry(tower, d, n)
    layout = variable_layout(t, n, conductor)
    g = layout.conductor
    f = phi(g)
    chars = characters(t, tuple(brauer))
    rows, blocks = [], []
    for bi, chi in enumerate(chars):
        if any(chi.values[c] is None for c in layout.classes):
            continue
        coeff_rows = _row_coefficients(t.id, chi.values, layout.classes, n, g)
        consts = known_parts(chi, tower, n)
        idx = []
        for ell in range(n):
            idx.append(len(rows))
            rows.append(Row(coeff_rows[ell], consts[ell], n, len(blocks), ell))
        cands = None
        if candidates and n > 1:
            sub = {}
            for p in prime_divisors(n):
                mu = multiplicities(chi, tower, n, base=p)
                if any(m.denominator != 1 or m < 0 for m in mu):
                    sub = None
                    break
                sub[p] = tuple(int(m) for m in mu)
            cands = [] if sub is None else lifted_candidates(n, chi.degree, sub)
        blocks.append(Block(chi.label, tuple(idx), chi.degree, cands))
    nv = len(layout.variables)
    equalities = []
    for b in range(f):
        coeffs = tuple(1 if vb == b else 0 for _, vb in layout.variables)
        equalities.append((coeffs, 1 if b == 0 else 0))
    return ConstraintSystem(layout.variables, rows, blocks, equalities, n, g, layout, dict(tower))
