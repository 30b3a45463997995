"""Exact arithmetic in group rings O[1/S]G of explicit permutation groups.

Only what is needed to check explicit torsion units: products and powers,
(partial) augmentations, generalized traces, character values and the
eigenvalue multiplicities of D(u) for a representation D.

Permutations are tuples of images of 0..d-1 and multiply left to right,
(p*q)(i) = q(p(i)), as in GAP.  Conjugacy classes are the same for either
convention and are all the invariants we read off, so this only matters for
products of distinct elements.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .chartab import CharacterTable, load_table
from .cyclotomic import CycNumber, canonical_conductor, divisors, factorize, from_json, lcm, one, to_json, zero
from .errors import NonIntegerMultiplicity, NotInSubfield, RingMismatch, SchemaError
from .help.system import shifted_traces
from .help.types import PADistribution, TorsionCase

Perm = tuple


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen, k = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        k = lcm(k, n)
    return k


def parse_cycles(text: str, degree: int) -> Perm:
    """'(1,2)(3,4)' with points 1..degree -> 0-based image tuple."""
    img = list(range(degree))
    text = text.replace(" ", "")
    if text in ("", "()"):
        return tuple(img)
    for chunk in text.strip("()").split(")("):
        pts = [int(x) - 1 for x in chunk.split(",")]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


class FiniteGroup:
    """A permutation group with the class labelling of a companion character table."""

    def __init__(self, table: CharacterTable, generators, class_reps):
        self.table = table
        self.id = table.id
        gens = [tuple(g) for g in generators]
        self.degree = len(gens[0]) if gens else len(class_reps[0])
        e = tuple(range(self.degree))
        elements = [e]
        seen = {e}
        for x in elements:  # grows while iterating
            for g in gens:
                y = perm_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
        self.elements = sorted(elements)
        self.identity = e
        if len(self.elements) != table.group_order:
            raise SchemaError(f"generators give {len(self.elements)} elements, table says {table.group_order}", self.id)
        self.class_of: dict[Perm, int] = {}
        for c, rep in enumerate(class_reps):
            rep = tuple(rep)
            orbit = [rep]
            mark = {rep}
            for x in orbit:
                for g in gens:
                    y = perm_mul(perm_mul(perm_inv(g), x), g)
                    if y not in mark:
                        mark.add(y)
                        orbit.append(y)
            info = table.classes[c]
            if len(orbit) != info.size or perm_order(rep) != info.order:
                raise SchemaError(f"class {info.name}: representative does not match the table", self.id)
            for y in orbit:
                if y in self.class_of:
                    raise SchemaError(f"class representatives {c} and {self.class_of[y]} are conjugate", self.id)
                self.class_of[y] = c
        if len(self.class_of) != len(self.elements):
            raise SchemaError("class representatives do not cover the group", self.id)

    @classmethod
    def from_table(cls, t: CharacterTable) -> "FiniteGroup":
        pg = t.permutation_group
        if not pg:
            raise SchemaError("table carries no permutation group", t.id)
        return cls(t, pg["generators"], pg["class_reps"])

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return tuple(p) in self.class_of

    @property
    def exponent(self) -> int:
        return self.table.exponent


_groups: dict = {}


def group_for(table_id: str) -> FiniteGroup:
    g = _groups.get(table_id)
    if g is None:
        g = FiniteGroup.from_table(load_table(table_id))
        _groups[g.id] = g
        _groups[table_id] = g
    return g


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    """Z[zeta_m][1/S]."""
    conductor: int = 1
    denominator_primes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "conductor", canonical_conductor(self.conductor))
        object.__setattr__(self, "denominator_primes", tuple(sorted(set(self.denominator_primes))))

    def join(self, other: "Ring") -> "Ring":
        return Ring(lcm(self.conductor, other.conductor),
                    tuple(set(self.denominator_primes) | set(other.denominator_primes)))

    def contains(self, x: CycNumber) -> bool:
        if self.conductor % x.minimal().conductor:
            return False
        for c in x.coords:
            for p, _ in factorize(c.denominator):
                if p not in self.denominator_primes:
                    return False
        return True


class GroupRingElement:
    """sum_h u_h h with coefficients in a Ring; immutable."""

    __slots__ = ("group", "ring", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: dict, ring: Ring | None = None):
        self.group = group
        self.ring = ring or Ring()
        m = self.ring.conductor
        out = {}
        for h, c in coeffs.items():
            h = tuple(h)
            if h not in group:
                raise ValueError(f"{h} is not an element of {group.id}")
            if not isinstance(c, CycNumber):
                c = CycNumber.rational(c)
            if not self.ring.contains(c):
                raise RingMismatch(f"coefficient {c} of {h} is outside Z[zeta_{m}][1/{self.ring.denominator_primes}]")
            c = c.at(m)
            if not c.is_zero():
                out[h] = out[h] + c if h in out else c
        self.coeffs = {h: c for h, c in out.items() if not c.is_zero()}

    # -- constructors --------------------------------------------------------
    @classmethod
    def element(cls, group: FiniteGroup, h, ring: Ring | None = None) -> "GroupRingElement":
        return cls(group, {tuple(h): one()}, ring)

    @classmethod
    def identity(cls, group: FiniteGroup, ring: Ring | None = None) -> "GroupRingElement":
        return cls.element(group, group.identity, ring)

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "GroupRingElement") -> Ring:
        if not isinstance(other, GroupRingElement):
            raise TypeError(f"cannot combine a group ring element with {type(other).__name__}")
        if other.group is not self.group and other.group.id != self.group.id:
            raise RingMismatch(f"group {self.group.id} vs {other.group.id}")
        return self.ring.join(other.ring)

    def __add__(self, other):
        ring = self._check(other)
        out = dict(self.coeffs)
        for h, c in other.coeffs.items():
            out[h] = out[h] + c if h in out else c
        return GroupRingElement(self.group, out, ring)

    def __neg__(self):
        return GroupRingElement(self.group, {h: -c for h, c in self.coeffs.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            return self.scale(other)
        ring = self._check(other)
        out: dict = {}
        for g, a in self.coeffs.items():
            for h, b in other.coeffs.items():
                k = perm_mul(g, h)
                ab = a * b
                out[k] = out[k] + ab if k in out else ab
        return GroupRingElement(self.group, out, ring)

    def scale(self, x) -> "GroupRingElement":
        if not isinstance(x, CycNumber):
            x = CycNumber.rational(x)
        ring = self.ring.join(Ring(x.minimal().conductor,
                                   tuple(p for c in x.coords for p, _ in factorize(c.denominator))))
        return GroupRingElement(self.group, {h: c * x for h, c in self.coeffs.items()}, ring)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = GroupRingElement.identity(self.group, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        if other.group.id != self.group.id or self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(self.coeffs[h] == other.coeffs[h] for h in self.coeffs)

    def __hash__(self):
        return hash((self.group.id, frozenset((h, c.minimal().key()) for h, c in self.coeffs.items())))

    def is_one(self) -> bool:
        e = self.group.identity
        return self.coeffs.keys() == {e} and self.coeffs[e] == one()

    def __repr__(self):
        return f"GroupRingElement({self.group.id}, {len(self.coeffs)} terms)"

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "group_id": self.group.id,
            "ring": {"conductor": self.ring.conductor, "denominator_primes": list(self.ring.denominator_primes)},
            "terms": [{"perm": list(h), "coeff": to_json(self.coeffs[h].minimal())} for h in sorted(self.coeffs)],
        }


def unit_from_json(obj, group: FiniteGroup | None = None) -> GroupRingElement:
    try:
        gid = obj["group_id"]
        ring = obj.get("ring", {})
        ring = Ring(int(ring.get("conductor", 1)), tuple(int(p) for p in ring.get("denominator_primes", ())))
        terms = obj["terms"]
    except (KeyError, TypeError, AttributeError) as exc:
        raise SchemaError(f"malformed unit: {exc}") from None
    group = group or group_for(gid)
    coeffs: dict = {}
    for i, term in enumerate(terms):
        try:
            h = tuple(int(x) for x in term["perm"])
            c = from_json(term["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"term {i}: {exc}") from None
        coeffs[h] = coeffs[h] + c if h in coeffs else c
    return GroupRingElement(group, coeffs, ring)


def load_unit(path, group: FiniteGroup | None = None) -> GroupRingElement:
    with open(Path(path)) as fh:
        return unit_from_json(json.load(fh), group)


# ---------------------------------------------------------------------------
# invariants

def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    return a * b


def gr_pow(a: GroupRingElement, k: int) -> GroupRingElement:
    return a ** k


def augmentation(u: GroupRingElement) -> CycNumber:
    return sum(u.coeffs.values(), zero()).minimal()


def partial_augmentations(u: GroupRingElement, order=None) -> PADistribution:
    """eps_x(u) = sum of u_h over h in the class of x."""
    out: dict = {}
    for h, c in u.coeffs.items():
        k = u.group.class_of[h]
        out[k] = out[k] + c if k in out else c
    return PADistribution(order, {k: v.minimal() for k, v in out.items()})


def generalized_trace(u: GroupRingElement, m: int) -> CycNumber:
    """Sum of coefficients over the elements of order m."""
    t = u.group.table
    total = zero()
    for h, c in u.coeffs.items():
        if t.classes[u.group.class_of[h]].order == m:
            total = total + c
    return total.minimal()


class NotTorsionWithinBound:
    """Returned by element_order when no power up to the bound is 1."""

    def __init__(self, bound: int):
        self.bound = bound

    def __bool__(self):
        return False

    def __eq__(self, other):
        return isinstance(other, NotTorsionWithinBound)

    def __hash__(self):
        return hash(NotTorsionWithinBound)

    def __repr__(self):
        return f"NotTorsionWithinBound({self.bound})"


def element_order(u: GroupRingElement, bound: int | None = None):
    if bound is None:
        bound = u.group.exponent * u.ring.conductor
    if bound < 1:
        raise ValueError("bound must be at least 1")
    x = u
    for k in range(1, bound + 1):
        if x.is_one():
            return k
        if k < bound:
            x = x * u
    return NotTorsionWithinBound(bound)


def _chi_row(t: CharacterTable, chi) -> tuple:
    if isinstance(chi, str):
        chi = t.char_index(chi)
    return t.irreducibles[chi]


def character_value(t: CharacterTable, u: GroupRingElement, chi) -> CycNumber:
    """sum_h u_h chi(h) straight from the coefficients."""
    if t.id != u.group.id:
        raise RingMismatch(f"table {t.id} does not belong to group {u.group.id}")
    row = _chi_row(t, chi)
    total = zero()
    for h, c in u.coeffs.items():
        total = total + c * row[u.group.class_of[h]]
    return total.minimal()


def eigenvalue_multiplicities(t: CharacterTable, u: GroupRingElement, chi, n: int | None = None) -> tuple:
    """(mu_0, ..., mu_{n-1}): multiplicity of zeta_n^l as an eigenvalue of D(u)."""
    if n is None:
        n = element_order(u)
        if not n:
            raise NonIntegerMultiplicity("u is not torsion within the default bound")
    row = _chi_row(t, chi)
    mu = [Fraction(0)] * n
    powers = {1: u}
    for d in divisors(n)[1:]:
        powers[d] = u ** d
    if not powers[n].is_one():
        raise NonIntegerMultiplicity(f"u^{n} != 1")
    for d, ud in powers.items():
        k = n // d
        y = character_value(t, ud, chi)
        try:
            tr = shifted_traces(y, k)
        except NotInSubfield:  # value outside Q(zeta_k): not a unit of that order
            raise NonIntegerMultiplicity(f"chi(u^{d}) = {y} is not in Q(zeta_{k})") from None
        for ell in range(n):
            mu[ell] += tr[ell % k]
    out = []
    for v in mu:
        v = v / n
        if v.denominator != 1 or v < 0:
            raise NonIntegerMultiplicity(f"multiplicity {v} for {row[0]}-dimensional character")
        out.append(int(v))
    if sum(out) != row[0].rational_value():
        raise NonIntegerMultiplicity("multiplicities do not add up to the degree")
    return tuple(out)


def unit_tower(u: GroupRingElement, n: int | None = None, conductor: int | None = None) -> TorsionCase:
    """Partial augmentations of every power u^d, d | o(u)."""
    if n is None:
        n = element_order(u)
        if not n:
            raise ValueError("u is not torsion within the default bound")
    tower = {d: partial_augmentations(u ** d, n // d) for d in divisors(n)}
    return TorsionCase(n, conductor or n, tower)


def map_element(u: GroupRingElement, hom, target: FiniteGroup) -> GroupRingElement:
    """Image of u under a group homomorphism given as a function on permutations."""
    out: dict = {}
    for h, c in u.coeffs.items():
        k = tuple(hom(h))
        out[k] = out[k] + c if k in out else c
    return GroupRingElement(target, out, u.ring)


# S4 -> S3 through the three pairings of {0, 1, 2, 3}
S4_PAIRINGS = ({frozenset({0, 1}), frozenset({2, 3})},
               {frozenset({0, 2}), frozenset({1, 3})},
               {frozenset({0, 3}), frozenset({1, 2})})


def s4_to_s3(p: Perm) -> Perm:
    idx = {frozenset(b): i for i, b in enumerate(S4_PAIRINGS)}
    return tuple(idx[frozenset(frozenset(p[i] for i in pair) for pair in b)] for b in S4_PAIRINGS)
