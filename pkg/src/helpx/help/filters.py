"""Filters applied to HeLP solutions: the Wagner congruence and the quotient method."""
from __future__ import annotations

from dataclasses import dataclass

from ..chartab import CharacterTable, QuotientFusion, power_class
from ..cyclotomic import canonical_conductor, divisors, factorize, is_totally_ramified, residue_mod_p, zero
from ..errors import MissingQuotientData
from .types import PADistribution, TorsionCase, level_conductor


@dataclass(frozen=True)
class Verdict:
    kind: str  # "keep" | "eliminate" | "not_applicable"
    witness: object = None

    @property
    def eliminated(self) -> bool:
        return self.kind == "eliminate"


KEEP = Verdict("keep")
NOT_APPLICABLE = Verdict("not_applicable")


def wagner_pairs(n: int, conductor: int, ring: str = "reduced") -> list[tuple]:
    """All (p, j) with p^j | n, p^j < n and p totally ramified in the ring.

    ``ring="coefficient"`` tests ramification in Z[zeta_m], the ring the
    coefficients of u (and of all its powers) live in; ``"reduced"`` tests it
    in Z[zeta_gcd(n, m)], which only holds the partial augmentations.
    """
    g = level_conductor(n, 1, conductor) if ring == "reduced" else canonical_conductor(conductor)
    out = []
    for p, a in factorize(n):
        if not is_totally_ramified(p, g):
            continue
        for j in range(1, a + 1):
            if p ** j < n:
                out.append((p, j))
    return out


def wagner_filter(t: CharacterTable, case: TorsionCase, p: int, j: int, ring: str = "reduced") -> Verdict:
    """sum_{x^(p^j) ~ s} eps_x(u) = eps_s(u^(p^j)) mod the prime over p, for every class s."""
    n = case.order
    q = p ** j
    if n % q or q >= n:
        return NOT_APPLICABLE
    if (p, j) not in wagner_pairs(n, case.conductor, ring):
        return NOT_APPLICABLE
    g = level_conductor(n, 1, case.conductor)
    u = case.tower[1]
    power = case.tower[q]
    sums: dict[int, object] = {}
    for c, v in u.values.items():
        s = power_class(t, c, q)
        sums[s] = sums.get(s, zero()) + v
    for s in sorted(set(sums) | set(power.values)):
        diff = (sums.get(s, zero()) - power[s]).at(g)
        if residue_mod_p(diff, p):
            return Verdict("eliminate", s)
    return KEEP


def wagner_verdict(t: CharacterTable, case: TorsionCase, ring: str = "reduced") -> Verdict:
    for p, j in wagner_pairs(case.order, case.conductor, ring):
        v = wagner_filter(t, case, p, j, ring)
        if v.eliminated:
            return Verdict("eliminate", (p, j, v.witness))
    return KEEP


def _is_identity(d: PADistribution) -> bool:
    return d.values.keys() == {0} and d.values[0].is_rational() and d.values[0].rational_value() == 1


def projected_tower(case: TorsionCase, f: QuotientFusion) -> dict:
    return {d: case.tower[d].map_classes(f.class_map) for d in case.tower}


def image_order(case: TorsionCase, f: QuotientFusion):
    """Order of the image in the quotient, or None if the projection is inconsistent."""
    fused = projected_tower(case, f)
    k = None
    for d in divisors(case.order):
        dist = fused[d]
        if _is_identity(dist):
            if k is None:
                k = d
        elif 0 in dist.values:
            # a torsion unit other than 1 has vanishing eps_1
            return None, fused
    for d in divisors(case.order):
        if _is_identity(fused[d]) != (d % k == 0):
            return None, fused
    return k, fused


def quotient_filter(case: TorsionCase, f: QuotientFusion, survivors: dict) -> Verdict:
    """Keep iff the projected tower is the tower of some surviving unit of the quotient.

    ``survivors`` maps an order to the survivor list of the quotient (or is a
    callable order -> list).
    """
    k, fused = image_order(case, f)
    if k is None:
        return Verdict("eliminate", "augmentation")
    if k == 1:
        return KEEP
    get = survivors if callable(survivors) else survivors.get
    pool = get(k)
    if pool is None:
        raise MissingQuotientData(f"no survivors of order {k} for {f.target_id}")
    want = tuple((e, fused[e].key()) for e in divisors(k))
    for other in pool:
        if tuple((e, other.tower[e].key()) for e in divisors(k)) == want:
            return KEEP
    return Verdict("eliminate", k)
