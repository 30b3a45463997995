"""Value types of the HeLP engine: distributions, torsion cases, reports."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..cyclotomic import CycNumber, canonical_conductor, divisors, from_json, to_json, zero
from math import gcd


class PADistribution:
    """Partial augmentations of one unit: class index -> value (absent = 0)."""

    __slots__ = ("order", "values", "_key")

    def __init__(self, order, values):
        self.order = order
        self.values = {c: v for c, v in values.items() if not v.is_zero()}
        self._key = None

    @classmethod
    def indicator(cls, c: int, order=None) -> "PADistribution":
        return cls(order, {c: CycNumber.rational(1)})

    def __getitem__(self, c: int) -> CycNumber:
        v = self.values.get(c)
        return v if v is not None else zero()

    def support(self) -> list[int]:
        return sorted(self.values)

    def augmentation(self) -> CycNumber:
        return sum(self.values.values(), zero())

    def is_trivial(self) -> bool:
        """Exactly one non-vanishing partial augmentation."""
        return len(self.values) == 1

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple((c, self.values[c].key()) for c in sorted(self.values))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, PADistribution):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def map_classes(self, class_map) -> "PADistribution":
        out: dict[int, CycNumber] = {}
        for c, v in self.values.items():
            j = class_map[c]
            out[j] = out[j] + v if j in out else v
        return PADistribution(None, out)

    def format(self, table=None) -> str:
        if not self.values:
            return "{}"
        parts = []
        for c in self.support():
            name = table.classes[c].name if table is not None else str(c)
            parts.append(f"{name}: {self.values[c]}")
        return "{" + ", ".join(parts) + "}"

    def __repr__(self):
        return f"PADistribution({self.order}, {self.format()})"

    def to_json(self, table=None) -> dict:
        def name(c):
            return table.classes[c].name if table is not None else str(c)
        return {name(c): to_json(self.values[c]) for c in self.support()}


def level_conductor(n: int, d: int, conductor: int) -> int:
    """Conductor in which the partial augmentations of u^d live."""
    return canonical_conductor(gcd(n // d, conductor))


@dataclass(eq=False)
class TorsionCase:
    """A candidate unit of order n described by the partial augmentations of all its powers.

    ``tower[d]`` is the distribution of u^d for every divisor d of n; ``tower[n]``
    is the identity and ``tower[1]`` the unit itself.
    """

    order: int
    conductor: int
    tower: dict
    mu_cache: dict = field(default_factory=dict, repr=False)

    @property
    def distribution(self) -> PADistribution:
        return self.tower[1]

    def key(self) -> tuple:
        return tuple((d, self.tower[d].key()) for d in sorted(self.tower))

    def __eq__(self, other):
        if not isinstance(other, TorsionCase):
            return NotImplemented
        return self.order == other.order and self.key() == other.key()

    def __hash__(self):
        return hash((self.order, self.key()))

    def sort_key(self, nclasses: int) -> tuple:
        out = []
        for d in divisors(self.order):
            g = level_conductor(self.order, d, self.conductor)
            dist = self.tower[d]
            for c in range(nclasses):
                out.extend(dist[c].at(g).coords)
        return tuple(out)

    def to_json(self, table=None) -> dict:
        return {"tower": {str(d): self.tower[d].to_json(table) for d in sorted(self.tower)}}


def case_from_json(obj, table, order: int, conductor: int) -> TorsionCase:
    tower = {}
    for d, dist in obj["tower"].items():
        values = {table.class_index(name): from_json(v) for name, v in dist.items()}
        tower[int(d)] = PADistribution(order // int(d), values)
    return TorsionCase(order, conductor, tower)


@dataclass(frozen=True)
class Classification:
    kind: str  # "Trivial" | "NontrivialSurvivors" | "NoSolutions"
    count: int = 0

    def __str__(self):
        if self.kind == "NontrivialSurvivors":
            return f"NontrivialSurvivors({self.count})"
        return self.kind


TRIVIAL = Classification("Trivial")
NO_SOLUTIONS = Classification("NoSolutions")


@dataclass
class SolveReport:
    group_id: str
    order: int
    conductor: int
    survivors: list
    eliminated: dict
    classification: Classification
    table: object = field(default=None, repr=False)
    trivial: list = field(default_factory=list, repr=False)  # parallel to survivors

    @property
    def nontrivial(self) -> list:
        return [c for c, t in zip(self.survivors, self.trivial) if not t]

    def to_json(self) -> dict:
        return {
            "group_id": self.group_id,
            "order": self.order,
            "conductor": self.conductor,
            "survivors": [dict(c.to_json(self.table), trivial=t)
                          for c, t in zip(self.survivors, self.trivial)],
            "eliminated": dict(self.eliminated),
            "classification": str(self.classification),
        }
