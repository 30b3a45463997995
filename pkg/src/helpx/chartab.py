"""Character tables with class power maps, quotient fusions, and fixtures.

Tables are ingested data.  The bundled fixtures were exported once from GAP
(see ``scripts/export_tables.g``) and are validated against the standard
identities of character theory whenever they are loaded in the test suite.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from pathlib import Path

from .cyclotomic import CycNumber, canonical_conductor, factorize, from_json
from .errors import MissingPowerMap, SchemaError

FIXTURE_ENV = "HELPX_FIXTURES"


@dataclass(frozen=True)
class ClassInfo:
    name: str
    order: int
    size: int
    power_map: dict  # prime -> class index


@dataclass(frozen=True)
class BrauerTable:
    prime: int
    classes: tuple  # indices of p-regular classes of the ordinary table
    irreducibles: tuple  # rows of CycNumber, one entry per class in `classes`
    char_names: tuple = ()


@dataclass(frozen=True, eq=False)
class CharacterTable:
    id: str
    group_order: int
    exponent: int
    classes: tuple
    irreducibles: tuple
    char_names: tuple = ()
    aliases: tuple = ()
    brauer: dict = field(default_factory=dict)
    permutation_group: dict | None = None

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].rational_value()) for row in self.irreducibles]

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name == name:
                return i
        raise KeyError(f"{self.id} has no class {name!r}")

    def char_index(self, name) -> int:
        if isinstance(name, int):
            return name
        if name in self.char_names:
            return self.char_names.index(name)
        raise KeyError(f"{self.id} has no character {name!r}")

    def value(self, chi: int, c: int) -> CycNumber:
        return self.irreducibles[chi][c]

    @cached_property
    def _power_cache(self) -> dict:
        return {}

    def __repr__(self):
        return f"CharacterTable({self.id!r}, {self.nclasses} classes)"


@dataclass(frozen=True)
class QuotientFusion:
    source_id: str
    target_id: str
    class_map: tuple
    name: str = ""

    def __call__(self, c: int) -> int:
        return self.class_map[c]


# ---------------------------------------------------------------------------
# parsing

def _require(obj, key, locus):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}", locus)
    return obj[key]


def _int(v, locus, positive=True):
    if not isinstance(v, int) or isinstance(v, bool) or (positive and v < 1):
        raise SchemaError(f"expected a positive integer, got {v!r}", locus)
    return v


def _cyc(v, locus):
    try:
        return from_json(v)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), locus) from None


def _load_json(text, what):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"{what} is not valid UTF-8: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None


def parse_table(text) -> CharacterTable:
    """Parse a table from its JSON text.  Mathematics is not checked here."""
    data = _load_json(text, "table")
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    tid = _require(data, "id", "id")
    if not isinstance(tid, str) or not tid:
        raise SchemaError("id must be a non-empty string", "id")
    order = _int(_require(data, "group_order", "group_order"), "group_order")
    exponent = _int(_require(data, "exponent", "exponent"), "exponent")
    raw_classes = _require(data, "classes", "classes")
    if not isinstance(raw_classes, list) or not raw_classes:
        raise SchemaError("classes must be a non-empty list", "classes")
    classes = []
    for i, c in enumerate(raw_classes):
        loc = f"classes[{i}]"
        name = _require(c, "name", loc)
        if not isinstance(name, str):
            raise SchemaError("class name must be a string", f"{loc}.name")
        pm_raw = c.get("power_map", {})
        if not isinstance(pm_raw, dict):
            raise SchemaError("power_map must be an object", f"{loc}.power_map")
        pm = {}
        for p, idx in pm_raw.items():
            try:
                prime = int(p)
            except ValueError:
                raise SchemaError(f"power_map key {p!r} is not an integer", f"{loc}.power_map") from None
            if not isinstance(idx, int) or not 0 <= idx < len(raw_classes):
                raise SchemaError(f"power_map image {idx!r} out of range", f"{loc}.power_map.{p}")
            pm[prime] = idx
        classes.append(ClassInfo(name, _int(_require(c, "order", loc), f"{loc}.order"),
                                 _int(_require(c, "size", loc), f"{loc}.size"), pm))
    h = len(classes)
    raw_irr = _require(data, "irreducibles", "irreducibles")
    if not isinstance(raw_irr, list):
        raise SchemaError("irreducibles must be a list of rows", "irreducibles")
    irr = []
    for r, row in enumerate(raw_irr):
        if not isinstance(row, list) or len(row) != h:
            raise SchemaError(f"row must have {h} entries", f"irreducibles[{r}]")
        irr.append(tuple(_cyc(v, f"irreducibles[{r}][{j}]") for j, v in enumerate(row)))
    names = data.get("char_names") or [f"X.{i + 1}" for i in range(len(irr))]
    if len(names) != len(irr):
        raise SchemaError("char_names length differs from number of rows", "char_names")

    brauer = {}
    for p, b in (data.get("brauer") or {}).items():
        loc = f"brauer.{p}"
        try:
            prime = int(p)
        except ValueError:
            raise SchemaError("Brauer key must be a prime", loc) from None
        bcls = _require(b, "classes", loc)
        if not isinstance(bcls, list) or any(not isinstance(i, int) or not 0 <= i < h for i in bcls):
            raise SchemaError("classes must be ordinary class indices", f"{loc}.classes")
        rows = []
        for r, row in enumerate(_require(b, "irreducibles", loc)):
            if len(row) != len(bcls):
                raise SchemaError(f"row must have {len(bcls)} entries", f"{loc}.irreducibles[{r}]")
            rows.append(tuple(_cyc(v, f"{loc}.irreducibles[{r}][{j}]") for j, v in enumerate(row)))
        bnames = b.get("char_names") or [f"{p}.{i + 1}" for i in range(len(rows))]
        brauer[prime] = BrauerTable(prime, tuple(bcls), tuple(rows), tuple(bnames))

    return CharacterTable(
        id=tid, group_order=order, exponent=exponent, classes=tuple(classes),
        irreducibles=tuple(irr), char_names=tuple(names),
        aliases=tuple(data.get("aliases", ())), brauer=brauer,
        permutation_group=data.get("permutation_group"),
    )


def parse_fusion(text, name: str = "") -> QuotientFusion:
    data = _load_json(text, "fusion")
    src = _require(data, "source_id", "source_id")
    tgt = _require(data, "target_id", "target_id")
    cmap = _require(data, "class_map", "class_map")
    if not isinstance(cmap, list) or any(not isinstance(i, int) for i in cmap):
        raise SchemaError("class_map must be a list of class indices", "class_map")
    return QuotientFusion(src, tgt, tuple(cmap), name)


# ---------------------------------------------------------------------------
# validation

def validate(t: CharacterTable) -> list[str]:
    """Check the table invariants; returns human-readable violations."""
    out = []
    cls = t.classes
    h = len(cls)
    if cls[0].order != 1 or cls[0].size != 1:
        out.append("identity: first class must have order 1 and size 1")
    if sum(c.size for c in cls) != t.group_order:
        out.append(f"class sizes: sum is {sum(c.size for c in cls)}, expected {t.group_order}")
    for i, c in enumerate(cls):
        if t.group_order % c.size:
            out.append(f"class size: {c.name} size {c.size} does not divide {t.group_order}")
        if t.exponent % c.order:
            out.append(f"exponent: order of {c.name} does not divide {t.exponent}")
        for p, j in c.power_map.items():
            want = c.order // gcd(c.order, p)
            if cls[j].order != want:
                out.append(f"power map: {c.name}^{p} has order {cls[j].order}, expected {want}")
    if len(t.irreducibles) != h:
        out.append(f"irreducibles: {len(t.irreducibles)} rows for {h} classes")
        return out
    degs = []
    for r, row in enumerate(t.irreducibles):
        d = row[0]
        if not d.is_rational() or d.rational_value() <= 0 or d.rational_value().denominator != 1:
            out.append(f"degree: chi_{t.char_names[r]}(1) = {d} is not a positive integer")
            return out
        degs.append(int(d.rational_value()))
        for j, v in enumerate(row):
            if not v.is_integral():
                out.append(f"integrality: chi_{t.char_names[r]}({cls[j].name}) = {v}")
            m = v.minimal().conductor
            if canonical_conductor(cls[j].order) % m:
                out.append(f"field: chi_{t.char_names[r]}({cls[j].name}) not in Q(zeta_{cls[j].order})")
    if sum(d * d for d in degs) != t.group_order:
        out.append(f"degrees: sum of squares is {sum(d * d for d in degs)}, expected {t.group_order}")
    conj = [[v.conj() for v in row] for row in t.irreducibles]
    for a in range(h):
        for b in range(a, h):
            s = sum((t.irreducibles[i][a] * conj[i][b] for i in range(h)), CycNumber.rational(0))
            want = t.group_order // cls[a].size if a == b else 0
            if s != want:
                out.append(f"column orthogonality at ({cls[a].name},{cls[b].name}): got {s}, expected {want}")
    for p in sorted(t.brauer):
        out.extend(validate_brauer(t, p))
    return out


def decomposition_matrix(t: CharacterTable, p: int) -> list | None:
    """Multiplicities of each Brauer character in each restricted ordinary character.

    The matrix is guessed numerically and then verified exactly; None if no
    non-negative integer decomposition exists.
    """
    import numpy as np

    bt = t.brauer[p]
    B = np.array([[complex(v) for v in row] for row in bt.irreducibles])
    out = []
    for row in t.irreducibles:
        target = np.array([complex(row[c]) for c in bt.classes])
        sol = np.linalg.lstsq(B.T, target, rcond=None)[0]
        d = [int(round(x.real)) for x in sol]
        if any(x < 0 for x in d):
            return None
        for k, c in enumerate(bt.classes):
            s = sum((m * bt.irreducibles[j][k] for j, m in enumerate(d) if m), CycNumber.rational(0))
            if s != row[c]:
                return None
        out.append(d)
    return out


def validate_brauer(t: CharacterTable, p: int) -> list[str]:
    bt = t.brauer[p]
    out = []
    regular = [i for i, c in enumerate(t.classes) if c.order % p]
    if sorted(bt.classes) != regular or bt.classes[0] != 0:
        out.append(f"brauer {p}: classes must be the {p}-regular classes, identity first")
        return out
    if len(bt.irreducibles) != len(bt.classes):
        out.append(f"brauer {p}: {len(bt.irreducibles)} rows for {len(bt.classes)} classes")
        return out
    for r, row in enumerate(bt.irreducibles):
        d = row[0]
        if not d.is_rational() or d.rational_value() <= 0 or d.rational_value().denominator != 1:
            out.append(f"brauer {p}: degree of row {r} is not a positive integer")
        if any(not v.is_integral() for v in row):
            out.append(f"brauer {p}: row {r} has non-integral values")
    if not out and decomposition_matrix(t, p) is None:
        out.append(f"brauer {p}: ordinary characters do not decompose into Brauer characters")
    return out


def validate_fusion(f: QuotientFusion, source: CharacterTable, target: CharacterTable) -> list[str]:
    out = []
    if len(f.class_map) != source.nclasses:
        return [f"class_map has {len(f.class_map)} entries, source has {source.nclasses} classes"]
    if any(not 0 <= j < target.nclasses for j in f.class_map):
        return ["class_map image out of range"]
    if f.class_map[0] != 0:
        out.append("identity must map to identity")
    for i, j in enumerate(f.class_map):
        if source.classes[i].order % target.classes[j].order:
            out.append(f"order of {target.classes[j].name} does not divide order of {source.classes[i].name}")
    if source.group_order % target.group_order:
        out.append("target order does not divide source order")
        return out
    kernel = source.group_order // target.group_order
    for j, c in enumerate(target.classes):
        tot = sum(source.classes[i].size for i, jj in enumerate(f.class_map) if jj == j)
        if tot != c.size * kernel:
            out.append(f"counting: classes over {c.name} have {tot} elements, expected {c.size * kernel}")
    return out


# ---------------------------------------------------------------------------
# queries

def _galois_class(t: CharacterTable, c: int, j: int) -> int:
    """Class of x^j, j prime to o(x): the column of c moved by zeta -> zeta^j."""
    n = t.classes[c].order
    want = [row[c].at(n).galois(j % n) for row in t.irreducibles]
    for d, info in enumerate(t.classes):
        if info.order == n and all(row[d] == w for row, w in zip(t.irreducibles, want)):
            return d
    raise MissingPowerMap(f"{t.id}: no class matches the {j}-th Galois conjugate of {t.classes[c].name}")


def power_class(t: CharacterTable, c: int, k: int) -> int:
    """Class of x^k for x in class c."""
    if k < 0:
        raise ValueError("k must be non-negative")
    key = (c, k)
    cache = t._power_cache
    if key in cache:
        return cache[key]
    order = t.classes[c].order
    kk = k % order
    if kk == 0:
        res = 0
    else:
        res = c
        for p, e in factorize(kk):
            for _ in range(e):
                pm = t.classes[res].power_map
                if p not in pm:
                    if t.classes[res].order == 1:
                        continue
                    if t.classes[res].order % p:
                        res = _galois_class(t, res, p)
                        continue
                    raise MissingPowerMap(f"{t.id}: no {p}-th power map at class {t.classes[res].name}")
                res = pm[p]
    cache[key] = res
    return res


def classes_of_order_dividing(t: CharacterTable, n: int) -> list[int]:
    return [i for i, c in enumerate(t.classes) if n % c.order == 0]


# ---------------------------------------------------------------------------
# fixtures

def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else Path(__file__).resolve().parent / "fixtures"


_TABLES: dict = {}


def _index() -> dict:
    root = fixture_dir()
    key = str(root)
    if key not in _TABLES:
        idx = {}
        for p in sorted((root / "tables").glob("*.json")):
            data = json.loads(p.read_text())
            idx[data["id"]] = p
            for a in data.get("aliases", ()):
                idx.setdefault(a, p)
        _TABLES[key] = {"paths": idx, "tables": {}}
    return _TABLES[key]


def available_tables() -> list[str]:
    idx = _index()["paths"]
    return sorted({json.loads(p.read_text())["id"] for p in idx.values()})


def load_table(name: str) -> CharacterTable:
    """Load a bundled table by id (``"24_12"`` or ``"[24,12]"``), alias (``"S4"``) or path."""
    idx = _index()
    path = idx["paths"].get(name)
    if path is None:
        m = re.fullmatch(r"\[?\s*(\d+)\s*,\s*(\d+)\s*\]?", name)
        if m:
            path = idx["paths"].get(f"{m.group(1)}_{m.group(2)}")
    if path is None:
        path = Path(name)
        if not path.exists():
            raise KeyError(f"unknown character table {name!r}")
    key = str(path)
    if key not in idx["tables"]:
        idx["tables"][key] = parse_table(path.read_bytes())
    return idx["tables"][key]


def load_fusion_file(path) -> QuotientFusion:
    path = Path(path)
    return parse_fusion(path.read_bytes(), path.stem)


def load_fusions(source_id: str) -> list[QuotientFusion]:
    root = fixture_dir() / "fusions"
    return [load_fusion_file(p) for p in sorted(root.glob(f"{source_id}__*.json"))]
