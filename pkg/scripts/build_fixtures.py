"""Convert the raw GAP export into bundled fixtures.

    gap -q scripts/export_tables.g > raw_tables.json
    python scripts/build_fixtures.py raw_tables.json

Cyclotomics arrive as GAP CoeffsCyc vectors (length = conductor) and are
rewritten in the power basis used by helpx.  Every table is validated before
it is written.
"""
import argparse
import json
from pathlib import Path

from helpx import chartab
from helpx.cyclotomic import CycNumber, to_json

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "helpx" / "fixtures"

# Row order and names used in the text for S4: chi_1a, chi_1b, chi_2, chi_3a, chi_3b.
S4_ROWS = {"order": [0, 1, 2, 4, 3], "names": ["1a", "1b", "2", "3a", "3b"]}


def convert_cyc(raw):
    n, coeffs = raw
    return to_json(CycNumber.from_exponent_vector(n, coeffs))


def convert_table(raw):
    irr = [[convert_cyc(v) for v in row] for row in raw["irreducibles"]]
    names = [f"X.{i + 1}" for i in range(len(irr))]
    if raw["id"] == "24_12":
        irr = [irr[i] for i in S4_ROWS["order"]]
        names = S4_ROWS["names"]
    brauer = {p: {"classes": b["classes"],
                  "irreducibles": [[convert_cyc(v) for v in row] for row in b["irreducibles"]]}
              for p, b in raw.get("brauer", {}).items()}
    return {
        "id": raw["id"],
        "aliases": raw["aliases"],
        "group_order": raw["group_order"],
        "exponent": raw["exponent"],
        "classes": raw["classes"],
        "char_names": names,
        "irreducibles": irr,
        "brauer": brauer,
        "permutation_group": raw["permutation_group"],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("raw", type=Path)
    args = ap.parse_args()
    data = json.loads(args.raw.read_text())

    (FIXTURES / "tables").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "fusions").mkdir(parents=True, exist_ok=True)
    for raw in data["tables"]:
        out = convert_table(raw)
        text = json.dumps(out, indent=1)
        table = chartab.parse_table(text.encode())
        problems = chartab.validate(table)
        if problems:
            raise SystemExit(f"{raw['id']}: {problems}")
        (FIXTURES / "tables" / f"{raw['id']}.json").write_text(text + "\n")
        print("table", raw["id"], len(table.classes), "classes")

    for f in data["fusions"]:
        out = {"source_id": f["source_id"], "target_id": f["target_id"], "class_map": f["class_map"]}
        name = f"{f['source_id']}__{f['target_id']}__{f['index']}.json"
        (FIXTURES / "fusions" / name).write_text(json.dumps(out) + "\n")
    print(len(data["fusions"]), "fusions")


if __name__ == "__main__":
    main()
