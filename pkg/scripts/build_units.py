"""Write the bundled explicit units (fixtures/units/*.json).

Coefficients are written as exponent vectors in zeta_m and reduced exactly;
permutations are given in cycle notation on 1..d and stored 0-based.
"""
import json
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from helpx.cyclotomic import CycNumber  # noqa: E402
from helpx.groupring import GroupRingElement, Ring, group_for, parse_cycles  # noqa: E402

OUT = ROOT / "src" / "helpx" / "fixtures" / "units"


def cyc(m, vec, scale=1):
    return CycNumber.from_exponent_vector(m, [Fraction(c) * scale for c in vec])


def build(gid, ring, terms):
    g = group_for(gid)
    coeffs = {}
    for cycles, c in terms:
        coeffs[parse_cycles(cycles, g.degree)] = c
    return GroupRingElement(g, coeffs, ring)


def s4_unit():
    # 1/4 * (a + b i)
    q = lambda a, b: cyc(4, [a, b], Fraction(1, 4))  # noqa: E731
    terms = [
        ("(1,2)", q(-1, 1)), ("(1,3)", q(1, 1)), ("(1,4)", q(0, 1)), ("(2,3)", q(0, 1)),
        ("(2,4)", q(-1, 0)), ("(3,4)", q(1, 0)), ("(1,2,3)", q(1, 0)), ("(1,3,4)", q(-1, 1)),
        ("(1,4,2)", q(-1, -1)), ("(2,4,3)", q(1, 0)), ("(1,2)(3,4)", q(2, -1)), ("(1,3)(2,4)", q(2, 1)),
        ("(1,2,3,4)", q(-1, 0)), ("(1,2,4,3)", q(0, -1)), ("(1,3,2,4)", q(-1, -1)), ("(1,4,2,3)", q(1, 0)),
        ("(1,4,3,2)", q(1, -1)), ("(1,3,4,2)", q(0, -1)),
    ]
    return build("24_12", Ring(4, (2,)), terms)


def s3_unit():
    z = lambda k: cyc(9, [0] * k + [1])  # noqa: E731
    terms = [("(1,2,3)", z(0)), ("(1,2)", z(1)), ("(2,3)", z(4)), ("(1,3)", z(7))]
    return build("6_1", Ring(9), terms)


def identity_unit():
    g = group_for("24_12")
    return GroupRingElement.identity(g)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, u in [("s4_order4", s4_unit()), ("s3_zeta9_order3", s3_unit()), ("s4_identity", identity_unit())]:
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(u.to_json(), indent=1) + "\n")
        print("wrote", path.relative_to(ROOT), len(u.coeffs), "terms")


if __name__ == "__main__":
    main()
