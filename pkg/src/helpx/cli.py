"""Command line: ``helpx solve | verify-unit | table1``.

Exit codes
  0   Trivial or NoSolutions (solve), unit verified (verify-unit), battery matches (table1)
  2   bad input: unknown table, unreadable file, schema or config error
  3   table1: a verified row disagrees with the expected values
  10  solve: nontrivial survivors remain
  11  verify-unit: the unit is not normalized or not torsion within the bound
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .chartab import fixture_dir, load_fusion_file, load_table
from .cyclotomic import divisors, format_cyc, one, to_json
from .errors import HelpxError
from .help.solve import Solver, SolverConfig, genbp_report, is_trivial_case, solve_tower

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_MISMATCH = 3
EXIT_NONTRIVIAL = 10
EXIT_BAD_UNIT = 11

log = logging.getLogger("helpx")


@dataclass
class RunConfig:
    table: str
    order: int
    conductor: int | None = None  # None: the order
    wagner: bool = True
    quotient: list | str | None = None  # fusion paths, "auto" or off
    brauer: object = "auto"  # "auto", () or explicit primes
    wagner_ring: str = "reduced"
    format: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if self.conductor is not None and self.conductor < 1:
            raise ValueError("conductor must be at least 1")
        if isinstance(self.quotient, list):
            for p in self.quotient:
                if not Path(p).exists():
                    raise ValueError(f"fusion file {p} does not exist")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def solver_config(self) -> SolverConfig:
        q = self.quotient
        if isinstance(q, list):
            q = [load_fusion_file(p) for p in q]
        return SolverConfig(self.wagner, q, self.brauer, self.wagner_ring)


# ---------------------------------------------------------------------------
# rendering

def render_report(rep) -> str:
    t = rep.table
    lines = [f"group {rep.group_id}  order {rep.order}  conductor {rep.conductor}",
             f"classification: {rep.classification}",
             "eliminated: " + ", ".join(f"{k} {v}" for k, v in rep.eliminated.items()),
             f"survivors: {len(rep.survivors)}"]
    genbp = genbp_report(rep)
    for i, (case, triv, gb) in enumerate(zip(rep.survivors, rep.trivial, genbp), 1):
        tag = "trivial" if triv else "nontrivial"
        lines.append(f"  [{i}] {tag}{'' if gb['consistent'] else '  (not Gen-BP consistent)'}")
        for d in sorted(case.tower, reverse=True):
            if d == rep.order:
                continue
            lines.append(f"      u^{d}: {case.tower[d].format(t)}")
    return "\n".join(lines) + "\n"


def emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# solve

def cmd_solve(cfg: RunConfig) -> int:
    t = load_table(cfg.table)
    rep = solve_tower(t, cfg.order, cfg.conductor, cfg.solver_config())
    if cfg.format == "json":
        emit(json.dumps(rep.to_json(), indent=1, sort_keys=True) + "\n", cfg.out)
    else:
        emit(render_report(rep), cfg.out)
    return EXIT_NONTRIVIAL if rep.classification.kind == "NontrivialSurvivors" else EXIT_OK


# ---------------------------------------------------------------------------
# verify-unit

def verify_unit(u, t=None, bound: int | None = None) -> dict:
    from . import groupring as gr

    t = t or u.group.table
    aug = gr.augmentation(u)
    n = gr.element_order(u, bound)
    out = {"group_id": u.group.id, "ring": {"conductor": u.ring.conductor,
                                            "denominator_primes": list(u.ring.denominator_primes)},
           "augmentation": to_json(aug), "normalized": aug == one(), "order": n or None}
    if not n:
        return out
    tower = gr.unit_tower(u, n, u.ring.conductor)
    out["tower"] = tower.to_json(t)["tower"]
    out["generalized_traces"] = {str(m): to_json(gr.generalized_trace(u, m))
                                 for m in sorted({c.order for c in t.classes})}
    out["multiplicities"] = {name: list(gr.eigenvalue_multiplicities(t, u, i, n))
                             for i, name in enumerate(t.char_names)}
    out["trivial"] = is_trivial_case(t, tower)
    # Wagner is a statement about integral coefficients, so match against plain HeLP
    m = u.ring.conductor if u.ring.conductor % n == 0 else n
    rep = Solver(t, m, SolverConfig(wagner=False)).report(n)
    want = tower.key()
    out["matched_survivor"] = None
    for i, case in enumerate(rep.survivors, 1):
        if case.key() == want:
            out["matched_survivor"] = i
    out["survivor_conductor"] = m
    return out


def render_unit(info: dict) -> str:
    from .cyclotomic import from_json

    m = info["ring"]["conductor"]
    lines = [f"group {info['group_id']}  ring " + ("Z" if m == 1 else f"Z[zeta_{m}]")
             + (f"[1/{','.join(map(str, info['ring']['denominator_primes']))}]"
                if info["ring"]["denominator_primes"] else ""),
             f"augmentation: {format_cyc(from_json(info['augmentation']))}",
             f"order: {info['order'] if info['order'] else 'not torsion within bound'}"]
    if info.get("tower"):
        for d, dist in sorted(info["tower"].items(), key=lambda kv: -int(kv[0])):
            lines.append(f"  u^{d}: " + ", ".join(f"{c}={format_cyc(from_json(v))}" for c, v in dist.items()))
        lines.append("generalized traces: " + ", ".join(
            f"{m}:{format_cyc(from_json(v))}" for m, v in info["generalized_traces"].items()))
        lines.append("eigenvalue multiplicities (mu_0..mu_{n-1}):")
        for name, mu in info["multiplicities"].items():
            lines.append(f"  {name}: {tuple(mu)}")
        ms = info["matched_survivor"]
        lines.append(f"HeLP survivor at conductor {info['survivor_conductor']}: "
                     + (f"#{ms}" if ms else "none") + ("  (trivial)" if info["trivial"] else "  (nontrivial)"))
    return "\n".join(lines) + "\n"


def cmd_verify_unit(path: str, table: str | None = None, fmt: str = "text", out: str | None = None,
                    bound: int | None = None) -> int:
    from .groupring import FiniteGroup, load_unit

    group = FiniteGroup.from_table(load_table(table)) if table else None
    u = load_unit(path, group)
    t = u.group.table
    info = verify_unit(u, t, bound)
    if fmt == "json":
        emit(json.dumps(info, indent=1, sort_keys=True) + "\n", out)
    else:
        emit(render_unit(info), out)
    if not info["normalized"] or not info["order"]:
        return EXIT_BAD_UNIT
    return EXIT_OK


# ---------------------------------------------------------------------------
# table1

def expected_table1(path=None) -> dict:
    path = Path(path) if path else fixture_dir() / "table1_expected.json"
    return json.loads(path.read_text())


def table1_row(gid: str, settings: dict | None = None) -> dict:
    """Nontrivial survivors and filter eliminations for every order dividing the exponent."""
    settings = settings or {}
    t = load_table(gid)
    cfg = SolverConfig(settings.get("wagner", True), settings.get("quotient", "auto"),
                       settings.get("brauer", "auto"), settings.get("wagner_ring", "reduced"))
    remaining, filtered = {}, {}
    for n in divisors(t.exponent)[1:]:
        rep = Solver(t, n, cfg).report(n)
        k = len(rep.nontrivial)
        if k:
            remaining[str(n)] = k
        w, q = rep.eliminated["wagner"], rep.eliminated["quotient"]
        if w or q:
            filtered[str(n)] = [w, q]
    return {"id": t.id, "remaining": remaining, "filtered": filtered}


def format_remaining(rem: dict) -> str:
    if not rem:
        return "ok"
    return ", ".join(f"{n}({k})" for n, k in sorted(rem.items(), key=lambda kv: int(kv[0])))


def format_filtered(filt: dict) -> str:
    parts = []
    for n, (w, q) in sorted(filt.items(), key=lambda kv: int(kv[0])):
        if w and q:
            parts.append(f"{n}({w} / {q})")
        else:
            parts.append(f"{n}({w or q})")
    return ", ".join(parts) or "-"


def cmd_table1(groups=None, fmt: str = "text", out: str | None = None, expected: str | None = None) -> int:
    exp = expected_table1(expected)
    settings = dict(exp.get("settings", {}))
    rows = [r for r in exp["rows"] if not groups or r["id"] in {load_table(g).id for g in groups}]
    results, mismatch = [], False
    for r in rows:
        got = table1_row(r["id"], settings)
        ok3 = got["remaining"] == r["remaining"]
        ok4 = got["filtered"] == r["filtered"]
        verdict = []
        for ok, status in ((ok3, r["status"]), (ok4, r["filtered_status"])):
            if status == "verified":
                verdict.append("match" if ok else "MISMATCH")
                mismatch |= not ok
            else:
                verdict.append("match" if ok else "unreproduced")
        results.append(dict(got, expected_remaining=r["remaining"], expected_filtered=r["filtered"],
                            remaining_verdict=verdict[0], filtered_verdict=verdict[1]))
    if fmt == "json":
        emit(json.dumps({"version": exp.get("version"), "rows": results}, indent=1, sort_keys=True) + "\n", out)
    else:
        w = max((len(r["id"]) for r in results), default=5) + 2
        lines = [f"{'group':<{w}}{'remaining':<18}{'expected':<18}{'':<14}{'filters':<18}{'expected':<18}"]
        for r in results:
            lines.append(f"{r['id']:<{w}}{format_remaining(r['remaining']):<18}"
                         f"{format_remaining(r['expected_remaining']):<18}{r['remaining_verdict']:<14}"
                         f"{format_filtered(r['filtered']):<18}{format_filtered(r['expected_filtered']):<18}"
                         f"{r['filtered_verdict']}")
        emit("\n".join(lines) + "\n", out)
    return EXIT_MISMATCH if mismatch else EXIT_OK


# ---------------------------------------------------------------------------

def _brauer_arg(values):
    if not values or values == ["auto"]:
        return "auto"
    if values == ["none"]:
        return ()
    return tuple(int(v) for v in values)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="helpx", description="HeLP method over cyclotomic integers")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="survivors for units of one order")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", help="bundled table id or alias, e.g. S4 or 24_12")
    g.add_argument("--table", help="path to a character table JSON file")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--conductor", type=int, default=None, help="coefficient ring Z[zeta_m] (default: the order)")
    s.add_argument("--wagner", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--wagner-ring", choices=("reduced", "coefficient"), default="reduced")
    s.add_argument("--quotient", nargs="+", metavar="FUSION", help="fusion JSON files, or 'auto'")
    s.add_argument("--brauer", nargs="+", metavar="P", help="primes, 'auto' (default) or 'none'")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--out")

    v = sub.add_parser("verify-unit", help="invariants of an explicit group ring element")
    v.add_argument("unit", help="unit JSON file")
    v.add_argument("--table", help="table id or path (default: the unit's group_id)")
    v.add_argument("--bound", type=int, default=None, help="largest power tried when computing the order")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out")

    b = sub.add_parser("table1", help="run the battery and compare with the expected values")
    b.add_argument("--group", nargs="+", help="restrict to these groups")
    b.add_argument("--expected", help="alternative expected-values file")
    b.add_argument("--format", choices=("text", "json"), default="text")
    b.add_argument("--out")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "solve":
            q = args.quotient
            if q == ["auto"]:
                q = "auto"
            cfg = RunConfig(args.group or args.table, args.order, args.conductor, args.wagner, q,
                            _brauer_arg(args.brauer), args.wagner_ring, args.format, args.out)
            return cmd_solve(cfg)
        if args.command == "verify-unit":
            return cmd_verify_unit(args.unit, args.table, args.format, args.out, args.bound)
        return cmd_table1(args.group, args.format, args.out, args.expected)
    except (HelpxError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"helpx: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
