"""Command-line front end.

Every subcommand prints one report (JSON by default) and exits 0 when all
requested checks pass, 1 on any mismatch and 2 on bad input.  Each flag can
also be set through an environment variable named ``SM_<FLAG>``, e.g.
``SM_FAMILY=PsEnd`` or ``SM_CAP_ENUM=7``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .enumeration import (CapExceededError, cardinality, census, check_cap, decompose_iend,
                          decompose_paut, elements, r0_size)
from .families import PRIMARY, MonoidFamily, parse_families
from .generation import rank_certificate, verify_generators
from .greens import (RELATIONS, compare_pairs, egg_box, regularity_sweep, related,
                     related_oracle)
from .membership import is_member, is_member_definitional
from .ptransform import CodecError, parse_map

F = MonoidFamily
EXHAUSTIVE_GREENS_N = 4


@dataclass
class RunConfig:
    command: str
    n: list
    families: list
    format: str
    cap_enum: int
    cap_closure: int
    jobs: int
    seed: int
    relations: list

    def echo(self) -> dict:
        d = asdict(self)
        d["families"] = [f.value for f in self.families]
        return d


class UsageError(ValueError):
    pass


def parse_n(text: str) -> list:
    """``5``, ``1..6`` or ``3,4,5``."""
    try:
        out = []
        for part in str(text).split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"--n: cannot parse {text!r}") from None
    if not out or min(out) < 1:
        raise UsageError(f"--n: need positive vertex counts, got {text!r}")
    return out


def _env(name: str, default):
    return os.environ.get(f"SM_{name.upper()}", default)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", default=_env("n", None),
                        help="vertex count: 4, 1..6 or 3,4,5")
    common.add_argument("--family", default=_env("family", "all"),
                        help="family name(s), comma separated, or 'all'")
    common.add_argument("--format", choices=("json", "csv", "text"),
                        default=_env("format", "json"))
    common.add_argument("--cap-enum", type=int, default=int(_env("cap_enum", 8)),
                        help="largest n for enumeration-based commands")
    common.add_argument("--cap-closure", type=int, default=int(_env("cap_closure", 5)),
                        help="largest n for verify-generators")
    common.add_argument("--jobs", type=int, default=int(_env("jobs", 1)))
    common.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    common.add_argument("--relation", default=_env("relation", "R,L,H,J"),
                        help="Green's relations to check, e.g. R or R,L,H,J")

    p = argparse.ArgumentParser(prog="starmonoids",
                                description="Partial endomorphism monoids of star graphs")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("census", parents=[common], help="enumerated sizes vs closed formulas")
    c = sub.add_parser("check", parents=[common], help="membership of one map")
    c.add_argument("map", help="e.g. 'n=4; 0->1 1->0 2->0 3->0'")
    g = sub.add_parser("greens", parents=[common],
                       help="Green's relations: formula vs ideal oracle")
    g.add_argument("--pair", nargs=2, metavar=("A", "B"), help="check a single pair")
    g.add_argument("--samples", type=int, default=int(_env("samples", 100_000)),
                   help="random pairs per family when n > 4")
    sub.add_parser("eggbox", parents=[common], help="J-classes with R/L/H counts")
    sub.add_parser("regular", parents=[common], help="regularity criterion vs witness search")
    sub.add_parser("verify-generators", parents=[common], help="close the named generating sets")
    r = sub.add_parser("rank-certify", parents=[common], help="exhaustive rank certificate")
    r.add_argument("--claimed", type=int, default=None,
                   help="rank to certify (defaults to the known rank)")
    r.add_argument("--no-prune", action="store_true",
                   help="close every subset instead of skipping unit-deficient ones")
    sub.add_parser("decompose", parents=[common], help="PAut and IEnd decompositions")
    return p


def _config(args) -> RunConfig:
    n_text = args.n if args.n is not None else ("" if args.command == "check" else "3")
    try:
        families = parse_families(args.family)
    except ValueError as exc:
        raise UsageError(f"--family: {exc}") from None
    rels = [r.strip().upper() for r in args.relation.split(",") if r.strip()]
    for r in rels:
        if r not in RELATIONS:
            raise UsageError(f"--relation: unknown relation {r!r}")
    if args.cap_enum < 1 or args.cap_closure < 1 or args.jobs < 1:
        raise UsageError("caps and --jobs must be positive")
    return RunConfig(args.command, parse_n(n_text) if n_text else [], families,
                     args.format, args.cap_enum, args.cap_closure, args.jobs,
                     args.seed, rels)


# -- subcommands -----------------------------------------------------------------

def _census_one(job):
    fam, n = job
    return census(fam, n).as_row()


def cmd_census(cfg: RunConfig, args) -> tuple:
    for n in cfg.n:
        check_cap(n, cfg.cap_enum)
    jobs = [(f, n) for f in cfg.families for n in cfg.n]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_census_one, jobs))
    else:
        rows = [_census_one(j) for j in jobs]
    # recompute the formula in this process so patched formulas are seen
    for row in rows:
        row["formula_count"] = cardinality(row["family"], row["n"])
        row["match"] = (row["enumerated_count"] == row["formula_count"]
                        and row["filter_count"] in (None, row["formula_count"]))
    bad = [f"{r['family']} n={r['n']}: enumerated {r['enumerated_count']}, "
           f"formula {r['formula_count']}" for r in rows if not r["match"]]
    return rows, bad


def cmd_check(cfg: RunConfig, args) -> tuple:
    a = parse_map(args.map)
    rows, bad = [], []
    for f in cfg.families:
        fast, slow = is_member(f, a), is_member_definitional(f, a)
        rows.append({"map": a.code, "family": f.value, "member": fast,
                     "definitional": slow, "agree": fast == slow})
        if fast != slow:
            bad.append(f"{f.value}: characterization {fast}, definition {slow}")
    return rows, bad


def cmd_greens(cfg: RunConfig, args) -> tuple:
    rows, bad = [], []
    if args.pair:
        a, b = (parse_map(s) for s in args.pair)
        if a.n != b.n:
            raise UsageError("--pair: maps on different vertex counts")
        for f in cfg.families:
            if not (is_member(f, a) and is_member(f, b)):
                raise UsageError(f"--pair: both maps must lie in {f.value}(S_{a.n})")
            for rel in cfg.relations:
                x = related(rel, f, a.n, a, b)
                y = related_oracle(rel, f, a.n, a, b)
                rows.append({"family": f.value, "n": a.n, "relation": rel, "a": a.code,
                             "b": b.code, "formula": x, "oracle": y, "agree": x == y})
                if x != y:
                    bad.append(f"{rel} in {f.value}: formula {x}, oracle {y} for ({a.code}) ({b.code})")
        return rows, bad
    for n in cfg.n:
        check_cap(n, min(cfg.cap_enum, 6))
        for f in cfg.families:
            samples = None if n <= EXHAUSTIVE_GREENS_N else args.samples
            total, dis = compare_pairs(f, n, cfg.relations, samples=samples, seed=cfg.seed)
            rows.append({"family": f.value, "n": n, "relations": ",".join(cfg.relations),
                         "mode": "exhaustive" if samples is None else "sampled",
                         "pairs": total, "disagreements": len(dis)})
            bad += [f"{d.relation} in {d.family}: formula {d.formula}, oracle {d.oracle} "
                    f"for ({d.a}) ({d.b})" for d in dis]
    return rows, bad


def cmd_eggbox(cfg: RunConfig, args) -> tuple:
    reports, bad = [], []
    for n in cfg.n:
        for f in cfg.families:
            rep = egg_box(f, n, cap=cfg.cap_enum)
            reports.append(rep)
            if rep.total != cardinality(f, n):
                bad.append(f"{f.value} n={n}: J-classes cover {rep.total} of {cardinality(f, n)}")
    return reports, bad


def cmd_regular(cfg: RunConfig, args) -> tuple:
    rows, bad = [], []
    for n in cfg.n:
        check_cap(n, min(cfg.cap_enum, 6))
        for f in cfg.families:
            r = regularity_sweep(f, n)
            rows.append({"family": r["family"], "n": n, "members": r["members"],
                         "regular": r["regular"], "mismatches": len(r["mismatches"]),
                         "without_paut_witness": len(r["no_paut_witness"])})
            bad += [f"{f.value} n={n}: criterion and search disagree on ({c})" for c in r["mismatches"]]
            bad += [f"{f.value} n={n}: no PAut witness for ({c})" for c in r["no_paut_witness"]]
    return rows, bad


def cmd_verify_generators(cfg: RunConfig, args) -> tuple:
    rows, bad = [], []
    for n in cfg.n:
        for f in cfg.families:
            chk = verify_generators(f, n, n_range=(3, cfg.cap_closure))
            rows.append(chk.as_row())
            if not chk.ok:
                bad.append(f"{f.value} n={n}: closure {chk.closure_size}, expected {chk.formula_size}")
    return rows, bad


def cmd_rank_certify(cfg: RunConfig, args) -> tuple:
    rows, bad = [], []
    for n in cfg.n:
        check_cap(n, cfg.cap_enum)
        for f in cfg.families:
            cert = rank_certificate(f, n, claimed=args.claimed, prune=not args.no_prune,
                                    jobs=cfg.jobs)
            rows.append(cert)
            if not cert["certified"]:
                bad.append(f"{f.value} n={n}: rank {cert['claimed_rank']} not certified")
    return rows, bad


def cmd_decompose(cfg: RunConfig, args) -> tuple:
    rows, bad = [], []
    for n in cfg.n:
        d = decompose_paut(n, cfg.cap_enum)
        paut = frozenset(elements(F.PAut, n))
        row = {"n": n, "inner": len(d.inner), "lifted": len(d.lifted),
               "swaps": len(d.swaps), "singles": len(d.singles),
               "paut_disjoint": d.disjoint(), "paut_exhaustive": d.union() == paut}
        ie = decompose_iend(n, cfg.cap_enum)
        row.update({"r0": len(ie.r0), "r0_formula": r0_size(n),
                    "iend_disjoint": ie.disjoint(),
                    "iend_exhaustive": ie.union() == frozenset(elements(F.IEnd, n))})
        ok = (row["paut_disjoint"] and row["paut_exhaustive"] and row["iend_disjoint"]
              and row["iend_exhaustive"] and row["r0"] == row["r0_formula"]
              and row["swaps"] == (n - 1) ** 2 and row["singles"] == 2 * (n - 1))
        rows.append(row)
        if not ok:
            bad.append(f"n={n}: decomposition check failed")
    return rows, bad


COMMANDS = {
    "census": cmd_census,
    "check": cmd_check,
    "greens": cmd_greens,
    "eggbox": cmd_eggbox,
    "regular": cmd_regular,
    "verify-generators": cmd_verify_generators,
    "rank-certify": cmd_rank_certify,
    "decompose": cmd_decompose,
}


# -- output -----------------------------------------------------------------------

def _render(cfg: RunConfig, rows, bad) -> str:
    if cfg.command == "eggbox":
        if cfg.format == "text":
            body = "\n\n".join(r.to_text() for r in rows)
            return body + f"\n\n{'PASS' if not bad else 'FAIL'}\n"
        rows = [r.to_dict() for r in rows]
    report = {
        "tool": "starmonoids",
        "version": __version__,
        "config": cfg.echo(),
        "rows": rows,
        "summary": {"passed": not bad, "rows": len(rows), "mismatches": bad},
    }
    if cfg.format == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    flat = [{k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in r.items()}
            for r in rows]
    cols: list = []
    for r in flat:
        cols += [k for k in r if k not in cols]
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        return buf.getvalue()
    widths = {c: max([len(c)] + [len(str(r.get(c, ""))) for r in flat]) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols)]
    lines += ["  ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols) for r in flat]
    lines += [f"mismatch: {m}" for m in bad]
    lines.append("PASS" if not bad else f"FAIL ({len(bad)} mismatches)")
    return "\n".join(lines) + "\n"


def run(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        rows, bad = COMMANDS[args.command](cfg, args)
    except (UsageError, CodecError, CapExceededError, ValueError) as exc:
        print(f"starmonoids {args.command}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(cfg, rows, bad))
    return 1 if bad else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
