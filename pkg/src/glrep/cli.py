"""Command line front end: ``glrep <command> [options]``.

Exit status: 0 on success, 1 on a bad configuration, 2 when a mandatory
check fails.  Printed-table mismatches are warnings and never change it.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from glrep.exact import parse_scalar, scalar_str
from glrep.multiplets import (
    ALL_MULTIPLETS, NotInSpan, OddActionComputer, build_table, exists, iter_sources,
    verify_multiplet,
)
from glrep.realization import GeneratorAction, ModuleParams, probe_relations
from glrep.repbuild import (
    IRREDUCIBLE, KAC, TYPICAL, VARIANTS,
    CommutantTooLarge, NotClosed, NotScalar, WrongLocus, atypical_q, branching, build_module,
    classify, expected_dimension, indecomposability_check, module_basis, module_multiplets,
)

log = logging.getLogger("glrep")

EXIT_OK, EXIT_CONFIG, EXIT_CHECK = 0, 1, 2
TABLE_LIMIT = 6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    two_j1: int = 0
    two_j2: int = 0
    q: str = "0"
    p: str = "0"
    kind: str = "irreducible"
    probe_degree: int = 6
    output_dir: Path = Path(".")
    format: str = "json"

    def params(self) -> ModuleParams:
        if self.two_j1 < 0 or self.two_j2 < 0:
            raise ConfigError("spins must be nonnegative")
        try:
            q, p = parse_scalar(self.q), parse_scalar(self.p)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse rational: {exc}") from exc
        return ModuleParams(self.two_j1, self.two_j2, q, p)

    def module_kind(self) -> str:
        k = self.kind.lower()
        if k not in ("irreducible", "kac"):
            raise ConfigError(f"unknown kind {self.kind!r}")
        return IRREDUCIBLE if k == "irreducible" else KAC


def threads() -> int:
    try:
        return max(1, int(os.environ.get("GLREP_THREADS", "1")))
    except ValueError:
        return 1


def _write(cfg: RunConfig, name: str, data) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.output_dir / name
    path.write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")
    return path


# --- commands ---------------------------------------------------------------------


def cmd_verify(cfg: RunConfig) -> int:
    params = cfg.params()
    failures, warnings = [], []

    rel = probe_relations(params, cfg.probe_degree)
    if not rel.ok:
        failures.append(f"{len(rel.failures)} relation failures in {len(rel.failing_pairs())} pairs")

    action = GeneratorAction(params)
    table = build_table(params)
    mult_reports = []
    for mult in ALL_MULTIPLETS:
        if not exists(mult, params):
            continue
        r = verify_multiplet(mult, params, action)
        mult_reports.append(r.to_json())
        if not r.ok:
            failures.append(f"multiplet {mult.name}: {len(r.failures())} failed checks")

    comp = OddActionComputer(params, table, action)
    n_exp = 0
    for sid in iter_sources(table):
        for g in ("E23", "E32"):
            try:
                exp = comp.expand(g, sid)
            except NotInSpan as exc:
                failures.append(f"{g} on {sid}: {exc}")
                continue
            n_exp += 1
            for d in exp.discrepancies:
                warnings.append(
                    f"PAPER-DISCREPANCY {g} on {sid} -> {d['target']}: "
                    f"computed {d['computed']}, printed {d['printed']}"
                )

    report = {
        "params": params.to_json(),
        "classification": classify(params),
        "relations": rel.summary(),
        "table": {"dim": table.total_dimension, "multiplets": [m.name for m in table.multiplets()]},
        "multiplets": mult_reports,
        "odd_actions": {"expansions": n_exp},
        "warnings": warnings,
        "failures": failures,
        "ok": not failures,
    }
    _write(cfg, "verify_report.json", report)
    for w in warnings:
        log.warning(w)
    print(f"verify {params}: {'ok' if not failures else 'FAILED'} "
          f"({len(failures)} failures, {len(warnings)} warnings)")
    for f in failures:
        print(f"  failure: {f}")
    return EXIT_OK if not failures else EXIT_CHECK


def cmd_relations(cfg: RunConfig) -> int:
    params = cfg.params()
    rel = probe_relations(params, cfg.probe_degree)
    _write(cfg, "verify_report.json", {"params": params.to_json(), "relations": rel.summary(),
                                        "failures": rel.to_json()[:50], "ok": rel.ok})
    print(f"relations {params} degree {cfg.probe_degree}: "
          f"{'ok' if rel.ok else 'FAILED'} ({len(rel.failures)} failures)")
    return EXIT_OK if rel.ok else EXIT_CHECK


def cmd_classify(cfg: RunConfig) -> int:
    params = cfg.params()
    variant = classify(params)
    print(variant)
    print(json.dumps({"params": params.to_json(), "classification": variant}))
    return EXIT_OK


def _build(cfg: RunConfig):
    params = cfg.params()
    kind = cfg.module_kind()
    rep = build_module(params, kind)
    manifest = rep.manifest()
    manifest["branching"] = [s.to_json() for s in branching(rep)]
    return rep, manifest


def cmd_build(cfg: RunConfig) -> int:
    rep, manifest = _build(cfg)
    sub = indecomposability_check(rep)
    _write(cfg, "manifest.json", manifest)
    _write(cfg, "subspace.json", sub.to_json())
    print(f"built {rep.kind} module at {rep.params}: {rep.classification}, dim {rep.dim}, "
          f"hw closure {sub.dim}, verdict {sub.verdict}")
    return EXIT_OK


def cmd_export(cfg: RunConfig) -> int:
    rep, manifest = _build(cfg)
    _write(cfg, "manifest.json", manifest)
    for key, M in rep.matrices.items():
        if key.startswith("E"):
            _write(cfg, f"{key}.json", [[scalar_str(x) for x in row] for row in M.to_dense()])
    print(f"exported {rep.kind} module at {rep.params}: dim {rep.dim} to {cfg.output_dir}")
    return EXIT_OK


def _table_row(args) -> dict:
    a, b = args
    base = ModuleParams(a, b, 0, 0)
    row = {"two_j1": a, "two_j2": b, "columns": {}}
    for variant in VARIANTS:
        if variant == TYPICAL:
            # any q off the four loci gives the same states
            params = base.with_q(base.j1 + base.j2 + 2)
        else:
            params = base.with_q(atypical_q(base, variant))
            if classify(params) != variant:
                row["columns"][variant] = None
                continue
        mults = module_multiplets(params, IRREDUCIBLE, variant)
        basis = module_basis(params, mults)
        present = []
        for sid, _ in basis:
            if sid.multiplet not in present:
                present.append(sid.multiplet)
        row["columns"][variant] = {
            "dim": len(basis),
            "formula": expected_dimension(params, variant),
            "branching": [
                {"shift": [scalar_str(m.d1), scalar_str(m.d2)], "level": m.level, "multiplet": m.name,
                 "dim": sum(1 for sid, _ in basis if sid.multiplet == m)}
                for m in present
            ],
        }
    return row


def cmd_table(cfg: RunConfig, lo: int, hi: int) -> int:
    if lo < 0 or hi < lo or hi > TABLE_LIMIT:
        raise ConfigError(f"twoJ range must satisfy 0 <= min <= max <= {TABLE_LIMIT}")
    points = [(a, b) for a in range(lo, hi + 1) for b in range(lo, hi + 1)]
    n = threads()
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_table_row, points))
    else:
        rows = [_table_row(x) for x in points]
    bad = [r for r in rows for c in r["columns"].values() if c and c["dim"] != c["formula"]]
    _write(cfg, "table.json", {"two_j_range": [lo, hi], "rows": rows})
    print(f"table for twoJ in {lo}..{hi}: {len(rows)} rows, {len(bad)} dimension mismatches")
    return EXIT_OK if not bad else EXIT_CHECK


# --- argument parsing ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--two-j1", type=int, default=0, help="2*J1 (nonnegative integer)")
    p.add_argument("--two-j2", type=int, default=0, help="2*J2")
    p.add_argument("--q", default="0", help="rational, e.g. 3/7")
    p.add_argument("--p", default="0", help="rational, e.g. 2/5")
    p.add_argument("--kind", default="irreducible", help="irreducible or kac")
    p.add_argument("--probe-degree", type=int, default=6)
    p.add_argument("--output-dir", type=Path, default=Path("."))
    p.add_argument("--format", default="json", choices=["json"])
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="glrep", description="Exact gl(2|2) representations from the boson-fermion realization.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (
        ("verify", "relation probe, multiplet checks and odd-action comparison"),
        ("relations-check", "relation probe only"),
        ("classify", "print the atypicality class"),
        ("build", "build a module; writes manifest.json and subspace.json"),
        ("export", "build a module; writes manifest.json and one E_ij.json per generator"),
        ("table", "dimension and branching table over a range of spins"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p)
        if name == "table":
            p.add_argument("--two-j-min", type=int, default=0)
            p.add_argument("--two-j-max", type=int, default=2)
    return ap


def _join_negative(argv: list[str]) -> list[str]:
    # argparse reads "-3/2" as an option; glue it to its flag
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--q", "--p") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    cfg = RunConfig(args.two_j1, args.two_j2, args.q, args.p, args.kind,
                    args.probe_degree, args.output_dir, args.format)
    try:
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "relations-check":
            return cmd_relations(cfg)
        if args.command == "classify":
            return cmd_classify(cfg)
        if args.command == "build":
            return cmd_build(cfg)
        if args.command == "export":
            return cmd_export(cfg)
        return cmd_table(cfg, args.two_j_min, args.two_j_max)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotClosed, WrongLocus, NotScalar, CommutantTooLarge) as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
