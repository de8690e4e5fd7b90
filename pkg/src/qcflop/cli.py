"""Command line front end.

Subcommands:

  qcflop verify {appendix|flop|batyrev|cohomology|quantization|all}
  qcflop table genus1
  qcflop dump dG

Exit codes: 0 when every identity passes, 1 on any failure (the failing
anchors go to stderr), 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from qcflop import canonical, suites
from qcflop.config import ConfigError, load_config, parse_sample
from qcflop.report import Report
from qcflop.serialize import fraction_str, ratfunc_q_to_json

SUITES = ("appendix", "flop", "batyrev", "cohomology", "quantization")


def _run_cell(cell: tuple) -> Report:
    """One (suite, r) work unit; top-level so process pools can import it."""
    name, r, cfg_items = cell
    cfg = dict(cfg_items)
    if name == "cohomology":
        return suites.cohomology_suite(r)
    if name == "flop":
        return suites.flop_suite(r, max_m=cfg["max_m"], max_n=cfg["max_n"])
    if name == "appendix":
        rep = suites.appendix_suite(r, rmatrix_order=cfg["rmatrix_order"])
        rep.extend(suites.genus_one_table_suite(r, cfg["dmax"]))
        return rep
    if name == "batyrev":
        return suites.batyrev_suite(r, order=cfg["order"], sample=cfg["sample"],
                                    gap_tol=cfg["gap_tolerance"], match_tol=cfg["tolerance"])
    if name == "quantization":
        return suites.quantization_suite(dim=cfg["dim"], cutoff=cfg["cutoff"])
    raise ValueError(f"unknown suite {name!r}")


def run_suite(selection: str, config) -> Report:
    """Execute the selected suites over the configured r-range and merge
    the entries in canonical order."""
    names = SUITES if selection == "all" else (selection,)
    cfg_items = tuple(sorted({
        "order": config.order,
        "dmax": config.dmax,
        "rmatrix_order": config.rmatrix_order,
        "max_m": config.max_m,
        "max_n": config.max_n,
        "gap_tolerance": config.gap_tolerance,
        "tolerance": config.tolerance,
        "sample": parse_sample(config.sample),
        "dim": config.dim,
        "cutoff": config.cutoff,
    }.items()))
    cells = []
    for name in names:
        if name == "quantization":
            cells.append((name, 0, cfg_items))  # r-independent
        else:
            cells.extend((name, r, cfg_items) for r in config.rs())
    merged = Report(suite=selection)
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for rep in pool.map(_run_cell, cells):
                merged.extend(rep)
    else:
        for cell in cells:
            merged.extend(_run_cell(cell))
    return merged


def _emit(report_text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(report_text)
    else:
        sys.stdout.write(report_text)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", dest="r_range", help="single r or a range like 1..3")
    parser.add_argument("--order", type=int, help="series truncation order")
    parser.add_argument("--dmax", type=int, help="largest degree in tables")
    parser.add_argument("--rmatrix-order", dest="rmatrix_order", type=int,
                        help="number of recursion orders to verify")
    parser.add_argument("--max-m", dest="max_m", type=int,
                        help="largest derivative order in the flop sweeps")
    parser.add_argument("--max-n", dest="max_n", type=int,
                        help="largest point count in the genus-one sweeps")
    parser.add_argument("--sample", help="numeric sample: 're,im re,im' rationals")
    parser.add_argument("--dim", type=int, help="toy loop-space dimension")
    parser.add_argument("--cutoff", type=int, help="toy loop-space mode cutoff")
    parser.add_argument("--tolerance", type=float, help="spectrum matching tolerance")
    parser.add_argument("--gap-tolerance", dest="gap_tolerance", type=float,
                        help="eigenvalue distinctness tolerance")
    parser.add_argument("--format", choices=("json", "csv", "text"))
    parser.add_argument("--out", help="write the report to this path")
    parser.add_argument("--jobs", type=int, help="parallel worker count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcflop",
        description="Exact verification of quantum cohomology identities for "
                    "local flop models.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES + ("all",))
    _add_common_flags(verify)

    table = sub.add_parser("table", help="emit invariant tables")
    table.add_argument("which", choices=("genus1",))
    _add_common_flags(table)

    dump = sub.add_parser("dump", help="emit closed-form data")
    dump.add_argument("which", choices=("dG",))
    _add_common_flags(dump)

    return parser


def _overrides(args: argparse.Namespace) -> dict:
    keys = ("r_range", "order", "dmax", "rmatrix_order", "max_m", "max_n",
            "sample", "dim", "cutoff", "tolerance", "gap_tolerance",
            "format", "jobs", "out")
    return {k: getattr(args, k, None) for k in keys}


def cmd_verify(args: argparse.Namespace) -> int:
    config = load_config(_overrides(args))
    report = run_suite(args.suite, config)
    _emit(report.emit(config.format), config.out)
    if not report.all_pass():
        for entry in report.failures():
            print(f"FAIL {entry.anchor} {entry.params} {entry.residual}", file=sys.stderr)
        return 1
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    config = load_config(_overrides(args))
    rows = []
    for r in config.rs():
        table = canonical.genus_one_table(r, config.dmax)
        for d, value in enumerate(table, start=1):
            rows.append((r, d, value))
    single_r = len(config.rs()) == 1
    if config.format == "csv":
        if single_r:
            lines = ["d,invariant"] + [f"{d},{fraction_str(v)}" for (_, d, v) in rows]
        else:
            lines = ["r,d,invariant"] + [f"{r},{d},{fraction_str(v)}" for (r, d, v) in rows]
        text = "\n".join(lines) + "\n"
    elif config.format == "json":
        import json
        payload = [{"r": r, "d": d, "invariant": fraction_str(v)} for (r, d, v) in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = "\n".join(f"r={r} d={d}: {v}" for (r, d, v) in rows) + "\n"
    _emit(text, config.out)
    return 0


def cmd_dump(args: argparse.Namespace) -> int:
    from fractions import Fraction

    config = load_config(_overrides(args))
    payload = []
    for r in config.rs():
        form, const = canonical.genus_one_form(r)
        kappa = Fraction((-1) ** (r + 1) * (r + 1), 24)
        sign = "-" if r % 2 == 1 else "+"
        payload.append({
            "r": r,
            "dlogq_coefficient": ratfunc_q_to_json(form),
            "dropped_constant": fraction_str(const),
            "closed_form": f"({kappa}) * q/(1 {sign} q)",
        })
    if config.format == "json":
        import json
        text = json.dumps(payload, indent=2) + "\n"
    else:
        rows = [f"r={item['r']}: dG/dlogq = {item['closed_form']}"
                f" (constant {item['dropped_constant']} removed)" for item in payload]
        text = "\n".join(rows) + "\n"
    _emit(text, config.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "table":
            return cmd_table(args)
        if args.command == "dump":
            return cmd_dump(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    parser.error("unknown command")
    return 2


if __name__ == "__main__":
    sys.exit(main())
