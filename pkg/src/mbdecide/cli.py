"""Command-line interface: decide, plot, error-rate scans and the service.

Configuration is read from --config, falling back to the MBD_CONFIG
environment variable, falling back to defaults.  Parse and file errors
exit with status 2 and a diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .chart import CHART_KINDS, build_chart, render_svg
from .errorrates import (
    TruthModel,
    monte_carlo_distribution,
    substantive_codes,
    type1_rate,
)
from .ingest import (
    NORMALIZED_RANGE,
    AnalysisConfig,
    CsvParseError,
    config_to_dict,
    load_config,
    normalize_by_sme,
    parse_study_csv,
)
from .service import _decisions_payload, create_app


def _load_config_arg(path: str | None) -> AnalysisConfig:
    if path is None:
        path = os.environ.get("MBD_CONFIG") or None
    if path is None:
        return AnalysisConfig()
    with open(path, "rb") as fh:
        return load_config(fh.read())


def _load_table(args):
    with open(args.csv, "rb") as fh:
        table = parse_study_csv(fh.read())
    config = _load_config_arg(args.config)
    if getattr(args, "normalize_sme", None) is not None:
        default_sme = None if args.normalize_sme == "per-row" else float(args.normalize_sme)
        table = normalize_by_sme(table, default_sme)
        config = config.with_range(NORMALIZED_RANGE)
    return table, config


def _cmd_decide(args) -> int:
    table, config = _load_table(args)
    decisions = _decisions_payload(table, config)
    header = (
        f"{'id':<12} {'p(H1-)':>9} {'p(H1+)':>9} {'p(H2-)':>9} {'p(H2+)':>9} "
        f"{'L1-':>4} {'L1+':>4} {'L2-':>4} {'L2+':>4}  decision"
    )
    print(header)
    for d in decisions:
        p = d["p_values"]
        lv = d["levels"]
        label = d["label"]
        if d["clinical_annotation"]:
            label += f" [{d['clinical_annotation'].replace('_', ' ')}]"
        print(
            f"{d['id']:<12} {p['h1_minus']:>9.4g} {p['h1_plus']:>9.4g} "
            f"{p['h2_minus']:>9.4g} {p['h2_plus']:>9.4g} "
            f"{lv['h1_minus']:>4d} {lv['h1_plus']:>4d} {lv['h2_minus']:>4d} {lv['h2_plus']:>4d}  {label}"
        )
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"decisions": decisions}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_plot(args) -> int:
    table, config = _load_table(args)
    chart = build_chart(table, config, args.kind, args.df)
    svg = render_svg(chart)
    with open(args.out, "wb") as fh:
        fh.write(svg)
    print(f"wrote {args.out} ({len(svg)} bytes, kind={args.kind})")
    return 0


def _parse_grid(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("se grid must be MIN:MAX:N")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if lo <= 0 or hi <= lo or n < 2:
        raise ValueError("se grid must satisfy 0 < MIN < MAX and N >= 2")
    return np.geomspace(lo, hi, n)


def _cmd_error(args) -> int:
    config = _load_config_arg(args.config)
    grid = _parse_grid(args.se_grid)
    codes = substantive_codes(args.substantive, config.ladder.depth, config.variant)
    report = {"substantive": args.substantive, "per_df": []}
    for df in args.df:
        rows = []
        for i, se in enumerate(grid):
            truth = TruthModel(args.true_effect, float(se), df)
            rate = type1_rate(
                truth, config.range, config.ladder, config.variant, config.rule, codes
            )
            row = {"se": float(se), "rate": float(rate)}
            if args.mc:
                mc = monte_carlo_distribution(
                    truth,
                    config.range,
                    config.ladder,
                    config.variant,
                    config.rule,
                    n_draws=args.mc,
                    seed=args.seed + i,
                )
                row["mc_rate"] = mc.total(codes)
            rows.append(row)
        best = max(rows, key=lambda r: r["rate"])
        entry = {
            "df": df,
            "rows": rows,
            "max_rate": best["rate"],
            "argmax_se": best["se"],
        }
        report["per_df"].append(entry)
        print(f"df={df:g}  substantive={args.substantive}  true_effect={args.true_effect:g}")
        head = f"  {'se':>12} {'rate':>12}" + (f" {'mc_rate':>12}" if args.mc else "")
        print(head)
        for row in rows:
            line = f"  {row['se']:>12.6g} {row['rate']:>12.6g}"
            if args.mc:
                line += f" {row['mc_rate']:>12.6g}"
            print(line)
        summary = f"  max rate {best['rate']:.6g} at se={best['se']:.6g}"
        if args.cap is not None:
            ok = best["rate"] <= args.cap + 1e-9
            summary += f"  [cap {args.cap:g}: {'PASS' if ok else 'FAIL'}]"
            entry["cap"] = args.cap
            entry["passed"] = ok
        print(summary)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.cap is not None and any(not e.get("passed", True) for e in report["per_df"]):
        return 1
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    config = _load_config_arg(args.config)
    static = args.static
    if static is None and os.path.isdir(os.path.join("frontend", "dist")):
        static = os.path.join("frontend", "dist")
    app = create_app(config, static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbd", description="magnitude-based decisions from trial summary statistics"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_decide = sub.add_parser("decide", help="decide every study row of a CSV")
    p_decide.add_argument("csv", help="study table: id,effect,se,df[,sme]")
    p_decide.add_argument("--config", help="analysis config JSON (default: $MBD_CONFIG)")
    p_decide.add_argument("--json", help="also write decisions to this JSON file")
    p_decide.add_argument(
        "--normalize-sme",
        nargs="?",
        const="per-row",
        help="scale rows by their smallest meaningful effect (optionally a shared value); the range becomes [-1, 1]",
    )
    p_decide.set_defaults(func=_cmd_decide)

    p_plot = sub.add_parser("plot", help="render a region chart to SVG")
    p_plot.add_argument("csv", help="study table: id,effect,se,df[,sme]")
    p_plot.add_argument("--out", required=True, help="output SVG path")
    p_plot.add_argument("--kind", choices=CHART_KINDS, default="mbd")
    p_plot.add_argument("--config", help="analysis config JSON (default: $MBD_CONFIG)")
    p_plot.add_argument("--df", type=float, default=18.0, help="df for region boundaries")
    p_plot.add_argument("--normalize-sme", nargs="?", const="per-row")
    p_plot.set_defaults(func=_cmd_plot)

    p_error = sub.add_parser("error", help="Type I rate scan over a standard-error grid")
    p_error.add_argument("--config", help="analysis config JSON (default: $MBD_CONFIG)")
    p_error.add_argument("--true-effect", type=float, default=0.0)
    p_error.add_argument("--df", type=float, action="append", default=None)
    p_error.add_argument("--se-grid", default="0.002:4.0:200", help="MIN:MAX:N, log-spaced")
    p_error.add_argument("--substantive", default="likely-positive+")
    p_error.add_argument("--cap", type=float, default=None, help="declared cap to check against")
    p_error.add_argument("--mc", type=int, default=None, help="Monte Carlo draws per grid point")
    p_error.add_argument("--seed", type=int, default=0)
    p_error.add_argument("--json", help="write the full report to this JSON file")
    p_error.set_defaults(func=_cmd_error)

    p_serve = sub.add_parser("serve", help="run the HTTP JSON service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--config", help="analysis config JSON (default: $MBD_CONFIG)")
    p_serve.add_argument("--static", help="directory of web UI assets to serve at /")
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "error" and args.df is None:
        args.df = [18.0]
    try:
        return args.func(args)
    except (CsvParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
