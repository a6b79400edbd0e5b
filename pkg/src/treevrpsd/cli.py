"""Command-line front end: generate, inspect, simulate, evaluate, report.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage or validation
error, 3 enumeration over the configured limit.  All outputs are
byte-reproducible for identical flags and seeds.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

from .bounds import bound_set
from .demand import Realization, replication_rng, sample_realization
from .errors import BadParamsError, TooLargeError, ValidationError
from .evaluator import EXACT, MONTE_CARLO, EvalReport, evaluate
from .instance_io import (
    TOPOLOGIES,
    GeneratorParams,
    generate_document,
    parse_document,
    document_to_instance,
    serialize_document,
)
from .oracle import EDGE, PARTITION, PARTITION_MAX_CUSTOMERS, expected_clairvoyant_lb
from .policy import POLICIES, SPLIT, UNSPLIT, format_trace, run_split, run_unsplit
from .tree import dfs_order

REPORT_COLUMNS = (
    "instance",
    "policy",
    "mode",
    "expected_cost",
    "tour_floor",
    "bertsimas",
    "combined_lb",
    "formula_ub",
    "ratio_vs_lb",
    "ub_respected",
    "clairvoyant_lb",
    "sharpened_ratio",
)

# Ratio histogram for the plot-data file: [1.0, 3.0) in steps of 0.1.
HIST_BINS = 20
HIST_LOW = 1.0
HIST_STEP = 0.1


def _cell(value) -> str:
    """Render one CSV cell; floats use repr so bytes round-trip."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _load_instance(path: str):
    text = Path(path).read_text(encoding="utf-8")
    doc = parse_document(text)
    tree, model = document_to_instance(doc)
    return doc, tree, model


# -- subcommand handlers ----------------------------------------------------

def _cmd_gen(args: argparse.Namespace) -> int:
    params = GeneratorParams(
        n=args.n,
        capacity=args.capacity,
        topology=args.topology,
        pmf=args.pmf,
        seed=args.seed,
        length_range=(args.length_range[0], args.length_range[1]),
        name=args.name,
    )
    doc = generate_document(params)
    Path(args.out).write_text(serialize_document(doc), encoding="utf-8")
    print(args.out)
    return 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    _, tree, model = _load_instance(args.instance)
    bounds = bound_set(tree, model)
    for field in ("tour_floor", "bertsimas", "combined_lb", "split_ub", "unsplit_ub"):
        print(f"{field} {getattr(bounds, field)!r}")
    return 0


def _parse_demand_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise BadParamsError(f"--demands must be comma-separated integers, got {text!r}") from None


def _cmd_simulate(args: argparse.Namespace) -> int:
    _, tree, model = _load_instance(args.instance)
    if args.demands is not None:
        if args.load is None:
            raise BadParamsError("--load is required when --demands is given")
        realization = Realization(_parse_demand_list(args.demands), args.load)
    else:
        rng = replication_rng(args.seed, 0)
        realization = sample_realization(model, rng)
        if args.load is not None:
            realization = Realization(realization.demands, args.load)
    run = run_split if args.policy == SPLIT else run_unsplit
    trace = run(tree, dfs_order(tree), realization)
    sys.stdout.write(format_trace(trace))
    print(f"TOTAL {trace.total_length!r}")
    return 0


def _report_payload(report: EvalReport) -> dict:
    payload = {
        "instance": report.instance_id,
        "policy": report.policy,
        "mode": report.mode,
        "expected_cost": report.expected_cost,
        "tour_floor": report.bounds.tour_floor,
        "bertsimas": report.bounds.bertsimas,
        "combined_lb": report.bounds.combined_lb,
        "formula_ub": report.formula_ub,
        "ratio_vs_lb": report.ratio_vs_lb,
        "ub_respected": report.ub_respected,
    }
    if report.estimate is not None:
        payload["estimate"] = {
            "mean": report.estimate.mean,
            "stderr": report.estimate.stderr,
            "ci95_low": report.estimate.ci95_low,
            "ci95_high": report.estimate.ci95_high,
            "samples": report.estimate.samples,
            "seed": report.estimate.seed,
        }
    return payload


def _cmd_evaluate(args: argparse.Namespace) -> int:
    doc, tree, model = _load_instance(args.instance)
    report = evaluate(
        tree,
        model,
        policy=args.policy,
        mode=args.mode,
        samples=args.samples,
        master_seed=args.seed,
        instance_id=doc.name,
    )
    payload = _report_payload(report)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        columns = [c for c in REPORT_COLUMNS if c in payload]
        writer.writerow(columns)
        writer.writerow([_cell(payload[c]) for c in columns])
    return 0


def _evaluate_rows(doc, tree, model, args) -> list[dict]:
    rows = []
    for policy in POLICIES:
        try:
            report = evaluate(tree, model, policy=policy, mode=EXACT, instance_id=doc.name)
        except TooLargeError:
            report = evaluate(
                tree,
                model,
                policy=policy,
                mode=MONTE_CARLO,
                samples=args.samples,
                master_seed=args.seed,
                instance_id=doc.name,
            )
        row = _report_payload(report)
        row.pop("estimate", None)
        # The per-realization optimum is unsplit-shaped, so its partition
        # oracle bounds only the unsplit policy; the edge bound holds for
        # both.
        if policy == UNSPLIT and tree.n_customers <= PARTITION_MAX_CUSTOMERS:
            clair_mode = PARTITION
        else:
            clair_mode = EDGE
        try:
            clair = expected_clairvoyant_lb(tree, model, mode=clair_mode)
        except TooLargeError:
            clair = None
        row["clairvoyant_lb"] = clair
        if clair is None:
            row["sharpened_ratio"] = None
        else:
            row["sharpened_ratio"] = row["expected_cost"] / clair if clair > 0 else 1.0
        rows.append(row)
    return rows


def _write_histogram(path: Path, rows: Sequence[dict]) -> None:
    counts = {policy: [0] * HIST_BINS for policy in POLICIES}
    for row in rows:
        # Ratios below 1 or at/above 3 cannot occur for these policies;
        # clamp defensively so a row is never dropped silently.
        index = int((row["ratio_vs_lb"] - HIST_LOW) / HIST_STEP)
        counts[row["policy"]][min(max(index, 0), HIST_BINS - 1)] += 1
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["policy", "bin_low", "bin_high", "count"])
        for policy in POLICIES:
            for i, count in enumerate(counts[policy]):
                low = HIST_LOW + i * HIST_STEP
                writer.writerow(
                    [policy, format(low, ".2f"), format(low + HIST_STEP, ".2f"), count]
                )


def _cmd_report(args: argparse.Namespace) -> int:
    corpus_dir = Path(args.corpus_dir)
    if not corpus_dir.is_dir():
        raise BadParamsError(f"--corpus-dir {args.corpus_dir!r} is not a directory")
    out_csv = Path(args.out_csv)
    out_plot = Path(args.out_plot) if args.out_plot else out_csv.with_suffix(".plot.csv")

    rows: list[dict] = []
    failures: list[tuple[str, str]] = []
    for path in sorted(corpus_dir.glob("*.json")):
        try:
            text = path.read_text(encoding="utf-8")
            doc = parse_document(text)
            tree, model = document_to_instance(doc)
            rows.extend(_evaluate_rows(doc, tree, model, args))
        except (ValidationError, TooLargeError, OSError) as exc:
            failures.append((path.name, str(exc)))
    rows.sort(key=lambda row: (row["instance"], row["policy"]))

    with out_csv.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in REPORT_COLUMNS])
    _write_histogram(out_plot, rows)
    print(out_csv)

    if failures:
        for name, message in failures:
            print(f"error: {name}: {message}", file=sys.stderr)
        print(f"report: {len(failures)} instance(s) failed", file=sys.stderr)
        return 1
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treevrpsd",
        description="Vehicle routing with stochastic demands on tree networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random instance document")
    gen.add_argument("--n", type=int, required=True, help="number of customers")
    gen.add_argument("--capacity", type=int, required=True, help="vehicle capacity Q")
    gen.add_argument("--topology", choices=TOPOLOGIES, default="path")
    gen.add_argument("--pmf", required=True, help="det:<k> | unif:<lo>-<hi> | two:<k1>,<p1>,<k2>")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument(
        "--length-range",
        type=float,
        nargs=2,
        default=(1.0, 1.0),
        metavar=("LOW", "HIGH"),
    )
    gen.add_argument("--name", default=None, help="override the derived instance name")
    gen.add_argument("--out", required=True, help="output file path")
    gen.set_defaults(handler=_cmd_gen)

    bounds = sub.add_parser("bounds", help="print the bound set of an instance")
    bounds.add_argument("--instance", required=True, help="instance document path")
    bounds.set_defaults(handler=_cmd_bounds)

    simulate = sub.add_parser("simulate", help="run one realization and dump the trace")
    simulate.add_argument("--instance", required=True, help="instance document path")
    simulate.add_argument("--policy", choices=POLICIES, required=True)
    simulate.add_argument("--demands", default=None, help="explicit demands, e.g. 2,1,3")
    simulate.add_argument("--load", type=int, default=None, help="initial load (1..Q)")
    simulate.add_argument("--seed", type=int, default=0, help="seed when demands are drawn")
    simulate.set_defaults(handler=_cmd_simulate)

    ev = sub.add_parser("evaluate", help="expected cost, bounds, and ratio for one instance")
    ev.add_argument("--instance", required=True, help="instance document path")
    ev.add_argument("--policy", choices=POLICIES, required=True)
    ev.add_argument("--mode", choices=(EXACT, "mc", MONTE_CARLO), default=EXACT)
    ev.add_argument("--samples", type=int, default=10_000)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--format", choices=("json", "csv"), default="json")
    ev.set_defaults(handler=_cmd_evaluate)

    report = sub.add_parser("report", help="evaluate a corpus directory into CSV")
    report.add_argument("--corpus-dir", required=True)
    report.add_argument("--out-csv", required=True)
    report.add_argument("--out-plot", default=None, help="histogram CSV (default: <out-csv>.plot.csv)")
    report.add_argument("--samples", type=int, default=10_000, help="Monte Carlo fallback sample count")
    report.add_argument("--seed", type=int, default=0)
    report.set_defaults(handler=_cmd_report)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
