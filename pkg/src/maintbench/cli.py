"""Command-line front end: ``maintbench analyze | bench | roc``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import traceback
from dataclasses import dataclass, field
from typing import Sequence

from . import __version__
from .analysis import AnalysisConfig, NoInputFiles, analyze_corpus, discover
from .bench import (
    APPROACHES,
    UC1,
    UC2,
    BenchError,
    EmptyCorpus,
    REPORT_COLUMNS,
    evaluate_approach,
    load_labels,
    load_predictions,
    report_rows,
    roc_point,
    roc_sweep,
    sort_reports,
)
from .codemodel import AnalysisError
from .learner import LearnerConfig, LearnerError, cross_validate
from .outputs import ANALYSIS_CACHE, FileRecord, read_cache, to_records, write_analysis, write_jsonl
from .plot import render_roc_svg
from .smells import CatalogError, load_catalog

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_APPROACHES = "A,B,C,D,E,G"

UC_TITLES = {
    UC1: "UC1: maintainable files as the positive class",
    UC2: "UC2: unmaintainable files as the positive class",
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _approach_list(text: str) -> list[str]:
    ids = [t.strip().upper() for t in text.split(",") if t.strip()]
    # F is the fixed human-baseline row and is always reported.
    unknown = [i for i in ids if i not in APPROACHES and i != "F"]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown approach id(s) {','.join(unknown)}; choose from {','.join(APPROACHES)}"
        )
    if not ids:
        raise argparse.ArgumentTypeError("no approaches selected")
    return sorted({i for i in ids if i != "F"})


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", help="root directory of the source corpus")
    common.add_argument("--catalog", help="rule catalog JSON (defaults to the bundled catalog)")
    common.add_argument("--out", required=True, help="output directory (created if absent)")
    common.add_argument("--cost-per-line", type=_positive_float, default=30.0,
                        help="development cost in minutes per line of code (default 30)")
    common.add_argument("--cc-aggregate", choices=("sum", "max", "mean"), default="sum",
                        help="how method complexities combine into a file value")
    common.add_argument("--strict", action="store_true",
                        help="treat unanalyzable files or label mismatches as errors")
    common.add_argument("--jobs", type=_positive_int, default=1, help="parallel analysis workers")

    evaluation = argparse.ArgumentParser(add_help=False)
    evaluation.add_argument("--labels", required=True, help="ground truth CSV (path,project,ordinal)")
    evaluation.add_argument("--approaches", type=_approach_list, default=_approach_list(DEFAULT_APPROACHES),
                            help=f"comma-separated approach ids (default {DEFAULT_APPROACHES})")
    evaluation.add_argument("--seed", type=int, default=0, help="cross-validation shuffle seed")
    evaluation.add_argument("--estimators", type=_positive_int, default=150)
    evaluation.add_argument("--learning-rate", type=_positive_float, default=0.5)
    evaluation.add_argument("--folds", type=int, default=5)
    evaluation.add_argument("--predictions",
                            help="path,score CSV used for approach A instead of cross-validation")

    parser = _Parser(prog="maintbench", description="Maintainability metrics and prediction benchmark.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="per-file metrics, smells, SQALE and health tables")
    sub.add_parser("bench", parents=[common, evaluation], help="score approaches against labels")
    sub.add_parser("roc", parents=[common, evaluation], help="ROC curves and plots for UC1 and UC2")
    return parser


def _config(args) -> AnalysisConfig:
    catalog = load_catalog(args.catalog) if args.catalog else None
    return AnalysisConfig(cost_per_line=args.cost_per_line, cc_aggregate=args.cc_aggregate, catalog=catalog)


def _require_dir(path: str, flag: str) -> None:
    if not os.path.isdir(path):
        raise DataError(f"{flag} {path}: not a directory")


def cmd_analyze(args) -> int:
    if not args.corpus:
        raise UsageError("analyze requires --corpus")
    _require_dir(args.corpus, "--corpus")
    config = _config(args)
    results = analyze_corpus(discover(args.corpus), config, jobs=args.jobs)
    write_analysis(results, args.out)
    failed = [r for r in results if not r.ok]
    ok = len(results) - len(failed)
    print(f"analyzed {len(results)} files: {ok} ok, {len(failed)} failed -> {args.out}")
    for r in failed:
        print(f"  {r.path}: {'; '.join(r.messages)}", file=sys.stderr)
    if failed and args.strict:
        return EXIT_DATA
    return EXIT_OK


# -- bench / roc -------------------------------------------------------------


@dataclass
class Prepared:
    truth: dict[str, bool]
    values: dict[str, dict[str, float]]  # approach id -> path -> value
    diagnostics: list[dict] = field(default_factory=list)


def _load_records(args) -> list[FileRecord]:
    if args.corpus:
        _require_dir(args.corpus, "--corpus")
        records = to_records(analyze_corpus(discover(args.corpus), _config(args), jobs=args.jobs))
        os.makedirs(args.out, exist_ok=True)
        return records
    cache = os.path.join(args.out, ANALYSIS_CACHE)
    if not os.path.isfile(cache):
        raise DataError(f"{cache} not found; run analyze first or pass --corpus")
    return read_cache(args.out)


def prepare(args) -> Prepared:
    """Align analyzed files with labels and compute every selected approach's values."""
    records = _load_records(args)
    with open(args.labels, encoding="utf-8", newline="") as fh:
        labels = load_labels(fh)
    by_path = {r.path: r for r in records}
    diagnostics: list[dict] = []
    truth: dict[str, bool] = {}
    for lab in labels:
        rec = by_path.get(lab.path)
        if rec is None:
            diagnostics.append({"path": lab.path, "kind": "labeled_not_in_corpus"})
        elif not rec.ok:
            diagnostics.append({"path": lab.path, "kind": "unanalyzable", "messages": list(rec.messages)})
        else:
            truth[lab.path] = lab.maintainable
    labeled = {lab.path for lab in labels}
    for rec in records:
        if rec.path not in labeled:
            diagnostics.append({"path": rec.path, "kind": "unlabeled"})
    if args.strict and diagnostics:
        raise DataError(f"{len(diagnostics)} corpus/label mismatches (see diagnostics)")
    if not truth:
        raise EmptyCorpus("no labeled file was analyzed successfully")

    paths = sorted(truth)
    values: dict[str, dict[str, float]] = {}
    for aid in args.approaches:
        spec = APPROACHES[aid]
        if spec.metric_source != "learner_score":
            values[aid] = {p: by_path[p].values[spec.metric_source] for p in paths}
            continue
        if args.predictions:
            with open(args.predictions, encoding="utf-8", newline="") as fh:
                external = load_predictions(fh)
            missing = [p for p in paths if p not in external]
            for p in missing:
                diagnostics.append({"path": p, "kind": "missing_prediction"})
            if missing:
                raise DataError(f"{len(missing)} labeled files have no external prediction")
            values[aid] = {p: external[p] for p in paths}
            continue
        config = LearnerConfig(args.estimators, args.learning_rate, args.folds, args.seed)
        X = [by_path[p].features for p in paths]
        y = [truth[p] for p in paths]
        try:
            cv = cross_validate(X, y, config)
        except LearnerError as exc:
            diagnostics.append({"path": "", "kind": "learner_skipped", "messages": [str(exc)]})
            continue
        values[aid] = {p: float(s) for p, s in zip(paths, cv.oof_scores)}
    return Prepared(truth, values, diagnostics)


def _write_alignment(out_dir: str, prepared: Prepared) -> None:
    rows = sorted(prepared.diagnostics, key=lambda d: (d["kind"], d["path"]))
    write_jsonl(os.path.join(out_dir, "alignment.jsonl"), rows)


def _format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header, *rows]]
    return "\n".join(lines)


def cmd_bench(args) -> int:
    prepared = prepare(args)
    os.makedirs(args.out, exist_ok=True)
    _write_alignment(args.out, prepared)
    reports = [
        evaluate_approach(vals, prepared.truth, APPROACHES[aid]) for aid, vals in prepared.values.items()
    ]
    rows = report_rows(sort_reports(reports))
    with open(os.path.join(args.out, "report.csv"), "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        w.writerows(rows)
    if "A" in prepared.values:
        with open(os.path.join(args.out, "oof_scores.csv"), "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["path", "score"])
            for p, s in sorted(prepared.values["A"].items()):
                w.writerow([p, repr(s)])
    n_pos = sum(prepared.truth.values())
    print(f"{len(prepared.truth)} labeled files ({n_pos} maintainable), "
          f"{len(prepared.diagnostics)} alignment diagnostics")
    print(_format_table(REPORT_COLUMNS, rows))
    return EXIT_OK


def cmd_roc(args) -> int:
    prepared = prepare(args)
    os.makedirs(args.out, exist_ok=True)
    _write_alignment(args.out, prepared)
    # UC2 first: it is the orientation the summary line reports.
    for uc in (UC2, UC1):
        curves = []
        markers = {}
        with open(os.path.join(args.out, f"roc_{uc.lower()}.csv"), "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["approach", "threshold", "fpr", "tpr"])
            for aid, vals in prepared.values.items():
                spec = APPROACHES[aid]
                curve = roc_sweep(vals, prepared.truth, spec, uc)
                for pt in curve.points:
                    t = "" if pt.threshold is None else f"{pt.threshold:g}"
                    w.writerow([aid, t, f"{pt.fpr:.6f}", f"{pt.tpr:.6f}"])
                curves.append((f"({aid}) {spec.name}", curve))
                markers[aid] = roc_point(vals, prepared.truth, spec, use_case=uc)
        svg = render_roc_svg(curves, UC_TITLES[uc], markers)
        with open(os.path.join(args.out, f"roc_{uc.lower()}.svg"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
        if uc == UC2:
            summary = ", ".join(
                f"{c.approach}={'NA' if c.auc is None else f'{c.auc:.3f}'}" for _, c in curves
            )
            print(f"{uc} AUC: {summary}")
    print(f"wrote roc_uc1/roc_uc2 csv and svg to {args.out}")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "bench": cmd_bench, "roc": cmd_roc}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"maintbench: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, NoInputFiles, BenchError, CatalogError, AnalysisError, LearnerError) as exc:
        print(f"maintbench: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"maintbench: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
