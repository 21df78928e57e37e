"""Writers and readers for the per-file artifact tables.

Everything is CSV or JSON lines with sorted rows and fixed number
formatting, so two runs over the same corpus produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .analysis import FEATURE_NAMES, FileAnalysis

VALUE_SOURCES = ("mi", "health_value", "code_lines", "td_time", "td_ratio")

ANALYSIS_CACHE = "analysis.jsonl"


@dataclass(frozen=True)
class FileRecord:
    """What the benchmark needs from one analyzed file."""

    path: str
    project: str
    status: str
    messages: tuple[str, ...]
    values: dict[str, float]
    features: tuple[float, ...]

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def to_records(results: Iterable[FileAnalysis]) -> list[FileRecord]:
    records = []
    for r in results:
        values = {src: r.metric(src) for src in VALUE_SOURCES} if r.ok else {}
        records.append(
            FileRecord(r.path, r.project, r.status, tuple(r.messages), values, tuple(r.features))
        )
    return records


def _open_csv(path: str):
    fh = open(path, "w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_jsonl(path: str, rows: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def write_analysis(results: Sequence[FileAnalysis], out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    ok = [r for r in results if r.ok]

    fh, w = _open_csv(os.path.join(out_dir, "metrics.csv"))
    with fh:
        w.writerow(["path", "loc", "cc_file", "cc_max", "n1", "n2", "N1", "N2", "volume", "mi", "mi_band"])
        for r in ok:
            m = r.metrics
            h = m.halstead
            w.writerow([r.path, m.loc, m.cc_file, m.cc_max, h.n1, h.n2, h.N1, h.N2,
                        f"{h.volume:.4f}", f"{m.mi:.4f}", m.mi_band])

    write_jsonl(
        os.path.join(out_dir, "findings.jsonl"),
        (f.to_json() for r in ok for f in [*r.structural, *r.lint]),
    )

    fh, w = _open_csv(os.path.join(out_dir, "sqale.csv"))
    with fh:
        w.writerow(["path", "td_time_minutes", "code_lines", "td_ratio", "rating"])
        for r in ok:
            s = r.sqale
            w.writerow([r.path, f"{s.td_time_minutes:g}", s.code_lines, f"{s.td_ratio:.3f}", s.rating])

    fh, w = _open_csv(os.path.join(out_dir, "health.csv"))
    with fh:
        w.writerow(["path", "health_value", "health_category", "smells"])
        for r in ok:
            h = r.health
            smells = ";".join(f"{k}:{v}" for k, v in h.contributions.items())
            w.writerow([r.path, f"{h.value:.1f}", h.category, smells])

    fh, w = _open_csv(os.path.join(out_dir, "features.csv"))
    with fh:
        w.writerow(["path", *FEATURE_NAMES])
        for r in ok:
            w.writerow([r.path, *(f"{v:.6g}" for v in r.features)])

    write_jsonl(
        os.path.join(out_dir, "diagnostics.jsonl"),
        ({"path": r.path, "status": r.status, "messages": list(r.messages)} for r in results),
    )

    write_cache(to_records(results), out_dir)


def write_cache(records: Sequence[FileRecord], out_dir: str) -> None:
    """Full-precision values for ``bench``/``roc``; the first line holds the feature names."""
    header = {"feature_names": list(FEATURE_NAMES)}
    rows = (
        {
            "path": r.path,
            "project": r.project,
            "status": r.status,
            "messages": list(r.messages),
            "values": r.values,
            "features": list(r.features),
        }
        for r in records
    )
    write_jsonl(os.path.join(out_dir, ANALYSIS_CACHE), [header, *rows])


def read_cache(out_dir: str) -> list[FileRecord]:
    with open(os.path.join(out_dir, ANALYSIS_CACHE), encoding="utf-8") as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    if not lines or lines[0].get("feature_names") != list(FEATURE_NAMES):
        raise ValueError(f"{ANALYSIS_CACHE} was written with a different feature set; rerun analyze")
    return [
        FileRecord(
            path=f["path"],
            project=f["project"],
            status=f["status"],
            messages=tuple(f["messages"]),
            values=dict(f["values"]),
            features=tuple(f["features"]),
        )
        for f in lines[1:]
    ]
