"""Query latency measurement with warm-up and min/median/max reporting.

Each query gets one unmeasured warm-up execution, then N timed runs.
Reports carry milliseconds and the result total so regressions in either
speed or matching show up. The optional report directory receives a CSV
and a bar-chart PNG of the same numbers.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass
from pathlib import Path

from .querylang import ParseError, parse_query
from .store import CaseStore


@dataclass
class QueryTiming:
    query: str
    total_results: int
    samples_ms: list[float]

    @property
    def min_ms(self) -> float:
        return min(self.samples_ms)

    @property
    def median_ms(self) -> float:
        return statistics.median(self.samples_ms)

    @property
    def max_ms(self) -> float:
        return max(self.samples_ms)

    def to_json(self) -> dict:
        return {
            "query": self.query,
            "totalResults": self.total_results,
            "minMs": round(self.min_ms, 3),
            "medianMs": round(self.median_ms, 3),
            "maxMs": round(self.max_ms, 3),
            "samples": len(self.samples_ms),
        }


def load_query_file(path: str | Path) -> list[tuple[int, str]]:
    """Read one query per line; blank lines and # comments are skipped."""
    out = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, stripped))
    return out


def parse_query_lines(lines: list[tuple[int, str]]):
    """Parse every bench query up front; any error aborts with its line number."""
    parsed = []
    for lineno, text in lines:
        try:
            parsed.append((text, parse_query(text)))
        except ParseError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return parsed


def run_bench(store: CaseStore, queries: list[tuple[int, str]], repeat: int = 10) -> list[QueryTiming]:
    """Time each query against the store; one warm-up run precedes timing."""
    if repeat < 1:
        raise ValueError("repeat must be >= 1")
    parsed = parse_query_lines(queries)
    results = []
    for text, ast in parsed:
        store.search(ast, limit=20)  # warm-up
        samples = []
        total = 0
        for _ in range(repeat):
            started = time.perf_counter()
            page = store.search(ast, limit=20)
            samples.append((time.perf_counter() - started) * 1000.0)
            total = page.total
        results.append(QueryTiming(query=text, total_results=total, samples_ms=samples))
    return results


def write_report(results: list[QueryTiming], report_dir: str | Path) -> dict:
    """Write latency.csv and latency.png under report_dir; returns the paths."""
    report_dir = Path(report_dir)
    report_dir.mkdir(parents=True, exist_ok=True)
    csv_path = report_dir / "latency.csv"
    png_path = report_dir / "latency.png"

    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["query", "totalResults", "minMs", "medianMs", "maxMs", "samples"])
        for timing in results:
            row = timing.to_json()
            writer.writerow(
                [row["query"], row["totalResults"], row["minMs"], row["medianMs"], row["maxMs"], row["samples"]]
            )

    _render_figure(results, png_path)
    return {"csv": str(csv_path), "png": str(png_path)}


def _render_figure(results: list[QueryTiming], png_path: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"#{i + 1}" for i in range(len(results))]
    medians = [timing.median_ms for timing in results]
    mins = [timing.min_ms for timing in results]
    maxes = [timing.max_ms for timing in results]
    yerr = [
        [median - low for median, low in zip(medians, mins)],
        [high - median for median, high in zip(medians, maxes)],
    ]

    fig, ax = plt.subplots(figsize=(max(4.0, 1.2 * len(results) + 2), 3.5))
    ax.bar(labels, medians, yerr=yerr, capsize=4, color="#4878a8")
    ax.set_ylabel("response time (ms)")
    ax.set_xlabel("query")
    ax.set_title("Search latency (median, min-max whiskers)")
    for i, timing in enumerate(results):
        ax.annotate(
            f"{timing.median_ms:.0f}",
            (i, timing.median_ms),
            textcoords="offset points",
            xytext=(0, 4),
            ha="center",
            fontsize=8,
        )
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
