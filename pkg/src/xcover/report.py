"""Engine benchmarks over a corpus of instance files, as a table and as figures."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from .errors import CoverError
from .fileio import read_instance
from .search import EngineKind, SearchLimits, SearchStats, solve

log = logging.getLogger(__name__)

COLUMNS = (
    "instance",
    "engine",
    "repeat",
    "rows",
    "columns",
    "solutions",
    "total_updates",
    "max_depth",
    "halted_by",
    "wall_time",
    "updates_per_second",
)


@dataclass
class BenchResult:
    instance: str
    engine: EngineKind
    repeat: int
    rows: int
    columns: int
    stats: SearchStats

    def cells(self) -> list[str]:
        s = self.stats
        return [
            self.instance,
            self.engine.value,
            str(self.repeat),
            str(self.rows),
            str(self.columns),
            str(s.solutions_found),
            str(s.total_updates),
            str(s.max_depth),
            s.halted_by.value,
            f"{s.wall_time:.6f}",
            f"{s.updates_per_second:.0f}",
        ]


def load_corpus(directory: Path, errors: list[str] | None = None):
    """Yield (name, instance) for every parseable file, in name order."""
    for path in sorted(p for p in Path(directory).iterdir() if p.is_file()):
        try:
            inst = read_instance(path.read_bytes())
        except (OSError, CoverError) as exc:
            msg = f"{path.name}: skipped ({exc})"
            log.warning(msg)
            if errors is not None:
                errors.append(msg)
            continue
        yield path.name, inst


def run_bench(
    directory: Path,
    engines: list[EngineKind],
    repeats: int = 1,
    limits: SearchLimits | None = None,
    errors: list[str] | None = None,
) -> list[BenchResult]:
    results = []
    for name, inst in load_corpus(directory, errors):
        for engine in engines:
            for rep in range(1, repeats + 1):
                stats = solve(inst, engine, limits)
                results.append(BenchResult(name, engine, rep, inst.n_rows, inst.n_columns, stats))
    return results


def format_table(results: list[BenchResult]) -> str:
    lines = [
        "# wall_time and updates_per_second vary between runs; all other columns are deterministic",
        "\t".join(COLUMNS),
    ]
    lines.extend("\t".join(r.cells()) for r in results)
    return "\n".join(lines) + "\n"


def _first_repeats(results: list[BenchResult]) -> list[BenchResult]:
    return [r for r in results if r.repeat == 1]


def plot_level_profiles(results: list[BenchResult], out_dir: Path) -> list[Path]:
    """One bar chart per instance: updates at each search level, per engine."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    by_instance: dict[str, list[BenchResult]] = {}
    for r in _first_repeats(results):
        by_instance.setdefault(r.instance, []).append(r)

    written = []
    for name, group in by_instance.items():
        fig, ax = plt.subplots(figsize=(6, 3.5))
        width = 0.8 / len(group)
        for k, r in enumerate(group):
            levels = sorted(r.stats.updates_per_level)
            counts = [r.stats.updates_per_level[lv] for lv in levels]
            ax.bar([lv + (k - (len(group) - 1) / 2) * width for lv in levels], counts, width, label=r.engine.value)
        ax.set_yscale("log")
        ax.set_xlabel("search level")
        ax.set_ylabel("updates")
        ax.set_title(name)
        ax.legend(frameon=False)
        fig.tight_layout()
        path = out_dir / f"{Path(name).stem}_levels.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written


def plot_rates(results: list[BenchResult], out_dir: Path) -> Path:
    """Updates per second of each engine on each instance (mean over repeats)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = list(dict.fromkeys(r.instance for r in results))
    engines = list(dict.fromkeys(r.engine for r in results))
    fig, ax = plt.subplots(figsize=(max(4, 1.2 * len(names) + 2), 3.5))
    width = 0.8 / max(len(engines), 1)
    for k, engine in enumerate(engines):
        rates = []
        for name in names:
            samples = [r.stats.updates_per_second for r in results if r.instance == name and r.engine is engine]
            rates.append(sum(samples) / len(samples) if samples else 0.0)
        ax.bar([i + (k - (len(engines) - 1) / 2) * width for i in range(len(names))], rates, width, label=engine.value)
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_yscale("log")
    ax.set_ylabel("updates / second")
    ax.legend(frameon=False)
    fig.tight_layout()
    path = out_dir / "update_rates.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
