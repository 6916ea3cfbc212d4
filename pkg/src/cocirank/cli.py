"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 config error, 4 convergence failure.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import ingest
from .network import DanglingNodeError
from .pagerank import DEFAULT_GRID, DEFAULT_TOL, ConvergenceError
from .report import (DEFAULT_SELECTION, Analysis, fmt6, pagerank_filename, parse_measure,
                     write_centrality_csv, write_correlation_csv, write_pagerank_csv, write_rank_table,
                     write_scatter_csv)
from .scores import correlation_matrix, mean_correlation

logger = logging.getLogger("cocirank")

EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_CONVERGENCE = 4


class ConfigError(ValueError):
    pass


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    input: Path
    format: str = "papers-csv"
    stats: Path | None = None
    threshold: int = 200
    diagonal: str = "zero"
    dangling: str = "uniform"
    theta: int = 1
    weight: str = "uniform"
    custom_path: Path | None = None
    d_values: list[float] = field(default_factory=lambda: list(DEFAULT_GRID))
    tol: float = DEFAULT_TOL
    max_iter: int | None = None
    method: str = "power"
    pair_multiplicity: bool = False
    out: Path = Path("out")
    seed: int = 42

    def validate(self) -> None:
        if not self.d_values:
            raise ConfigError("no damping factors given")
        for d in self.d_values:
            if not 0 <= d < 1:
                raise ConfigError(f"damping factor {d} outside [0, 1)")
        if not self.tol > 0:
            raise ConfigError("--tol must be > 0")
        if self.theta < 1:
            raise ConfigError("--theta must be >= 1")
        if self.threshold < 0:
            raise ConfigError("--threshold must be >= 0")
        if self.max_iter is not None and self.max_iter < 1:
            raise ConfigError("--max-iter must be >= 1")


def parse_d_values(specs: list[str] | None) -> list[float]:
    """Expand ``--d`` values; each is a number or an inclusive ``start:end:step``."""
    if not specs:
        return list(DEFAULT_GRID)
    values: list[float] = []
    for spec in specs:
        try:
            if ":" in spec:
                start, end, step = (float(p) for p in spec.split(":"))
                if step <= 0 or end < start:
                    raise ConfigError(f"bad --d range {spec!r}")
                count = int(round((end - start) / step)) + 1
                values.extend(round(start + i * step, 10) for i in range(count))
            else:
                values.append(float(spec))
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad --d value {spec!r}") from None
    return list(dict.fromkeys(values))


def _read_custom_weights(path: Path) -> dict[str, float]:
    weights = {}
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["author_id", "weight"]:
            raise ingest.ParseError("expected header 'author_id,weight'", 1)
        for row in reader:
            if not row:
                continue
            try:
                weights[row[0].strip()] = float(row[1])
            except (IndexError, ValueError):
                raise ingest.ParseError(f"bad weight row {row!r}", reader.line_num) from None
    return weights


def load_analysis(cfg: RunConfig) -> Analysis:
    stats = None
    with open(cfg.input, newline="", encoding="utf-8") as f:
        if cfg.format == "papers-csv":
            papers = ingest.parse_papers(f)
            stats = ingest.accumulate_stats(papers)
            authors = ingest.select_top_authors(stats, cfg.threshold)
            if not authors:
                raise InputError(f"no author has more than {cfg.threshold} citations")
            net = ingest.build_cocitation(papers, authors, cfg.pair_multiplicity)
        elif cfg.format == "edges-csv":
            net = ingest.load_edges(f)
            if net.n == 0:
                raise InputError("edge list is empty")
        else:
            raise ConfigError("stats-csv carries no network; pass it with --stats next to edges-csv")
    if cfg.stats is not None:
        with open(cfg.stats, newline="", encoding="utf-8") as f:
            stats = ingest.load_stats(f)
    custom = _read_custom_weights(cfg.custom_path) if cfg.custom_path else None
    return Analysis(net, stats, cfg.diagonal, cfg.dangling, cfg.theta, cfg.tol, cfg.max_iter,
                    cfg.method, custom)


def cmd_rank(cfg: RunConfig) -> None:
    analysis = load_analysis(cfg)
    try:
        analysis.teleport(cfg.weight)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    cfg.out.mkdir(parents=True, exist_ok=True)
    for d in cfg.d_values:
        if cfg.method in ("power", "both"):
            write_pagerank_csv(cfg.out / pagerank_filename(cfg.weight, d), analysis.authors,
                               analysis.pagerank(cfg.weight, d, "power"))
        if cfg.method in ("direct", "both"):
            suffix = "_direct" if cfg.method == "both" else ""
            write_pagerank_csv(cfg.out / pagerank_filename(cfg.weight, d, suffix), analysis.authors,
                               analysis.pagerank(cfg.weight, d, "direct"))
    write_rank_table(cfg.out / "rank_table.csv", analysis, cfg.weight, cfg.d_values)
    write_centrality_csv(cfg.out / "centrality.csv", analysis)
    print(f"ranked {analysis.network.n} authors at {len(cfg.d_values)} damping factors -> {cfg.out}")


def _check_labels(labels):
    for label in labels:
        try:
            parse_measure(label)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def cmd_correlate(cfg: RunConfig, measures: list[str], significance: str = "t",
                  mean_cells: list[str] | None = None) -> None:
    _check_labels(measures)
    analysis = load_analysis(cfg)
    try:
        rankings = [analysis.ranking(m) for m in measures]
    except ConvergenceError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    matrix = correlation_matrix(rankings, permutation=significance == "permutation", seed=cfg.seed)
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / "correlation.csv"
    write_correlation_csv(path, measures, matrix)
    print(f"{len(measures)}x{len(measures)} correlation matrix -> {path}")
    if mean_cells:
        cells = []
        for cell in mean_cells:
            row, sep, col = cell.partition("/")
            if not sep or row not in measures or col not in measures:
                raise ConfigError(f"--mean-cell {cell!r} must be ROW/COL over the selected measures")
            cells.append((row, col))
        print(f"mean r over {len(cells)} cells: {fmt6(mean_correlation(matrix, measures, cells))}")


def cmd_scatter(cfg: RunConfig, x: str, y: str) -> None:
    _check_labels([x, y])
    analysis = load_analysis(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / "scatter.csv"
    try:
        write_scatter_csv(path, analysis, x, y)
    except ConvergenceError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    print(f"scatter {x} vs {y} -> {path}")


def cmd_ingest_check(cfg: RunConfig) -> None:
    with open(cfg.input, newline="", encoding="utf-8") as f:
        if cfg.format == "papers-csv":
            papers = ingest.parse_papers(f)
            stats = ingest.accumulate_stats(papers)
            selected = ingest.select_top_authors(stats, cfg.threshold)
            print(f"papers: {len(papers)}")
            print(f"citation pairs: {sum(len(p.cited_authors) for p in papers)}")
            print(f"cited authors: {sum(1 for s in stats.values() if s.citation_count)}")
            print(f"selected authors (>{cfg.threshold} citations): {len(selected)}")
        elif cfg.format == "edges-csv":
            net = ingest.load_edges(f)
            pairs = int((net.A > 0).sum() - (net.A.diagonal() > 0).sum()) // 2
            print(f"authors: {net.n}")
            print(f"co-cited pairs: {pairs}")
        else:
            stats = ingest.load_stats(f)
            print(f"authors: {len(stats)}")
            print(f"citations: {sum(s.citation_count for s in stats.values())}")
            print(f"first-author papers: {sum(s.first_author_pub_count for s in stats.values())}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, type=Path)
    common.add_argument("--format", choices=ingest.FORMATS, default="papers-csv")
    common.add_argument("--stats", type=Path, help="stats-csv to pair with an edges-csv input")
    common.add_argument("--threshold", type=int, default=200, help="keep authors cited more than this")
    common.add_argument("--d", action="append", metavar="D|START:END:STEP",
                        help="damping factor(s); repeatable (default 0.05:0.95:0.1)")
    common.add_argument("--weight", default="uniform",
                        help="uniform | citations | publications | custom:<path>")
    common.add_argument("--diagonal", choices=("keep", "zero"), default="zero")
    common.add_argument("--dangling", choices=("uniform", "error"), default="uniform")
    common.add_argument("--theta", type=int, default=1, help="edge threshold for centralities")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--max-iter", type=int)
    common.add_argument("--method", choices=("power", "direct", "both"), default="power")
    common.add_argument("--pair-multiplicity", action="store_true",
                        help="count reference-level pair products instead of co-citing papers")
    common.add_argument("--out", type=Path, default=Path("out"))
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="cocirank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rank", parents=[common], help="PageRank sweep, rank table, centralities")
    p = sub.add_parser("correlate", parents=[common], help="Spearman correlation matrix")
    p.add_argument("--measures", help="comma-separated labels (default: the 14-measure layout)")
    p.add_argument("--significance", choices=("t", "permutation"), default="t")
    p.add_argument("--mean-cell", action="append", metavar="ROW/COL",
                   help="report the mean r over these cells; repeatable")
    p = sub.add_parser("scatter", parents=[common], help="rank-vs-rank table for plotting")
    p.add_argument("--x", default="Citation")
    p.add_argument("--y", default="PR(.55)")
    sub.add_parser("ingest-check", parents=[common], help="validate input and print corpus stats")
    return parser


def config_from_args(args) -> RunConfig:
    weight, custom = args.weight, None
    if weight.startswith("custom:"):
        weight, custom = "custom", Path(args.weight.split(":", 1)[1])
    elif weight not in ("uniform", "citations", "publications"):
        raise ConfigError(f"unknown --weight {args.weight!r}")
    cfg = RunConfig(
        input=args.input, format=args.format, stats=args.stats, threshold=args.threshold,
        diagonal=args.diagonal, dangling=args.dangling, theta=args.theta, weight=weight,
        custom_path=custom, d_values=parse_d_values(args.d), tol=args.tol, max_iter=args.max_iter,
        method=args.method, pair_multiplicity=args.pair_multiplicity, out=args.out, seed=args.seed,
    )
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
        if args.command == "rank":
            cmd_rank(cfg)
        elif args.command == "correlate":
            measures = [m.strip() for m in args.measures.split(",")] if args.measures else list(DEFAULT_SELECTION)
            cmd_correlate(cfg, measures, args.significance, args.mean_cell)
        elif args.command == "scatter":
            cmd_scatter(cfg, args.x, args.y)
        else:
            cmd_ingest_check(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ingest.ParseError, InputError, DanglingNodeError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
