"""Citation record parsing, per-author statistics and co-citation counting.

Record formats
--------------
papers-csv
    ``paper_id,year,first_author,cited_authors``. ``cited_authors`` is one
    quoted field of ``;``-separated author ids. An entry may carry a reference
    key, ``SALTON G|P17``, naming the cited corpus paper; those keys feed the
    per-paper citation counts used by the h-index.
edges-csv
    ``author_a,author_b,count``. Defines the co-citation matrix directly.
stats-csv
    ``author_id,citation_count,first_author_pub_count,per_paper_citations``
    with ``per_paper_citations`` a ``;``-separated list of integers.
"""
from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from . import kernels
from .network import CoCitationNetwork

PAPERS_HEADER = ["paper_id", "year", "first_author", "cited_authors"]
EDGES_HEADER = ["author_a", "author_b", "count"]
STATS_HEADER = ["author_id", "citation_count", "first_author_pub_count", "per_paper_citations"]
FORMATS = ("papers-csv", "edges-csv", "stats-csv")


class ParseError(ValueError):
    """Malformed input; ``line`` is the 1-based physical line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    year: int
    first_author: str
    cited_authors: tuple[str, ...]
    # references per cited author, parallel to cited_authors
    reference_counts: tuple[int, ...] = ()
    # distinct corpus paper ids named by reference keys
    cited_papers: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.reference_counts:
            object.__setattr__(self, "reference_counts", (1,) * len(self.cited_authors))


@dataclass
class AuthorStats:
    author_id: str
    citation_count: int = 0
    first_author_pub_count: int = 0
    per_paper_citations: list[int] = field(default_factory=list)


def _rows(stream: TextIO, header: list[str]):
    reader = csv.reader(stream)
    try:
        first = next(reader)
    except StopIteration:
        return
    except csv.Error as exc:
        raise ParseError(str(exc), 1) from exc
    if [c.strip() for c in first] != header:
        raise ParseError(f"expected header {','.join(header)!r}", reader.line_num)
    while True:
        try:
            row = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise ParseError(str(exc), reader.line_num) from exc
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(row)}", reader.line_num)
        yield reader.line_num, [c.strip() for c in row]


def _int(text: str, what: str, line: int) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {text!r}", line) from None
    return value


def parse_papers(stream: TextIO, format: str = "papers-csv") -> list[PaperRecord]:
    """Parse a papers-csv stream into records.

    Cited authors keep first-appearance order and are deduplicated per paper;
    the number of references to each is kept in ``reference_counts``.
    """
    if format != "papers-csv":
        raise ValueError(f"parse_papers reads papers-csv, not {format!r}")
    papers: list[PaperRecord] = []
    seen: set[str] = set()
    for line, (paper_id, year, first_author, cited) in _rows(stream, PAPERS_HEADER):
        if not paper_id:
            raise ParseError("empty paper_id", line)
        if paper_id in seen:
            raise ParseError(f"duplicate paper_id {paper_id!r}", line)
        seen.add(paper_id)
        if not first_author:
            raise ParseError("empty first_author", line)
        entries = [e.strip() for e in cited.split(";")] if cited else []
        if not entries or any(not e for e in entries):
            raise ParseError("empty cited author", line)
        counts: Counter[str] = Counter()
        cited_papers = []
        for entry in entries:
            author, sep, key = entry.partition("|")
            author = author.strip()
            if not author or (sep and not key.strip()):
                raise ParseError(f"malformed cited entry {entry!r}", line)
            counts[author] += 1
            if sep:
                cited_papers.append(key.strip())
        papers.append(
            PaperRecord(
                paper_id=paper_id,
                year=_int(year, "year", line),
                first_author=first_author,
                cited_authors=tuple(counts),
                reference_counts=tuple(counts.values()),
                cited_papers=tuple(dict.fromkeys(cited_papers)),
            )
        )
    return papers


def accumulate_stats(papers: Iterable[PaperRecord]) -> dict[str, AuthorStats]:
    papers = list(papers)
    stats: dict[str, AuthorStats] = {}

    def get(author):
        if author not in stats:
            stats[author] = AuthorStats(author)
        return stats[author]

    received: Counter[str] = Counter()
    for p in papers:
        for author in p.cited_authors:
            get(author).citation_count += 1
        received.update(p.cited_papers)
    for p in papers:
        s = get(p.first_author)
        s.first_author_pub_count += 1
        s.per_paper_citations.append(received[p.paper_id])
    return stats


def select_top_authors(stats: dict[str, AuthorStats], threshold: int) -> list[str]:
    """Authors cited strictly more than ``threshold`` times, most cited first.

    Equal counts are ordered by author id, so every author tied at a given
    count is kept together.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    chosen = [s for s in stats.values() if s.citation_count > threshold]
    chosen.sort(key=lambda s: (-s.citation_count, s.author_id))
    return [s.author_id for s in chosen]


def build_cocitation(
    papers: Iterable[PaperRecord], authors: list[str], pair_multiplicity: bool = False
) -> CoCitationNetwork:
    """Count, for every author pair, the papers citing both.

    With ``pair_multiplicity`` a paper contributes the product of the two
    authors' reference counts instead of 1.
    """
    if not authors:
        raise ValueError("authors must be nonempty")
    index = {a: i for i, a in enumerate(authors)}
    if len(index) != len(authors):
        raise ValueError("duplicate author ids")
    indptr = [0]
    indices: list[int] = []
    counts: list[int] = []
    for p in papers:
        for author, c in zip(p.cited_authors, p.reference_counts):
            i = index.get(author)
            if i is not None:
                indices.append(i)
                counts.append(c)
        indptr.append(len(indices))
    A = kernels.cocitation_counts(
        np.asarray(indptr, dtype=np.int64),
        np.asarray(indices, dtype=np.int64),
        np.asarray(counts, dtype=np.int64),
        len(authors),
        pair_multiplicity,
    )
    return CoCitationNetwork(tuple(authors), A)


def load_edges(stream: TextIO) -> CoCitationNetwork:
    """Read an edges-csv stream; authors are indexed by first appearance."""
    index: dict[str, int] = {}
    cells: dict[tuple[int, int], int] = {}
    for line, (a, b, count) in _rows(stream, EDGES_HEADER):
        if not a or not b:
            raise ParseError("empty author id", line)
        c = _int(count, "count", line)
        if c < 0:
            raise ParseError("negative count", line)
        for author in (a, b):
            index.setdefault(author, len(index))
        j, k = index[a], index[b]
        for key in {(j, k), (k, j)}:
            if key in cells and cells[key] != c:
                raise ParseError(f"conflicting counts for {a!r},{b!r}: {cells[key]} vs {c}", line)
            cells[key] = c
    n = len(index)
    A = np.zeros((n, n), dtype=np.int64)
    for (j, k), c in cells.items():
        A[j, k] = c
    return CoCitationNetwork(tuple(index), A)


def load_stats(stream: TextIO) -> dict[str, AuthorStats]:
    stats: dict[str, AuthorStats] = {}
    for line, (author, cites, pubs, per_paper) in _rows(stream, STATS_HEADER):
        if not author:
            raise ParseError("empty author_id", line)
        if author in stats:
            raise ParseError(f"duplicate author_id {author!r}", line)
        values = [_int(v, "per_paper_citations entry", line) for v in per_paper.split(";") if v.strip()]
        s = AuthorStats(author, _int(cites, "citation_count", line), _int(pubs, "first_author_pub_count", line), values)
        if s.citation_count < 0 or any(v < 0 for v in values):
            raise ParseError("negative count", line)
        if s.first_author_pub_count != len(values):
            raise ParseError("first_author_pub_count does not match per_paper_citations", line)
        stats[author] = s
    return stats

