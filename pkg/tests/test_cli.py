import csv
import filecmp

import numpy as np
import pytest

from conftest import DATA, SYNTHETIC, SYNTHETIC_THRESHOLD
from cocirank.cli import main, parse_d_values
from cocirank.report import DEFAULT_SELECTION

BASE = ["--input", str(SYNTHETIC), "--threshold", str(SYNTHETIC_THRESHOLD)]

FIVE = """paper_id,year,first_author,cited_authors
P1,2000,A,"A;B;C"
P2,2001,B,"A;B;D;E"
P3,2002,C,"A;C;E"
P4,2003,A,"B|P2;C|P3;D"
P5,2004,D,"A|P1;E;B"
P6,2005,E,"C;D;E|P6"
"""


def read(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


@pytest.fixture
def five(tmp_path):
    p = tmp_path / "five.csv"
    p.write_text(FIVE)
    return p


def test_rank_defaults_on_five_authors(five, tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["rank", "--input", str(five), "--threshold", "0", "--out", str(out)]) == 0
    files = sorted(p.name for p in out.iterdir())
    assert len([f for f in files if f.startswith("pr_uniform_d")]) == 10
    assert "rank_table.csv" in files and "centrality.csv" in files
    assert len(files) == 12
    rows = read(out / "pr_uniform_d0.55.csv")
    assert rows[0] == ["author_id", "score", "rank"]
    assert len(rows) == 6
    assert abs(sum(float(r[1]) for r in rows[1:]) - 1) < 1e-9
    table = read(out / "rank_table.csv")
    assert table[0][:2] == ["author_id", "d=0.05"]
    assert table[0][-5:] == ["Citation", "Degree", "Betweenness", "Closeness", "trajectory"]
    assert [r[0] for r in table[1:]] == ["A", "B", "C", "E", "D"]
    assert read(out / "centrality.csv")[0] == ["author_id", "degree", "closeness", "betweenness"]


def test_rank_d_zero_equals_teleport(five, tmp_path):
    out = tmp_path / "o"
    assert main(["rank", "--input", str(five), "--threshold", "0", "--d", "0", "--weight", "citations",
                 "--out", str(out)]) == 0
    rows = read(out / "pr_citations_d0.csv")[1:]
    cites = {"A": 4, "B": 4, "C": 4, "D": 3, "E": 4}
    for author, score, _ in rows:
        assert float(score) == cites[author] / 19


def test_rerun_is_byte_identical(tmp_path, backend):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["rank", *BASE, "--out", str(out)]) == 0
    cmp = filecmp.dircmp(a, b)
    assert not cmp.diff_files and not cmp.left_only and not cmp.right_only


def test_rank_table_golden(tmp_path, backend):
    out = tmp_path / "o"
    assert main(["rank", *BASE, "--theta", "3", "--out", str(out)]) == 0
    assert (out / "rank_table.csv").read_text() == (DATA / "golden_rank_table.csv").read_text()


def test_method_both_writes_agreeing_files(tmp_path):
    out = tmp_path / "o"
    assert main(["rank", *BASE, "--method", "both", "--d", "0.85", "--out", str(out)]) == 0
    p = np.array([float(r[1]) for r in read(out / "pr_uniform_d0.85.csv")[1:]])
    q = np.array([float(r[1]) for r in read(out / "pr_uniform_d0.85_direct.csv")[1:]])
    assert np.max(np.abs(p - q)) < 1e-8


def test_d_range_parsing():
    assert parse_d_values(["0.05:0.95:0.1"]) == [0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95]
    assert parse_d_values(["0.5", "0.2", "0.5"]) == [0.5, 0.2]
    assert parse_d_values(None)[0] == 0.05


def test_correlate_default_is_14_by_14(tmp_path):
    out = tmp_path / "o"
    assert main(["correlate", *BASE, "--out", str(out)]) == 0
    rows = read(out / "correlation.csv")
    assert rows[0][1:] == list(DEFAULT_SELECTION)
    assert len(rows) == 15 and all(len(r) == 15 for r in rows)
    strip = lambda c: c.rstrip("*'")
    for i in range(1, 15):
        assert rows[i][i] == "1"
        for j in range(1, 15):
            assert strip(rows[i][j]) == strip(rows[j][i])


def test_correlate_identical_and_single(tmp_path):
    out = tmp_path / "o"
    assert main(["correlate", *BASE, "--measures", "Citation,Citation", "--out", str(out)]) == 0
    rows = read(out / "correlation.csv")
    assert [r[1:] for r in rows[1:]] == [["1", "1"], ["1", "1"]]
    assert main(["correlate", *BASE, "--measures", "PR(.55)", "--out", str(out)]) == 0
    assert read(out / "correlation.csv") == [["", "PR(.55)"], ["PR(.55)", "1"]]


def test_correlate_unknown_measure(tmp_path, capsys):
    assert main(["correlate", *BASE, "--measures", "PR(.5),Eigen", "--out", str(tmp_path)]) == 3
    err = capsys.readouterr().err
    assert "Eigen" in err and "Citation" in err and "h-index" in err


def test_correlate_mean_cell(tmp_path, capsys):
    assert main(["correlate", *BASE, "--measures", "PR(.15),Citation", "--mean-cell", "PR(.15)/Citation",
                 "--out", str(tmp_path)]) == 0
    assert "mean r over 1 cells" in capsys.readouterr().out


def test_correlate_permutation_seeded(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["correlate", *BASE, "--measures", "PR(.55),Degree,h-index", "--significance",
                     "permutation", "--seed", "7", "--out", str(out)]) == 0
    assert (a / "correlation.csv").read_bytes() == (b / "correlation.csv").read_bytes()


def test_scatter_ordering(tmp_path):
    assert main(["scatter", *BASE, "--x", "Citation", "--y", "PR(.55)", "--out", str(tmp_path)]) == 0
    rows = read(tmp_path / "scatter.csv")
    assert rows[0] == ["author_id", "x_rank", "y_rank"]
    assert rows[1][0] == "ADLER A"
    assert len(rows) == 24
    x = [float(r[1]) for r in rows[1:]]
    assert x == sorted(x)


def test_scatter_same_measure(tmp_path):
    assert main(["scatter", *BASE, "--x", "PR(.85)", "--y", "PR(.85)", "--out", str(tmp_path)]) == 0
    rows = read(tmp_path / "scatter.csv")[1:]
    assert all(r[1] == r[2] for r in rows)
    assert [r[1] for r in rows] == [str(i) for i in range(1, len(rows) + 1)]


def test_ingest_check(capsys):
    assert main(["ingest-check", *BASE]) == 0
    out = capsys.readouterr().out
    assert "papers: 400" in out
    assert "citation pairs: 1855" in out
    assert "selected authors (>30 citations): 23" in out


def test_edges_input_with_stats(tmp_path):
    edges = tmp_path / "e.csv"
    edges.write_text("author_a,author_b,count\na,b,3\nb,c,1\na,c,2\nc,d,4\n")
    stats = tmp_path / "s.csv"
    stats.write_text("author_id,citation_count,first_author_pub_count,per_paper_citations\n"
                     "a,9,2,3;1\nb,5,1,4\nc,7,0,\nd,2,1,0\n")
    out = tmp_path / "o"
    assert main(["rank", "--input", str(edges), "--format", "edges-csv", "--stats", str(stats),
                 "--weight", "publications", "--out", str(out)]) == 0
    assert [r[0] for r in read(out / "rank_table.csv")[1:]] == ["a", "c", "b", "d"]
    assert main(["correlate", "--input", str(edges), "--format", "edges-csv", "--stats", str(stats),
                 "--measures", "PR_p(.5),h-index,Citation", "--out", str(out)]) == 0


def test_edges_without_stats_needs_stats_for_citation(tmp_path):
    edges = tmp_path / "e.csv"
    edges.write_text("author_a,author_b,count\na,b,3\nb,c,1\na,c,2\n")
    assert main(["rank", "--input", str(edges), "--format", "edges-csv", "--out", str(tmp_path / "o")]) == 0
    assert main(["rank", "--input", str(edges), "--format", "edges-csv", "--weight", "citations",
                 "--out", str(tmp_path / "o")]) == 3


def test_custom_weights(tmp_path, five):
    w = tmp_path / "w.csv"
    w.write_text("author_id,weight\nA,1\nB,1\nC,1\nD,1\nE,4\n")
    out = tmp_path / "o"
    assert main(["rank", "--input", str(five), "--threshold", "0", "--weight", f"custom:{w}", "--d", "0",
                 "--out", str(out)]) == 0
    scores = {r[0]: float(r[1]) for r in read(out / "pr_custom_d0.csv")[1:]}
    assert scores["E"] == 0.5


def test_exit_codes(tmp_path, five):
    bad = tmp_path / "bad.csv"
    bad.write_text('paper_id,year,first_author,cited_authors\nP1,2000,A,""\n')
    assert main(["rank", "--input", str(bad), "--out", str(tmp_path)]) == 2
    assert main(["rank", "--input", str(tmp_path / "missing.csv"), "--out", str(tmp_path)]) == 2
    assert main(["rank", "--input", str(five), "--threshold", "0", "--d", "1.0", "--out", str(tmp_path)]) == 3
    assert main(["rank", "--input", str(five), "--threshold", "0", "--theta", "0", "--out", str(tmp_path)]) == 3
    assert main(["rank", "--input", str(five), "--threshold", "0", "--weight", "bogus", "--out", str(tmp_path)]) == 3
    assert main(["rank", "--input", str(five), "--threshold", "0", "--d", "0.95", "--tol", "1e-15",
                 "--max-iter", "2", "--out", str(tmp_path)]) == 4
    assert main(["rank", "--input", str(five), "--threshold", "99", "--out", str(tmp_path)]) == 2


def test_dangling_error_policy(tmp_path):
    edges = tmp_path / "e.csv"
    edges.write_text("author_a,author_b,count\na,b,3\nc,c,0\n")
    assert main(["rank", "--input", str(edges), "--format", "edges-csv", "--out", str(tmp_path / "o")]) == 0
    assert main(["rank", "--input", str(edges), "--format", "edges-csv", "--dangling", "error",
                 "--out", str(tmp_path / "o")]) == 2


def test_pair_multiplicity_changes_network(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["rank", *BASE, "--d", "0.85", "--out", str(a)]) == 0
    assert main(["rank", *BASE, "--d", "0.85", "--pair-multiplicity", "--out", str(b)]) == 0
    assert (a / "pr_uniform_d0.85.csv").read_bytes() != (b / "pr_uniform_d0.85.csv").read_bytes()
