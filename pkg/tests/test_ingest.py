import io
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cocirank.ingest import (AuthorStats, PaperRecord, ParseError, accumulate_stats, build_cocitation,
                             load_edges, load_stats, parse_papers, select_top_authors)

HEADER = "paper_id,year,first_author,cited_authors\n"


def parse(text):
    return parse_papers(io.StringIO(HEADER + text))


def test_parse_minimal():
    papers = parse('P1,2001,x,"a;b"\n')
    assert papers == [PaperRecord("P1", 2001, "x", ("a", "b"))]


def test_parse_dedups_per_paper_and_keeps_multiplicity():
    (p,) = parse('P1,2001,x,"a;b;a"\n')
    assert p.cited_authors == ("a", "b")
    assert p.reference_counts == (2, 1)


@pytest.mark.parametrize("row,line", [
    ('P1,2001,x,""\n', 2),
    ('P1,2001,x,"a;;b"\n', 2),
    ('P1,2001,x,"a"\nP2,19x9,x,"a"\n', 3),
    ('P1,2001,x,"a"\nP1,2002,y,"b"\n', 3),
    ('P1,2001,x\n', 2),
])
def test_parse_errors_carry_line(row, line):
    with pytest.raises(ParseError) as err:
        parse(row)
    assert err.value.line == line


def test_empty_stream_is_empty_list():
    assert parse_papers(io.StringIO("")) == []
    assert parse("") == []


def test_bad_header():
    with pytest.raises(ParseError):
        parse_papers(io.StringIO("id,year,author,refs\n"))


def test_reference_keys_feed_per_paper_citations():
    papers = parse('P1,2001,a,"z"\nP2,2002,b,"a|P1;a|P1"\nP3,2003,c,"a|P1;b|P2"\nP4,2003,a,"b"\n')
    stats = accumulate_stats(papers)
    assert sorted(stats["a"].per_paper_citations) == [0, 2]
    assert stats["b"].per_paper_citations == [1]


def test_accumulate_counts():
    stats = accumulate_stats([PaperRecord("P1", 1, "x", ("a", "b")), PaperRecord("P2", 1, "x", ("a",))])
    assert stats["a"].citation_count == 2
    assert stats["b"].citation_count == 1
    assert stats["b"].first_author_pub_count == 0
    assert stats["x"].first_author_pub_count == 2


def test_accumulate_matches_pair_enumeration():
    papers = [PaperRecord(f"P{i}", 1, "x", ("a",)) for i in range(4)]
    assert accumulate_stats(papers)["a"].citation_count == oracles.citation_pairs(papers)["a"] == 4


def test_accumulate_random_corpus_matches_enumeration():
    rng = random.Random(5)
    papers = [PaperRecord(f"P{i}", 2000, rng.choice("xyz"), tuple(dict.fromkeys(rng.choices("abcdefg", k=5))))
              for i in range(60)]
    stats = accumulate_stats(papers)
    expected = oracles.citation_pairs(papers)
    assert {a: s.citation_count for a, s in stats.items() if s.citation_count} == expected
    for s in stats.values():
        assert s.first_author_pub_count == len(s.per_paper_citations)


def _stats(counts):
    return {a: AuthorStats(a, c) for a, c in counts.items()}


def test_select_strict_threshold():
    assert select_top_authors(_stats({"a": 300, "b": 201, "c": 200}), 200) == ["a", "b"]


def test_select_ties_lexicographic():
    assert select_top_authors(_stats({"a": 300, "c": 250, "b": 250}), 200) == ["a", "b", "c"]


def test_select_matches_bruteforce_on_20_authors():
    rng = random.Random(11)
    counts = {f"AUTH{i:02d}": rng.randint(150, 260) for i in range(20)}
    got = select_top_authors(_stats(counts), 200)
    expected = []
    for c in range(max(counts.values()), 200, -1):
        expected += sorted(a for a, v in counts.items() if v == c)
    assert got == expected


@given(st.dictionaries(st.text("abc", min_size=1, max_size=3), st.integers(0, 10)), st.integers(0, 10))
def test_select_invariant_to_map_order(counts, threshold):
    items = list(counts.items())
    random.Random(0).shuffle(items)
    assert select_top_authors(_stats(dict(items)), threshold) == select_top_authors(_stats(counts), threshold)


def test_cocitation_single_paper(backend):
    net = build_cocitation([PaperRecord("P1", 1, "x", ("a", "b", "c"))], ["a", "b", "c"])
    A = net.A
    assert A[0, 1] == A[1, 0] == A[0, 2] == A[1, 2] == 1


def test_cocitation_two_papers(backend):
    papers = [PaperRecord("P1", 1, "x", ("a", "b")), PaperRecord("P2", 1, "y", ("b", "a"))]
    net = build_cocitation(papers, ["a", "b"])
    assert net.A[0, 1] == 2
    assert list(net.A.diagonal()) == [2, 2]


def test_cocitation_random_corpus_matches_double_loop(backend):
    rng = random.Random(3)
    papers = [PaperRecord(f"P{i}", 1, "x", tuple(dict.fromkeys(rng.choices("abcdefghij", k=rng.randint(1, 6)))))
              for i in range(10)]
    authors = list("abcdefgh")
    net = build_cocitation(papers, authors)
    np.testing.assert_array_equal(net.A, oracles.cocitation_matrix(papers, authors))


def test_cocitation_pair_multiplicity(backend):
    papers = parse('P1,2001,x,"a;a;b;c;b;b"\n')
    net = build_cocitation(papers, ["a", "b", "c"], pair_multiplicity=True)
    assert net.A[0, 1] == 6
    assert net.A[1, 2] == 3
    assert list(net.A.diagonal()) == [2, 3, 1]


def test_cocitation_pair_sum_identity(backend):
    rng = random.Random(8)
    papers = [PaperRecord(f"P{i}", 1, "x", tuple(dict.fromkeys(rng.choices("abcdefghijkl", k=7))))
              for i in range(40)]
    authors = list("abcdefg")
    A = build_cocitation(papers, authors).A
    expected = 0
    for p in papers:
        m = sum(1 for a in p.cited_authors if a in authors)
        expected += m * (m - 1) // 2
    assert np.triu(A, 1).sum() == expected
    np.testing.assert_array_equal(A, A.T)


def test_cocitation_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        build_cocitation([], [])
    with pytest.raises(ValueError):
        build_cocitation([], ["a", "a"])


def test_load_edges_symmetrises():
    net = load_edges(io.StringIO("author_a,author_b,count\na,b,3\nb,c,1\nc,b,1\n"))
    assert net.authors == ("a", "b", "c")
    assert net.A[1, 0] == 3 and net.A[2, 1] == 1 and net.A[0, 2] == 0


def test_load_edges_conflict():
    with pytest.raises(ParseError) as err:
        load_edges(io.StringIO("author_a,author_b,count\na,b,3\nb,a,2\n"))
    assert err.value.line == 3


def test_load_stats():
    text = "author_id,citation_count,first_author_pub_count,per_paper_citations\na,10,3,5;4;0\nb,2,0,\n"
    stats = load_stats(io.StringIO(text))
    assert stats["a"].per_paper_citations == [5, 4, 0]
    assert stats["b"].first_author_pub_count == 0


def test_load_stats_count_mismatch():
    text = "author_id,citation_count,first_author_pub_count,per_paper_citations\na,10,2,5\n"
    with pytest.raises(ParseError):
        load_stats(io.StringIO(text))


@settings(max_examples=50)
@given(st.lists(st.lists(st.sampled_from("abcdef"), min_size=1, max_size=6), max_size=15))
def test_cocitation_symmetric_property(cites):
    papers = [PaperRecord(f"P{i}", 1, "x", tuple(dict.fromkeys(c))) for i, c in enumerate(cites)]
    A = build_cocitation(papers, list("abcdef")).A
    np.testing.assert_array_equal(A, A.T)
