"""Rank authors in co-citation networks with PageRank, weighted PageRank,
centralities, citation counts and h-index, and compare the rankings."""
from .centrality import (CentralityResult, all_centralities, betweenness_centrality,
                         closeness_centrality, degree_centrality)
from .ingest import (AuthorStats, PaperRecord, ParseError, accumulate_stats, build_cocitation,
                     load_edges, load_stats, parse_papers, select_top_authors)
from .kernels import BACKEND
from .network import (CoCitationNetwork, DanglingNodeError, MarkovMatrix, SimpleGraph,
                      apply_diagonal_policy, normalize_columns, to_simple_graph)
from .pagerank import (ConvergenceError, PageRankResult, TeleportVector, classify_trajectory,
                       damping_sweep, make_teleport, power_iterate, steady_state_direct)
from .scores import (CorrelationReport, Ranking, correlation_matrix, h_index, ranks_from_scores,
                     spearman, spearman_permutation)

__version__ = "0.1.0"
