"""Association rule text mining, metro-map summarization and keyword exploration."""

from .corpus import Document, TokenizedDocument, Vocabulary, build_vocabulary, ingest_corpus, load_stopwords, tokenize
from .explore import build_histogram, match_document, term_frequencies
from .metromap import EaConfig, MetroLine, MetroMap, construct_map, extract_keywords
from .rules import AssociationRule, SimpleRule, TransactionTable, binarize, lift, mine_rules, simplify
from .selection import PsoConfig, SelectionVector, aws_score, select_terms_exact, select_terms_pso
from .termgraph import TermGraph, build_graph, enumerate_paths
from .weighting import WeightMatrix, build_weight_matrix, inverse_term_frequency, term_frequency

__version__ = "0.1.0"

__all__ = [
    "Document",
    "TokenizedDocument",
    "Vocabulary",
    "build_vocabulary",
    "ingest_corpus",
    "load_stopwords",
    "tokenize",
    "build_histogram",
    "match_document",
    "term_frequencies",
    "EaConfig",
    "MetroLine",
    "MetroMap",
    "construct_map",
    "extract_keywords",
    "AssociationRule",
    "SimpleRule",
    "TransactionTable",
    "binarize",
    "lift",
    "mine_rules",
    "simplify",
    "PsoConfig",
    "SelectionVector",
    "aws_score",
    "select_terms_exact",
    "select_terms_pso",
    "TermGraph",
    "build_graph",
    "enumerate_paths",
    "WeightMatrix",
    "build_weight_matrix",
    "inverse_term_frequency",
    "term_frequency",
]
