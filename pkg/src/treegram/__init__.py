"""Treebank PCFG laboratory: transform trees, read off a grammar, parse,
detransform and score, plus closed-form PP-attachment models."""
from .analytic import AttachmentModel, ModelKind, fhat, model_corpus, tree_likelihoods
from .evaluation import AttachmentCounts, count_attachments, edges, precision_recall
from .grammar import Pcfg, Production, find_subsumed, induce, prune_subsumed, tree_log_prob
from .parser import parse_corpus, viterbi_parse
from .transforms import TransformSpec, apply, invert
from .trees import Corpus, Tree, parse_tree, preprocess_penn, write_corpus, yield_tags

__version__ = "0.1.0"
