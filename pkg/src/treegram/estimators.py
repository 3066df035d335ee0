"""scikit-learn style wrappers so the pipeline composes with sklearn tooling.

>>> from treegram.analytic import AttachmentModel, model_corpus
>>> corpus = model_corpus(AttachmentModel("penn", 0.48), 100)
>>> parser = PCFGParser(transform="parent").fit(corpus)
>>> parser.n_rules_
9
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .evaluation import score_edges
from .grammar import induce, prune_subsumed, tree_log_prob
from .parser import UnknownTagError, binarized, derive_seed, parse_with_score
from .transforms import TransformSpec, apply, invert, resolve
from .trees import Corpus, Tree, flat_tree, parse_tree, yield_tags

__all__ = ["check_corpus", "check_tag_sequences", "TreeTransformer", "PCFGParser"]


def check_corpus(X, allow_empty: bool = False) -> list:
    """Coerce X to a list of trees; bracketed strings are parsed."""
    if isinstance(X, Corpus):
        trees = list(X.trees)
    elif isinstance(X, (Tree, str)):
        raise TypeError("expected a sequence of trees, got a single tree")
    else:
        trees = [parse_tree(x) if isinstance(x, str) else x for x in X]
    for i, t in enumerate(trees):
        if not isinstance(t, Tree):
            raise TypeError(f"item {i} is {type(t).__name__}, not a Tree")
    if not trees and not allow_empty:
        raise ValueError("empty corpus")
    return trees


def check_tag_sequences(X) -> list:
    """Return (tags, words) pairs from trees or from plain tag sequences."""
    out = []
    items = X.trees if isinstance(X, Corpus) else X
    for x in items:
        if isinstance(x, str):
            x = parse_tree(x)
        if isinstance(x, Tree):
            out.append((yield_tags(x), x.leaves()))
        else:
            tags = list(x)
            if not all(isinstance(t, str) for t in tags):
                raise TypeError("tag sequences must contain strings")
            out.append((tags, None))
    return out


class TreeTransformer(TransformerMixin, BaseEstimator):
    """Stateless tree transform; ``chain`` names a chain or lists steps."""

    def __init__(self, chain="id"):
        self.chain = chain

    def fit(self, X=None, y=None):
        self.spec_ = resolve(self.chain)
        return self

    def _spec(self) -> TransformSpec:
        return getattr(self, "spec_", None) or resolve(self.chain)

    def transform(self, X):
        return apply(self._spec(), check_corpus(X, allow_empty=True)).trees

    def inverse_transform(self, X):
        return apply(invert(self._spec()), check_corpus(X, allow_empty=True)).trees


class PCFGParser(BaseEstimator):
    """Treebank PCFG parser trained through a tree transform.

    ``fit`` transforms the training trees and reads off a relative-frequency
    grammar; ``predict`` parses tag yields and maps the parses back through
    the inverse transform. Sentences that fail to parse come back as None.
    """

    def __init__(self, transform="id", seed=0, max_length=None, prune=False,
                 super_root=None):
        self.transform = transform
        self.seed = seed
        self.max_length = max_length
        self.prune = prune
        self.super_root = super_root

    def fit(self, X, y=None):
        trees = check_corpus(X)
        self.spec_ = resolve(self.transform)
        self.grammar_ = induce(apply(self.spec_, trees), super_root=self.super_root)
        if self.prune:
            self.grammar_ = prune_subsumed(self.grammar_)
        self.n_rules_ = len(self.grammar_)
        binarized(self.grammar_)
        return self

    def _parse_one(self, idx, tags, words):
        if self.max_length is not None and len(tags) > self.max_length:
            return None, -math.inf
        try:
            tree, logp = parse_with_score(
                self.grammar_, tags, derive_seed(self.seed, idx), words)
        except UnknownTagError:
            return None, -math.inf
        if tree is None:
            return None, logp
        if self.super_root is not None:
            tree = tree.children[0]
        return invert(self.spec_)(tree), logp

    def predict(self, X) -> list:
        check_is_fitted(self, "grammar_")
        return [self._parse_one(i, tags, words)[0]
                for i, (tags, words) in enumerate(check_tag_sequences(X))]

    def predict_log_proba(self, X) -> list:
        """Viterbi log-probability per sentence (-inf for failures)."""
        check_is_fitted(self, "grammar_")
        return [self._parse_one(i, tags, words)[1]
                for i, (tags, words) in enumerate(check_tag_sequences(X))]

    def score_samples(self, X) -> list:
        """Log-likelihood of each gold tree under the fitted grammar."""
        check_is_fitted(self, "grammar_")
        out = []
        for t in check_corpus(X):
            t = self.spec_(t)
            if self.super_root is not None:
                t = Tree(self.super_root, [t])
            out.append(tree_log_prob(self.grammar_, t))
        return out

    def score(self, X, y=None) -> float:
        """Labelled F1 of the parses of X against X; failures score no edges."""
        gold = check_corpus(X)
        parsed = [p if p is not None else flat_tree(g.label, yield_tags(g), g.leaves())
                  for p, g in zip(self.predict(gold), gold)]
        return score_edges(parsed, gold).f1
