"""Labelled precision/recall over corpus-wide edge bags, and PP-attachment counts."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .trees import Corpus, Tree

__all__ = [
    "edges", "Scores", "score_edges", "precision_recall", "sentence_scores",
    "YieldMismatch", "AttachmentCounts", "count_attachments", "MATCHERS",
    "DEFAULT_VERBAL_TAGS",
]

# Penn verb tags, AUX, and the bare V of the model corpora
DEFAULT_VERBAL_TAGS = frozenset(
    {"VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "AUX", "V"})


class YieldMismatch(ValueError):
    def __init__(self, index, test, gold):
        super().__init__(f"sentence {index}: yield {test!r} differs from gold {gold!r}")
        self.index = index


def _trees(c) -> list:
    return c.trees if isinstance(c, Corpus) else list(c)


def _node_edges(t: Tree, left: int, out: Counter, root: bool) -> int:
    """Add edges below ``t`` starting at ``left``; return the right position."""
    if t.is_terminal:
        return left + 1
    right = left
    for c in t.children:
        right = _node_edges(c, right, out, False)
    if not root and t.is_nonterminal:
        out[t.label, left, right] += 1
    return right


def edges(c: Corpus | Iterable[Tree]) -> Counter:
    """Multiset of (label, left, right) with positions counted across the corpus.

    Roots and preterminals contribute nothing.
    """
    out = Counter()
    offset = 0
    for t in _trees(c):
        offset = _node_edges(t, offset, out, True)
    return out


@dataclass(frozen=True)
class Scores:
    matched: int
    n_test: int
    n_gold: int

    @property
    def precision(self) -> float:
        return self.matched / self.n_test if self.n_test else float("nan")

    @property
    def recall(self) -> float:
        return self.matched / self.n_gold if self.n_gold else float("nan")

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0


def _check_yields(test: list, gold: list):
    if len(test) != len(gold):
        raise ValueError(f"{len(test)} test trees but {len(gold)} gold trees")
    for i, (a, b) in enumerate(zip(test, gold)):
        la, lb = a.leaves(), b.leaves()
        if la != lb:
            raise YieldMismatch(i, la, lb)


def score_edges(test, gold) -> Scores:
    test, gold = _trees(test), _trees(gold)
    _check_yields(test, gold)
    et, eg = edges(test), edges(gold)
    return Scores(sum((et & eg).values()), sum(et.values()), sum(eg.values()))


def precision_recall(test, gold) -> tuple:
    """(precision, recall); an empty edge bag makes the matching value NaN."""
    s = score_edges(test, gold)
    return s.precision, s.recall


def sentence_scores(test, gold) -> list:
    """Per-sentence diagnostics; the corpus figure is the one to report."""
    test, gold = _trees(test), _trees(gold)
    _check_yields(test, gold)
    return [score_edges([a], [b]) for a, b in zip(test, gold)]


@dataclass(frozen=True)
class AttachmentCounts:
    np: int = 0
    vp: int = 0
    np_star: int = 0
    vp_star: int = 0

    def __add__(self, other):
        return AttachmentCounts(self.np + other.np, self.vp + other.vp,
                                self.np_star + other.np_star,
                                self.vp_star + other.vp_star)


def _is_verb(node: Tree, verbal) -> bool:
    return node.is_preterminal and node.label in verbal


def np_attachment(vp: Tree, verbal) -> bool:
    """(VP V (NP NP PP))"""
    k = vp.children
    return (len(k) == 2 and _is_verb(k[0], verbal) and k[1].label == "NP"
            and k[1].child_labels() == ("NP", "PP"))


def vp_attachment(vp: Tree, verbal) -> bool:
    """(VP V NP PP)"""
    k = vp.children
    return len(k) == 3 and _is_verb(k[0], verbal) and vp.child_labels()[1:] == ("NP", "PP")


def np_star_attachment(vp: Tree, verbal) -> bool:
    """(VP V (NP alpha PP)) with alpha non-empty."""
    k = vp.children
    if len(k) != 2 or not _is_verb(k[0], verbal) or k[1].label != "NP":
        return False
    inner = k[1].child_labels()
    return len(inner) >= 2 and inner[-1] == "PP" and not k[1].is_preterminal


def vp_star_attachment(vp: Tree, verbal) -> bool:
    """(VP V alpha PP) with alpha non-empty."""
    k = vp.children
    return len(k) >= 3 and _is_verb(k[0], verbal) and k[-1].label == "PP"


MATCHERS: dict = {
    "np": np_attachment,
    "vp": vp_attachment,
    "np_star": np_star_attachment,
    "vp_star": vp_star_attachment,
}


def count_attachments(c, verbal_tags=DEFAULT_VERBAL_TAGS,
                      matchers: dict | None = None) -> AttachmentCounts:
    matchers = MATCHERS if matchers is None else {**MATCHERS, **matchers}
    verbal = frozenset(verbal_tags)
    counts = dict.fromkeys(MATCHERS, 0)
    for t in _trees(c):
        for node in t.subtrees():
            if node.label != "VP" or not node.is_nonterminal:
                continue
            for name, match in matchers.items():
                if match(node, verbal):
                    counts[name] += 1
    return AttachmentCounts(**counts)
