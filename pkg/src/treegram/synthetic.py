"""Random treebank-form trees, random grammars, and a parent-sensitive corpus."""
from __future__ import annotations

import random
from fractions import Fraction

from .grammar import Pcfg, Production
from .trees import Corpus, Tree

__all__ = ["penn_tree", "penn_corpus", "context_corpus", "random_pcfg"]

_WORDS = {
    "Det": ["the", "a", "every"], "N": ["dog", "cake", "park", "man"],
    "JJ": ["big", "red"], "PRP": ["she", "it"], "NNS": ["dogs", "cakes"],
    "NNP": ["Mary", "Paris"], "P": ["with", "in", "on"],
    "VBD": ["ate", "saw"], "VBZ": ["eats", "sees"], "V": ["ate"], ",": [","],
    ".": ["."], "RB": ["quickly"],
}


def _pt(rng, tag) -> Tree:
    return Tree(tag, [Tree(rng.choice(_WORDS[tag]))])


def _base_np(rng) -> Tree:
    shape = rng.choice([("Det", "N"), ("Det", "JJ", "N"), ("PRP",), ("NNS",), ("NNP",)])
    return Tree("NP", [_pt(rng, t) for t in shape])


def _pp(rng, depth) -> Tree:
    return Tree("PP", [_pt(rng, "P"), _np(rng, depth + 1)])


def _np(rng, depth=0) -> Tree:
    """Base NP, or the two-level (NP (NP base) PP ... ) adjunction form."""
    if depth >= 2 or rng.random() < 0.6:
        return _base_np(rng)
    kids = [_base_np(rng)]
    for i in range(rng.randint(1, 3)):
        if i and rng.random() < 0.2:
            kids.append(_pt(rng, ","))
        kids.append(_pp(rng, depth))
    if rng.random() < 0.15:
        kids.append(_pt(rng, ","))
    return Tree("NP", kids)


def _vp(rng) -> Tree:
    kids = [_pt(rng, rng.choice(["VBD", "VBZ"]))]
    if rng.random() < 0.8:
        kids.append(_np(rng))
    if rng.random() < 0.2:
        kids.append(_pt(rng, "RB"))
    for _ in range(rng.choice([0, 0, 1, 1, 2, 3])):
        kids.append(_pp(rng, 0))
        if rng.random() < 0.2:
            kids.append(_pt(rng, ","))
    return Tree("VP", kids)


def penn_tree(rng: random.Random) -> Tree:
    """A tree in treebank form: flat VPs, NPs with at most two levels."""
    kids = [_np(rng), _vp(rng)]
    if rng.random() < 0.5:
        kids.append(_pt(rng, "."))
    return Tree("S", kids)


def penn_corpus(n: int, seed: int = 0) -> Corpus:
    rng = random.Random(seed)
    return Corpus([penn_tree(rng) for _ in range(n)], name=f"penn-{seed}")


def _modified_np(rng, f, depth) -> Tree:
    """Base NP, adjoined to a PP with probability ``f`` while depth remains."""
    np = _base_np(rng)
    if depth > 0 and rng.random() < f:
        pp = Tree("PP", [_pt(rng, "P"), _modified_np(rng, f, depth - 1)])
        np = Tree("NP", [np, pp])
    return np


def context_corpus(n: int, f: float = 0.5, seed: int = 0) -> Corpus:
    """Sentences whose NP expansions depend on the parent category.

    NPs under S and under PP take a PP modifier with probability ``f``;
    NPs directly under VP never do. VPs take a PP with probability 0.6.
    A verb followed by two PPs is then ambiguous for a grammar that cannot
    see the parent: attaching the second PP inside the first one and
    attaching the first PP to the object use the same productions.
    """
    rng = random.Random(seed)
    trees = []
    for _ in range(n):
        vp = [_pt(rng, rng.choice(["VBD", "VBZ"])), _base_np(rng)]
        if rng.random() < 0.6:
            vp.append(Tree("PP", [_pt(rng, "P"), _modified_np(rng, f, 1)]))
        kids = [_modified_np(rng, f, 1), Tree("VP", vp)]
        if rng.random() < 0.5:
            kids.append(_pt(rng, "."))
        trees.append(Tree("S", kids))
    return Corpus(trees, name=f"context-{seed}")


def random_pcfg(rng: random.Random, n_nonterminals: int = 4, n_preterminals: int = 3,
                n_rules: int = 20, max_rhs: int = 3) -> Pcfg:
    """A normalized grammar over nonterminals S, N1, ... and tags a, b, ...

    Every nonterminal gets at least one production; random weights make
    ties between distinct parses unlikely.
    """
    nts = ["S"] + [f"N{i}" for i in range(1, n_nonterminals)]
    tags = [chr(ord("a") + i) for i in range(n_preterminals)]
    symbols = nts + tags
    rules = set()
    for nt in nts:
        rules.add((nt, (rng.choice(tags),)))
    while len(rules) < n_rules:
        lhs = rng.choice(nts)
        rhs = tuple(rng.choice(symbols) for _ in range(rng.randint(1, max_rhs)))
        if rhs != (lhs,):
            rules.add((lhs, rhs))
    weights = {r: rng.randint(1, 1000) for r in sorted(rules)}
    totals = {}
    for (lhs, _), w in weights.items():
        totals[lhs] = totals.get(lhs, 0) + w
    prods = {
        r: Production(r[0], r[1], Fraction(w), w / totals[r[0]])
        for r, w in weights.items()
    }
    return Pcfg(prods, "S", frozenset(tags))
