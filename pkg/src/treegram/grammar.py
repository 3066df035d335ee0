"""PCFGs read off treebanks by relative frequency, and subsumed productions.

Counts are kept as :class:`fractions.Fraction` so weighted corpora give
exact estimates; probabilities are floats computed from the exact ratio.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .trees import Corpus, Tree

__all__ = [
    "Production", "Pcfg", "induce", "local_trees", "tree_log_prob",
    "Subsumption", "find_subsumed", "prune_subsumed", "PruneReport",
    "write_grammar", "read_grammar", "parse_grammar", "GrammarSyntaxError",
]


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple
    count: Fraction = Fraction(0)
    prob: float = 0.0

    @property
    def key(self) -> tuple:
        return (self.lhs, self.rhs)

    def __str__(self):
        return "%s -> %s" % (self.lhs, " ".join(self.rhs))


@dataclass
class Pcfg:
    productions: dict
    start: str
    preterminals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.preterminals = frozenset(self.preterminals)
        overlap = self.preterminals & self.nonterminals
        if overlap:
            raise ValueError(
                "labels used both as preterminal and nonterminal: %s"
                % ", ".join(sorted(overlap)))
        self._by_lhs = defaultdict(list)
        for p in self.productions.values():
            self._by_lhs[p.lhs].append(p)

    @property
    def nonterminals(self) -> frozenset:
        return frozenset(lhs for lhs, _ in self.productions)

    def __len__(self):
        return len(self.productions)

    def __iter__(self):
        return iter(self.productions.values())

    def __contains__(self, key):
        return key in self.productions

    def get(self, lhs: str, rhs: Sequence[str]) -> Production | None:
        return self.productions.get((lhs, tuple(rhs)))

    def by_lhs(self, lhs: str) -> list:
        return list(self._by_lhs.get(lhs, ()))

    def prob(self, lhs: str, rhs: Sequence[str]) -> float:
        p = self.get(lhs, rhs)
        return 0.0 if p is None else p.prob

    def labels(self) -> set:
        out = set(self.preterminals) | set(self.nonterminals)
        for _, rhs in self.productions:
            out.update(rhs)
        return out


def local_trees(t: Tree) -> Iterable[tuple]:
    """(lhs, rhs) for every nonterminal node; preterminal-to-word steps are skipped."""
    for node in t.subtrees():
        if node.is_nonterminal:
            yield node.label, node.child_labels()


def induce(c: Corpus | Sequence[Tree], weights: Sequence | None = None,
           super_root: str | None = None) -> Pcfg:
    """Relative-frequency estimate from a corpus of preprocessed trees.

    ``weights`` gives each tree a (rational) multiplicity, default 1.
    With ``super_root`` every tree is wrapped under that label, which
    allows corpora whose roots disagree.
    """
    trees = c.trees if isinstance(c, Corpus) else list(c)
    if not trees:
        raise ValueError("cannot induce a grammar from an empty corpus")
    if weights is None:
        weights = [1] * len(trees)
    elif len(weights) != len(trees):
        raise ValueError("weights and trees differ in length")
    if super_root is not None:
        trees = [Tree(super_root, [t]) for t in trees]
    roots = {t.label for t in trees}
    if len(roots) > 1:
        raise ValueError(
            "trees have different root labels (%s); configure a super root"
            % ", ".join(sorted(roots)))

    counts = defaultdict(Fraction)
    preterminals = set()
    for t, w in zip(trees, weights):
        w = Fraction(w)
        for node in t.subtrees():
            if node.is_preterminal:
                preterminals.add(node.label)
            elif node.is_nonterminal:
                counts[node.label, node.child_labels()] += w
    totals = defaultdict(Fraction)
    for (lhs, _), n in counts.items():
        totals[lhs] += n
    productions = {
        key: Production(key[0], key[1], n, float(n / totals[key[0]]))
        for key, n in counts.items() if n > 0
    }
    return Pcfg(productions, roots.pop(), frozenset(preterminals))


def tree_log_prob(g: Pcfg, t: Tree) -> float:
    """Natural-log probability of ``t``; -inf when it uses an unknown production."""
    if t.is_nonterminal and t.label != g.start:
        return -math.inf
    total = 0.0
    for lhs, rhs in local_trees(t):
        p = g.prob(lhs, rhs)
        if p <= 0.0:
            return -math.inf
        total += math.log(p)
    return total


@dataclass(frozen=True)
class Subsumption:
    production: Production
    witness: Tree
    witness_prob: float


def find_subsumed(g: Pcfg, max_len: int | None = None) -> list:
    """Productions strictly beaten by a multi-step derivation of their own RHS.

    For A -> beta, the symbols of beta are treated as leaves and the best
    derivation of that leaf string from A that avoids A -> beta is found
    with the chart parser. Ties, meaning log-probabilities within the
    parser's tie tolerance, are not subsumption.
    """
    from .parser import TIE_TOL, best_derivation, binarize

    bg = binarize(g)
    if max_len is None:
        max_len = max((len(rhs) for _, rhs in g.productions), default=0)
    found = []
    for p in sorted(g, key=lambda p: (p.lhs, p.rhs)):
        if len(p.rhs) > max_len or p.prob <= 0.0:
            continue
        if p.rhs == (p.lhs,):
            continue
        res = best_derivation(bg, p.rhs, p.lhs, exclude=p.key)
        if res is None:
            continue
        logp, witness = res
        if logp > math.log(p.prob) + TIE_TOL:
            found.append(Subsumption(p, witness, math.exp(logp)))
    return found


@dataclass
class PruneReport:
    removed: list
    total: int

    @property
    def fraction(self) -> float:
        return len(self.removed) / self.total if self.total else 0.0


def prune_subsumed(g: Pcfg, return_report: bool = False):
    """Drop subsumed productions without renormalizing."""
    subsumed = find_subsumed(g)
    drop = {s.production.key for s in subsumed}
    kept = {k: p for k, p in g.productions.items() if k not in drop}
    pruned = Pcfg(kept, g.start, g.preterminals)
    if return_report:
        return pruned, PruneReport([s.production for s in subsumed], len(g))
    return pruned


def _sort_key(p: Production):
    return (p.lhs, -p.prob, p.rhs)


def write_grammar(g: Pcfg) -> str:
    """One production per line: ``prob count lhs -> rhs...``."""
    lines = [f"# start: {g.start}",
             "# preterminals: " + " ".join(sorted(g.preterminals))]
    for p in sorted(g, key=_sort_key):
        lines.append(f"{p.prob!r} {p.count} {p}")
    return "\n".join(lines) + "\n"


class GrammarSyntaxError(ValueError):
    pass


def parse_grammar(text: str) -> Pcfg:
    start = None
    preterminals = None
    productions = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            key = key.strip()
            if key == "start":
                start = value.strip()
            elif key == "preterminals":
                preterminals = frozenset(value.split())
            continue
        fields = line.split()
        try:
            arrow = fields.index("->")
            prob, count = float(fields[0]), Fraction(fields[1])
        except (ValueError, IndexError):
            raise GrammarSyntaxError(f"line {lineno}: malformed production {line!r}") from None
        if arrow != 3 or len(fields) < 5:
            raise GrammarSyntaxError(f"line {lineno}: malformed production {line!r}")
        lhs, rhs = fields[2], tuple(fields[4:])
        productions[lhs, rhs] = Production(lhs, rhs, count, prob)
    if not productions:
        raise GrammarSyntaxError("grammar has no productions")
    if start is None:
        start = next(iter(productions))[0]
    if preterminals is None:
        lhss = {lhs for lhs, _ in productions}
        preterminals = frozenset(
            s for _, rhs in productions for s in rhs if s not in lhss)
    return Pcfg(productions, start, preterminals)


def read_grammar(path) -> Pcfg:
    with open(path, encoding="utf-8") as f:
        return parse_grammar(f.read())
