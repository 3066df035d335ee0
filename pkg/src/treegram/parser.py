"""Exhaustive CKY Viterbi parsing of POS-tag strings.

The grammar is left-factored into binary and unary rules. Intermediate
symbols start with ``@``, which the tree reader never produces as part of a
grammar label. Unary rules are closed per cell with a best-first sweep, so
unary cycles terminate. Ties (scores within ``TIE_TOL`` in log space) are
broken by a generator keyed on (seed, span, symbol), which makes the choice
independent of the order in which the chart is filled.
"""
from __future__ import annotations

import hashlib
import heapq
import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .grammar import Pcfg
from .trees import Corpus, Tree, yield_tags

__all__ = [
    "MARKER", "TIE_TOL", "BinarizedGrammar", "binarize", "debinarize",
    "UnknownTagError", "viterbi_parse", "parse_with_score", "best_derivation",
    "ParseStatus", "ParseOutcome", "parse_corpus", "write_failure_report",
    "derive_seed",
]

MARKER = "@"
TIE_TOL = 1e-9


class UnknownTagError(ValueError):
    def __init__(self, tag, position):
        super().__init__(f"unknown tag {tag!r} at position {position}")
        self.tag = tag
        self.position = position


@dataclass
class BinarizedGrammar:
    """Rules of rank <= 2; each rule carries the key of its source production."""

    start: str
    preterminals: frozenset
    # left child -> [(right child, parent, logp, source)]
    binary: dict = field(default_factory=lambda: defaultdict(list))
    # child -> [(parent, logp, source)]
    unary: dict = field(default_factory=lambda: defaultdict(list))

    def rules(self):
        for left, rules in self.binary.items():
            for right, parent, logp, src in rules:
                yield parent, (left, right), logp, src
        for child, rules in self.unary.items():
            for parent, logp, src in rules:
                yield parent, (child,), logp, src


def _intermediate(lhs: str, prefix: Sequence[str]) -> str:
    return "%s%s|%s" % (MARKER, lhs, " ".join(prefix))


def binarize(g: Pcfg) -> BinarizedGrammar:
    """Left-factor every production; only the completing rule carries probability.

    VP -> V NP PP becomes @VP|V NP -> V NP (prob 1) and VP -> @VP|V NP PP.
    """
    for label in g.labels():
        if MARKER in label:
            raise ValueError(f"label {label!r} contains reserved marker {MARKER!r}")
    bg = BinarizedGrammar(g.start, g.preterminals)
    seen = set()
    for p in g:
        if p.prob <= 0.0:
            continue
        if p.prob > 1.0:
            raise ValueError(f"production {p} has probability {p.prob} > 1")
        logp = math.log(p.prob)
        rhs = p.rhs
        if len(rhs) == 1:
            bg.unary[rhs[0]].append((p.lhs, logp, p.key))
            continue
        left = rhs[0]
        for i in range(1, len(rhs) - 1):
            sym = _intermediate(p.lhs, rhs[:i + 1])
            if sym not in seen:
                seen.add(sym)
                bg.binary[left].append((rhs[i], sym, 0.0, None))
            left = sym
        bg.binary[left].append((rhs[-1], p.lhs, logp, p.key))
    return bg


def debinarize(t: Tree) -> Tree:
    """Splice out every intermediate node."""
    if t.is_terminal:
        return t
    kids = []
    for c in t.children:
        c = debinarize(c)
        if not c.is_terminal and c.label.startswith(MARKER):
            kids.extend(c.children)
        else:
            kids.append(c)
    return Tree(t.label, kids)


def derive_seed(*parts) -> int:
    h = hashlib.blake2b("|".join(map(str, parts)).encode("utf-8"), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def _chart(bg: BinarizedGrammar, leaves: Sequence[str], seed, exclude=None) -> dict:
    """Fill the Viterbi chart; entries are (logp, backpointer)."""
    n = len(leaves)
    chart = {}
    for width in range(1, n + 1):
        for i in range(n - width + 1):
            j = i + width
            cands = defaultdict(list)
            if width == 1:
                cands[leaves[i]].append((0.0, None))
            for k in range(i + 1, j):
                left, right = chart[i, k], chart[k, j]
                for b, (sb, _) in left.items():
                    for c, a, logp, src in bg.binary.get(b, ()):
                        if c not in right or (exclude is not None and src == exclude):
                            continue
                        cands[a].append((sb + right[c][0] + logp, (k, b, c)))
            chart[i, j] = _close_cell(bg, cands, exclude, (seed, i, j))
    return chart


def _close_cell(bg, cands, exclude, key) -> dict:
    best = {a: max(s for s, _ in alts) for a, alts in cands.items()}
    heap = [(-s, a) for a, s in best.items()]
    heapq.heapify(heap)
    cell = {}
    while heap:
        negs, a = heapq.heappop(heap)
        if a in cell or -negs < best[a]:
            continue
        score = best[a]
        alts = [bp for s, bp in cands[a] if s >= score - TIE_TOL]
        if len(alts) > 1:
            bp = random.Random(derive_seed(*key, a)).choice(alts)
        else:
            bp = alts[0]
        cell[a] = (score, bp)
        for parent, logp, src in bg.unary.get(a, ()):
            if parent in cell or (exclude is not None and src == exclude):
                continue
            s = score + logp
            cands[parent].append((s, a))
            if parent not in best or s > best[parent]:
                best[parent] = s
                heapq.heappush(heap, (-s, parent))
    return cell


def _build(chart, leaves, words, i, j, sym) -> Tree:
    _, bp = chart[i, j][sym]
    if bp is None:
        if words is None:
            return Tree(sym)
        return Tree(sym, [Tree(words[i])])
    if isinstance(bp, str):
        return Tree(sym, [_build(chart, leaves, words, i, j, bp)])
    k, b, c = bp
    return Tree(sym, [_build(chart, leaves, words, i, k, b),
                      _build(chart, leaves, words, k, j, c)])


def binarized(g) -> BinarizedGrammar:
    if isinstance(g, BinarizedGrammar):
        return g
    bg = getattr(g, "_binarized", None)
    if bg is None:
        bg = binarize(g)
        g._binarized = bg
    return bg


def parse_with_score(g, tags: Sequence[str], seed: int = 0,
                     words: Sequence[str] | None = None) -> tuple:
    """Return (tree, logp) for the best parse, or (None, -inf)."""
    bg = binarized(g)
    for pos, tag in enumerate(tags):
        if tag not in bg.preterminals:
            raise UnknownTagError(tag, pos)
    if not tags:
        return None, -math.inf
    words = list(tags) if words is None else list(words)
    chart = _chart(bg, list(tags), seed)
    root = chart[0, len(tags)].get(bg.start)
    if root is None:
        return None, -math.inf
    tree = _build(chart, tags, words, 0, len(tags), bg.start)
    return debinarize(tree), root[0]


def viterbi_parse(g, tags: Sequence[str], seed: int = 0,
                  words: Sequence[str] | None = None) -> Tree | None:
    """Maximum-likelihood parse of ``tags`` rooted at the grammar's start symbol.

    Preterminals get ``words`` as terminals when given, else the tags
    themselves. Returns None when the grammar derives no parse.
    """
    return parse_with_score(g, tags, seed, words)[0]


def best_derivation(g, symbols: Sequence[str], root: str, exclude=None,
                    seed: int = 0) -> tuple | None:
    """Best derivation of a symbol string from ``root`` treating each symbol as a leaf.

    Productions whose key equals ``exclude`` are not used. Returns
    (logp, tree) with the symbols as terminal leaves, or None.
    """
    bg = binarized(g)
    chart = _chart(bg, list(symbols), seed, exclude)
    n = len(symbols)
    entry = chart[0, n].get(root)
    if entry is None or entry[1] is None:
        return None
    return entry[0], debinarize(_build(chart, symbols, None, 0, n, root))


@dataclass(frozen=True)
class ParseStatus:
    index: int
    length: int
    status: str  # parsed | no-parse | unknown-tag | too-long


@dataclass
class ParseOutcome:
    trees: list
    report: list
    name: str = ""

    @property
    def failures(self) -> list:
        return [r for r in self.report if r.status != "parsed"]

    def corpus(self) -> Corpus:
        """Parsed trees only; failed sentences are dropped."""
        return Corpus([t for t in self.trees if t is not None], name=self.name)


def parse_corpus(g, c: Corpus | Sequence[Tree], seed: int = 0,
                 max_length: int | None = None) -> ParseOutcome:
    """Parse the tag yield of every tree; failures are recorded, not raised."""
    trees = c.trees if isinstance(c, Corpus) else list(c)
    bg = binarized(g)
    out, report = [], []
    for idx, gold in enumerate(trees):
        tags = yield_tags(gold)
        status, parse = "parsed", None
        if max_length is not None and len(tags) > max_length:
            status = "too-long"
        else:
            try:
                parse = viterbi_parse(bg, tags, derive_seed(seed, idx), gold.leaves())
            except UnknownTagError:
                status = "unknown-tag"
            else:
                if parse is None:
                    status = "no-parse"
        out.append(parse)
        report.append(ParseStatus(idx, len(tags), status))
    return ParseOutcome(out, report, name=getattr(c, "name", ""))


def write_failure_report(report: Sequence[ParseStatus]) -> str:
    lines = ["index\tlength\tstatus"]
    lines += [f"{r.index}\t{r.length}\t{r.status}" for r in report]
    return "\n".join(lines) + "\n"
