"""Bracketed phrase-structure trees: reading, writing and Penn-style cleanup.

Trees are immutable; every transformation in the package returns a new tree.

>>> t = parse_tree("(S (NP (Det the) (N man)) (VP (V ate)))")
>>> t.leaves()
['the', 'man', 'ate']
>>> yield_tags(t)
['Det', 'N', 'V']
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Tree", "Corpus", "TreeSyntaxError", "parse_tree", "iter_trees",
    "read_corpus", "write_tree", "write_corpus", "preprocess_penn",
    "yield_tags", "NONE_LABEL",
]

NONE_LABEL = "-NONE-"
DEFAULT_DELIMITERS = "-="

# words containing brackets are written with the Penn substitutions
_ESCAPES = {"(": "-LRB-", ")": "-RRB-"}


class TreeSyntaxError(ValueError):
    """Malformed bracketed text; ``offset`` is the character position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Tree:
    label: str
    children: tuple = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    @property
    def is_terminal(self) -> bool:
        return not self.children

    @property
    def is_preterminal(self) -> bool:
        return bool(self.children) and all(c.is_terminal for c in self.children)

    @property
    def is_nonterminal(self) -> bool:
        return bool(self.children) and not self.is_preterminal

    def leaves(self) -> list[str]:
        if self.is_terminal:
            return [self.label]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def subtrees(self) -> Iterator["Tree"]:
        """Pre-order traversal of all nodes, terminals included."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def relabel(self, label: str) -> "Tree":
        return Tree(label, self.children)

    def child_labels(self) -> tuple:
        return tuple(c.label for c in self.children)

    def __str__(self) -> str:
        return write_tree(self)


@dataclass
class Corpus:
    trees: list = field(default_factory=list)
    name: str = ""

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __getitem__(self, i):
        return self.trees[i]


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def _tokens(text: str, start: int = 0) -> Iterator[tuple[str, int]]:
    for m in _TOKEN.finditer(text, start):
        yield m.group(), m.start()


def _parse_at(tokens: list, pos: int) -> tuple[Tree | None, int]:
    """Parse one bracketed node whose "(" is tokens[pos]; returns (tree, next)."""
    tok, off = tokens[pos]
    assert tok == "("
    pos += 1
    if pos >= len(tokens):
        raise TreeSyntaxError("unbalanced parentheses", off)
    label = None
    if tokens[pos][0] not in "()":
        label = tokens[pos][0]
        pos += 1
    children = []
    while True:
        if pos >= len(tokens):
            raise TreeSyntaxError("unbalanced parentheses", off)
        tok, toff = tokens[pos]
        if tok == ")":
            pos += 1
            break
        if tok == "(":
            child, pos = _parse_at(tokens, pos)
            children.append(child)
        else:
            children.append(Tree(tok))
            pos += 1
    if label is None:
        # an empty-label pair is only legal as a wrapper around one tree
        if len(children) == 1 and not children[0].is_terminal:
            return children[0], pos
        raise TreeSyntaxError("empty label", off)
    if not children:
        raise TreeSyntaxError(f"node {label!r} has no children", off)
    return Tree(label, children), pos


def iter_trees(text: str) -> Iterator[Tree]:
    """Yield every tree in ``text``; lines starting with "#" are comments."""
    text = "\n".join(
        "" if line.lstrip().startswith("#") else line for line in text.split("\n"))
    tokens = list(_tokens(text))
    pos = 0
    while pos < len(tokens):
        tok, off = tokens[pos]
        if tok != "(":
            raise TreeSyntaxError(f"unexpected {tok!r}", off)
        tree, pos = _parse_at(tokens, pos)
        yield tree


def parse_tree(text: str) -> Tree:
    """Parse exactly one bracketed tree; anything after it is an error."""
    tokens = list(_tokens(text))
    if not tokens:
        raise TreeSyntaxError("no tree", 0)
    if tokens[0][0] != "(":
        raise TreeSyntaxError(f"unexpected {tokens[0][0]!r}", tokens[0][1])
    tree, pos = _parse_at(tokens, 0)
    if pos < len(tokens):
        raise TreeSyntaxError("trailing garbage", tokens[pos][1])
    return tree


def read_corpus(path, name: str | None = None) -> Corpus:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return Corpus(list(iter_trees(text)), name=name if name is not None else str(path))


def _escape(label: str) -> str:
    for raw, sub in _ESCAPES.items():
        label = label.replace(raw, sub)
    return label


def write_tree(t: Tree) -> str:
    if t.is_terminal:
        return _escape(t.label)
    return "(%s %s)" % (_escape(t.label), " ".join(write_tree(c) for c in t.children))


def _pretty(t: Tree, indent: int) -> str:
    if t.is_terminal or t.is_preterminal:
        return write_tree(t)
    pad = " " * (indent + len(t.label) + 2)
    parts = [_pretty(c, indent + len(t.label) + 2) for c in t.children]
    return "(%s %s)" % (_escape(t.label), ("\n" + pad).join(parts))


def write_corpus(c: Corpus | Iterable[Tree], layout: str = "one-per-line") -> str:
    """Serialize trees; ``layout`` is "one-per-line" or "pretty"."""
    if layout not in ("one-per-line", "pretty"):
        raise ValueError(f"unknown layout {layout!r}")
    trees = c.trees if isinstance(c, Corpus) else list(c)
    if layout == "pretty":
        return "".join(_pretty(t, 0) + "\n\n" for t in trees)
    return "".join(write_tree(t) + "\n" for t in trees)


def _clean_label(label: str, delimiters: str) -> str:
    # "-LRB-", "-NONE-", ",", "--", ":" are kept as they are
    if label.startswith("-") or not any(ch.isalnum() for ch in label):
        return label
    cut = len(label)
    for d in delimiters:
        i = label.find(d, 1)
        if i != -1:
            cut = min(cut, i)
    return label[:cut]


def preprocess_penn(t: Tree, delimiters: str = DEFAULT_DELIMITERS) -> Tree | None:
    """Delete empty elements and strip function tags / indices from labels.

    Returns None when nothing but empty elements remains.

    >>> str(preprocess_penn(parse_tree("(S (NP-SBJ (-NONE- *)) (VP (VB go)))")))
    '(S (VP (VB go)))'
    """
    if t.is_terminal:
        return t
    if t.is_preterminal:
        if t.label == NONE_LABEL:
            return None
        return Tree(_clean_label(t.label, delimiters), t.children)
    kids = [k for k in (preprocess_penn(c, delimiters) for c in t.children) if k is not None]
    if not kids:
        return None
    return Tree(_clean_label(t.label, delimiters), kids)


def yield_tags(t: Tree) -> list[str]:
    """Preterminal labels left to right."""
    if t.is_terminal:
        raise ValueError(f"bare terminal {t.label!r} has no tag")
    if t.is_preterminal:
        return [t.label]
    tags = []
    for child in t.children:
        if child.is_terminal:
            raise ValueError(
                f"nonterminal {t.label!r} directly dominates terminal {child.label!r}")
        tags.extend(yield_tags(child))
    return tags


def flat_tree(root: str, tags: Sequence[str], words: Sequence[str] | None = None) -> Tree:
    """A root directly over preterminals; it has no scorable edges."""
    words = tags if words is None else words
    return Tree(root, [Tree(tag, [Tree(w)]) for tag, w in zip(tags, words)])
