"""Invertible tree transforms: parent annotation and PP Chomsky adjunction.

Each forward transform has a structural inverse that flattens back to the
treebank's own representation. The inverses are exact on the image of the
forward transform applied to treebank-form trees; on other trees they map
to the nearest treebank-form tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .trees import Corpus, Tree

__all__ = [
    "parent_annotate", "parent_unannotate", "vp_adjoin", "vp_unadjoin",
    "np_adjoin", "np_unadjoin", "TransformSpec", "apply", "invert",
    "NAMED_CHAINS", "resolve", "SEPARATOR",
]

SEPARATOR = "^"
COMMA = ","
PP = "PP"


def parent_annotate(t: Tree, sep: str = SEPARATOR) -> Tree:
    """Append the parent's label to every non-root, non-preterminal node.

    The appended label is always the parent's original label, so an NP
    under a VP under S becomes NP^VP, not NP^VP^S.
    """
    for node in t.subtrees():
        if sep in node.label:
            raise ValueError(
                f"label {node.label!r} already contains separator {sep!r}")

    def walk(node: Tree, parent: str | None) -> Tree:
        if node.is_terminal or node.is_preterminal:
            return node
        kids = [walk(c, node.label) for c in node.children]
        label = node.label if parent is None else f"{node.label}{sep}{parent}"
        return Tree(label, kids)

    return walk(t, None)


def parent_unannotate(t: Tree, sep: str = SEPARATOR) -> Tree:
    if t.is_terminal:
        return t
    return Tree(t.label.split(sep, 1)[0], [parent_unannotate(c, sep) for c in t.children])


def _adjoin_match(node: Tree, category: str, min_lowered: int) -> tuple | None:
    """Split ``node`` into (lowered, tail) if an adjunction rewrite applies."""
    kids = node.children
    if node.label != category or node.is_preterminal:
        return None
    # the comma rule is tried first
    if len(kids) >= 2 and kids[-1].label == COMMA and kids[-2].label == PP:
        lowered, tail = kids[:-2], kids[-2:]
        if len(lowered) >= min_lowered:
            return lowered, tail
    if kids and kids[-1].label == PP:
        lowered, tail = kids[:-1], kids[-1:]
        if len(lowered) >= min_lowered:
            return lowered, tail
    return None


def _unadjoin_match(node: Tree, category: str) -> tuple | None:
    """Return (inner, tail) for nodes of shape (C (C ...) PP) or (C (C ...) PP ,)."""
    kids = node.children
    if node.label != category:
        return None
    labels = node.child_labels()
    if labels[1:] not in ((PP,), (PP, COMMA)):
        return None
    inner = kids[0]
    if inner.label != category or inner.is_preterminal:
        return None
    return inner, kids[1:]


def _adjoin(t: Tree, category: str, min_lowered: int, guard: Callable | None) -> Tree:
    if t.is_terminal or t.is_preterminal:
        return t
    m = _adjoin_match(t, category, min_lowered)
    if m is not None and not (guard and guard(m[0])):
        lowered, tail = m
        # the new lower node is itself rewritten on the recursive call
        t = Tree(t.label, (Tree(category, lowered),) + tuple(tail))
    return Tree(t.label, [_adjoin(c, category, min_lowered, guard) for c in t.children])


def vp_adjoin(t: Tree) -> Tree:
    """Lower everything before a final PP (or PP plus comma) into a new VP.

    The lowered sequence must have at least two members.

    >>> from .trees import parse_tree
    >>> str(vp_adjoin(parse_tree("(VP (V a) (NP (N b)) (PP (P c)) (PP (P d)))")))
    '(VP (VP (VP (V a) (NP (N b))) (PP (P c))) (PP (P d)))'
    """
    return _adjoin(t, "VP", 2, None)


def _single_np(lowered) -> bool:
    return len(lowered) == 1 and lowered[0].label == "NP"


def np_adjoin(t: Tree) -> Tree:
    """NP analogue of :func:`vp_adjoin` with a one-member minimum.

    A lowered sequence consisting of a lone NP is left alone: that node is
    already a Chomsky adjunction.
    """
    return _adjoin(t, "NP", 1, _single_np)


def _unadjoin(t: Tree, category: str, inner_ok: Callable) -> Tree:
    if t.is_terminal or t.is_preterminal:
        return t
    t = Tree(t.label, [_unadjoin(c, category, inner_ok) for c in t.children])
    while True:
        m = _unadjoin_match(t, category)
        if m is None or not inner_ok(m[0]):
            return t
        inner, tail = m
        t = Tree(t.label, inner.children + tuple(tail))


def vp_unadjoin(t: Tree) -> Tree:
    return _unadjoin(t, "VP", lambda inner: len(inner.children) >= 2)


def _np_adjunction(inner: Tree) -> bool:
    # flatten only when the inner NP is itself an adjunction structure;
    # (NP (NP Det N) PP) is the treebank's own two-level form and stays
    labels = inner.child_labels()
    if len(labels) < 2 or labels[0] != "NP":
        return False
    return labels[-1] == PP or labels[-2:] == (PP, COMMA)


def np_unadjoin(t: Tree) -> Tree:
    return _unadjoin(t, "NP", _np_adjunction)


_STEPS = {
    "identity": (lambda t: t, "identity"),
    "parent": (parent_annotate, "unparent"),
    "unparent": (parent_unannotate, "parent"),
    "vp": (vp_adjoin, "unvp"),
    "unvp": (vp_unadjoin, "vp"),
    "np": (np_adjoin, "unnp"),
    "unnp": (np_unadjoin, "np"),
}

NAMED_CHAINS = {
    "id": (),
    "parent": ("parent",),
    "vp": ("vp",),
    "np": ("np",),
    "vp-np": ("vp", "np"),
}


@dataclass(frozen=True)
class TransformSpec:
    """An ordered chain of named steps applied left to right.

    Step names: identity, parent, unparent, vp, unvp, np, unnp.
    """

    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for s in self.steps:
            if s not in _STEPS:
                raise ValueError(f"unknown transform step {s!r}")

    def __call__(self, t: Tree) -> Tree:
        for s in self.steps:
            t = _STEPS[s][0](t)
        return t


def invert(spec: TransformSpec) -> TransformSpec:
    return TransformSpec(tuple(_STEPS[s][1] for s in reversed(spec.steps)))


def apply(spec: TransformSpec, c: Corpus | Sequence[Tree]) -> Corpus:
    trees = c.trees if isinstance(c, Corpus) else list(c)
    name = c.name if isinstance(c, Corpus) else ""
    return Corpus([spec(t) for t in trees], name=name)


def resolve(name_or_steps) -> TransformSpec:
    """Look up a chain by column name ("id", "parent", "vp", "np", "vp-np")
    or build one from a comma-separated / listed sequence of step names."""
    if isinstance(name_or_steps, TransformSpec):
        return name_or_steps
    if isinstance(name_or_steps, str):
        if name_or_steps in NAMED_CHAINS:
            return TransformSpec(NAMED_CHAINS[name_or_steps])
        name_or_steps = [s.strip() for s in name_or_steps.split(",") if s.strip()]
    return TransformSpec(tuple(name_or_steps))
