"""Closed-form PP-attachment models over two-tree corpora.

Each model is a corpus holding an NP-attachment tree (A) with relative
frequency f and a VP-attachment tree (B) with frequency 1 - f, in one of
three representations: Penn flat VPs, Chomsky-adjoined VPs, and Penn flat
VPs with parent annotation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .transforms import parent_annotate
from .trees import Corpus, Tree, parse_tree

__all__ = [
    "ModelKind", "AttachmentModel", "fhat", "tree_likelihoods",
    "model_trees", "model_corpus", "emit_curves", "curves_csv",
]


class ModelKind(enum.Enum):
    PENN_FLAT = "penn"
    CHOMSKY_ADJUNCTION = "chomsky"
    PARENT_ANNOTATED = "parent"

    @classmethod
    def parse(cls, value) -> "ModelKind":
        if isinstance(value, cls):
            return value
        aliases = {"pennflat": "penn", "flat": "penn", "1": "penn",
                   "chomskyadjunction": "chomsky", "2": "chomsky",
                   "parentannotated": "parent", "3": "parent"}
        key = str(value).lower().replace("_", "").replace("-", "")
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class AttachmentModel:
    kind: ModelKind
    f: Real

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind.parse(self.kind))
        if not 0 <= self.f <= 1:
            raise ValueError(f"f must lie in [0, 1], got {self.f}")


def fhat(m: AttachmentModel):
    """Relative likelihood of the NP-attachment tree among the two trees."""
    f = m.f
    if m.kind is ModelKind.PENN_FLAT:
        return f * f / (2 - f)
    if m.kind is ModelKind.CHOMSKY_ADJUNCTION:
        return (2 * f - f * f) / (2 + f - 2 * f * f)
    return f * f / (f * f + (1 - f) ** 2)


def tree_likelihoods(m: AttachmentModel) -> tuple:
    """(P(A), P(B)) under the grammar induced from the model corpus."""
    f = m.f
    if m.kind is ModelKind.PENN_FLAT:
        return 4 * f * f / (2 + f) ** 3, 4 * (1 - f) / (2 + f) ** 2
    if m.kind is ModelKind.CHOMSKY_ADJUNCTION:
        return 4 * f / ((4 - f * f) * (2 + f) ** 2), 4 * (1 - f) / (4 - f * f) ** 2
    return f * f, (1 - f) ** 2


_NP_ATTACH = ("(S (VP (V ate) (NP (NP (Det the) (N cake))"
              " (PP (P with) (NP (Det a) (N candle))))))")
_VP_ATTACH = ("(S (VP (V ate) (NP (Det the) (N cake))"
              " (PP (P with) (NP (Det a) (N fork)))))")
_VP_ADJOINED = ("(S (VP (VP (V ate) (NP (Det the) (N cake)))"
                " (PP (P with) (NP (Det a) (N fork)))))")


def model_trees(kind) -> tuple:
    """The (A, B) pair of a model, each under an S root."""
    kind = ModelKind.parse(kind)
    a, b = parse_tree(_NP_ATTACH), parse_tree(_VP_ATTACH)
    if kind is ModelKind.CHOMSKY_ADJUNCTION:
        b = parse_tree(_VP_ADJOINED)
    elif kind is ModelKind.PARENT_ANNOTATED:
        a, b = parent_annotate(a), parent_annotate(b)
    return a, b


def model_corpus(m: AttachmentModel, n: int) -> Corpus:
    """n trees: n*f copies of the A tree followed by the rest as B trees."""
    k = Fraction(m.f) * n if not isinstance(m.f, float) else m.f * n
    n_a = round(k)
    if abs(k - n_a) > 1e-9:
        raise ValueError(f"n * f = {float(k)} is not an integer")
    a, b = model_trees(m.kind)
    return Corpus([a] * n_a + [b] * (n - n_a), name=f"{m.kind.value}-f{float(m.f):g}-n{n}")


def emit_curves(step: float) -> list:
    """Rows (f, fhat1, fhat2, fhat3) from f = 0 to f = 1 inclusive."""
    if not 0 < step <= 0.5:
        raise ValueError("step must lie in (0, 0.5]")
    n = int(round(1 / step))
    if abs(n * step - 1) < 1e-9:
        fs = [i / n for i in range(n + 1)]
    else:
        fs = [i * step for i in range(int(1 / step) + 1)] + [1.0]
    return [(f,) + tuple(float(fhat(AttachmentModel(k, f))) for k in ModelKind)
            for f in fs]


def curves_csv(step: float) -> str:
    lines = ["f,fhat1,fhat2,fhat3"]
    lines += [",".join(f"{v:.6f}" for v in row) for row in emit_curves(step)]
    return "\n".join(lines) + "\n"
