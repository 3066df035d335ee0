import pytest
from hypothesis import given

from conftest import trees
from treegram.evaluation import edges
from treegram.synthetic import penn_corpus
from treegram.transforms import (TransformSpec, apply, invert, np_adjoin, np_unadjoin,
                                 parent_annotate, parent_unannotate, resolve, vp_adjoin,
                                 vp_unadjoin)
from treegram.trees import parse_tree, yield_tags

T = parse_tree


def test_parent_annotation_of_a1(a1):
    expected = T("(S (VP^S (V ate) (NP^VP (NP^NP (Det the) (N cake))"
                 " (PP^NP (P with) (NP^PP (Det a) (N candle))))))")
    assert parent_annotate(a1) == expected


def test_parent_annotation_of_b1(b1):
    expected = T("(S (VP^S (V ate) (NP^VP (Det the) (N cake))"
                 " (PP^VP (P with) (NP^PP (Det a) (N fork)))))")
    assert parent_annotate(b1) == expected
    assert parent_unannotate(expected) == b1


def test_parent_annotation_leaves_shallow_tree():
    t = T("(S (NP a) (VP b))")
    assert parent_annotate(t) == t


def test_parent_annotation_rejects_separator():
    with pytest.raises(ValueError):
        parent_annotate(T("(S (NP^X (N a)) (VP (V b)))"))


def test_parent_annotation_custom_separator():
    t = T("(S (NP (N a)) (VP (V b)))")
    assert parent_annotate(t, sep="~") == T("(S (NP~S (N a)) (VP~S (V b)))")


def test_unannotate_plain():
    assert parent_unannotate(T("(NP^VP (N a))")) == T("(NP (N a))")
    t = T("(S (NP (N a)))")
    assert parent_unannotate(t) == t


@given(trees())
def test_parent_round_trip(t):
    assert parent_unannotate(parent_annotate(t)) == t


@given(trees())
def test_parent_annotation_keeps_spans(t):
    strip = lambda bag: sorted((l, r) for (_, l, r), n in bag.items() for _ in range(n))
    assert strip(edges([parent_annotate(t)])) == strip(edges([t]))


VP_CASES = [
    ("(VP (V ate) (NP (N x)) (PP (P y)))",
     "(VP (VP (V ate) (NP (N x))) (PP (P y)))"),
    ("(VP (V ate) (PP (P y)))", "(VP (V ate) (PP (P y)))"),
    ("(VP (V a) (NP (N b)) (PP (P c)) (PP (P d)))",
     "(VP (VP (VP (V a) (NP (N b))) (PP (P c))) (PP (P d)))"),
    ("(VP (V a) (NP (N b)) (PP (P c)) (, ,))",
     "(VP (VP (V a) (NP (N b))) (PP (P c)) (, ,))"),
    ("(VP (V a) (NP (N b)) (PP (P c)) (, ,) (PP (P d)))",
     "(VP (VP (VP (V a) (NP (N b))) (PP (P c)) (, ,)) (PP (P d)))"),
]


@pytest.mark.parametrize("flat, adjoined", VP_CASES)
def test_vp_adjoin_cases(flat, adjoined):
    assert vp_adjoin(T(flat)) == T(adjoined)
    assert vp_unadjoin(T(adjoined)) == T(flat)


def test_vp_adjoin_reaches_fixpoint():
    t = T("(S (VP (V a) (NP (N b)) (PP (P c)) (PP (P d)) (PP (P e))))")
    once = vp_adjoin(t)
    assert vp_adjoin(once) == once


NP_CASES = [
    # two-level treebank form becomes recursive
    ("(NP (NP (Det a) (N b)) (PP (P c)) (PP (P d)))",
     "(NP (NP (NP (Det a) (N b)) (PP (P c))) (PP (P d)))"),
    # already a Chomsky adjunction
    ("(NP (NP (Det a) (N b)) (PP (P c)))", "(NP (NP (Det a) (N b)) (PP (P c)))"),
    ("(NP (NP (Det a) (N b)) (PP (P c)) (, ,) (PP (P d)))",
     "(NP (NP (NP (Det a) (N b)) (PP (P c)) (, ,)) (PP (P d)))"),
]


@pytest.mark.parametrize("penn, adjoined", NP_CASES)
def test_np_adjoin_cases(penn, adjoined):
    assert np_adjoin(T(penn)) == T(adjoined)
    assert np_unadjoin(T(adjoined)) == T(penn)


def test_np_adjoin_flat_single_application():
    assert np_adjoin(T("(NP (Det a) (N dog) (PP (P in)))")) == \
        T("(NP (NP (Det a) (N dog)) (PP (P in)))")


def test_np_unadjoin_flat_unchanged():
    t = T("(NP (Det a) (N dog))")
    assert np_unadjoin(t) == t


def test_np_unadjoin_badpenn_is_lossy():
    bad = T("(NP (NP (NP (Det a) (N b)) (PP (P c))) (PP (P d)))")
    assert np_unadjoin(bad) == T("(NP (NP (Det a) (N b)) (PP (P c)) (PP (P d)))")


def test_np_adjoin_idempotent():
    for t in penn_corpus(200, seed=5):
        once = np_adjoin(t)
        assert np_adjoin(once) == once


def test_termination_bound():
    # k final PPs give k nested VP levels
    for k in range(1, 8):
        pps = " ".join("(PP (P p))" for _ in range(k))
        vp = vp_adjoin(T(f"(VP (V v) (NP (N n)) {pps})"))
        depth = 0
        while vp.children[0].label == "VP":
            vp, depth = vp.children[0], depth + 1
        assert depth == k


FAMILIES = {
    "parent": TransformSpec(("parent",)),
    "vp": TransformSpec(("vp",)),
    "np": TransformSpec(("np",)),
    "vp-np": resolve("vp-np"),
}


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_round_trip_on_generated_family(name):
    spec = FAMILIES[name]
    c = penn_corpus(300, seed=len(name))
    forward = apply(spec, c)
    assert sum(x != t for x, t in zip(forward, c)) > 30
    assert apply(invert(spec), forward).trees == c.trees


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_transforms_preserve_yields(name):
    spec = FAMILIES[name]
    for t in penn_corpus(200, seed=7):
        x = spec(t)
        assert x.leaves() == t.leaves()
        assert yield_tags(x) == yield_tags(t)


def test_invert_reverses_steps():
    assert invert(TransformSpec(("vp", "np"))).steps == ("unnp", "unvp")
    assert invert(invert(resolve("vp-np"))) == resolve("vp-np")


def test_identity_spec():
    c = penn_corpus(20, seed=1)
    assert apply(resolve("id"), c).trees == c.trees
    assert apply(TransformSpec(("identity",)), c).trees == c.trees


def test_resolve_custom_list():
    assert resolve("parent,vp").steps == ("parent", "vp")
    with pytest.raises(ValueError):
        resolve("bogus")
