import pytest

from treegram.cli import main
from treegram.grammar import read_grammar
from treegram.trees import iter_trees, read_corpus

NP_PP_FRAGMENT = """# start: NP
# preterminals: Det N P
0.882 1 NP -> Det N
0.112 1 NP -> NP PP
0.006 1 NP -> NP PP PP
1.0 1 PP -> P NP
"""


def run(*argv):
    return main([str(a) for a in argv])


def read_report(path):
    return dict(line.split("\t", 1) for line in path.read_text().splitlines())


def test_gen_round_trips(tmp_path):
    out = tmp_path / "penn.mrg"
    assert run("gen", "--kind", "penn", "--f", "0.48", "--n", 100, "--out", out) == 0
    c = read_corpus(out)
    assert len(c) == 100
    assert len(list(iter_trees(out.read_text()))) == 100


def test_gen_rational_f_and_pretty(tmp_path):
    out = tmp_path / "c.mrg"
    assert run("gen", "--kind", "chomsky", "--f", "12/25", "--n", 25,
               "--layout", "pretty", "--out", out) == 0
    assert len(read_corpus(out)) == 25


def test_gen_empty(tmp_path, caplog):
    out = tmp_path / "empty.mrg"
    assert run("gen", "--n", 0, "--out", out) == 0
    assert out.read_text() == ""
    assert "empty" in caplog.text


def test_gen_non_integral_split(tmp_path):
    assert run("gen", "--f", "1/3", "--n", 10, "--out", tmp_path / "x") == 1


def test_transform_round_trip(tmp_path):
    src, fwd, back = tmp_path / "a.mrg", tmp_path / "b.mrg", tmp_path / "c.mrg"
    run("gen", "--kind", "treebank", "--n", 50, "--seed", 3, "--out", src)
    assert run("transform", "-t", "vp-np", src, "-o", fwd) == 0
    assert run("transform", "-t", "vp-np", "--inverse", fwd, "-o", back) == 0
    assert fwd.read_text() != src.read_text()
    assert back.read_text() == src.read_text()


def test_induce_parse_eval(tmp_path):
    train, gram = tmp_path / "t.mrg", tmp_path / "g.txt"
    parses, fails, rep = tmp_path / "p.mrg", tmp_path / "f.tsv", tmp_path / "r.tsv"
    run("gen", "--kind", "penn", "--f", "0.48", "--n", 100, "--out", train)
    assert run("induce", "-t", "parent", train, "-o", gram) == 0
    assert len(read_grammar(gram)) == 9
    assert run("parse", "-g", gram, "-t", "parent", train, "-o", parses,
               "--failures", fails) == 0
    assert fails.read_text().splitlines()[0] == "index\tlength\tstatus"
    assert run("eval", parses, train, "-o", rep) == 0
    r = read_report(rep)
    assert r["np_attachments"] == "0" and r["vp_attachments"] == "100"


def test_inspect_np_pp_fragment(tmp_path):
    g, out = tmp_path / "g.txt", tmp_path / "o.txt"
    g.write_text(NP_PP_FRAGMENT)
    assert run("inspect", g, "--subsumed", "-o", out) == 0
    lines = out.read_text().splitlines()
    sub = [l.split("\t") for l in lines if l.startswith("subsumed\t")]
    assert len(sub) == 1 and sub[0][1] == "NP -> NP PP PP"
    assert float(sub[0][3]) == pytest.approx(0.012544, abs=1e-12)
    assert "subsumed_count\t1" in lines
    assert "subsumed_fraction\t0.250000" in lines
    assert "rules\t4" in lines and "lhs\tNP\t3" in lines


def test_inspect_one_rule(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("1.0 1 S -> x\n")
    assert run("inspect", g, "--subsumed") == 0
    assert "subsumed_count\t0" in capsys.readouterr().out


def test_exit_codes(tmp_path):
    assert run("inspect", tmp_path / "missing.txt") == 2
    bad = tmp_path / "bad.mrg"
    bad.write_text("(S (N a)")
    assert run("induce", bad) == 2
    g = tmp_path / "bad.txt"
    g.write_text("not a grammar\n")
    assert run("inspect", g) == 2
    with pytest.raises(SystemExit) as e:
        run("gen", "--kind", "nope")
    assert e.value.code == 1


def _corpora(tmp_path, kind="penn", f="0.48", n=100):
    path = tmp_path / f"{kind}.mrg"
    run("gen", "--kind", kind, "--f", f, "--n", n, "--out", path)
    return path


def test_run_collapse(tmp_path):
    c = _corpora(tmp_path)
    out = tmp_path / "out"
    assert run("run", "--train", c, "--test", c, "--output-dir", out) == 0
    r = read_report(out / "report.tsv")
    assert r["np_attachments"] == "0" and r["vp_attachments"] == "100"
    assert read_grammar(out / "grammar.txt")
    assert len(read_corpus(out / "parses.mrg")) == 100
    assert (out / "failures.tsv").exists()


def test_run_identity_unambiguous(tmp_path):
    c = _corpora(tmp_path, f="1", n=10)
    rep = tmp_path / "r.tsv"
    assert run("run", "--train", c, "--test", c, "-o", rep) == 0
    r = read_report(rep)
    assert r["precision"] == r["recall"] == "1.000000"


def test_run_reproducible(tmp_path):
    train = _corpora(tmp_path, kind="context", f="0.5", n=200)
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run("run", "--train", train, "--test", train, "--seed", 7,
                   "--output-dir", out) == 0
    for name in ("report.tsv", "grammar.txt", "failures.tsv", "parses.mrg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_run_config_file_and_override(tmp_path):
    c = _corpora(tmp_path)
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(f"# experiment\ntrain-path = {c}\ntest_path = {c}\n"
                   "transform = vp\nmax_sentence_length = 40\n")
    rep = tmp_path / "r.tsv"
    assert run("run", "-c", cfg, "-o", rep) == 0
    assert read_report(rep)["transform"] == "vp"
    assert run("run", "-c", cfg, "-t", "parent", "--max-sentence-length", 3, "-o", rep) == 0
    r = read_report(rep)
    assert r["transform"] == "parent" and r["excluded_too_long"] == "100"


def test_run_config_errors(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("bogus = 1\n")
    assert run("run", "-c", cfg) == 1
    assert run("run", "--transform", "nope", "--train", "x", "--test", "y") == 1
    assert run("run", "--train", tmp_path / "no.mrg", "--test", tmp_path / "no.mrg") == 2


def test_curves(tmp_path, capsys):
    assert run("curves", "--step", "0.5") == 0
    assert capsys.readouterr().out.splitlines() == [
        "f,fhat1,fhat2,fhat3", "0.000000,0.000000,0.000000,0.000000",
        "0.500000,0.166667,0.375000,0.500000", "1.000000,1.000000,1.000000,1.000000"]
