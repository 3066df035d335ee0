"""Command line driver: ``treegram {gen,transform,induce,parse,eval,run,inspect,curves}``.

Exit status is 0 on success, 1 on a configuration error and 2 on an I/O
or input-format error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import analytic, synthetic
from .evaluation import DEFAULT_VERBAL_TAGS, count_attachments, score_edges
from .experiment import ConfigError, ExperimentConfig, load_config, run_experiment
from .grammar import (GrammarSyntaxError, find_subsumed, induce, prune_subsumed,
                      read_grammar, write_grammar)
from .parser import parse_corpus, write_failure_report
from .transforms import apply, invert, resolve
from .trees import (Corpus, TreeSyntaxError, flat_tree, preprocess_penn, read_corpus,
                    write_corpus, yield_tags)

log = logging.getLogger("treegram")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read(path, preprocess=False, delimiters="-=") -> Corpus:
    if path in (None, "-"):
        from .trees import iter_trees
        c = Corpus(list(iter_trees(sys.stdin.read())), name="<stdin>")
    else:
        c = read_corpus(path)
    if preprocess:
        c = Corpus([t for t in (preprocess_penn(x, delimiters) for x in c) if t is not None],
                   name=c.name)
    return c


def cmd_gen(args):
    f = Fraction(args.f)
    if args.n == 0:
        log.warning("n = 0: writing an empty corpus")
    if args.kind == "context":
        c = synthetic.context_corpus(args.n, float(f), seed=args.seed)
    elif args.kind == "treebank":
        c = synthetic.penn_corpus(args.n, seed=args.seed)
    else:
        c = analytic.model_corpus(analytic.AttachmentModel(args.kind, f), args.n)
    _write(args.out, write_corpus(c, args.layout))


def cmd_transform(args):
    spec = resolve(args.transform)
    if args.inverse:
        spec = invert(spec)
    c = _read(args.input, args.preprocess)
    _write(args.output, write_corpus(apply(spec, c), args.layout))


def cmd_induce(args):
    c = _read(args.input, args.preprocess)
    g = induce(apply(resolve(args.transform), c), super_root=args.super_root)
    if args.prune:
        g = prune_subsumed(g)
    _write(args.output, write_grammar(g))


def cmd_parse(args):
    g = read_grammar(args.grammar)
    c = _read(args.input, args.preprocess)
    outcome = parse_corpus(g, c, seed=args.seed, max_length=args.max_length)
    undo = invert(resolve(args.transform))
    parses = []
    for p, gold in zip(outcome.trees, c):
        if p is None:
            if args.keep_failures:
                parses.append(flat_tree(g.start, yield_tags(gold), gold.leaves()))
            continue
        parses.append(undo(p))
    _write(args.output, write_corpus(parses))
    if args.failures:
        _write(args.failures, write_failure_report(outcome.report))


def cmd_eval(args):
    test, gold = _read(args.test), _read(args.gold)
    s = score_edges(test, gold)
    a = count_attachments(test, _tags(args.verbal_tags))
    rows = [("precision", s.precision), ("recall", s.recall),
            ("matched", s.matched), ("test_edges", s.n_test), ("gold_edges", s.n_gold),
            ("np_attachments", a.np), ("vp_attachments", a.vp),
            ("np_star_attachments", a.np_star), ("vp_star_attachments", a.vp_star)]
    _write(args.output, "".join(
        f"{k}\t{v:.6f}\n" if isinstance(v, float) else f"{k}\t{v}\n" for k, v in rows))


def _tags(value):
    if value is None:
        return DEFAULT_VERBAL_TAGS
    return frozenset(value.replace(",", " ").split())


_RUN_KEYS = ("train_path", "test_path", "transform", "seed", "max_sentence_length",
             "verbal_tags", "no_parse_policy", "output_dir", "preprocess", "delimiters",
             "super_root", "prune")


def cmd_run(args):
    values = load_config(args.config) if args.config else {}
    for key in _RUN_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    cfg = ExperimentConfig.from_mapping(values)
    report = run_experiment(cfg)
    _write(None if cfg.output_dir else args.output, report.to_text())
    if cfg.output_dir:
        log.info("outputs written to %s", cfg.output_dir)


def cmd_inspect(args):
    g = read_grammar(args.grammar)
    per_lhs = Counter(p.lhs for p in g)
    lines = [f"start\t{g.start}", f"rules\t{len(g)}"]
    lines += [f"lhs\t{lhs}\t{n}" for lhs, n in sorted(per_lhs.items())]
    if args.subsumed:
        found = find_subsumed(g)
        for s in found:
            lines.append(f"subsumed\t{s.production}\t{s.production.prob!r}"
                         f"\t{s.witness_prob!r}\t{s.witness}")
        lines.append(f"subsumed_count\t{len(found)}")
        lines.append(f"subsumed_fraction\t{len(found) / len(g):.6f}")
    _write(args.output, "\n".join(lines) + "\n")


def cmd_curves(args):
    _write(args.output, analytic.curves_csv(args.step))


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="treegram", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a synthetic corpus")
    p.add_argument("--kind", default="penn",
                   choices=["penn", "chomsky", "parent", "context", "treebank"])
    p.add_argument("--f", default="0.48", help="NP-attachment frequency, e.g. 0.48 or 12/25")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--layout", default="one-per-line", choices=["one-per-line", "pretty"])
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("transform", help="apply a transform chain to a treebank")
    p.add_argument("--transform", "-t", default="id")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--layout", default="one-per-line", choices=["one-per-line", "pretty"])
    p.add_argument("input")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("induce", help="read off a relative-frequency PCFG")
    p.add_argument("--transform", "-t", default="id")
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--super-root")
    p.add_argument("--prune", action="store_true", help="drop subsumed productions")
    p.add_argument("input")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("parse", help="Viterbi-parse the tag yields of a treebank")
    p.add_argument("--grammar", "-g", required=True)
    p.add_argument("--transform", "-t", default="id",
                   help="chain the grammar was trained under; parses are inverted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-length", type=int)
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--keep-failures", action="store_true",
                   help="emit a flat tree for sentences without a parse")
    p.add_argument("--failures", help="write the per-sentence status report here")
    p.add_argument("input")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("eval", help="labelled precision/recall and attachment counts")
    p.add_argument("--verbal-tags")
    p.add_argument("test")
    p.add_argument("gold")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("run", help="run a full experiment")
    p.add_argument("--config", "-c")
    p.add_argument("--train", dest="train_path")
    p.add_argument("--test", dest="test_path")
    p.add_argument("--transform", "-t")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-sentence-length", type=int)
    p.add_argument("--verbal-tags")
    p.add_argument("--no-parse-policy", choices=["skip", "zero"])
    p.add_argument("--output-dir")
    p.add_argument("--preprocess", action="store_const", const=True)
    p.add_argument("--delimiters")
    p.add_argument("--super-root")
    p.add_argument("--prune", action="store_const", const=True)
    p.add_argument("--output", "-o", help="report file when no output dir is set")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("inspect", help="summarize a grammar file")
    p.add_argument("grammar")
    p.add_argument("--subsumed", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("curves", help="closed-form fhat curves as CSV")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_curves)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except ConfigError as e:
        print(f"treegram: config error: {e}", file=sys.stderr)
        return 1
    except (OSError, TreeSyntaxError, GrammarSyntaxError) as e:
        print(f"treegram: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"treegram: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
