"""Transform / induce / parse / detransform / evaluate, as one reproducible run."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from .evaluation import DEFAULT_VERBAL_TAGS, AttachmentCounts, count_attachments, score_edges
from .grammar import Pcfg, induce, prune_subsumed, write_grammar
from .parser import parse_corpus, write_failure_report
from .transforms import TransformSpec, apply, invert, resolve
from .trees import Corpus, Tree, flat_tree, preprocess_penn, read_corpus, write_corpus, yield_tags

__all__ = ["ConfigError", "ExperimentConfig", "ExperimentReport", "load_config",
           "run_experiment", "prepare_corpus"]

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    train_path: str | None = None
    test_path: str | None = None
    transform: str = "id"
    seed: int = 0
    max_sentence_length: int = 40
    verbal_tags: frozenset = DEFAULT_VERBAL_TAGS
    no_parse_policy: str = "skip"
    output_dir: str | None = None
    preprocess: bool = False
    delimiters: str = "-="
    super_root: str | None = None
    prune: bool = False

    def __post_init__(self):
        try:
            self.seed = int(self.seed)
            self.max_sentence_length = int(self.max_sentence_length)
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e)) from None
        if isinstance(self.verbal_tags, str):
            self.verbal_tags = frozenset(self.verbal_tags.replace(",", " ").split())
        self.verbal_tags = frozenset(self.verbal_tags)
        for name in ("preprocess", "prune"):
            value = getattr(self, name)
            if isinstance(value, str):
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ConfigError(f"{name} must be a boolean, got {value!r}")
                setattr(self, name, value.lower() in ("true", "1", "yes"))
        if self.no_parse_policy not in ("skip", "zero"):
            raise ConfigError(f"no_parse_policy must be skip or zero, got {self.no_parse_policy!r}")
        try:
            self.spec = resolve(self.transform)
        except ValueError as e:
            raise ConfigError(str(e)) from None

    @classmethod
    def from_mapping(cls, values: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ConfigError("unknown config keys: " + ", ".join(sorted(unknown)))
        return cls(**values)


def load_config(path) -> dict:
    """Read a flat ``key = value`` file; "#" starts a comment line."""
    values = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


@dataclass
class ExperimentReport:
    transform: str
    n_rules: int
    precision: float
    recall: float
    attachments: AttachmentCounts
    n_sentences: int
    n_parsed: int
    n_excluded: int
    no_parse_policy: str
    policy_affected: int
    parse_report: list = field(default_factory=list)
    grammar: Pcfg | None = None
    parses: list = field(default_factory=list)

    def to_text(self) -> str:
        def num(x):
            return "undefined" if math.isnan(x) else f"{x:.6f}"
        a = self.attachments
        rows = [
            ("transform", self.transform),
            ("rules", self.n_rules),
            ("precision", num(self.precision)),
            ("recall", num(self.recall)),
            ("np_attachments", a.np),
            ("vp_attachments", a.vp),
            ("np_star_attachments", a.np_star),
            ("vp_star_attachments", a.vp_star),
            ("sentences", self.n_sentences),
            ("parsed", self.n_parsed),
            ("excluded_too_long", self.n_excluded),
            ("no_parse_policy", self.no_parse_policy),
            ("policy_affected", self.policy_affected),
        ]
        return "".join(f"{k}\t{v}\n" for k, v in rows)


def prepare_corpus(c: Corpus, cfg: ExperimentConfig) -> Corpus:
    if not cfg.preprocess:
        return c
    cleaned = [preprocess_penn(t, cfg.delimiters) for t in c]
    return Corpus([t for t in cleaned if t is not None], name=c.name)


def run_experiment(cfg: ExperimentConfig, train: Corpus | None = None,
                   test: Corpus | None = None) -> ExperimentReport:
    """Run one configuration; corpora default to the configured paths."""
    if train is None:
        if cfg.train_path is None:
            raise ConfigError("train_path is required")
        train = read_corpus(cfg.train_path)
    if test is None:
        if cfg.test_path is None:
            raise ConfigError("test_path is required")
        test = read_corpus(cfg.test_path)
    train, test = prepare_corpus(train, cfg), prepare_corpus(test, cfg)
    spec: TransformSpec = cfg.spec

    grammar = induce(apply(spec, train), super_root=cfg.super_root)
    if cfg.prune:
        grammar = prune_subsumed(grammar)
    log.info("induced %d productions from %d trees", len(grammar), len(train))

    inputs = test.trees if cfg.super_root is None else [
        Tree(cfg.super_root, [t]) for t in test]
    outcome = parse_corpus(grammar, inputs, seed=cfg.seed,
                           max_length=cfg.max_sentence_length)
    kept = [i for i, r in enumerate(outcome.report) if r.status != "too-long"]
    n_excluded = len(test) - len(kept)
    gold = [test[i] for i in kept]
    undo = invert(spec)
    parses = []
    for i in kept:
        p = outcome.trees[i]
        if p is not None and cfg.super_root is not None:
            p = p.children[0]
        parses.append(None if p is None else undo(p))

    failed = [i for i, p in enumerate(parses) if p is None]
    if cfg.no_parse_policy == "skip":
        pairs = [(p, g) for p, g in zip(parses, gold) if p is not None]
    else:
        pairs = [(p if p is not None else flat_tree(g.label, yield_tags(g), g.leaves()), g)
                 for p, g in zip(parses, gold)]
    scores = score_edges([p for p, _ in pairs], [g for _, g in pairs])
    attachments = count_attachments([p for p in parses if p is not None], cfg.verbal_tags)

    result = ExperimentReport(
        transform=cfg.transform if isinstance(cfg.transform, str) else ",".join(cfg.transform),
        n_rules=len(grammar), precision=scores.precision, recall=scores.recall,
        attachments=attachments, n_sentences=len(test),
        n_parsed=len(gold) - len(failed), n_excluded=n_excluded,
        no_parse_policy=cfg.no_parse_policy, policy_affected=len(failed),
        parse_report=outcome.report, grammar=grammar, parses=parses)
    if cfg.output_dir:
        write_outputs(result, cfg.output_dir)
    return result


def write_outputs(result: ExperimentReport, output_dir) -> None:
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.tsv").write_text(result.to_text(), encoding="utf-8")
    (out / "grammar.txt").write_text(write_grammar(result.grammar), encoding="utf-8")
    (out / "failures.tsv").write_text(write_failure_report(result.parse_report),
                                      encoding="utf-8")
    (out / "parses.mrg").write_text(
        write_corpus([p for p in result.parses if p is not None]), encoding="utf-8")
