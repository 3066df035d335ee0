"""Independent brute-force checkers. They share no code with the chart parser."""
import math
from functools import lru_cache
from itertools import combinations


def splits(n, k):
    """All ways to cut range(n) into k non-empty contiguous pieces."""
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield [(bounds[i], bounds[i + 1]) for i in range(k)]


def all_derivations(g, root, symbols, max_apps):
    """Yield (prob, n_productions) for every derivation of ``symbols`` from ``root``.

    Each symbol of the target may stand for itself (zero productions);
    derivations use at most ``max_apps`` productions.
    """
    symbols = tuple(symbols)
    rules = {}
    for p in g:
        rules.setdefault(p.lhs, []).append(p)

    def derive(x, i, j, budget):
        if j - i == 1 and symbols[i] == x:
            yield 1.0, 0
        if budget == 0:
            return
        for p in rules.get(x, ()):
            if len(p.rhs) > j - i:
                continue
            for parts in splits(j - i, len(p.rhs)):
                for prob, used in seq(p.rhs, [(i + a, i + b) for a, b in parts], budget - 1):
                    yield p.prob * prob, used + 1

    def seq(rhs, spans, budget):
        if not rhs:
            yield 1.0, 0
            return
        for prob, used in derive(rhs[0], spans[0][0], spans[0][1], budget):
            for rest, more in seq(rhs[1:], spans[1:], budget - used):
                yield prob * rest, used + more

    yield from derive(root, 0, len(symbols), max_apps)


def brute_subsumed(g, max_apps=6):
    """{production key: best multi-step probability} for strictly dominated rules."""
    out = {}
    for p in g:
        best = max((pr for pr, n in all_derivations(g, p.lhs, p.rhs, max_apps) if n >= 2),
                   default=0.0)
        if best > p.prob:
            out[p.key] = best
    return out


def all_parse_scores(g, tags):
    """Distinct log-probabilities over every parse tree of ``tags`` rooted at g.start.

    Each cell keeps the set of scores of all its subtrees, rounded to 1e-12
    so equal products reached in different orders collapse. Unary chains may
    not revisit a (symbol, span), which excludes only trees containing a
    probability < 1 cycle.
    """
    tags = tuple(tags)
    rules = {}
    for p in g:
        rules.setdefault(p.lhs, []).append(p)

    @lru_cache(maxsize=None)
    def scores(x, i, j, banned):
        out = set()
        if j - i == 1 and tags[i] == x:
            out.add(0.0)
        if x in g.preterminals:
            return frozenset(out)
        for p in rules.get(x, ()):
            if len(p.rhs) > j - i:
                continue
            lp = math.log(p.prob)
            if len(p.rhs) == 1:
                child = p.rhs[0]
                if child in banned:
                    continue
                out.update(round(lp + s, 12) for s in scores(child, i, j, banned | {child}))
                continue
            for parts in splits(j - i, len(p.rhs)):
                acc = {lp}
                for sym, (a, b) in zip(p.rhs, parts):
                    sub = scores(sym, i + a, i + b, frozenset({sym}))
                    acc = {round(u + v, 12) for u in acc for v in sub}
                    if not acc:
                        break
                out.update(acc)
        return frozenset(out)

    return scores(g.start, 0, len(tags), frozenset({g.start}))


def sample_tags(g, rng, max_len, tries=50):
    """Tag yield of a random top-down derivation, or None if none fits."""
    rules = {}
    for p in g:
        rules.setdefault(p.lhs, []).append(p)

    def expand(x, budget):
        if x in g.preterminals:
            return [x]
        if budget == 0 or x not in rules:
            raise OverflowError
        ps = rules[x]
        p = rng.choices(ps, weights=[q.prob for q in ps])[0]
        out = []
        for sym in p.rhs:
            out += expand(sym, budget - 1)
            if len(out) > max_len:
                raise OverflowError
        return out

    for _ in range(tries):
        try:
            return expand(g.start, 8)
        except OverflowError:
            continue
    return None
