"""Independent brute-force references the package code is checked against.

Nothing here imports the implementation under test.
"""

from fractions import Fraction

INF = float("inf")


def naive_fragments(article, summary):
    """Greedy parse by scanning every article position for every length."""
    article, summary = list(article), list(summary)
    out = []
    i = 0
    while i < len(summary):
        found = None
        for length in range(len(summary) - i, 0, -1):
            piece = summary[i:i + length]
            for j in range(len(article) - length + 1):
                if article[j:j + length] == piece:
                    found = (i, j, length)
                    break
            if found:
                break
        if found:
            out.append(found)
            i += found[2]
        else:
            i += 1
    return out


def naive_metrics(article, summary):
    frags = naive_fragments(article, summary)
    n = len(summary)
    return sum(f[2] for f in frags) / n, sum(f[2] ** 2 for f in frags) / n


def midpoint_cuts(scores):
    """Ascending list: -inf, every midpoint between adjacent distinct scores, +inf."""
    distinct = sorted(set(scores))
    mids = []
    for lo, hi in zip(distinct, distinct[1:]):
        m = lo / 2 + hi / 2
        if not lo < m <= hi:
            m = hi
        mids.append(m)
    return [-INF, *mids, INF]


def _counts(labeled, cut):
    tp = sum(1 for s, y in labeled if s >= cut and y)
    fp = sum(1 for s, y in labeled if s >= cut and not y)
    fn = sum(1 for s, y in labeled if s < cut and y)
    tn = sum(1 for s, y in labeled if s < cut and not y)
    return tp, fp, fn, tn


def sweep_youden(labeled):
    """Every cut-point with its exact J; returns (best_cut, best_J) with high-threshold ties."""
    best = None
    for cut in midpoint_cuts([s for s, _ in labeled]):
        tp, fp, fn, tn = _counts(labeled, cut)
        j = Fraction(tp, tp + fn) - Fraction(fp, fp + tn)
        if best is None or j >= best[1]:
            best = (cut, j)
    return best


def sweep_fbeta(labeled, beta):
    """Exhaustive F-beta sweep using the precision/recall form."""
    b2 = Fraction(beta) ** 2
    best = None
    for cut in midpoint_cuts([s for s, _ in labeled]):
        tp, fp, fn, _ = _counts(labeled, cut)
        if tp == 0:
            f = Fraction(0)
        else:
            p = Fraction(tp, tp + fp)
            r = Fraction(tp, tp + fn)
            f = (1 + b2) * p * r / (b2 * p + r)
        if best is None or f >= best[1]:
            best = (cut, f)
    return best


def partition(labeled, cut):
    return tuple(s >= cut for s, _ in labeled)


def sweep_counts(labeled):
    """Vectorized confusion counts at every midpoint cut (ascending cuts)."""
    import numpy as np

    s = np.array([x for x, _ in labeled], dtype=float)
    y = np.array([b for _, b in labeled], dtype=bool)
    cuts = np.array(midpoint_cuts(s.tolist()))
    ge = s[None, :] >= cuts[:, None]
    tp = (ge & y).sum(1)
    fp = (ge & ~y).sum(1)
    fn = (~ge & y).sum(1)
    tn = (~ge & ~y).sum(1)
    return cuts.tolist(), tp.tolist(), fp.tolist(), fn.tolist(), tn.tolist()


def fast_sweep_youden(labeled):
    cuts, tp, fp, fn, tn = sweep_counts(labeled)
    best = None
    for c, a, b, d, e in zip(cuts, tp, fp, fn, tn):
        j = Fraction(a, a + d) - Fraction(b, b + e)
        if best is None or j >= best[1]:
            best = (c, j)
    return best


def fast_sweep_fbeta(labeled, beta):
    cuts, tp, fp, fn, _ = sweep_counts(labeled)
    b2 = Fraction(beta) ** 2
    best = None
    for c, a, b, d in zip(cuts, tp, fp, fn):
        if a == 0:
            f = Fraction(0)
        else:
            p, r = Fraction(a, a + b), Fraction(a, a + d)
            f = (1 + b2) * p * r / (b2 * p + r)
        if best is None or f >= best[1]:
            best = (c, f)
    return best
