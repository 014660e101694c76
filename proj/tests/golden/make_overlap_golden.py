#!/usr/bin/env python3
"""Hand oracles for the overlap golden file.

Every metric here is computed from its textbook definition by brute force
(explicit n-gram lists, full alignment enumeration, exhaustive shift search)
and shares no code with the C++ implementation.

Usage: make_overlap_golden.py > overlap_cases.json
"""

import itertools
import json
import math
import sys


def ngrams(toks, n):
    return [tuple(toks[i:i + n]) for i in range(len(toks) - n + 1)]


def bleu(c, r, max_n=4):
    logs = []
    for n in range(1, max_n + 1):
        cg, rg = ngrams(c, n), ngrams(r, n)
        matched = 0
        pool = list(rg)
        for g in cg:
            if g in pool:
                pool.remove(g)
                matched += 1
        if n == 1:
            if matched == 0:
                return 0.0
            p = matched / len(cg)
        else:
            p = (matched + 1) / (len(cg) + 1)
        logs.append(math.log(p))
    bp = math.exp(min(0.0, 1.0 - len(r) / len(c)))
    return bp * math.exp(sum(logs) / max_n)


def f1(p, r):
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def rouge_2(c, r):
    cg, rg = ngrams(c, 2), ngrams(r, 2)
    if not cg or not rg:
        return 0.0
    pool = list(rg)
    m = 0
    for g in cg:
        if g in pool:
            pool.remove(g)
            m += 1
    return f1(m / len(cg), m / len(rg))


def lcs_brute(a, b):
    # Longest subsequence of a that is also a subsequence of b.
    def is_subseq(s, t):
        it = iter(t)
        return all(x in it for x in s)
    for k in range(min(len(a), len(b)), 0, -1):
        for idx in itertools.combinations(range(len(a)), k):
            if is_subseq([a[i] for i in idx], b):
                return k
    return 0


def rouge_l(c, r):
    l = lcs_brute(c, r)
    return f1(l / len(c), l / len(r))


def crossings(pairs):
    return sum(1 for (a, b), (c, d) in itertools.combinations(pairs, 2) if (a - c) * (b - d) < 0)


def meteor_exact(c, r, alpha=0.9, beta=3.0, gamma=0.5):
    # All maximum-size one-to-one exact alignments; fewest crossings wins.
    edges = [(i, j) for i in range(len(c)) for j in range(len(r)) if c[i] == r[j]]
    best = None
    for k in range(min(len(c), len(r)), 0, -1):
        for sub in itertools.combinations(edges, k):
            if len({i for i, _ in sub}) < k or len({j for _, j in sub}) < k:
                continue
            x = crossings(sub)
            if best is None or x < best[0]:
                best = (x, sorted(sub))
        if best is not None:
            break
    if best is None:
        return 0.0
    m = sorted(best[1])
    chunks = 1 + sum(1 for a, b in zip(m, m[1:]) if not (b[0] == a[0] + 1 and b[1] == a[1] + 1))
    p, rr = len(m) / len(c), len(m) / len(r)
    fmean = p * rr / (alpha * p + (1 - alpha) * rr)
    return fmean * (1 - gamma * (chunks / len(m)) ** beta)


def lev(a, b):
    d = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        prev, d[0] = d[0], i
        for j, y in enumerate(b, 1):
            prev, d[j] = d[j], min(d[j] + 1, d[j - 1] + 1, prev + (x != y))
    return d[len(b)]


def ter(c, r, shifts=True):
    hyp = list(c)
    dist = lev(hyp, r)
    n_shift = 0
    while shifts:
        best = None
        for s in range(len(hyp)):
            for ln in range(1, min(10, len(hyp) - s) + 1):
                block = hyp[s:s + ln]
                rest = hyp[:s] + hyp[s + ln:]
                for t in range(len(rest) + 1):
                    if t == s:
                        continue
                    cand = rest[:t] + block + rest[t:]
                    d = lev(cand, r)
                    if d <= dist - 2 and (best is None or d < best[0]):
                        best = (d, cand)
        if best is None:
            break
        dist, hyp = best
        n_shift += 1
    return (dist + n_shift) / len(r)


def pinc(src, cand, max_n=4):
    vals = []
    for n in range(1, max_n + 1):
        cg = set(ngrams(cand, n))
        if not cg:
            continue
        sg = set(ngrams(src, n))
        vals.append(1 - len(cg & sg) / len(cg))
    return sum(vals) / len(vals)


CASES = [
    ("the cat sat", "the cat sat down"),
    ("a b c", "a b d"),
    ("a c b", "a b c"),
    ("b a", "a b"),
    ("the cat sat", "the cat sat"),
    ("so he can charge a bloody fortune for them .", "so he can charge a fair amount of money for them ."),
    ("the food was great but the service was slow", "the service was slow but the food was great"),
    ("x y z", "a b c"),
    ("the the the cat", "the cat the"),
    ("i really did not like this movie at all", "i really liked this movie a lot"),
]


def main():
    out = []
    for cand, ref in CASES:
        c, r = cand.split(), ref.split()
        out.append({
            "candidate": c,
            "reference": r,
            "bleu": bleu(c, r),
            "rouge_2": rouge_2(c, r),
            "rouge_l": rouge_l(c, r),
            "meteor": meteor_exact(c, r),
            "ter": ter(c, r, True),
            "ter_noshift": ter(c, r, False),
            # source = reference side, candidate = generated side
            "pinc": pinc(r, c),
        })
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
