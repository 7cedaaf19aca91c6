"""Slow, independent reference computations used to pin expected values.

Nothing here imports the algorithms under test; only plain tuples and
integers go in and out.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def braid_permutation_cycles(word, strands):
    perm = list(range(strands))
    for letter in word:
        k = abs(letter) - 1
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
    seen, cycles = set(), 0
    for s in range(strands):
        if s in seen:
            continue
        cycles += 1
        while s not in seen:
            seen.add(s)
            s = perm[s]
    return cycles


def smoothing_circles(crossings, bits, extras=0):
    """Count circles by walking arcs, not union-find."""
    adj = {}
    for (a, b, c, d), bit in zip(crossings, bits):
        pairs = [(a, d), (b, c)] if bit else [(a, b), (c, d)]
        for x, y in pairs:
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
    seen, count = set(), 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        stack = [start]
        while stack:
            e = stack.pop()
            if e in seen:
                continue
            seen.add(e)
            stack.extend(adj[e])
    return count + extras


def _padd(p, q, scale=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


def _pmul(p, q):
    out = {}
    for a, u in p.items():
        for b, v in q.items():
            out[a + b] = out.get(a + b, 0) + u * v
    return {k: v for k, v in out.items() if v}


def jones_t_half(crossings, signs, extras=0):
    """Jones polynomial as ``{k: c}`` meaning ``c * t^(k/2)``, via ``<D>`` with ``A = t^(-1/4)``."""
    n = len(crossings)
    bracket = {}
    delta = {2: -1, -2: -1}
    for s in range(1 << n):
        bits = [s >> k & 1 for k in range(n)]
        ones = sum(bits)
        term = {n - 2 * ones: 1}
        for _ in range(smoothing_circles(crossings, bits, extras) - 1):
            term = _pmul(term, delta)
        bracket = _padd(bracket, term)
    w = sum(signs)
    norm = _pmul(bracket, {-3 * w: (-1) ** (w % 2)})
    # A^e = t^(-e/4); every exponent is even after normalisation
    return {-e // 2: c for e, c in norm.items()}


def det_fraction(m):
    m = [[Fraction(x) for x in row] for row in m]
    n, det = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return int(det)


def rank_fraction(m):
    m = [[Fraction(x) for x in row] for row in m]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        p = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def invariant_factors_by_minors(m):
    """Nonzero SNF diagonal via determinantal divisors (small matrices only)."""
    rows, cols = len(m), len(m[0])
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det_fraction([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
