"""Independent reference implementations used to check the library.

Nothing here shares code with the package beyond the graph container.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from gbs.graph import EdgeIndexedGraph


def _pair_class(a, b, x, y):
    """Least of the four forms of one pair: both orientations, with and without a pair flip."""
    return min((a, b, x, y), (a, b, -x, -y), (b, a, y, x), (b, a, -y, -x))


def brute_equivalent(g: EdgeIndexedGraph, h: EdgeIndexedGraph) -> bool:
    """Search every vertex bijection and every vertex sign flip for a match.

    Pair flips and orientation reversals are quotiented out per pair by
    ``_pair_class``, so the whole sign-flip group is covered.
    """
    if (g.num_vertices, g.num_pairs) != (h.num_vertices, h.num_pairs):
        return False
    target = sorted(_pair_class(p.src, p.dst, p.idx_src, p.idx_dst) for p in h.pairs)
    for image in itertools.permutations(h.vertices):
        pi = dict(zip(g.vertices, image))
        for flips in itertools.product((1, -1), repeat=g.num_vertices):
            delta = dict(zip(g.vertices, flips))
            mapped = sorted(
                _pair_class(pi[p.src], pi[p.dst], delta[p.src] * p.idx_src, delta[p.dst] * p.idx_dst)
                for p in g.pairs
            )
            if mapped == target:
                return True
    return False


def brute_integral_modulus(vectors: list[list[int]], bound: int = 6) -> bool:
    """Is some integer combination with coefficients in [-bound, bound] non-negative and non-zero?"""
    if not vectors:
        return False
    width = len(vectors[0])
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(vectors)):
        total = [sum(c * v[p] for c, v in zip(coeffs, vectors)) for p in range(width)]
        if any(total) and min(total) >= 0:
            return True
    return False


def cycle_value_by_walk(g: EdgeIndexedGraph, walk) -> Fraction:
    """Modular value of a closed walk computed from raw pair data."""
    q = Fraction(1)
    for pid, forward in walk:
        p = g.pair(pid)
        a, b = (p.idx_src, p.idx_dst) if forward else (p.idx_dst, p.idx_src)
        q *= Fraction(b, a)
    return q


def brute_coset(r: Fraction, generators: list[Fraction], bound: int) -> set[int]:
    """Integers |r| * prod(g^c) over coefficient boxes, straight from the generators."""
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(generators)):
        q = abs(Fraction(r))
        for gen, c in zip(generators, coeffs):
            q *= abs(gen) ** c
        if q.denominator == 1:
            out.add(int(q))
    return out
