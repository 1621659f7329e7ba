"""Random graphs, moves and deformations shared by the test modules."""

from __future__ import annotations

import random
from math import gcd

from gbs.graph import EdgeIndexedGraph, EdgePair
from gbs.moduli import has_nontrivial_integral_modulus, modular_group
from gbs.moves import Collapse, Expansion, Induction, Move, legal_slides, reduce

INDEX_POOL = [1, 2, 3, 4, 5, 6, -1, -2, -3, -4, -6]


def random_graph(rng: random.Random, max_vertices: int = 3, max_pairs: int = 4, pool=INDEX_POOL) -> EdgeIndexedGraph:
    nv = rng.randint(1, max_vertices)
    vs = [f"v{i}" for i in range(nv)]
    pairs = []
    # spanning tree first so the graph is connected
    for i in range(1, nv):
        pairs.append((vs[rng.randrange(i)], vs[i]))
    while len(pairs) < max(nv - 1, rng.randint(nv - 1, max_pairs)) or not pairs and nv == 1 and rng.random() < 0.5:
        pairs.append((rng.choice(vs), rng.choice(vs)))
    edges = [EdgePair(f"p{k}", a, b, rng.choice(pool), rng.choice(pool)) for k, (a, b) in enumerate(pairs)]
    return EdgeIndexedGraph(vs, edges)


def random_fixture(rng: random.Random, max_vertices: int = 3, max_pairs: int = 4) -> EdgeIndexedGraph:
    """A reduced graph whose modular group has no integer other than 1."""
    while True:
        g, _ = reduce(random_graph(rng, max_vertices, max_pairs))
        if g.num_pairs and not has_nontrivial_integral_modulus(modular_group(g)):
            return g


def _divisors(k: int) -> list[int]:
    k = abs(k)
    return [d for d in range(1, k + 1) if k % d == 0]


def random_expansion(rng: random.Random, g: EdgeIndexedGraph) -> Expansion:
    v = rng.choice(g.vertices)
    ends = g.ends_at(v)
    moved = frozenset(h for h in ends if rng.random() < 0.5)
    common = 0
    for h in moved:
        common = gcd(common, g.index(h))
    n = rng.choice(_divisors(common)) if common else rng.choice([1, 2, 3])
    n *= rng.choice([1, -1])
    return Expansion(v, moved, n, g.fresh_vertex(), g.fresh_pair(), rng.choice([1, -1]))


def random_move(rng: random.Random, g: EdgeIndexedGraph, kinds=("slide", "collapse", "expansion", "induction")) -> Move:
    options = []
    if "slide" in kinds:
        options += [m for m in legal_slides(g)]
    if "collapse" in kinds:
        options += [Collapse(e) for e in g.collapsible_edges()]
    if "induction" in kinds:
        for e in g.oriented_edges():
            if g.is_loop(e) and abs(g.index(e)) == 1:
                for l in _divisors(g.index(e.reverse)):
                    options.append(Induction(e, l, "multiply"))
                    v = g.origin(e)
                    if all(g.index(h) % l == 0 for h in g.ends_at(v) if h.pair != e.pair):
                        options.append(Induction(e, l, "divide"))
    if "expansion" in kinds and (not options or rng.random() < 0.3):
        return random_expansion(rng, g)
    return rng.choice(options)


def random_deformation(rng: random.Random, g: EdgeIndexedGraph, length: int, kinds=("slide", "collapse", "expansion", "induction")):
    moves = []
    for _ in range(length):
        m = random_move(rng, g, kinds)
        g = m.apply(g)
        moves.append(m)
    return moves, g


def reduced_run(rng: random.Random, g: EdgeIndexedGraph, length: int) -> list[Move]:
    """Random moves from reduced ``g`` followed by collapses back to a reduced graph."""
    moves, h = random_deformation(rng, g, length, kinds=("slide", "collapse", "expansion"))
    _, tail = reduce(h)
    return moves + tail


def scramble(g: EdgeIndexedGraph, rng: random.Random) -> EdgeIndexedGraph:
    """Relabel, reverse some pairs, flip signs at some vertices and pairs."""
    names = [f"n{i}" for i in range(g.num_vertices)]
    rng.shuffle(names)
    relabel = dict(zip(g.vertices, names))
    vflip = {v: rng.choice((1, -1)) for v in g.vertices}
    pairs = []
    for k, p in enumerate(g.pairs):
        s = rng.choice((1, -1))
        a, b = p.idx_src * vflip[p.src] * s, p.idx_dst * vflip[p.dst] * s
        src, dst = relabel[p.src], relabel[p.dst]
        if rng.random() < 0.5:
            src, dst, a, b = dst, src, b, a
        pairs.append(EdgePair(f"q{k}", src, dst, a, b))
    return EdgeIndexedGraph(names, pairs)
