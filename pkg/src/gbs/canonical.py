"""Canonical forms and sign-aware isomorphisms of edge-indexed graphs.

Two graphs present the same graph of groups when they differ by relabeling,
by reversing the orientation of edge pairs, by negating every index at one
vertex, or by negating both indices of one pair.  Under the last two moves
only the product ``sign(i(e)) * sign(i(e~))`` of each pair survives, and it
survives only up to a vertex coboundary, so a gauge is fixed by trying every
vertex flip pattern and keeping the least serialization.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from typing import Iterator, NamedTuple

from .graph import EdgeIndexedGraph, OrientedEdge


def _sign(x: int) -> int:
    return 1 if x > 0 else -1


def vertex_invariant(g: EdgeIndexedGraph, v: str) -> tuple:
    ends = g.ends_at(v)
    return (len(ends), tuple(sorted(abs(g.index(e)) for e in ends)))


def _labelings(g: EdgeIndexedGraph) -> Iterator[dict[str, int]]:
    classes: dict[tuple, list[str]] = defaultdict(list)
    for v in g.vertices:
        classes[vertex_invariant(g, v)].append(v)
    ordered = [classes[k] for k in sorted(classes)]
    for perms in itertools.product(*(itertools.permutations(c) for c in ordered)):
        flat = [v for block in perms for v in block]
        yield {v: i for i, v in enumerate(flat)}


def _serialize(g: EdgeIndexedGraph, label: dict[str, int], flip: tuple[int, ...]) -> tuple:
    records = []
    for p in g.pairs:
        a, b = label[p.src], label[p.dst]
        x, y = abs(p.idx_src), abs(p.idx_dst)
        eps = _sign(p.idx_src) * _sign(p.idx_dst) * flip[a] * flip[b]
        if a > b or (a == b and x > y):
            a, b, x, y = b, a, y, x
        records.append((a, b, x, y, eps))
    return tuple(sorted(records))


def canonical_form(g: EdgeIndexedGraph) -> bytes:
    """Deterministic serialization, equal exactly for equivalent graphs."""
    n = g.num_vertices
    best = None
    for label in _labelings(g):
        for rest in itertools.product((1, -1), repeat=n - 1):
            ser = _serialize(g, label, (1,) + rest)
            if best is None or ser < best:
                best = ser
    payload = [n, [list(r) for r in best]]
    return json.dumps(payload, separators=(",", ":")).encode("ascii")


def are_equivalent(g1: EdgeIndexedGraph, g2: EdgeIndexedGraph) -> bool:
    if (g1.num_vertices, g1.num_pairs) != (g2.num_vertices, g2.num_pairs):
        return False
    return canonical_form(g1) == canonical_form(g2)


class Isomorphism(NamedTuple):
    """Label map between equivalent graphs; ``edges`` maps every oriented edge."""

    vertices: dict[str, str]
    edges: dict[OrientedEdge, OrientedEdge]

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.vertices.items()) and all(k == v for k, v in self.edges.items())


def find_isomorphism(g: EdgeIndexedGraph, h: EdgeIndexedGraph) -> Isomorphism | None:
    """Find a relabeling of ``g`` onto ``h`` respecting |indices| and sign classes.

    Candidates that keep names unchanged are tried first, so the identity is
    returned whenever it works.
    """
    if (g.num_vertices, g.num_pairs) != (h.num_vertices, h.num_pairs):
        return None
    inv_h = {v: vertex_invariant(h, v) for v in h.vertices}
    order = _bfs_order(g)
    vmap: dict[str, str] = {}
    used: set[str] = set()

    def vertex_candidates(v: str) -> list[str]:
        want = vertex_invariant(g, v)
        cands = [w for w in h.vertices if w not in used and inv_h[w] == want]
        cands.sort(key=lambda w: (w != v, w))
        return cands

    def adjacency_ok(v: str) -> bool:
        # pair multisets between v and already-mapped vertices must agree in size
        for u in vmap:
            cnt_g = sum(1 for e in g.ends_at(v) if g.terminus(e) == u)
            cnt_h = sum(1 for e in h.ends_at(vmap[v]) if h.terminus(e) == vmap[u])
            if cnt_g != cnt_h:
                return False
        return True

    def extend(i: int) -> Isomorphism | None:
        if i == len(order):
            return _match_pairs(g, h, vmap)
        v = order[i]
        for w in vertex_candidates(v):
            vmap[v] = w
            used.add(w)
            if adjacency_ok(v):
                found = extend(i + 1)
                if found is not None:
                    return found
            del vmap[v]
            used.discard(w)
        return None

    return extend(0)


def _bfs_order(g: EdgeIndexedGraph) -> list[str]:
    order = [g.vertices[0]]
    seen = set(order)
    i = 0
    while i < len(order):
        for e in g.ends_at(order[i]):
            w = g.terminus(e)
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    return order


def _oriented_options(g: EdgeIndexedGraph, h: EdgeIndexedGraph, e: OrientedEdge, vmap: dict[str, str]):
    """Oriented edges of ``h`` that ``e`` could map to, ignoring signs."""
    a, b = vmap[g.origin(e)], vmap[g.terminus(e)]
    x, y = abs(g.index(e)), abs(g.index(e.reverse))
    out = []
    for f in h.ends_at(a):
        if h.terminus(f) == b and abs(h.index(f)) == x and abs(h.index(f.reverse)) == y:
            out.append(f)
    return out


def _match_pairs(g: EdgeIndexedGraph, h: EdgeIndexedGraph, vmap: dict[str, str]) -> Isomorphism | None:
    pairs = [OrientedEdge(p.id, 0) for p in g.pairs]
    options = []
    for e in pairs:
        opts = _oriented_options(g, h, e, vmap)
        if not opts:
            return None
        opts.sort(key=lambda f: (f != e, f))
        options.append(opts)
    emap: dict[OrientedEdge, OrientedEdge] = {}
    used: set[str] = set()

    def eps(graph: EdgeIndexedGraph, e: OrientedEdge) -> int:
        return _sign(graph.index(e)) * _sign(graph.index(e.reverse))

    def extend(i: int) -> Isomorphism | None:
        if i == len(pairs):
            if _signs_compatible(g, h, vmap, emap, eps):
                full = dict(emap)
                full.update({k.reverse: v.reverse for k, v in emap.items()})
                return Isomorphism(dict(vmap), full)
            return None
        e = pairs[i]
        for f in options[i]:
            if f.pair in used:
                continue
            emap[e] = f
            used.add(f.pair)
            found = extend(i + 1)
            if found is not None:
                return found
            del emap[e]
            used.discard(f.pair)
        return None

    return extend(0)


def _signs_compatible(g, h, vmap, emap, eps) -> bool:
    # need delta: V -> +-1 with eps_h(map(e)) = eps_g(e) * delta(src) * delta(dst)
    delta: dict[str, int] = {}
    adj: dict[str, list[tuple[str, int]]] = defaultdict(list)
    for e, f in emap.items():
        s, t = g.origin(e), g.terminus(e)
        want = eps(g, e) * eps(h, f)
        if s == t:
            if want != 1:
                return False
            continue
        adj[s].append((t, want))
        adj[t].append((s, want))
    for start in g.vertices:
        if start in delta:
            continue
        delta[start] = 1
        stack = [start]
        while stack:
            v = stack.pop()
            for w, want in adj[v]:
                need = delta[v] * want
                if w not in delta:
                    delta[w] = need
                    stack.append(w)
                elif delta[w] != need:
                    return False
    return True
