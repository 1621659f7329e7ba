"""Normalizing deformations into collapses, then slides, then expansions.

Three local rules push expansions to the right and collapses to the left:

* ``E C`` (expansion then collapse) becomes nothing, slides, or ``C E``;
* ``E S`` (expansion then slide) becomes ``S* E``;
* ``S C`` is handled by reversing the pair into ``E S`` and inverting back.

Notation inside the rules: the expansion splits ``v`` into ``v`` and a new
vertex ``u``, moving the ends ``S`` with factor ``n``.  The new pair ``f``
has the end ``e`` at ``u`` (index ``s = +-1``) and ``e~`` at ``v`` (index
``n s``).  ``G0`` is the graph before the pair of moves and ``G1`` the graph
between them.

A rewrite may produce a graph that matches the original only up to naming
and sign equivalence, so the remaining moves are carried over through an
explicit isomorphism.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .canonical import Isomorphism, find_isomorphism
from .errors import AscendingLoopObstruction, NoPattern, NonTerminating
from .graph import EdgeIndexedGraph, OrientedEdge
from .moves import Collapse, Expansion, Induction, Move, Slide, inverse, replay, replay_trace

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MoveSequenceRun:
    start: EdgeIndexedGraph
    moves: tuple[Move, ...] = ()

    @cached_property
    def trace(self) -> list[EdgeIndexedGraph]:
        return replay_trace(self.start, self.moves)

    @property
    def end(self) -> EdgeIndexedGraph:
        return self.trace[-1]

    def pattern(self) -> str:
        return pattern_summary(self.moves)


def pattern_summary(moves: Iterable[Move]) -> str:
    counts = {"C": 0, "S": 0, "E": 0, "I": 0}
    letter = {Collapse: "C", Slide: "S", Expansion: "E", Induction: "I"}
    for m in moves:
        counts[letter[type(m)]] += 1
    out = f"C^{counts['C']} S^{counts['S']} E^{counts['E']}"
    return out + (f" I^{counts['I']}" if counts["I"] else "")


def is_cse(moves: Sequence[Move]) -> bool:
    """Do the moves read as collapses, then slides, then expansions?"""
    rank = {Collapse: 0, Slide: 1, Expansion: 2}
    last = 0
    for m in moves:
        r = rank.get(type(m))
        if r is None or r < last:
            return False
        last = r
    return True


# -- carrying moves across an isomorphism -------------------------------------


def retarget(g: EdgeIndexedGraph, moves: Iterable[Move], iso: Isomorphism) -> list[Move]:
    """Rewrite ``moves`` (named for iso's source graph) to act on ``g``.

    Names created by expansions are kept when free in the graph they act on,
    and replaced by fresh ones otherwise.
    """
    vmap = dict(iso.vertices)
    emap = dict(iso.edges)
    out: list[Move] = []
    for m in moves:
        if isinstance(m, Collapse):
            new = Collapse(emap[m.edge])
        elif isinstance(m, Slide):
            new = Slide(emap[m.moving_end], emap[m.over])
        elif isinstance(m, Induction):
            new = Induction(emap[m.loop], m.factor, m.direction)
        elif isinstance(m, Expansion):
            nv = m.new_vertex if not g.has_vertex(m.new_vertex) else g.fresh_vertex()
            ne = m.new_edge if not g.has_pair(m.new_edge) else g.fresh_pair()
            new = Expansion(
                vmap[m.vertex], frozenset(emap[h] for h in m.moved_ends), m.n, nv, ne, m.sign, m.flip
            )
            vmap[m.new_vertex] = nv
            for side in (0, 1):
                emap[OrientedEdge(m.new_edge, side)] = OrientedEdge(ne, side)
        else:
            raise TypeError(f"not a move: {m!r}")
        g = new.apply(g)
        out.append(new)
    return out


def _carry_tail(
    expected: EdgeIndexedGraph, actual: EdgeIndexedGraph, tail: Sequence[Move]
) -> list[Move]:
    iso = find_isomorphism(expected, actual)
    if iso is None:
        raise RuntimeError(f"rewrite changed the graph: {expected!r} vs {actual!r}")
    if iso.is_identity():
        return list(tail)
    return retarget(actual, tail, iso)


# -- the local rules ----------------------------------------------------------


def _slides(ends: Iterable[OrientedEdge], over: OrientedEdge) -> list[Move]:
    return [Slide(h, over) for h in sorted(ends)]


def _rule_ec(g0: EdgeIndexedGraph, ex: Expansion, col: Collapse) -> list[Move]:
    g1 = ex.apply(g0)
    v, u, S, n, s = ex.vertex, ex.new_vertex, ex.moved_ends, ex.n, ex.sign
    ep = col.edge
    if ep.pair == ex.new_edge:
        # collapsing the new pair from either side undoes the split
        return []
    a, b = g1.origin(ep), g1.terminus(ep)
    t, big_l = g1.index(ep), g1.index(ep.reverse)
    if a == u:
        # ep is a moved end; in G0 it sits at v with index n*t
        return _slides(S - {ep}, ep)
    if b == u and a != v:
        # ends at the dying vertex join the expansion instead
        moved = (S - {ep.reverse}) | {h for h in g0.ends_at(a) if h.pair != ep.pair}
        return [col, replace(ex, moved_ends=frozenset(moved))]
    if a == v and b != u:
        return [col, replace(ex, vertex=b, n=n * big_l * t)]
    if a != v:
        return [col, ex]
    # a == v, b == u: ep is a loop at v in G0 with only its far end moved
    if abs(n) == 1:
        others = [h for h in g0.ends_at(v) if h not in S and h.pair != ep.pair]
        return _slides(others, ep)
    if abs(big_l) == 1:
        return _slides(S - {ep.reverse}, ep.reverse)
    raise AscendingLoopObstruction(f"collapsing {ep!r} after splitting {v!r} leaves a strict ascending loop")


def _rule_es(g0: EdgeIndexedGraph, ex: Expansion, sl: Slide) -> list[Move]:
    g1 = ex.apply(g0)
    u, f, S, n, s = ex.new_vertex, ex.new_edge, ex.moved_ends, ex.n, ex.sign
    e0, e1 = sl.moving_end, sl.over
    if e0.pair != f and e1.pair != f:
        moved = S - {e0}
        if e1.reverse in S:
            moved |= {e0}
        return [sl, replace(ex, moved_ends=frozenset(moved))]
    if e1.pair == f:
        if e1 == ex.new_end:
            return [replace(ex, moved_ends=S - {e0})]
        return [replace(ex, moved_ends=S | {e0})]
    if e0 != ex.new_end:
        # the end of f at v slides over a loop or edge at v
        y = g1.terminus(e1)
        k, c = g1.index(e1), g1.index(e1.reverse)
        if y != u:
            return _slides(S, e1) + [replace(ex, vertex=y, n=n // k * c)]
        if abs(Fraction(n * c, k)) != 1:
            raise AscendingLoopObstruction(f"sliding {e0!r} over {e1!r} closes a strict ascending loop")
        return [replace(ex, moved_ends=S | {e1}, n=k)]
    # the end of f at u slides over a moved end e1 with index t = +-1
    t, q = g1.index(e1), g1.index(e1.reverse)
    if g1.is_loop(e1):
        ratio = Fraction(q, t)
        if ratio == 1:
            return [ex]
        if ratio == -1:
            return _slides((h for h in S if h.pair != e1.pair), e1) + [ex]
        raise AscendingLoopObstruction(f"{e1!r} is a strict ascending loop at the new vertex")
    rest = S - {e1}
    y = g1.terminus(e1)
    return _slides(rest, e1) + [Expansion(y, frozenset(rest), q * t, u, f, t)]


def _invert_run(g: EdgeIndexedGraph, moves: Sequence[Move]) -> tuple[EdgeIndexedGraph, list[Move]]:
    """Return (end of ``moves`` from ``g``, moves leading from that end back to ``g``)."""
    trace = replay_trace(g, moves)
    back = [inverse(trace[i], moves[i]) for i in reversed(range(len(moves)))]
    return trace[-1], back


def _rule_sc(g0: EdgeIndexedGraph, sl: Slide, col: Collapse) -> list[Move]:
    g1 = sl.apply(g0)
    g2 = col.apply(g1)
    ex = inverse(g1, col)
    sl_back = inverse(g0, sl)
    forward = _rule_es(g2, ex, sl_back)
    g0p, back = _invert_run(g2, forward)
    iso = find_isomorphism(g0p, g0)
    if iso is None:
        raise RuntimeError("slide-collapse rewrite lost track of the start graph")
    return retarget(g0, back, iso)


# -- driver -------------------------------------------------------------------


def rewrite_step(run: MoveSequenceRun, position: int) -> MoveSequenceRun:
    """Replace the moves at ``position`` and ``position + 1`` by an equivalent sequence."""
    moves = list(run.moves)
    if not 0 <= position < len(moves) - 1:
        raise NoPattern(f"no move pair at position {position}")
    first, second = moves[position], moves[position + 1]
    trace = run.trace
    g0, g2 = trace[position], trace[position + 2]
    if isinstance(first, Expansion) and isinstance(second, Collapse):
        rep = _rule_ec(g0, first, second)
    elif isinstance(first, Expansion) and isinstance(second, Slide):
        rep = _rule_es(g0, first, second)
    elif isinstance(first, Slide) and isinstance(second, Collapse):
        rep = _rule_sc(g0, first, second)
    else:
        raise NoPattern(f"{first.kind} followed by {second.kind}")
    h = replay(g0, rep)
    tail = _carry_tail(g2, h, moves[position + 2 :])
    return MoveSequenceRun(run.start, tuple(moves[:position] + rep + tail))


def decompose_inductions(run: MoveSequenceRun) -> MoveSequenceRun:
    """Replace every induction by an expansion followed by a collapse."""
    moves = list(run.moves)
    i = 0
    while i < len(moves):
        m = moves[i]
        if not isinstance(m, Induction):
            i += 1
            continue
        g = replay(run.start, moves[:i])
        v = g.origin(m.loop)
        big_l = g.index(m.loop.reverse)
        if m.direction == "multiply":
            ex = Expansion(v, frozenset({m.loop.reverse}), big_l // m.factor, g.fresh_vertex(), g.fresh_pair())
        else:
            moved = frozenset(h for h in g.ends_at(v) if h != m.loop)
            ex = Expansion(v, moved, m.factor, g.fresh_vertex(), g.fresh_pair())
        rep = [ex, Collapse(m.loop)]
        tail = _carry_tail(m.apply(g), replay(g, rep), moves[i + 1 :])
        moves = moves[:i] + rep + tail
        i += 2
    return MoveSequenceRun(run.start, tuple(moves))


def _next_position(moves: Sequence[Move]) -> int | None:
    for i in range(1, len(moves)):
        if isinstance(moves[i], Collapse) and isinstance(moves[i - 1], (Expansion, Slide)):
            return i - 1
    for i in range(len(moves) - 2, -1, -1):
        if isinstance(moves[i], Expansion) and isinstance(moves[i + 1], (Collapse, Slide)):
            return i
    return None


def normalize_CSE(run: MoveSequenceRun, max_steps: int | None = None) -> MoveSequenceRun:
    """Rewrite until the moves read C* S* E*.

    ``max_steps`` defaults to a generous multiple of the squared length.
    """
    run = decompose_inductions(run)
    budget = max_steps if max_steps is not None else 1000 + 50 * len(run.moves) ** 2
    steps = 0
    while True:
        pos = _next_position(run.moves)
        if pos is None:
            log.debug("normalized in %d steps: %s", steps, run.pattern())
            return run
        if steps >= budget:
            raise NonTerminating(f"no normal form after {steps} rewrite steps")
        run = rewrite_step(run, pos)
        steps += 1
