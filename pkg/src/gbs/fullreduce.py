"""Admissible paths and the constructive full reduction.

An admissible path for a non-loop edge ``f`` is a word of loops
``(e1, ..., ek)`` at the origin of ``f`` such that the stabilizer of the
first vertex along a lift fixes the whole lifted path.  In index terms:
``i(e1) = +-1`` and every prefix product of ``n_i = i(e_{i+1})`` (with
``n_k = i(f)``) divides the matching product of ``m_i = i(e_i~)``.

Equivalently, run the quotient ``S = prod(m) / prod(n)``: start at 1, and a
loop ``x`` may be appended when ``i(x)`` divides ``S``, after which
``S <- S * i(x~) / i(x)``.  The path ends at ``f`` when ``i(f)`` divides
``S``.  The search below is a breadth-first walk over values of ``|S|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import MalformedPath, NotAdmissible, WrongShape
from .graph import EdgeIndexedGraph, OrientedEdge
from .moves import Collapse, Induction, Move, Slide, reduce


@dataclass(frozen=True)
class AdmissiblePath:
    base_vertex: str
    loops: tuple[OrientedEdge, ...]
    target: OrientedEdge

    def with_loops(self, loops: Sequence[OrientedEdge]) -> AdmissiblePath:
        return AdmissiblePath(self.base_vertex, tuple(loops), self.target)

    def m(self, g: EdgeIndexedGraph) -> list[int]:
        return [g.index(e.reverse) for e in self.loops]

    def n(self, g: EdgeIndexedGraph) -> list[int]:
        return [g.index(e) for e in self.loops[1:]] + [g.index(self.target)]

    def essential(self, g: EdgeIndexedGraph) -> list[bool]:
        return [abs(g.index(e)) != 1 for e in self.loops]

    def essential_length(self, g: EdgeIndexedGraph) -> int:
        return sum(self.essential(g))

    def to_json(self) -> dict:
        return {
            "base_vertex": self.base_vertex,
            "loops": [{"edge": e.pair, "side": "from" if e.side == 0 else "to"} for e in self.loops],
            "target": {"edge": self.target.pair, "side": "from" if self.target.side == 0 else "to"},
        }


def _check_shape(g: EdgeIndexedGraph, path: AdmissiblePath) -> None:
    f = path.target
    if g.is_loop(f):
        raise MalformedPath(f"target {f!r} is a loop")
    if g.origin(f) != path.base_vertex:
        raise MalformedPath(f"target {f!r} does not start at {path.base_vertex!r}")
    for e in path.loops:
        if not g.is_loop(e) or g.origin(e) != path.base_vertex:
            raise MalformedPath(f"{e!r} is not a loop at {path.base_vertex!r}")


def is_admissible(g: EdgeIndexedGraph, path: AdmissiblePath) -> bool:
    _check_shape(g, path)
    s = 1
    for e in path.loops:
        k = g.index(e)
        if s % k:
            return False
        s = s // k * g.index(e.reverse)
    return s % g.index(path.target) == 0


# -- search -------------------------------------------------------------------


def search_admissible_path(
    g: EdgeIndexedGraph, f: OrientedEdge, depth_bound: int
) -> tuple[AdmissiblePath | None, bool]:
    """Shortest admissible path for ``f`` with at most ``depth_bound`` loops.

    The flag is True when the search space was exhausted, which makes a
    negative answer conclusive.
    """
    if depth_bound < 0:
        raise ValueError("depth_bound must be >= 0")
    if g.is_loop(f):
        raise MalformedPath(f"target {f!r} is a loop")
    v = g.origin(f)
    loops = [e for e in g.ends_at(v) if g.is_loop(e)]
    target = g.index(f)
    parent: dict[int, tuple[int, OrientedEdge] | None] = {1: None}
    frontier = [1]
    depth = 0
    while True:
        for s in frontier:
            if s % target == 0:
                word = []
                while parent[s] is not None:
                    s, e = parent[s]
                    word.append(e)
                return AdmissiblePath(v, tuple(reversed(word)), f), True
        if not frontier:
            return None, True
        if depth == depth_bound:
            return None, False
        nxt = []
        for s in frontier:
            for e in loops:
                k = g.index(e)
                if s % k:
                    continue
                t = abs(s // k * g.index(e.reverse))
                if t not in parent:
                    parent[t] = (s, e)
                    nxt.append(t)
        frontier = nxt
        depth += 1


def find_admissible_path(g: EdgeIndexedGraph, f: OrientedEdge, depth_bound: int = 16) -> AdmissiblePath | None:
    return search_admissible_path(g, f, depth_bound)[0]


# -- the three normalizing stages ---------------------------------------------


def _adjoin_copies(g: EdgeIndexedGraph, path: AdmissiblePath, limit: int) -> AdmissiblePath:
    """Prepend copies of the first loop until admissible (adding copies never hurts)."""
    for _ in range(limit + 1):
        if is_admissible(g, path):
            return path
        path = path.with_loops((path.loops[0],) + path.loops)
    raise NotAdmissible(f"still not admissible after adjoining {limit} copies")


def normalize_prefix(g: EdgeIndexedGraph, path: AdmissiblePath) -> tuple[EdgeIndexedGraph, AdmissiblePath, list[Move]]:
    """Bring the path to the form ``(e1, ..., e1, essential..., f)`` using slides only."""
    if not is_admissible(g, path):
        raise NotAdmissible("normalize_prefix needs an admissible path")
    if not path.loops:
        return g, path, []
    flags = path.essential(g)
    front = [e for e, ess in zip(path.loops, flags) if not ess]
    back = [e for e, ess in zip(path.loops, flags) if ess]
    e1 = front[0]
    moves: list[Move] = []
    seen = set()
    for e in front[1:]:
        if e.pair == e1.pair or e in seen:
            continue
        seen.add(e)
        mv = Slide(e1.reverse, e)
        g = mv.apply(g)
        moves.append(mv)
    path = path.with_loops([e1] * len(front) + back)
    path = _adjoin_copies(g, path, back.count(e1.reverse))
    return g, path, moves


def _split(g: EdgeIndexedGraph, path: AdmissiblePath) -> tuple[OrientedEdge, int, list[OrientedEdge]]:
    """Check the ``(e1^j, essential..., f)`` shape and return ``(e1, j, essential part)``."""
    if not path.loops:
        raise WrongShape("path has no loops")
    e1 = path.loops[0]
    j = 0
    while j < len(path.loops) and path.loops[j] == e1:
        j += 1
    rest = list(path.loops[j:])
    if abs(g.index(e1)) != 1 or any(abs(g.index(e)) == 1 for e in rest):
        raise WrongShape("expected inessential copies of e1 followed by essential loops")
    return e1, j, rest


def _power_exponent(x: int, m: int) -> int | None:
    """Least r >= 0 with x | m^r, or None if there is none."""
    x, m = abs(x), abs(m)
    r = 0
    while x != 1:
        g = gcd(x, m)
        if g == 1:
            return None
        x //= g
        r += 1
    return r


def align_by_induction(g: EdgeIndexedGraph, path: AdmissiblePath) -> tuple[EdgeIndexedGraph, AdmissiblePath, list[Move]]:
    """Induction moves along e1 until the first essential index is +-i(e1~)^r."""
    if not is_admissible(g, path):
        raise NotAdmissible("align_by_induction needs an admissible path")
    e1, j, rest = _split(g, path)
    while rest and rest[0] == e1.reverse:
        rest.pop(0)
    path = path.with_loops([e1] * j + rest)
    if not is_admissible(g, path):
        raise NotAdmissible("dropping a leading e1~ broke admissibility")
    first = rest[0] if rest else path.target
    big_m = g.index(e1.reverse)
    moves: list[Move] = []
    while True:
        x = g.index(first)
        r = _power_exponent(x, big_m)
        if r is None:
            raise NotAdmissible(f"{x} divides no power of {big_m}")
        t = abs(big_m) ** r // abs(x)
        if t == 1:
            return g, path, moves
        step = gcd(t, big_m)
        mv = Induction(e1, step, "multiply")
        g = mv.apply(g)
        moves.append(mv)
        others = sum(1 for e in path.loops if e.pair != e1.pair)
        path = _adjoin_copies(g, path, others + 1)


def _descend(g: EdgeIndexedGraph, path: AdmissiblePath) -> tuple[EdgeIndexedGraph, AdmissiblePath, list[Move]]:
    """Slide the first essential loop over e1~ until it becomes inessential."""
    e1, j, rest = _split(g, path)
    first = rest[0]
    r = _power_exponent(g.index(first), g.index(e1.reverse))
    moves: list[Move] = [Slide(first, e1.reverse)] * r
    for mv in moves:
        g = mv.apply(g)
    limit = r * sum(1 for e in path.loops if e == first.reverse)
    return g, _adjoin_copies(g, path, limit), moves


def eliminate_edge(g: EdgeIndexedGraph, path: AdmissiblePath) -> tuple[EdgeIndexedGraph, list[Move]]:
    """Deformation removing ``path.target`` through its admissible path."""
    moves: list[Move] = []
    while True:
        g, path, d = normalize_prefix(g, path)
        moves += d
        g, path, d = align_by_induction(g, path)
        moves += d
        if path.essential_length(g) == 0:
            break
        g, path, d = _descend(g, path)
        moves += d
    f = path.target
    e1 = path.loops[0] if path.loops else None
    if e1 is not None:
        r = _power_exponent(g.index(f), g.index(e1.reverse))
        for _ in range(r):
            mv = Slide(f, e1.reverse)
            g = mv.apply(g)
            moves.append(mv)
    mv = Collapse(f)
    moves.append(mv)
    return mv.apply(g), moves


def full_reduce(g: EdgeIndexedGraph, depth_bound: int = 16) -> tuple[EdgeIndexedGraph, list[Move], bool]:
    """Deform ``g`` until no admissible path of length <= depth_bound remains.

    Returns the final graph, the deformation, and whether the final search was
    exhaustive (so that the output is certainly fully reduced).
    """
    moves: list[Move] = []
    while True:
        g, collapses = reduce(g)
        moves += collapses
        exhaustive = True
        found = None
        for f in sorted(e for e in g.oriented_edges() if not g.is_loop(e)):
            path, exh = search_admissible_path(g, f, depth_bound)
            exhaustive = exhaustive and exh
            if path is not None:
                found = path
                break
        if found is None:
            return g, moves, exhaustive
        g, d = eliminate_edge(g, found)
        moves += d
