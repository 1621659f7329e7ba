"""Elementary moves on edge-indexed graphs, reduction and elementary forms.

All moves act on indices exactly as the local pictures for GBS trees dictate:

* collapse of ``e`` (``i(e) = +-1``, not a loop): the origin of ``e`` merges
  into its terminus, and every other end at the dying vertex is multiplied by
  ``i(e~)/i(e)``;
* expansion: the inverse, splitting a vertex;
* slide of an end ``h`` over ``e`` (same origin, ``i(e) | i(h)``): ``h`` moves
  to the terminus of ``e`` with index ``i(h) i(e~)/i(e)``;
* induction along an ascending loop: every other end at its vertex is
  multiplied or divided by a factor of the loop's other index.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import ClassVar, Iterable, Iterator, Union

from .canonical import are_equivalent
from .errors import (
    EmptyVertex,
    EndNotDivisible,
    FactorNotDividing,
    IndivisibleEnd,
    LoopCollapse,
    MalformedInput,
    NotAscendingLoop,
    NotCollapsible,
    NotDivisible,
    NotReduced,
    SelfSlide,
    UnknownReference,
)
from .graph import SIDE_NAMES, EdgeIndexedGraph, EdgePair, OrientedEdge, edge_graph, loop_graph, single_vertex

# -- move records -------------------------------------------------------------


@dataclass(frozen=True)
class Collapse:
    edge: OrientedEdge
    kind: ClassVar[str] = "collapse"

    def apply(self, g: EdgeIndexedGraph) -> EdgeIndexedGraph:
        return apply_collapse(g, self.edge)


@dataclass(frozen=True)
class Expansion:
    """Split ``vertex``; ``moved_ends`` go to ``new_vertex`` divided by ``n``.

    The new pair joins ``vertex`` (index ``n*sign``) to ``new_vertex``
    (index ``sign``).  It is stored from ``vertex`` to ``new_vertex`` unless
    ``flip`` is set.
    """

    vertex: str
    moved_ends: frozenset
    n: int
    new_vertex: str
    new_edge: str
    sign: int = 1
    flip: bool = False
    kind: ClassVar[str] = "expansion"

    def apply(self, g: EdgeIndexedGraph) -> EdgeIndexedGraph:
        return apply_expansion(
            g, self.vertex, self.moved_ends, self.n, self.sign,
            new_vertex=self.new_vertex, new_edge=self.new_edge, flip=self.flip,
        )

    @property
    def new_end(self) -> OrientedEdge:
        """The orientation of the new pair starting at the new vertex."""
        return OrientedEdge(self.new_edge, 0 if self.flip else 1)


@dataclass(frozen=True)
class Slide:
    moving_end: OrientedEdge
    over: OrientedEdge
    kind: ClassVar[str] = "slide"

    def apply(self, g: EdgeIndexedGraph) -> EdgeIndexedGraph:
        return apply_slide(g, self.moving_end, self.over)


@dataclass(frozen=True)
class Induction:
    loop: OrientedEdge
    factor: int
    direction: str = "multiply"
    kind: ClassVar[str] = "induction"

    def apply(self, g: EdgeIndexedGraph) -> EdgeIndexedGraph:
        return apply_induction(g, self.loop, self.factor, self.direction)


Move = Union[Collapse, Expansion, Slide, Induction]


@dataclass(frozen=True)
class Deformation:
    start: EdgeIndexedGraph
    moves: tuple = field(default_factory=tuple)

    def replay(self) -> EdgeIndexedGraph:
        return replay(self.start, self.moves)


def replay(g: EdgeIndexedGraph, moves: Iterable[Move]) -> EdgeIndexedGraph:
    for m in moves:
        g = m.apply(g)
    return g


def replay_trace(g: EdgeIndexedGraph, moves: Iterable[Move]) -> list[EdgeIndexedGraph]:
    """Graphs before and after every move (length ``len(moves) + 1``)."""
    out = [g]
    for m in moves:
        g = m.apply(g)
        out.append(g)
    return out


# -- the four moves -----------------------------------------------------------


def _rebuild(g: EdgeIndexedGraph, vertices, changes: dict[OrientedEdge, tuple[str, int]], drop: str | None = None):
    """Copy ``g`` with some ends re-rooted/re-indexed; ``changes`` maps end -> (origin, index)."""
    pairs = []
    for p in g.pairs:
        if p.id == drop:
            continue
        src, a = changes.get(OrientedEdge(p.id, 0), (p.src, p.idx_src))
        dst, b = changes.get(OrientedEdge(p.id, 1), (p.dst, p.idx_dst))
        pairs.append(EdgePair(p.id, src, dst, a, b))
    return EdgeIndexedGraph(vertices, pairs, validate=False)


def apply_collapse(g: EdgeIndexedGraph, e: OrientedEdge) -> EdgeIndexedGraph:
    if g.is_loop(e):
        raise LoopCollapse(f"{e!r} is a loop")
    ie = g.index(e)
    if abs(ie) != 1:
        raise NotCollapsible(f"i({e!r}) = {ie}")
    u, w = g.origin(e), g.terminus(e)
    mult = g.index(e.reverse) * ie
    changes = {h: (w, g.index(h) * mult) for h in g.ends_at(u) if h.pair != e.pair}
    return _rebuild(g, [v for v in g.vertices if v != u], changes, drop=e.pair)


def apply_expansion(
    g: EdgeIndexedGraph,
    v: str,
    moved_ends: Iterable[OrientedEdge],
    n: int,
    sign: int = 1,
    *,
    new_vertex: str | None = None,
    new_edge: str | None = None,
    flip: bool = False,
) -> EdgeIndexedGraph:
    if not g.has_vertex(v):
        raise EmptyVertex(f"no vertex {v!r}")
    if n == 0 or sign not in (1, -1):
        raise MalformedInput("expansion needs n != 0 and sign = +-1")
    new_vertex = g.fresh_vertex() if new_vertex is None else new_vertex
    new_edge = g.fresh_pair() if new_edge is None else new_edge
    if g.has_vertex(new_vertex) or g.has_pair(new_edge):
        raise MalformedInput(f"expansion names {new_vertex!r}/{new_edge!r} already in use")
    changes = {}
    for h in moved_ends:
        if g.origin(h) != v:
            raise MalformedInput(f"end {h!r} is not at {v!r}")
        if g.index(h) % n:
            raise IndivisibleEnd(f"{n} does not divide i({h!r}) = {g.index(h)}")
        changes[h] = (new_vertex, g.index(h) // n)
    base = _rebuild(g, g.vertices + (new_vertex,), changes)
    if flip:
        new = EdgePair(new_edge, new_vertex, v, sign, n * sign)
    else:
        new = EdgePair(new_edge, v, new_vertex, n * sign, sign)
    return EdgeIndexedGraph(base.vertices, base.pairs + (new,), validate=False)


def apply_slide(g: EdgeIndexedGraph, moving_end: OrientedEdge, over: OrientedEdge) -> EdgeIndexedGraph:
    if moving_end.pair == over.pair:
        raise SelfSlide(f"{moving_end!r} over {over!r}")
    v = g.origin(moving_end)
    if g.origin(over) != v:
        raise MalformedInput(f"{moving_end!r} and {over!r} do not share an origin")
    a, k = g.index(moving_end), g.index(over)
    if a % k:
        raise NotDivisible(f"{k} does not divide {a}")
    changes = {moving_end: (g.terminus(over), a // k * g.index(over.reverse))}
    return _rebuild(g, g.vertices, changes)


def apply_induction(g: EdgeIndexedGraph, loop: OrientedEdge, factor: int, direction: str = "multiply") -> EdgeIndexedGraph:
    if not g.is_loop(loop) or abs(g.index(loop)) != 1:
        raise NotAscendingLoop(f"{loop!r} is not a loop with index +-1")
    if direction not in ("multiply", "divide"):
        raise MalformedInput(f"unknown induction direction {direction!r}")
    if factor == 0 or g.index(loop.reverse) % factor:
        raise FactorNotDividing(f"{factor} does not divide {g.index(loop.reverse)}")
    v = g.origin(loop)
    changes = {}
    for h in g.ends_at(v):
        if h.pair == loop.pair:
            continue
        if direction == "multiply":
            changes[h] = (v, g.index(h) * factor)
        else:
            if g.index(h) % factor:
                raise EndNotDivisible(f"{factor} does not divide i({h!r}) = {g.index(h)}")
            changes[h] = (v, g.index(h) // factor)
    return _rebuild(g, g.vertices, changes)


def expansion(g: EdgeIndexedGraph, v: str, moved_ends: Iterable[OrientedEdge], n: int, sign: int = 1) -> Expansion:
    """An Expansion record with fresh names for the new vertex and edge."""
    return Expansion(v, frozenset(moved_ends), n, g.fresh_vertex(), g.fresh_pair(), sign)


def legal_slides(g: EdgeIndexedGraph) -> Iterator[Slide]:
    for v in g.vertices:
        ends = g.ends_at(v)
        for h in ends:
            for e in ends:
                if e.pair != h.pair and g.index(h) % g.index(e) == 0:
                    yield Slide(h, e)


def inverse(g: EdgeIndexedGraph, move: Move) -> Move:
    """A move undoing ``move`` when applied to ``move.apply(g)``, names included."""
    if isinstance(move, Slide):
        return Slide(move.moving_end, move.over.reverse)
    if isinstance(move, Expansion):
        return Collapse(move.new_end)
    if isinstance(move, Collapse):
        e = move.edge
        u, w = g.origin(e), g.terminus(e)
        ie = g.index(e)
        moved = frozenset(h for h in g.ends_at(u) if h.pair != e.pair)
        n = g.index(e.reverse) * ie
        # stored orientation of the pair must survive the round trip
        flip = e.side == 0
        return Expansion(w, moved, n, u, e.pair, ie, flip)
    if isinstance(move, Induction):
        other = "divide" if move.direction == "multiply" else "multiply"
        return Induction(move.loop, move.factor, other)
    raise TypeError(f"not a move: {move!r}")


# -- reduction ----------------------------------------------------------------


def reduce(g: EdgeIndexedGraph) -> tuple[EdgeIndexedGraph, list[Collapse]]:
    """Collapse the least collapsible edge until none is left."""
    moves = []
    while True:
        cands = g.collapsible_edges()
        if not cands:
            return g, moves
        m = Collapse(min(cands))
        g = m.apply(g)
        moves.append(m)


class Elementary(str, enum.Enum):
    Z = "Z"
    ZxZ = "ZxZ"
    Klein = "Klein"
    NonElementary = "NonElementary"


ELEMENTARY_FORMS = (
    (single_vertex(), Elementary.Z),
    (loop_graph(1, 1), Elementary.ZxZ),
    (loop_graph(1, -1), Elementary.Klein),
    (edge_graph(2, 2), Elementary.Klein),
)


def classify_elementary(g: EdgeIndexedGraph) -> Elementary:
    if not g.is_reduced():
        raise NotReduced("classify_elementary needs a reduced graph")
    for form, kind in ELEMENTARY_FORMS:
        if are_equivalent(g, form):
            return kind
    return Elementary.NonElementary


# -- JSON ---------------------------------------------------------------------


def end_to_json(g: EdgeIndexedGraph, e: OrientedEdge) -> dict:
    return {"edge": e.pair, "at": g.origin(e), "side": SIDE_NAMES[e.side]}


def end_from_json(g: EdgeIndexedGraph, rec: object, origin_hint: str | None = None) -> OrientedEdge:
    """Resolve an end reference; a bare edge id is resolved through ``origin_hint``.

    Without an explicit ``side``, a loop reference means its stored ("from")
    orientation.
    """
    if isinstance(rec, str):
        rec = {"edge": rec, "at": origin_hint}
    if not isinstance(rec, dict) or not isinstance(rec.get("edge"), str):
        raise MalformedInput(f"bad edge reference {rec!r}")
    pid = rec["edge"]
    p = g.pair(pid)
    if "side" in rec:
        if rec["side"] not in SIDE_NAMES:
            raise MalformedInput(f"side must be one of {SIDE_NAMES}")
        e = OrientedEdge(pid, SIDE_NAMES.index(rec["side"]))
        if rec.get("at") is not None and g.origin(e) != rec["at"]:
            raise MalformedInput(f"edge {pid!r} side {rec['side']!r} does not start at {rec['at']!r}")
        return e
    at = rec.get("at")
    if at is None:
        raise MalformedInput(f"reference to {pid!r} needs 'side' or 'at'")
    if p.is_loop:
        # both orientations start at the same vertex; default to the stored one
        if at != p.src:
            raise UnknownReference(f"loop {pid!r} is not at {at!r}")
        return OrientedEdge(pid, 0)
    if at == p.src:
        return OrientedEdge(pid, 0)
    if at == p.dst:
        return OrientedEdge(pid, 1)
    raise UnknownReference(f"edge {pid!r} has no end at {at!r}")


def move_to_json(g: EdgeIndexedGraph, m: Move) -> dict:
    """Serialize ``m`` as applied to ``g`` (the graph just before the move)."""
    if isinstance(m, Collapse):
        return {"kind": "collapse", "edge": end_to_json(g, m.edge)}
    if isinstance(m, Slide):
        return {"kind": "slide", "moving_end": end_to_json(g, m.moving_end), "over": end_to_json(g, m.over)}
    if isinstance(m, Induction):
        return {"kind": "induction", "loop": end_to_json(g, m.loop), "factor": m.factor, "direction": m.direction}
    if isinstance(m, Expansion):
        return {
            "kind": "expansion",
            "vertex": m.vertex,
            "moved_ends": [end_to_json(g, h) for h in sorted(m.moved_ends)],
            "n": m.n,
            "sign": m.sign,
            "new_vertex": m.new_vertex,
            "new_edge": m.new_edge,
            "flip": m.flip,
        }
    raise TypeError(f"not a move: {m!r}")


def _int(rec: dict, key: str, default=None) -> int:
    val = rec.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int):
        raise MalformedInput(f"move field {key!r} must be an integer")
    return val


def move_from_json(g: EdgeIndexedGraph, rec: object) -> Move:
    if not isinstance(rec, dict):
        raise MalformedInput("move records must be objects")
    kind = rec.get("kind")
    try:
        if kind == "collapse":
            return Collapse(end_from_json(g, rec["edge"]))
        if kind == "slide":
            h = end_from_json(g, rec["moving_end"])
            return Slide(h, end_from_json(g, rec["over"], origin_hint=g.origin(h)))
        if kind == "induction":
            return Induction(end_from_json(g, rec["loop"]), _int(rec, "factor"), rec.get("direction", "multiply"))
        if kind == "expansion":
            v = rec["vertex"]
            if not g.has_vertex(v):
                raise EmptyVertex(f"no vertex {v!r}")
            moved = frozenset(end_from_json(g, h, origin_hint=v) for h in rec.get("moved_ends", []))
            return Expansion(
                v, moved, _int(rec, "n"),
                rec.get("new_vertex") or g.fresh_vertex(),
                rec.get("new_edge") or g.fresh_pair(),
                _int(rec, "sign", 1),
                bool(rec.get("flip", False)),
            )
    except KeyError as exc:
        raise MalformedInput(f"{kind} record missing field {exc.args[0]!r}") from None
    raise MalformedInput(f"unknown move kind {kind!r}")


def deformation_to_json(start: EdgeIndexedGraph, moves: Iterable[Move]) -> list[dict]:
    out = []
    g = start
    for m in moves:
        out.append(move_to_json(g, m))
        g = m.apply(g)
    return out


def deformation_from_json(start: EdgeIndexedGraph, records: object) -> tuple[list[Move], EdgeIndexedGraph]:
    """Parse move records against ``start``, replaying as we go."""
    if not isinstance(records, list):
        raise MalformedInput("a deformation is a JSON list of move records")
    moves = []
    g = start
    for rec in records:
        m = move_from_json(g, rec)
        g = m.apply(g)
        moves.append(m)
    return moves, g
