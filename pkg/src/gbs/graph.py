"""Edge-indexed graphs: the quotient data of a GBS tree.

A graph is stored as a set of vertices plus a set of edge *pairs*.  Each pair
``EdgePair(id, src, dst, idx_src, idx_dst)`` carries both orientations: the
oriented edge ``OrientedEdge(id, 0)`` starts at ``src`` with index
``idx_src``, and ``OrientedEdge(id, 1)`` is its reverse, starting at ``dst``
with index ``idx_dst``.  An oriented edge doubles as an "edge end": the end of
the pair sitting at its origin.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable, NamedTuple

from .errors import BadInvolution, Disconnected, MalformedInput, UnknownReference, ZeroIndex

SIDE_NAMES = ("from", "to")


class OrientedEdge(NamedTuple):
    pair: str
    side: int  # 0 = the orientation leaving the pair's "from" vertex

    @property
    def reverse(self) -> OrientedEdge:
        return OrientedEdge(self.pair, 1 - self.side)

    def __repr__(self) -> str:
        return f"{self.pair}{'' if self.side == 0 else '~'}"


class EdgePair(NamedTuple):
    id: str
    src: str
    dst: str
    idx_src: int
    idx_dst: int

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


class EdgeIndexedGraph:
    """Immutable finite connected graph with a non-zero integer per oriented edge."""

    __slots__ = ("_vertices", "_pairs", "_ends")

    def __init__(self, vertices: Iterable[str], pairs: Iterable[EdgePair], *, validate: bool = True):
        vertices = tuple(sorted(vertices))
        pairs = sorted(pairs)
        if validate:
            _validate(vertices, pairs)
        self._vertices = vertices
        self._pairs = {p.id: p for p in pairs}
        ends: dict[str, list[OrientedEdge]] = {v: [] for v in vertices}
        for p in pairs:
            ends[p.src].append(OrientedEdge(p.id, 0))
            ends[p.dst].append(OrientedEdge(p.id, 1))
        self._ends = ends

    @classmethod
    def build(cls, edges: Iterable[tuple], vertices: Iterable[str] = ()) -> EdgeIndexedGraph:
        """Shorthand constructor: ``edges`` are ``(id, from, to, idx_from, idx_to)``."""
        pairs = [EdgePair(*e) for e in edges]
        vs = set(vertices)
        for p in pairs:
            vs.update((p.src, p.dst))
        return cls(vs, pairs)

    # -- basic accessors --------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def pairs(self) -> tuple[EdgePair, ...]:
        return tuple(self._pairs.values())

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_pairs(self) -> int:
        return len(self._pairs)

    @property
    def betti(self) -> int:
        return self.num_pairs - self.num_vertices + 1

    def has_vertex(self, v: str) -> bool:
        return v in self._ends

    def has_pair(self, pid: str) -> bool:
        return pid in self._pairs

    def pair(self, pid: str) -> EdgePair:
        try:
            return self._pairs[pid]
        except KeyError:
            raise UnknownReference(f"no edge {pid!r}") from None

    def _check(self, e: OrientedEdge) -> EdgePair:
        p = self.pair(e.pair)
        if e.side not in (0, 1):
            raise UnknownReference(f"bad side {e.side!r} for edge {e.pair!r}")
        return p

    def origin(self, e: OrientedEdge) -> str:
        p = self._check(e)
        return p.src if e.side == 0 else p.dst

    def terminus(self, e: OrientedEdge) -> str:
        p = self._check(e)
        return p.dst if e.side == 0 else p.src

    def index(self, e: OrientedEdge) -> int:
        p = self._check(e)
        return p.idx_src if e.side == 0 else p.idx_dst

    def is_loop(self, e: OrientedEdge | str) -> bool:
        pid = e if isinstance(e, str) else e.pair
        return self.pair(pid).is_loop

    def ends_at(self, v: str) -> list[OrientedEdge]:
        """Oriented edges with origin ``v``, sorted; a loop contributes both orientations."""
        try:
            return list(self._ends[v])
        except KeyError:
            raise UnknownReference(f"no vertex {v!r}") from None

    def oriented_edges(self) -> list[OrientedEdge]:
        return [OrientedEdge(pid, s) for pid in self._pairs for s in (0, 1)]

    def collapsible_edges(self) -> list[OrientedEdge]:
        return [e for e in self.oriented_edges() if abs(self.index(e)) == 1 and not self.is_loop(e)]

    def is_reduced(self) -> bool:
        return not self.collapsible_edges()

    def fresh_vertex(self, prefix: str = "v") -> str:
        k = 0
        while f"{prefix}{k}" in self._ends:
            k += 1
        return f"{prefix}{k}"

    def fresh_pair(self, prefix: str = "e") -> str:
        k = 0
        while f"{prefix}{k}" in self._pairs:
            k += 1
        return f"{prefix}{k}"

    # -- structural comparison (labeled, exact) ---------------------------

    def _key(self):
        return (self._vertices, tuple(self._pairs.values()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeIndexedGraph) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        body = ", ".join(f"{p.id}:{p.src}({p.idx_src})-{p.dst}({p.idx_dst})" for p in self._pairs.values())
        return f"EdgeIndexedGraph(V={list(self._vertices)}, [{body}])"

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self._vertices),
            "edges": [
                {"id": p.id, "from": p.src, "to": p.dst, "idx_from": p.idx_src, "idx_to": p.idx_dst}
                for p in self._pairs.values()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self._vertices]
        for p in self._pairs.values():
            lines.append(f'  "{p.src}" -- "{p.dst}" [label="{p.idx_src}|{p.idx_dst}", id="{p.id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _validate(vertices: tuple[str, ...], pairs: list[EdgePair]) -> None:
    if not vertices:
        raise MalformedInput("a graph needs at least one vertex")
    if len(set(vertices)) != len(vertices):
        raise MalformedInput("duplicate vertex id")
    vset = set(vertices)
    seen: set[str] = set()
    for p in pairs:
        if p.id in seen:
            raise BadInvolution(f"edge id {p.id!r} used twice")
        seen.add(p.id)
        if p.src not in vset or p.dst not in vset:
            raise MalformedInput(f"edge {p.id!r} has an unknown endpoint")
        for idx in (p.idx_src, p.idx_dst):
            if isinstance(idx, bool) or not isinstance(idx, int):
                raise MalformedInput(f"edge {p.id!r} has a non-integer index")
            if idx == 0:
                raise ZeroIndex(f"edge {p.id!r} has index 0")
    adj: dict[str, set[str]] = {v: set() for v in vertices}
    for p in pairs:
        adj[p.src].add(p.dst)
        adj[p.dst].add(p.src)
    seen_v = {vertices[0]}
    todo = [vertices[0]]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen_v:
                seen_v.add(w)
                todo.append(w)
    if len(seen_v) != len(vertices):
        raise Disconnected(f"{len(vertices) - len(seen_v)} vertices unreachable from {vertices[0]!r}")


def graph_from_dict(data: object) -> EdgeIndexedGraph:
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list) or not isinstance(data.get("edges"), list):
        raise MalformedInput('expected an object with "vertices" and "edges" lists')
    vertices = data["vertices"]
    if not all(isinstance(v, str) for v in vertices):
        raise MalformedInput("vertex ids must be strings")
    if len(set(vertices)) != len(vertices):
        raise MalformedInput("duplicate vertex id")
    pairs = []
    for rec in data["edges"]:
        if not isinstance(rec, dict):
            raise MalformedInput("edge records must be objects")
        try:
            pid, src, dst, a, b = rec["id"], rec["from"], rec["to"], rec["idx_from"], rec["idx_to"]
        except KeyError as exc:
            raise MalformedInput(f"edge record missing field {exc.args[0]!r}") from None
        if not all(isinstance(x, str) for x in (pid, src, dst)):
            raise MalformedInput("edge id and endpoints must be strings")
        pairs.append(EdgePair(pid, src, dst, a, b))
    return EdgeIndexedGraph(vertices, pairs)


def parse_graph(text: str) -> EdgeIndexedGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    return graph_from_dict(data)


def spanning_tree(g: EdgeIndexedGraph, root: str | None = None) -> dict[str, OrientedEdge | None]:
    """Breadth-first spanning tree; maps each vertex to the oriented edge reaching it."""
    root = g.vertices[0] if root is None else root
    parent: dict[str, OrientedEdge | None] = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in g.ends_at(v):
            w = g.terminus(e)
            if w not in parent:
                parent[w] = e
                queue.append(w)
    return parent


def _tree_path(parent: dict[str, OrientedEdge | None], g: EdgeIndexedGraph, v: str) -> list[OrientedEdge]:
    path = []
    while parent[v] is not None:
        e = parent[v]
        path.append(e)
        v = g.origin(e)
    path.reverse()
    return path


def fundamental_cycles(g: EdgeIndexedGraph, root: str | None = None) -> list[list[OrientedEdge]]:
    """One closed path per non-tree edge pair, in edge-id order."""
    parent = spanning_tree(g, root)
    tree_pairs = {e.pair for e in parent.values() if e is not None}
    cycles = []
    for p in g.pairs:
        if p.id in tree_pairs:
            continue
        to_src = _tree_path(parent, g, p.src)
        to_dst = _tree_path(parent, g, p.dst)
        common = 0
        while common < min(len(to_src), len(to_dst)) and to_src[common] == to_dst[common]:
            common += 1
        back = [e.reverse for e in reversed(to_dst[common:])]
        cycles.append(to_src[common:] + [OrientedEdge(p.id, 0)] + back)
    return cycles


# -- small builders used throughout the tests and docs ----------------------


def loop_graph(m: int, n: int, v: str = "v", pid: str = "e") -> EdgeIndexedGraph:
    return EdgeIndexedGraph.build([(pid, v, v, m, n)])


def edge_graph(m: int, n: int, u: str = "u", w: str = "w", pid: str = "f") -> EdgeIndexedGraph:
    return EdgeIndexedGraph.build([(pid, u, w, m, n)])


def single_vertex(v: str = "v") -> EdgeIndexedGraph:
    return EdgeIndexedGraph([v], [])
