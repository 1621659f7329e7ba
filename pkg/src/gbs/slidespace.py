"""Slide closures of reduced graphs and the isomorphism decision.

Without non-trivial integral moduli, any two reduced graphs for the same GBS
group are joined by slide moves alone, and only finitely many reduced graphs
are reachable that way.  Isomorphism is therefore closure membership.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass, field

from .canonical import canonical_form
from .errors import CollapsibleStateReached, IntegralModuli, NotReduced, StateBudgetExceeded
from .graph import EdgeIndexedGraph
from .moduli import has_nontrivial_integral_modulus, modular_group
from .moves import Elementary, Slide, classify_elementary, legal_slides, move_to_json, reduce

DEFAULT_MAX_STATES = 100_000


def default_max_states() -> int:
    raw = os.environ.get("GBS_MAX_STATES")
    return int(raw) if raw else DEFAULT_MAX_STATES


def slide_neighbors(g: EdgeIndexedGraph) -> list[tuple[Slide, EdgeIndexedGraph]]:
    """One representative per canonical class reachable by a single slide."""
    if not g.is_reduced():
        raise NotReduced("slide_neighbors needs a reduced graph")
    out = []
    seen = set()
    for mv in legal_slides(g):
        h = mv.apply(g)
        key = canonical_form(h)
        if key not in seen:
            seen.add(key)
            out.append((mv, h))
    return out


@dataclass
class ClosureGraph:
    start: bytes
    states: dict[bytes, EdgeIndexedGraph] = field(default_factory=dict)
    transitions: list[tuple[bytes, Slide, bytes]] = field(default_factory=list)

    def __contains__(self, key: bytes) -> bool:
        return key in self.states

    def __len__(self) -> int:
        return len(self.states)

    def state_ids(self) -> dict[bytes, int]:
        """Stable numbering in discovery order."""
        return {k: i for i, k in enumerate(self.states)}

    def to_json(self) -> dict:
        ids = self.state_ids()
        return {
            "start": ids[self.start],
            "states": [
                {"id": ids[k], "canonical": k.decode("ascii"), "graph": g.to_dict()} for k, g in self.states.items()
            ],
            "transitions": [
                {"from": ids[a], "to": ids[b], "move": move_to_json(self.states[a], mv)}
                for a, mv, b in self.transitions
            ],
        }

    def to_dot(self) -> str:
        ids = self.state_ids()
        lines = ["digraph closure {"]
        for k, g in self.states.items():
            label = ", ".join(f"{p.idx_src}|{p.idx_dst}" for p in g.pairs)
            lines.append(f'  s{ids[k]} [label="{label}"];')
        for a, mv, b in self.transitions:
            lines.append(f'  s{ids[a]} -> s{ids[b]} [label="{mv.moving_end!r}/{mv.over!r}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def slide_closure(g: EdgeIndexedGraph, max_states: int | None = None) -> ClosureGraph:
    """Breadth-first closure of ``g`` under slide moves, deduplicated by canonical form.

    Transitions are recorded between distinct classes only.
    """
    if not g.is_reduced():
        raise NotReduced("slide_closure needs a reduced graph")
    if has_nontrivial_integral_modulus(modular_group(g)):
        raise IntegralModuli("the modular group contains a non-trivial integer")
    budget = default_max_states() if max_states is None else max_states
    start = canonical_form(g)
    closure = ClosureGraph(start, {start: g})
    queue = deque([start])
    while queue:
        key = queue.popleft()
        for mv, h in slide_neighbors(closure.states[key]):
            if not h.is_reduced():
                raise CollapsibleStateReached(f"slide {mv} produced a collapsible edge")
            hkey = canonical_form(h)
            if hkey == key:
                continue
            closure.transitions.append((key, mv, hkey))
            if hkey not in closure.states:
                if len(closure.states) >= budget:
                    raise StateBudgetExceeded(f"more than {budget} states")
                closure.states[hkey] = h
                queue.append(hkey)
    return closure


class Verdict(str, enum.Enum):
    Isomorphic = "Isomorphic"
    NotIsomorphic = "NotIsomorphic"


def decide_isomorphic(ga: EdgeIndexedGraph, gb: EdgeIndexedGraph, max_states: int | None = None) -> Verdict:
    ra, _ = reduce(ga)
    rb, _ = reduce(gb)
    ka, kb = classify_elementary(ra), classify_elementary(rb)
    if ka is not Elementary.NonElementary or kb is not Elementary.NonElementary:
        return Verdict.Isomorphic if ka == kb else Verdict.NotIsomorphic
    la = modular_group(ra)
    if has_nontrivial_integral_modulus(la):
        raise IntegralModuli("the first graph has a non-trivial integral modulus")
    if not la.same_group(modular_group(rb)):
        return Verdict.NotIsomorphic
    if (ra.num_vertices, ra.num_pairs) != (rb.num_vertices, rb.num_pairs):
        return Verdict.NotIsomorphic
    closure = slide_closure(ra, max_states)
    return Verdict.Isomorphic if canonical_form(rb) in closure else Verdict.NotIsomorphic
