"""Interval graph structure: maximal cliques, spans, components.

The graph is never materialized. Two vertices are adjacent iff their open
intervals intersect, and everything downstream works off the linearly
ordered maximal cliques that interval graphs admit: each vertex's clique
memberships form one contiguous run, so a (p, q) index pair per vertex
captures the whole adjacency structure.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .schedule import IntervalInstance, Vertex

_FINISH = 0  # finish events sort before start events at equal coordinates,
_START = 1  # which is exactly the open-overlap rule: touching does not count


def overlaps(a: Vertex, b: Vertex) -> bool:
    """Open-interval intersection: endpoints may touch without overlapping."""
    return a.s < b.f and b.s < a.f


@dataclass(frozen=True)
class CliqueSequence:
    """Maximal cliques C_1..C_r ordered by leading point.

    cliques[i] holds sorted vertex ids (0-based list index, 1-based clique
    numbering everywhere else). leading_points[i] is the largest member
    start, the leftmost coordinate where all members coexist. spans maps a
    vertex to its 1-based (p, q) run of clique indices.
    """

    cliques: tuple[tuple[int, ...], ...]
    leading_points: tuple[int, ...]
    spans: dict[int, tuple[int, int]]

    @property
    def r(self) -> int:
        return len(self.cliques)


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    M: int
    omega: int
    components: tuple[tuple[int, ...], ...]


def _events(vertices: tuple[Vertex, ...]) -> list[tuple[int, int, int]]:
    ev: list[tuple[int, int, int]] = []
    for v in vertices:
        ev.append((v.s, _START, v.vertex_id))
        ev.append((v.f, _FINISH, v.vertex_id))
    ev.sort()
    return ev


def enumerate_maximal_cliques(inst: IntervalInstance) -> CliqueSequence:
    """Sweep the endpoints once, emitting a clique at every first finish
    after at least one start.

    At such a finish with coordinate t, the active set is exactly
    {u : s_u < t <= f_u}, which is a maximal clique; the trigger
    coordinates strictly increase, which yields both the clique order and,
    via two bisects per vertex, the contiguous membership spans.
    """
    if inst.n == 0:
        return CliqueSequence((), (), {})
    active: set[int] = set()
    pending = False
    last_start = 0
    cliques: list[tuple[int, ...]] = []
    leading: list[int] = []
    triggers: list[int] = []
    for coord, kind, vid in _events(inst.vertices):
        if kind == _START:
            active.add(vid)
            pending = True
            last_start = coord
        else:
            if pending:
                cliques.append(tuple(sorted(active)))
                leading.append(last_start)
                triggers.append(coord)
                pending = False
            active.remove(vid)
    spans: dict[int, tuple[int, int]] = {}
    for v in inst.vertices:
        p = bisect.bisect_right(triggers, v.s) + 1  # first trigger > s
        q = bisect.bisect_right(triggers, v.f)  # last trigger <= f
        spans[v.vertex_id] = (p, q)
    return CliqueSequence(tuple(cliques), tuple(leading), spans)


def vertex_span(cs: CliqueSequence, u: int) -> tuple[int, int]:
    try:
        return cs.spans[u]
    except KeyError:
        raise ValueError(f"unknown vertex {u}") from None


def connected_components(inst: IntervalInstance) -> list[list[int]]:
    """Vertex ids grouped by overlap connectivity, in time order.

    Components of an interval set occupy disjoint stretches of the line,
    so a component ends exactly when the active set drains.
    """
    comps: list[list[int]] = []
    current: list[int] = []
    depth = 0
    for _, kind, vid in _events(inst.vertices):
        if kind == _START:
            if depth == 0 and current:
                comps.append(current)
                current = []
            current.append(vid)
            depth += 1
        else:
            depth -= 1
    if current:
        comps.append(current)
    return comps


def compute_stats(inst: IntervalInstance, cs: CliqueSequence) -> GraphStats:
    # m: each start event contributes one edge per interval already active,
    # counting every overlapping pair exactly once
    m = 0
    depth = 0
    for _, kind, _vid in _events(inst.vertices):
        if kind == _START:
            m += depth
            depth += 1
        else:
            depth -= 1
    return GraphStats(
        n=inst.n,
        m=m,
        M=max((v.w for v in inst.vertices), default=0),
        omega=max((len(c) for c in cs.cliques), default=0),
        components=tuple(tuple(c) for c in connected_components(inst)),
    )
