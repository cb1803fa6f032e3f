"""Independent ground truth: exhaustive search and solution checking.

Deliberately shares nothing with the flow solver. Feasibility of a chosen
subset is tested through depth alone: a set of intervals splits into k
non-overlapping sessions exactly when no point of the line lies strictly
inside more than k of them, so the search never needs to construct a
colouring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intervals import connected_components, overlaps
from .schedule import IntervalInstance, Vertex


class InstanceTooLarge(ValueError):
    """The exhaustive search refuses components above the size limit."""


@dataclass(frozen=True)
class OracleResult:
    best_weight: int
    best_subset: frozenset[int]
    nodes_explored: int


@dataclass(frozen=True)
class CheckReport:
    violations: tuple[str, ...]
    class_weights: tuple[int, ...]
    total_weight: int

    @property
    def ok(self) -> bool:
        return not self.violations


def _search_component(vertices: list[Vertex], k: int) -> tuple[int, list[int], int]:
    """Include/exclude search over vertices sorted by start.

    Including a vertex is allowed only while at most k-1 already chosen
    intervals are still open at its start; because vertices arrive in start
    order, that single check bounds the depth everywhere. Branches whose
    remaining weight cannot beat the incumbent are cut.
    """
    vs = sorted(vertices, key=lambda v: (v.s, v.f, v.vertex_id))
    n = len(vs)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + vs[i].w
    best_weight = -1
    best: list[int] = []
    chosen: list[Vertex] = []
    explored = 0

    def recurse(i: int, weight: int) -> None:
        nonlocal best_weight, best, explored
        explored += 1
        if weight + suffix[i] <= best_weight:
            return
        if i == n:
            best_weight = weight
            best = [v.vertex_id for v in chosen]
            return
        v = vs[i]
        open_here = sum(1 for c in chosen if c.f > v.s)
        if open_here < k:
            chosen.append(v)
            recurse(i + 1, weight + v.w)
            chosen.pop()
        recurse(i + 1, weight)

    recurse(0, 0)
    return best_weight, best, explored


def brute_force_mwkc(inst: IntervalInstance, k: int, limit: int = 20) -> OracleResult:
    """Exact optimum by exhaustive search, component by component.

    Optima add across components, so the limit guards each component rather
    than the whole instance.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    total = 0
    subset: set[int] = set()
    explored = 0
    by_id = {v.vertex_id: v for v in inst.vertices}
    for comp in connected_components(inst):
        if len(comp) > limit:
            raise InstanceTooLarge(
                f"component with {len(comp)} intervals exceeds the search limit {limit}")
        weight, ids, nodes = _search_component([by_id[vid] for vid in comp], k)
        total += weight
        subset.update(ids)
        explored += nodes
    return OracleResult(total, frozenset(subset), explored)


def verify_solution(sol, inst: IntervalInstance, k: int) -> CheckReport:
    """Check a claimed solution from first principles.

    Verifies class count, vertex validity, disjointness, independence of
    every class, and the weight bookkeeping. Never raises; everything wrong
    lands in the report.
    """
    violations: list[str] = []
    by_id = {v.vertex_id: v for v in inst.vertices}
    if len(sol.classes) > k:
        violations.append(f"{len(sol.classes)} classes but k={k}")
    seen: dict[int, int] = {}
    class_weights: list[int] = []
    for ci, members in enumerate(sol.classes, start=1):
        weight = 0
        known = []
        for vid in members:
            if vid not in by_id:
                violations.append(f"class {ci}: unknown vertex {vid}")
                continue
            if vid in seen:
                violations.append(f"vertex {vid} appears in classes {seen[vid]} and {ci}")
            seen[vid] = ci
            weight += by_id[vid].w
            known.append(by_id[vid])
        # intervals sorted by start are pairwise disjoint iff each is
        # disjoint from its successor
        known.sort(key=lambda v: (v.s, v.f))
        for a, b in zip(known, known[1:]):
            if overlaps(a, b):
                violations.append(
                    f"class {ci}: vertices {a.vertex_id} and {b.vertex_id} overlap")
        class_weights.append(weight)
    union = set(seen)
    if set(sol.Q) != union:
        violations.append("Q does not equal the union of the classes")
    recomputed = sum(by_id[vid].w for vid in union if vid in by_id)
    if sol.total_weight != recomputed:
        violations.append(
            f"claimed total weight {sol.total_weight}, classes sum to {recomputed}")
    return CheckReport(tuple(violations), tuple(class_weights), recomputed)
