"""Shared fixtures, builders, and slow-but-obvious reference implementations
that the real code is tested against."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from sessionpick import IntervalInstance, Vertex

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# ten intervals used throughout: (vertex_id, start, finish, weight);
# drawn so that the clique structure exercises spans of every shape
DEMO10_VERTS = (
    (0, 2, 3, 5),
    (1, 1, 6, 3),
    (2, 7, 8, 6),
    (3, 5, 9, 2),
    (4, 4, 11, 8),
    (5, 12, 15, 4),
    (6, 10, 17, 1),
    (7, 14, 18, 2),
    (8, 13, 19, 5),
    (9, 16, 20, 3),
)

DEMO10_CLIQUES = ((0, 1), (1, 3, 4), (2, 3, 4), (4, 6), (5, 6, 7, 8), (6, 7, 8, 9))
DEMO10_PI = [20, 15, 13, 7, 7, 3, 0]
# transformed weights, arc_id order: 6 c-arcs then 10 i-arcs by vertex id
DEMO10_WEIGHT_U = (5, 2, 6, 0, 4, 3, 0, 4, 0, 6, 0, 0, 6, 5, 2, 0)
DEMO10_SPANS = {0: (1, 1), 1: (1, 2), 2: (3, 3), 3: (2, 3), 4: (2, 4),
                5: (5, 5), 6: (4, 6), 7: (5, 6), 8: (5, 6), 9: (6, 6)}


@pytest.fixture
def demo10() -> IntervalInstance:
    return IntervalInstance(tuple(Vertex(*v) for v in DEMO10_VERTS))


@pytest.fixture
def demo10_csv() -> Path:
    return FIXTURES / "demo10.csv"


@pytest.fixture
def three_channels_csv() -> Path:
    return FIXTURES / "three_channels.csv"


def make_instance(triples) -> IntervalInstance:
    return IntervalInstance(tuple(
        Vertex(i, s, f, w) for i, (s, f, w) in enumerate(triples)))


def random_instance(rng: random.Random, n_min: int = 1, n_max: int = 16,
                    coord_max: int = 48, w_max: int = 9) -> IntervalInstance:
    n = rng.randint(n_min, n_max)
    triples = []
    for _ in range(n):
        s = rng.randint(0, coord_max - 1)
        f = rng.randint(s + 1, coord_max)
        triples.append((s, f, rng.randint(0, w_max)))
    return make_instance(triples)


def ref_overlaps(a: Vertex, b: Vertex) -> bool:
    return a.s < b.f and b.s < a.f


def reference_maximal_cliques(inst: IntervalInstance) -> list[tuple[int, ...]]:
    """All maximal cliques by subset enumeration, ordered by leading point.

    Exponential; only for small n.
    """
    verts = inst.vertices
    n = len(verts)
    cliques = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            if all(ref_overlaps(verts[a], verts[b])
                   for a, b in itertools.combinations(combo, 2)):
                member_set = set(combo)
                extendable = any(
                    v not in member_set and all(ref_overlaps(verts[v], verts[u]) for u in combo)
                    for v in range(n))
                if not extendable:
                    cliques.append(combo)
    cliques.sort(key=lambda c: max(verts[v].s for v in c))
    return cliques


def max_depth(inst: IntervalInstance, selected=None) -> int:
    """Largest number of intervals strictly containing any one point."""
    chosen = inst.vertices if selected is None else [
        v for v in inst.vertices if v.vertex_id in selected]
    events = []
    for v in chosen:
        events.append((v.s, 1, 1))
        events.append((v.f, 0, -1))  # a finish frees the point it touches
    events.sort()
    depth = best = 0
    for _, _, delta in events:
        depth += delta
        best = max(best, depth)
    return best
