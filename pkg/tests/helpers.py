"""Shared graphs and independent checking utilities for the test suite."""
from __future__ import annotations

import itertools
from functools import lru_cache

from wlbind import LabeledGraph, Permutation, SimpleGraph, apply_permutation
from wlbind.harness import enumerate_graphs


def k(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def path(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(1, i) for i in range(2, n + 1)])


def empty(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [])


# the 3-regular order-10 graph the refinement walkthrough is built around
ORDER10_EDGES = [
    (1, 2), (1, 5), (1, 6), (2, 3), (2, 7), (3, 4), (3, 9), (4, 5), (4, 8),
    (5, 10), (6, 8), (6, 9), (7, 9), (7, 10), (8, 10),
]


def order10_graph() -> SimpleGraph:
    return SimpleGraph.from_edges(10, ORDER10_EDGES)


def mask_to_graph(n: int, mask: int) -> SimpleGraph:
    """Decode an upper-triangle bitmask (lexicographic pair order) to a graph."""
    slots = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return SimpleGraph.from_edges(n, [p for t, p in enumerate(slots) if mask >> t & 1])


def all_graphs(n: int):
    """Every labeled simple graph of order n (not deduplicated)."""
    e = n * (n - 1) // 2
    return (mask_to_graph(n, mask) for mask in range(1 << e))


def brute_force_has_iso(g: LabeledGraph, h: LabeledGraph) -> bool:
    """Ground truth by trying all n! relabelings directly."""
    if g.order != h.order:
        return False
    for images in itertools.permutations(range(1, g.order + 1)):
        if apply_permutation(h, Permutation(images)) == g:
            return True
    return False


def brute_force_aut(g: LabeledGraph) -> list[Permutation]:
    out = []
    for images in itertools.permutations(range(1, g.order + 1)):
        p = Permutation(images)
        if apply_permutation(g, p) == g:
            out.append(p)
    return out


@lru_cache(maxsize=None)
def connected_classes(n: int) -> tuple[SimpleGraph, ...]:
    return tuple(enumerate_graphs(n, connected_only=True))


def assert_stable_laws(g: LabeledGraph) -> None:
    """The structural laws every stable graph must satisfy."""
    n = g.order
    diag = {g.cell(i, i) for i in range(1, n + 1)}
    off = {g.cell(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j}
    assert not diag & off, "diagonal colors leak off the diagonal"

    # one color connects one pair of cells only
    ends: dict[int, tuple[int, int]] = {}
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            c = g.cell(u, v)
            key = (g.cell(u, u), g.cell(v, v))
            assert ends.setdefault(c, key) == key, "color spans two cell pairs"

    # transpose colors are a bijective function of forward colors
    conv: dict[int, int] = {}
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            c, ct = g.cell(u, v), g.cell(v, u)
            assert conv.setdefault(c, ct) == ct, "transpose color not functional"
    assert len(set(conv.values())) == len(conv), "transpose color map not injective"

    # equal vertex colors exactly when row and column multisets both match
    sigs = {
        u: (tuple(sorted(g.rows[u - 1])), tuple(sorted(g.rows[k][u - 1] for k in range(n))))
        for u in range(1, n + 1)
    }
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            assert (g.cell(u, u) == g.cell(v, v)) == (sigs[u] == sigs[v])
