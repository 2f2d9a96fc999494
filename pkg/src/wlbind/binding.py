"""Binding graphs: one extra degree-2 vertex glued onto every basic pair."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .graphs import BLANK, EDGE, LabeledGraph, Partition, Permutation, SimpleGraph, apply_permutation
from .wl import StableGraph

CellClass = Literal["basic", "binding", "mixed"]

BASIC: CellClass = "basic"
BINDING: CellClass = "binding"
MIXED: CellClass = "mixed"


@dataclass(frozen=True)
class BindingGraph:
    """A simple graph of order n(n+1)/2 whose last n(n-1)/2 vertices each bind
    one unordered pair of the first n (basic) vertices."""

    graph: SimpleGraph
    basic_count: int
    pair_index: dict[tuple[int, int], int] = field(repr=False)

    @property
    def order(self) -> int:
        return self.graph.order

    def basic_graph(self) -> SimpleGraph:
        n = self.basic_count
        return SimpleGraph(tuple(tuple(self.graph.rows[i][:n]) for i in range(n)))

    def pair_of(self, p: int) -> tuple[int, int]:
        """The basic pair bound by binding vertex p."""
        n = self.basic_count
        if not n < p <= self.order:
            raise ValueError(f"{p} is not a binding vertex (basic count {n})")
        rank = p - n - 1
        u = 1
        span = n - 1
        while rank >= span:
            rank -= span
            u += 1
            span -= 1
        return u, u + rank + 1


def bind(g: SimpleGraph) -> BindingGraph:
    """Attach a fresh degree-2 vertex to every unordered pair of vertices.

    Binding vertices are placed after the basic ones, in lexicographic
    pair order, which fixes one canonical naming among the many the
    construction allows.
    """
    n = g.order
    if n < 2:
        raise ValueError("binding graph undefined for basic order < 2")
    n1 = n * (n + 1) // 2
    m = [[BLANK] * n1 for _ in range(n1)]
    for i in range(n):
        for j in range(n):
            m[i][j] = g.rows[i][j]
    pair_index: dict[tuple[int, int], int] = {}
    p = n + 1
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            pair_index[(u, v)] = p
            m[u - 1][p - 1] = EDGE
            m[p - 1][u - 1] = EDGE
            m[v - 1][p - 1] = EDGE
            m[p - 1][v - 1] = EDGE
            p += 1
    return BindingGraph(
        graph=SimpleGraph(tuple(tuple(r) for r in m)),
        basic_count=n,
        pair_index=pair_index,
    )


def binding_vertex(b: BindingGraph, u: int, v: int) -> int:
    """The vertex binding the unordered pair {u, v}."""
    n = b.basic_count
    if u == v:
        raise ValueError(f"no binding vertex for the degenerate pair ({u},{u})")
    if not (1 <= u <= n and 1 <= v <= n):
        raise ValueError(f"pair ({u},{v}) out of basic range [1,{n}]")
    return b.pair_index[(min(u, v), max(u, v))]


def phi_graph(b: BindingGraph, x: StableGraph) -> LabeledGraph:
    """Blank out everything except vertex colors and binding-edge colors.

    Entry (i, j) keeps its stable color when i == j or when (i, j) is a
    binding edge; basic edges and all non-edges become the blank label.
    """
    if x.order != b.order:
        raise ValueError(f"order mismatch: stable graph {x.order}, binding graph {b.order}")
    n = b.basic_count
    rows = []
    for i in range(b.order):
        row = []
        for j in range(b.order):
            if i != j and b.graph.rows[i][j] == BLANK:
                row.append(BLANK)
            elif i < n and j < n and b.graph.rows[i][j] == EDGE:
                row.append(BLANK)
            else:
                row.append(x.graph.rows[i][j])
        rows.append(tuple(row))
    return LabeledGraph(tuple(rows))


def extend_automorphism(b: BindingGraph, s: Permutation) -> Permutation:
    """Lift a basic-graph automorphism to the whole binding graph.

    Basic vertices move by s; the binder of {u, v} moves to the binder of
    {u^s, v^s}.
    """
    n = b.basic_count
    if s.order != n:
        raise ValueError(f"permutation order {s.order} does not match basic count {n}")
    basic = b.basic_graph()
    if apply_permutation(basic, s) != basic:
        raise ValueError("permutation is not an automorphism of the basic graph")
    images = [0] * b.order
    for w in range(1, n + 1):
        images[w - 1] = s.apply(w)
    for (u, v), p in b.pair_index.items():
        images[p - 1] = binding_vertex(b, s.apply(u), s.apply(v))
    return Permutation(tuple(images))


def classify_cells(b: BindingGraph, p: Partition) -> list[CellClass]:
    """Tag each cell by whether it holds basic vertices, binding vertices, or both."""
    if p.order != b.order:
        raise ValueError(f"partition covers {p.order} vertices, binding graph has {b.order}")
    n = b.basic_count
    out: list[CellClass] = []
    for cell in p.cells:
        has_basic = any(v <= n for v in cell)
        has_binding = any(v > n for v in cell)
        if has_basic and has_binding:
            out.append(MIXED)
        elif has_basic:
            out.append(BASIC)
        else:
            out.append(BINDING)
    return out
