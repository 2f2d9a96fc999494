"""Labeled graphs as dense color matrices, plus permutations and partitions.

A graph of order n is an n x n matrix of non-negative integer color ids.
Color 0 is reserved for the blank label (non-edges, and the diagonal of
simple graphs); it is never handed out as a fresh color by any refinement
step. Vertices are 1-based everywhere in the public API.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

BLANK = 0  # the reserved non-edge / blank color
EDGE = 1   # the single edge color used by simple graphs


@dataclass(frozen=True)
class LabeledGraph:
    """Dense n x n matrix of colors, row-major, immutable."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0:
            raise ValueError("graph must have order >= 1")
        for r in self.rows:
            if len(r) != n:
                raise ValueError(f"matrix is not square: row of length {len(r)}, order {n}")
            for c in r:
                if not isinstance(c, int) or c < 0:
                    raise ValueError(f"colors must be non-negative integers, got {c!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "LabeledGraph":
        return cls(tuple(tuple(int(c) for c in r) for r in rows))

    @property
    def order(self) -> int:
        return len(self.rows)

    def cell(self, u: int, v: int) -> int:
        """Color of entry (u, v), 1-based."""
        return self.rows[u - 1][v - 1]

    def dim(self) -> int:
        """Number of distinct colors appearing in the matrix."""
        seen: set[int] = set()
        for r in self.rows:
            seen.update(r)
        return len(seen)

    def colors(self) -> frozenset[int]:
        seen: set[int] = set()
        for r in self.rows:
            seen.update(r)
        return frozenset(seen)


class SimpleGraph(LabeledGraph):
    """Symmetric {0, 1} matrix with a zero diagonal (edge color 1)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        n = self.order
        for i in range(n):
            if self.rows[i][i] != BLANK:
                raise ValueError(f"simple graph has a non-blank diagonal at vertex {i + 1}")
            for j in range(n):
                c = self.rows[i][j]
                if c not in (BLANK, EDGE):
                    raise ValueError(f"simple graph entry ({i + 1},{j + 1}) = {c}, expected 0 or 1")
                if c != self.rows[j][i]:
                    raise ValueError(f"simple graph is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        """Build from 1-based endpoint pairs; rejects loops and out-of-range vertices."""
        m = [[BLANK] * n for _ in range(n)]
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of range for order {n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            m[u - 1][v - 1] = EDGE
            m[v - 1][u - 1] = EDGE
        return cls(tuple(tuple(r) for r in m))

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges as (u, v) with u < v, 1-based."""
        n = self.order
        return [
            (i + 1, j + 1)
            for i in range(n)
            for j in range(i + 1, n)
            if self.rows[i][j] == EDGE
        ]

    def degree(self, u: int) -> int:
        return sum(1 for c in self.rows[u - 1] if c == EDGE)

    def neighbors(self, u: int) -> list[int]:
        return [j + 1 for j, c in enumerate(self.rows[u - 1]) if c == EDGE]


@dataclass(frozen=True)
class Permutation:
    """Bijection on [n]; images[i-1] is the image of vertex i."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [{n}]: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, u: int, v: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[u - 1], images[v - 1] = v, u
        return cls(tuple(images))

    @property
    def order(self) -> int:
        return len(self.images)

    def apply(self, u: int) -> int:
        return self.images[u - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, im in enumerate(self.images):
            inv[im - 1] = i + 1
        return Permutation(tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Composition applying self first, then other."""
        if other.order != self.order:
            raise ValueError("cannot compose permutations of different orders")
        return Permutation(tuple(other.apply(im) for im in self.images))


@dataclass(frozen=True)
class Partition:
    """Disjoint cover of [n]; cells sorted internally and ordered by smallest member."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        normalized = tuple(sorted((tuple(sorted(c)) for c in self.cells), key=lambda c: c[0]))
        object.__setattr__(self, "cells", normalized)
        flat = [v for c in normalized for v in c]
        n = len(flat)
        if sorted(flat) != list(range(1, n + 1)):
            raise ValueError(f"cells do not cover [n] exactly once: {self.cells}")
        for c in normalized:
            if not c:
                raise ValueError("empty cell")

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(c) for c in cells))

    @classmethod
    def unit(cls, n: int) -> "Partition":
        return cls((tuple(range(1, n + 1)),))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @property
    def order(self) -> int:
        return sum(len(c) for c in self.cells)

    def cell_of(self, u: int) -> tuple[int, ...]:
        for c in self.cells:
            if u in c:
                return c
        raise ValueError(f"vertex {u} not in partition")

    def refines(self, coarser: "Partition") -> bool:
        """True when every cell of self lies inside one cell of coarser."""
        lookup = {}
        for idx, c in enumerate(coarser.cells):
            for v in c:
                lookup[v] = idx
        return all(len({lookup[v] for v in c}) == 1 for c in self.cells)


def apply_permutation(g: LabeledGraph, p: Permutation) -> LabeledGraph:
    """Relabel vertices: entry (u, v) moves to (u^p, v^p)."""
    n = g.order
    if p.order != n:
        raise ValueError(f"permutation of order {p.order} applied to graph of order {n}")
    m = [[0] * n for _ in range(n)]
    im = p.images
    for i in range(n):
        ri = g.rows[i]
        mi = im[i] - 1
        for j in range(n):
            m[mi][im[j] - 1] = ri[j]
    rows = tuple(tuple(r) for r in m)
    if isinstance(g, SimpleGraph):
        return SimpleGraph(rows)
    return LabeledGraph(rows)


def disjoint_union(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Block-diagonal union of two equal-order simple graphs.

    Vertices of g keep their names [1, n]; vertices of h become [n+1, 2n].
    """
    if g.order != h.order:
        raise ValueError(f"disjoint_union needs equal orders, got {g.order} and {h.order}")
    n = g.order
    m = [[BLANK] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            m[i][j] = g.rows[i][j]
            m[n + i][n + j] = h.rows[i][j]
    return SimpleGraph(tuple(tuple(r) for r in m))


def is_connected(g: SimpleGraph) -> bool:
    n = g.order
    if n == 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, c in enumerate(g.rows[i]):
            if c == EDGE and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n
