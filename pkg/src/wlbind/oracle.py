"""Brute-force isomorphism, automorphism groups, and orbits for small graphs.

This module is the independent referee for everything the refinement
engine claims, so it deliberately shares no machinery with it: plain
backtracking over color/degree-compatible assignments, an explicit node
budget instead of silent slowness, and witnesses that re-verify by direct
matrix comparison.
"""
from __future__ import annotations

import os
from typing import Optional, Union

from .binding import BindingGraph, extend_automorphism
from .graphs import LabeledGraph, Partition, Permutation, apply_permutation

DEFAULT_NODE_BUDGET = 10_000_000
_BUDGET_ENV = "WLBIND_ORACLE_BUDGET"


class BudgetExceeded(RuntimeError):
    """The backtracking search ran out of its node budget."""

    def __init__(self, nodes: int) -> None:
        super().__init__(
            f"oracle search exceeded its node budget of {nodes}; "
            f"raise {_BUDGET_ENV} to allow a longer search"
        )
        self.nodes = nodes


def node_budget() -> int:
    raw = os.environ.get(_BUDGET_ENV)
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def _profile(g: LabeledGraph, i: int) -> tuple:
    row = g.rows[i]
    col = tuple(g.rows[k][i] for k in range(g.order))
    return (row[i], tuple(sorted(row)), tuple(sorted(col)))


class _Search:
    """Backtracking search for permutations p with h[i][j] == g[p(i)][p(j)]."""

    def __init__(self, g: LabeledGraph, h: LabeledGraph, budget: int) -> None:
        self.g = g
        self.h = h
        self.n = g.order
        self.budget = budget
        self.nodes = 0
        gp = [_profile(g, v) for v in range(self.n)]
        hp = [_profile(h, i) for i in range(self.n)]
        self.candidates = [
            [v for v in range(self.n) if gp[v] == hp[i]] for i in range(self.n)
        ]
        # most-constrained-first keeps the tree shallow; correctness is
        # independent of this ordering
        self.order = sorted(range(self.n), key=lambda i: (len(self.candidates[i]), i))

    def run(self, find_all: bool) -> list[Permutation]:
        if any(not c for c in self.candidates):
            return []
        self.found: list[Permutation] = []
        self.mapping = [-1] * self.n
        self.used = [False] * self.n
        self._extend(0, find_all)
        return self.found

    def _extend(self, depth: int, find_all: bool) -> bool:
        if depth == self.n:
            self.found.append(Permutation(tuple(v + 1 for v in self.mapping)))
            return not find_all
        i = self.order[depth]
        hi = self.h.rows[i]
        for v in self.candidates[i]:
            if self.used[v]:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(self.budget)
            gv = self.g.rows[v]
            ok = True
            for j in self.order[:depth]:
                w = self.mapping[j]
                if gv[w] != hi[j] or self.g.rows[w][v] != self.h.rows[j][i]:
                    ok = False
                    break
            if not ok:
                continue
            self.mapping[i] = v
            self.used[v] = True
            if self._extend(depth + 1, find_all):
                return True
            self.mapping[i] = -1
            self.used[v] = False
        return False


def find_isomorphism(
    g: LabeledGraph, h: LabeledGraph, budget: Optional[int] = None
) -> Optional[Permutation]:
    """A permutation p with apply_permutation(h, p) == g, or None.

    Order mismatch returns None immediately. A search that would exceed
    the node budget raises BudgetExceeded rather than guessing.
    """
    if g.order != h.order:
        return None
    found = _Search(g, h, budget if budget is not None else node_budget()).run(find_all=False)
    if not found:
        return None
    p = found[0]
    assert apply_permutation(h, p) == g
    return p


def automorphism_group(
    g: LabeledGraph, budget: Optional[int] = None
) -> list[Permutation]:
    """Every automorphism of g, ordered lexicographically by image tuples."""
    found = _Search(g, g, budget if budget is not None else node_budget()).run(find_all=True)
    return sorted(found, key=lambda p: p.images)


def orbit_partition(
    g: Union[LabeledGraph, BindingGraph], budget: Optional[int] = None
) -> Partition:
    """Orbits of the automorphism group.

    For a BindingGraph with more than 3 basic vertices the group is obtained
    by lifting the basic graph's automorphisms (each lift is one, and the
    lifting is onto in that regime); smaller binding graphs are enumerated
    directly because the lift can miss automorphisms there.
    """
    if isinstance(g, BindingGraph):
        if g.basic_count <= 3:
            group = automorphism_group(g.graph, budget)
        else:
            basic_group = automorphism_group(g.basic_graph(), budget)
            group = [extend_automorphism(g, s) for s in basic_group]
        n = g.order
    else:
        group = automorphism_group(g, budget)
        n = g.order

    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in group:
        for u in range(1, n + 1):
            a, b = find(u), find(p.apply(u))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for u in range(1, n + 1):
        groups.setdefault(find(u), []).append(u)
    return Partition.from_cells(groups.values())
