"""Experiment harness: corpora, claim-verification sweeps, benchmarks, reports.

Every experiment returns a plain report dict with a fixed key order
(experiment, engine_version, canonicalization, seed, corpus, cases,
counterexamples, timing). Cases are never silently dropped: each one is
classified agree / disagree / skipped, and every disagreement carries a
counterexample record that re-verifies from its own contents alone.
"""
from __future__ import annotations

import itertools
import json
import random
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import __version__
from .binding import BASIC, MIXED, BindingGraph, bind, binding_vertex, classify_cells, phi_graph
from .codecs import encode_graph6, parse_graph6
from .decider import decide_iso
from .graphs import EDGE, Partition, Permutation, SimpleGraph, apply_permutation, is_connected
from .oracle import BudgetExceeded, find_isomorphism, orbit_partition
from .wl import (
    CANONICALIZATION,
    StableGraph,
    block_partition,
    equivalent,
    individualize,
    restrict_to_cells,
    stabilize,
)

MAX_ENUM_ORDER = 7
MAX_SWEEP_ORDER = 6
MAX_BENCH_SIZE = 24


@dataclass(frozen=True)
class CorpusSpec:
    """What graphs an experiment runs on.

    source is "enumerated" (exhaustive up to isomorphism), ("random",
    count, edge_probability), or ("files", [paths...]).
    """

    max_n: int
    connected_only: bool = True
    source: object = "enumerated"


def _pair_slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def enumerate_graphs(n: int, connected_only: bool = True) -> list[SimpleGraph]:
    """One representative per isomorphism class of order-n simple graphs.

    Exhaustive and exact: the representative is the minimum edge-set
    bitmask over all n! relabelings, so the listing order is deterministic.
    n is capped at 7 (2^21 bitmasks across 5040 relabelings; that sweep
    takes a few minutes, everything below it is instantaneous).
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_ORDER}, got {n}")
    if n == 1:
        return [SimpleGraph.from_edges(1, [])]

    slots = _pair_slots(n)
    e = len(slots)
    slot_of = {p: k for k, p in enumerate(slots)}
    lo_bits = (e + 1) // 2
    lo_mask = (1 << lo_bits) - 1

    masks = np.arange(1 << e, dtype=np.uint32)
    lo = masks & np.uint32(lo_mask)
    hi = masks >> np.uint32(lo_bits)
    canon = masks.copy()
    for perm in itertools.permutations(range(n)):
        # where each edge slot lands after relabeling by perm
        dest = [0] * e
        for k, (i, j) in enumerate(slots):
            a, b = perm[i], perm[j]
            dest[k] = slot_of[(a, b) if a < b else (b, a)]
        t_lo = np.zeros(1 << lo_bits, dtype=np.uint32)
        t_hi = np.zeros(1 << (e - lo_bits), dtype=np.uint32)
        for k in range(lo_bits):
            idx = np.nonzero(np.arange(1 << lo_bits) & (1 << k))[0]
            t_lo[idx] |= np.uint32(1 << dest[k])
        for k in range(lo_bits, e):
            idx = np.nonzero(np.arange(1 << (e - lo_bits)) & (1 << (k - lo_bits)))[0]
            t_hi[idx] |= np.uint32(1 << dest[k])
        np.minimum(canon, t_lo[lo] | t_hi[hi], out=canon)

    reps = np.nonzero(canon == masks)[0]
    out = []
    for mask in reps.tolist():
        edges = [(i + 1, j + 1) for k, (i, j) in enumerate(slots) if mask >> k & 1]
        g = SimpleGraph.from_edges(n, edges)
        if not connected_only or is_connected(g):
            out.append(g)
    return out


def random_connected_graph(n: int, rng: random.Random, edge_probability: float = 0.5) -> SimpleGraph:
    """G(n, p) rejection-sampled until connected."""
    if n == 1:
        return SimpleGraph.from_edges(1, [])
    while True:
        edges = [
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if rng.random() < edge_probability
        ]
        g = SimpleGraph.from_edges(n, edges)
        if is_connected(g):
            return g


def build_corpus(spec: CorpusSpec, seed: Optional[int] = None) -> dict[int, list[SimpleGraph]]:
    """Per-order graph lists for an experiment."""
    if spec.source == "enumerated":
        return {
            n: enumerate_graphs(n, spec.connected_only)
            for n in range(2, spec.max_n + 1)
        }
    if isinstance(spec.source, tuple) and spec.source and spec.source[0] == "random":
        _, count, p = spec.source
        rng = random.Random(seed)
        corpus: dict[int, list[SimpleGraph]] = {}
        for _ in range(count):
            n = rng.randint(2, spec.max_n)
            corpus.setdefault(n, []).append(random_connected_graph(n, rng, p))
        return {n: corpus[n] for n in sorted(corpus)}
    if isinstance(spec.source, tuple) and spec.source and spec.source[0] == "files":
        corpus = {}
        for path in spec.source[1]:
            for line in Path(path).read_text().splitlines():
                line = line.strip()
                if not line:
                    continue
                g = parse_graph6(line)
                if spec.connected_only and not is_connected(g):
                    continue
                corpus.setdefault(g.order, []).append(g)
        return {n: corpus[n] for n in sorted(corpus)}
    raise ValueError(f"unknown corpus source {spec.source!r}")


def _g6(g: SimpleGraph) -> str:
    return encode_graph6(g).decode("ascii")


def _cells_json(p: Partition) -> list[list[int]]:
    return [list(c) for c in p.cells]


def _new_report(experiment: str, seed: Optional[int], per_n: dict[int, int]) -> dict:
    return {
        "experiment": experiment,
        "engine_version": __version__,
        "canonicalization": CANONICALIZATION,
        "seed": seed,
        "corpus": {"per_n": {str(n): c for n, c in sorted(per_n.items())}},
        "cases": [],
        "counterexamples": [],
        "timing": {"total_ms": 0.0, "per_case_median_ms": 0.0},
    }


def _finish_timing(report: dict, started: float, case_ms: list[float]) -> dict:
    report["timing"]["total_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
    report["timing"]["per_case_median_ms"] = (
        round(statistics.median(case_ms), 3) if case_ms else 0.0
    )
    return report


def run_agreement(max_n: int, budget: Optional[int] = None) -> dict:
    """Procedure-vs-oracle sweep over all unordered pairs (self-pairs included)
    of equal-order connected graphs up to max_n."""
    if not 2 <= max_n <= MAX_SWEEP_ORDER:
        raise ValueError(f"agreement sweep supports 2 <= max_n <= {MAX_SWEEP_ORDER}")
    started = time.perf_counter()
    corpus = build_corpus(CorpusSpec(max_n=max_n))
    report = _new_report("agreement", None, {n: len(gs) for n, gs in corpus.items()})
    case_ms: list[float] = []

    for n, graphs in corpus.items():
        for i in range(len(graphs)):
            for j in range(i, len(graphs)):
                g, h = graphs[i], graphs[j]
                verdict = decide_iso(g, h)
                case_ms.append(verdict.timing_ms)
                case = {
                    "id": f"n{n}:{i}-{j}",
                    "graphs": [_g6(g), _g6(h)],
                    "gi": "iso" if verdict.isomorphic else "noniso",
                }
                try:
                    witness = find_isomorphism(g, h, budget)
                except BudgetExceeded as exc:
                    case["oracle"] = "skipped"
                    case["agree"] = None
                    case["skip_reason"] = str(exc)
                    report["cases"].append(case)
                    continue
                case["oracle"] = "iso" if witness is not None else "noniso"
                case["agree"] = (witness is not None) == verdict.isomorphic
                report["cases"].append(case)
                if not case["agree"]:
                    report["counterexamples"].append(
                        {
                            "kind": "agreement",
                            "id": case["id"],
                            "graphs": case["graphs"],
                            "gi": case["gi"],
                            "oracle": case["oracle"],
                            "witness": list(witness.images) if witness else None,
                            "shared_basic_cells": [list(c) for c in verdict.shared_basic_cells],
                            "stable_dim": verdict.stable_dim,
                            "rounds": verdict.rounds,
                        }
                    )
    return _finish_timing(report, started, case_ms)


def run_orbit_check(max_n: int, budget: Optional[int] = None) -> dict:
    """Stable partition of each binding graph versus its true orbit partition."""
    if not 2 <= max_n <= MAX_SWEEP_ORDER:
        raise ValueError(f"orbit sweep supports 2 <= max_n <= {MAX_SWEEP_ORDER}")
    started = time.perf_counter()
    corpus = build_corpus(CorpusSpec(max_n=max_n))
    report = _new_report("orbit-check", None, {n: len(gs) for n, gs in corpus.items()})
    case_ms: list[float] = []

    for n, graphs in corpus.items():
        for i, g in enumerate(graphs):
            t0 = time.perf_counter()
            b = bind(g)
            x = stabilize(b.graph)
            case = {"id": f"n{n}:{i}", "graphs": [_g6(g)], "gi": _cells_json(x.cells)}
            try:
                orbits = orbit_partition(b, budget)
            except BudgetExceeded as exc:
                case["oracle"] = "skipped"
                case["agree"] = None
                case["skip_reason"] = str(exc)
                report["cases"].append(case)
                case_ms.append((time.perf_counter() - t0) * 1000.0)
                continue
            case["oracle"] = _cells_json(orbits)
            case["agree"] = x.cells == orbits
            # colors are automorphism-invariant, so cells must at least be
            # unions of orbits even if the headline claim fails
            case["cells_are_orbit_unions"] = orbits.refines(x.cells)
            report["cases"].append(case)
            case_ms.append((time.perf_counter() - t0) * 1000.0)
            if not case["agree"]:
                report["counterexamples"].append(
                    {
                        "kind": "orbit",
                        "id": case["id"],
                        "graphs": case["graphs"],
                        "wl_cells": case["gi"],
                        "oracle_orbits": case["oracle"],
                    }
                )
    return _finish_timing(report, started, case_ms)


def _subset_family(num_cells: int) -> list[tuple[int, ...]]:
    """Cell-index subsets to probe with the restriction check.

    Exhaustive when small; beyond 8 cells a structured family (drop-one,
    keep-one, first-half) keeps the sweep polynomial.
    """
    idx = range(num_cells)
    if num_cells <= 8:
        out = []
        for r in range(1, num_cells + 1):
            out.extend(itertools.combinations(idx, r))
        return out
    out = [tuple(idx)]
    out.extend(tuple(i for i in idx if i != d) for d in idx)
    out.extend((i,) for i in idx)
    out.append(tuple(i for i in idx if i < num_cells // 2))
    return out


def _check_individualization(x: StableGraph) -> bool:
    for u in range(1, x.order + 1):
        if stabilize(individualize(x, u)).cells != block_partition(x, u):
            return False
    return True


def _check_restriction(x: StableGraph) -> bool:
    for keep in _subset_family(len(x.cells.cells)):
        try:
            restrict_to_cells(x, keep)
        except ValueError:
            return False
    return True


def _check_phi(b: BindingGraph, x: StableGraph) -> bool:
    return equivalent(stabilize(phi_graph(b, x)).graph, x.graph)


def _binding_edge_colors(b: BindingGraph, x: StableGraph, u: int, v: int) -> set[int]:
    p = binding_vertex(b, u, v)
    m = x.graph.rows
    return {m[p - 1][u - 1], m[u - 1][p - 1], m[p - 1][v - 1], m[v - 1][p - 1]}


def _check_edge_color_separation(b: BindingGraph, x: StableGraph) -> bool:
    """Binding-edge colors over edge pairs and non-edge pairs never mix, and
    (for basic order > 2) basic-edge colors avoid binding-edge colors."""
    n = b.basic_count
    edge_side: set[int] = set()
    nonedge_side: set[int] = set()
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            colors = _binding_edge_colors(b, x, u, v)
            if b.graph.rows[u - 1][v - 1] == EDGE:
                edge_side |= colors
            else:
                nonedge_side |= colors
    if edge_side & nonedge_side:
        return False
    if n > 2:
        basic_edge_colors = {
            x.graph.rows[u - 1][v - 1]
            for u in range(1, n + 1)
            for v in range(1, n + 1)
            if u != v and b.graph.rows[u - 1][v - 1] == EDGE
        }
        if basic_edge_colors & (edge_side | nonedge_side):
            return False
    return True


def _check_pair_label_equivalences(b: BindingGraph, x: StableGraph) -> bool:
    """The label pair on (u,v), the labels on its binding edges, and the label
    of its binding vertex all determine each other."""
    n = b.basic_count
    m = x.graph.rows
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    feats = []
    for u, v in pairs:
        p = binding_vertex(b, u, v)
        conn = tuple(sorted((m[u - 1][v - 1], m[v - 1][u - 1])))
        bedges = tuple(sorted((m[u - 1][p - 1], m[v - 1][p - 1])))
        feats.append((conn, bedges, m[p - 1][p - 1]))
    for (c1, e1, p1), (c2, e2, p2) in itertools.combinations(feats, 2):
        if not ((c1 == c2) == (e1 == e2) == (p1 == p2)):
            return False
    return True


def _check_basic_cells_are_orbits(b: BindingGraph, x: StableGraph, budget: Optional[int]) -> bool:
    orbits = {frozenset(c) for c in orbit_partition(b.graph, budget).cells}
    classes = classify_cells(b, x.cells)
    return all(
        frozenset(cell) in orbits
        for cell, cls in zip(x.cells.cells, classes)
        if cls == BASIC
    )


def _check_no_mixed_cells(b: BindingGraph, x: StableGraph) -> bool:
    return MIXED not in classify_cells(b, x.cells)


def claim_checks(g: SimpleGraph, budget: Optional[int] = None) -> dict[str, Callable[[], bool]]:
    """The per-graph structural claims, keyed by name. Each entry is a thunk
    so a single claim can be replayed in isolation."""
    n = g.order
    plain = stabilize(g)
    b = bind(g)
    x = stabilize(b.graph)
    checks: dict[str, Callable[[], bool]] = {
        "individualization-block-partition": lambda: _check_individualization(plain),
        "individualization-block-partition-binding": lambda: _check_individualization(x),
        "restriction-stability": lambda: _check_restriction(plain),
        "restriction-stability-binding": lambda: _check_restriction(x),
        "binding-edge-color-separation": lambda: _check_edge_color_separation(b, x),
        "basic-cells-are-orbits": lambda: _check_basic_cells_are_orbits(b, x, budget),
    }
    if n > 2:
        checks["phi-graph-equivalence"] = lambda: _check_phi(b, x)
        checks["pair-label-equivalences"] = lambda: _check_pair_label_equivalences(b, x)
    if n > 3:
        checks["no-mixed-cells"] = lambda: _check_no_mixed_cells(b, x)
    return checks


def run_lemma_suite(max_n: int, budget: Optional[int] = None) -> dict:
    """Per-graph structural invariants, emitted as a (claim, graph) matrix."""
    if not 2 <= max_n <= MAX_SWEEP_ORDER:
        raise ValueError(f"lemma sweep supports 2 <= max_n <= {MAX_SWEEP_ORDER}")
    started = time.perf_counter()
    corpus = build_corpus(CorpusSpec(max_n=max_n))
    report = _new_report("lemmas", None, {n: len(gs) for n, gs in corpus.items()})
    case_ms: list[float] = []

    for n, graphs in corpus.items():
        for i, g in enumerate(graphs):
            gid = f"n{n}:{i}"
            g6 = _g6(g)
            for claim, fn in claim_checks(g, budget).items():
                t0 = time.perf_counter()
                try:
                    ok = fn()
                    skip = None
                except BudgetExceeded as exc:
                    ok = None
                    skip = str(exc)
                case = {
                    "id": f"{claim}:{gid}",
                    "graphs": [g6],
                    "claim": claim,
                    "agree": ok,
                }
                if skip is not None:
                    case["skip_reason"] = skip
                report["cases"].append(case)
                case_ms.append((time.perf_counter() - t0) * 1000.0)
                if ok is False:
                    report["counterexamples"].append(
                        {"kind": "lemma", "id": case["id"], "graphs": [g6], "claim": claim}
                    )
    return _finish_timing(report, started, case_ms)


def bench_scaling(
    sizes: list[int],
    samples: int,
    seed: int = 0,
    edge_probability: float = 0.5,
) -> dict:
    """Time the decision procedure on random connected pairs of each size and
    fit a log-log slope through the median times."""
    if not sizes or sorted(sizes) != list(sizes):
        raise ValueError("sizes must be a non-empty ascending list")
    if any(not 2 <= s <= MAX_BENCH_SIZE for s in sizes):
        raise ValueError(f"sizes must lie in [2, {MAX_BENCH_SIZE}]")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    started = time.perf_counter()
    rng = random.Random(seed)
    report = _new_report("bench", seed, {s: samples for s in sizes})
    case_ms: list[float] = []
    medians: list[float] = []

    for size in sizes:
        times: list[float] = []
        for s in range(samples):
            g = random_connected_graph(size, rng, edge_probability)
            h = random_connected_graph(size, rng, edge_probability)
            verdict = decide_iso(g, h)
            times.append(verdict.timing_ms)
            case_ms.append(verdict.timing_ms)
            report["cases"].append(
                {
                    "id": f"n{size}:{s}",
                    "graphs": [_g6(g), _g6(h)],
                    "gi": "iso" if verdict.isomorphic else "noniso",
                    "oracle": "skipped",
                    "agree": None,
                    "n": size,
                    "binding_order": size * (2 * size + 1),
                    "ms": round(verdict.timing_ms, 3),
                }
            )
        medians.append(statistics.median(times))

    if len(sizes) >= 2:
        slope = float(
            np.polyfit(np.log([float(s) for s in sizes]), np.log(medians), 1)[0]
        )
    else:
        slope = float("nan")
    report["timing"]["loglog_slope"] = round(slope, 4)
    return _finish_timing(report, started, case_ms)


_TOP_KEYS = (
    "experiment",
    "engine_version",
    "canonicalization",
    "seed",
    "corpus",
    "cases",
    "counterexamples",
    "timing",
)


def report_to_json(report: dict) -> str:
    """Serialize with one line per case so reports diff cleanly."""
    lines = ["{"]
    for key in _TOP_KEYS:
        val = report.get(key)
        if key in ("cases", "counterexamples"):
            items = [json.dumps(c, sort_keys=True, separators=(", ", ": ")) for c in val]
            if items:
                body = ",\n    ".join(items)
                lines.append(f'  "{key}": [\n    {body}\n  ],')
            else:
                lines.append(f'  "{key}": [],')
        else:
            rendered = json.dumps(val, sort_keys=True, separators=(", ", ": "))
            lines.append(f'  "{key}": {rendered},')
    lines[-1] = lines[-1].rstrip(",")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_report(report: dict, path: str | Path) -> Path:
    path = Path(path)
    try:
        path.write_text(report_to_json(report), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed to write report to {path}: {exc}") from exc
    return path


def load_report(path: str | Path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise OSError(f"failed to read report from {path}: {exc}") from exc


def verify_counterexample(record: dict, budget: Optional[int] = None) -> bool:
    """Replay a counterexample from nothing but its own contents."""
    kind = record.get("kind")
    graphs = [parse_graph6(s) for s in record["graphs"]]
    if kind == "agreement":
        g, h = graphs
        verdict = decide_iso(g, h)
        gi = "iso" if verdict.isomorphic else "noniso"
        if gi != record["gi"]:
            return False
        if record["witness"] is not None:
            p = Permutation(tuple(record["witness"]))
            if apply_permutation(h, p) != g:
                return False
            oracle = "iso"
        else:
            oracle = "iso" if find_isomorphism(g, h, budget) is not None else "noniso"
        return oracle == record["oracle"] and gi != oracle
    if kind == "orbit":
        (g,) = graphs
        b = bind(g)
        x = stabilize(b.graph)
        cells = _cells_json(x.cells)
        orbits = _cells_json(orbit_partition(b, budget))
        return (
            cells == record["wl_cells"]
            and orbits == record["oracle_orbits"]
            and cells != orbits
        )
    if kind == "lemma":
        (g,) = graphs
        return claim_checks(g, budget)[record["claim"]]() is False
    raise ValueError(f"unknown counterexample kind {kind!r}")
