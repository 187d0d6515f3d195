"""Constructive search for Berge Hamilton cycles.

The main loop keeps a longest-known Berge path and alternates three moves:
greedy extension at either end, closing the path into a cycle and reopening
it through an edge that leaves the cycle (which gains a vertex), and
rotation closures at both ends to expose new endpoint pairs. The engine is
one-sided: "yes" always ships a verified certificate, while "no" only comes
from disconnection or the exact oracle.

The same machinery drives the absorption loop, which grows a sparse
extracted subgraph by adding pairs (or single edges) from the host whenever
they verifiably lengthen the engine's best path or close a spanning cycle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .berge import (
    BergeCycle,
    BergePath,
    close_with,
    endpoint_closure,
    reopen_cycle,
    verify_cycle,
)
from .hypergraph import Hypergraph
from .oracle import DEFAULT_GUARD, OracleGuard, exact_hamiltonian
from .rng import SplitMix64, derive_seed

DEFAULT_BUDGET = 200_000

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass
class DecisionOutcome:
    verdict: str
    certificate: Optional[BergeCycle] = None
    provenance: str = "rotation"
    effort: dict = field(default_factory=dict)
    best_length: int = 0

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "provenance": self.provenance,
            "effort": self.effort,
            "best_length": self.best_length,
        }


class _Budget:
    __slots__ = ("limit", "rotations", "extensions", "closures", "restarts")

    def __init__(self, limit: int):
        self.limit = limit
        self.rotations = 0
        self.extensions = 0
        self.closures = 0
        self.restarts = 0

    @property
    def used(self) -> int:
        return self.rotations + self.extensions

    @property
    def exhausted(self) -> bool:
        return self.used >= self.limit

    @property
    def remaining(self) -> int:
        return max(0, self.limit - self.used)

    def effort(self) -> dict:
        return {
            "rotations": self.rotations,
            "extensions": self.extensions,
            "closures": self.closures,
            "restarts": self.restarts,
        }


def initial_path(H: Hypergraph, start: Optional[int] = None) -> BergePath:
    """Single-vertex path at the max-degree vertex (ties to the smallest)."""
    if start is None:
        degs = H.degrees()
        start = max(range(H.n), key=lambda v: (degs[v], -v))
    return BergePath((start,), ())


def greedy_path(
    H: Hypergraph, start: Optional[int] = None, budget: int = DEFAULT_BUDGET
) -> BergePath:
    """Greedily extended path from ``start`` (default: max-degree vertex),
    stuck at both ends."""
    return _grow(H, initial_path(H, start), _Budget(budget))


def _grow(H: Hypergraph, path: BergePath, budget: _Budget) -> BergePath:
    """Greedy extension at both ends until stuck; returns the final path
    oriented with its original first vertex first."""
    flipped = False
    used = set(path.edge_ids)
    on_path = set(path.vertices)
    while not budget.exhausted:
        extended = False
        for _ in range(2):
            last = path.last
            found = None
            for e in H.incidence[last]:
                if e in used:
                    continue
                for v in H.edges[e]:
                    if v not in on_path:
                        found = (e, v)
                        break
                if found:
                    break
            if found:
                budget.extensions += 1
                e, v = found
                path = BergePath(path.vertices + (v,), path.edge_ids + (e,))
                used.add(e)
                on_path.add(v)
                extended = True
                break
            path = path.reverse()
            flipped = not flipped
        if not extended:
            break
    return path.reverse() if flipped else path


def _close_and_reopen(
    H: Hypergraph, path: BergePath, e: int, budget: _Budget
) -> Tuple[Optional[BergeCycle], Optional[BergePath]]:
    """Close ``path`` with edge e; return (cycle, None) when spanning,
    (None, longer path) after reopening otherwise."""
    cycle = close_with(path, e)
    if len(cycle) == H.n:
        return cycle, None
    reopened = reopen_cycle(H, cycle)
    if reopened is not None:
        budget.extensions += 1
    return None, reopened


def _try_endpoint(
    H: Hypergraph, cand: BergePath, budget: _Budget
) -> Tuple[Optional[BergeCycle], Optional[BergePath]]:
    """From a rotated path, try a one-step win: extend at the endpoint, or
    close with an unused edge through both ends (then reopen)."""
    used = set(cand.edge_ids)
    on_path = set(cand.vertices)
    last = cand.last
    for e in H.incidence[last]:
        if e in used:
            continue
        for v in H.edges[e]:
            if v not in on_path:
                budget.extensions += 1
                return None, BergePath(cand.vertices + (v,), cand.edge_ids + (e,))
    if len(cand) >= 2:
        for e in H.edges_with_pair(cand.first, cand.last):
            if e not in used:
                return _close_and_reopen(H, cand, e, budget)
    return None, None


def _closure(H: Hypergraph, path: BergePath, budget: _Budget):
    budget.closures += 1
    closure = endpoint_closure(H, path, budget=budget.remaining)
    budget.rotations += closure.rotations_applied
    return closure


def _improve(
    H: Hypergraph, path: BergePath, budget: _Budget
) -> Tuple[Optional[BergeCycle], Optional[BergePath]]:
    """Rotation phase for a greedy-stuck path: single closure at the tip,
    then closures at the other end of every rotated witness."""
    closure_a = _closure(H, path, budget)
    for cand in closure_a.paths.values():
        cycle, better = _try_endpoint(H, cand, budget)
        if cycle or better:
            return cycle, better
    for cand in closure_a.paths.values():
        if budget.exhausted:
            break
        closure_b = _closure(H, cand.reverse(), budget)
        for cand2 in closure_b.paths.values():
            cycle, better = _try_endpoint(H, cand2, budget)
            if cycle or better:
                return cycle, better
    return None, None


def decide_hamiltonian(
    H: Hypergraph,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    fallback: bool = False,
    guard: OracleGuard = DEFAULT_GUARD,
    restarts: int = 8,
) -> DecisionOutcome:
    """Search for a Berge Hamilton cycle by rotation-extension.

    Deterministic given the seed (which only orders restart vertices).
    With ``fallback`` enabled and the host within the oracle guard, an
    exhausted search escalates to the exact oracle instead of returning
    unknown.
    """
    if H.n < 3:
        raise ValueError(f"need at least 3 vertices, got n={H.n}")
    tracker = _Budget(budget)
    if not H.is_connected:
        return DecisionOutcome(NO, provenance="rotation", effort=tracker.effort())

    degs = H.degrees()
    order = sorted(range(H.n), key=lambda v: (-degs[v], v))
    anchor, rest = order[0], order[1:]
    SplitMix64(derive_seed(seed, 0x5EED)).shuffle(rest)
    starts = [anchor] + rest

    best_len = 0
    for start in starts[: max(1, restarts)]:
        if tracker.exhausted and best_len > 0:
            break
        tracker.restarts += 1
        path = initial_path(H, start)
        while True:
            path = _grow(H, path, tracker)
            best_len = max(best_len, len(path))
            if len(path) == H.n:
                closed = _finish_spanning(H, path, tracker)
                if closed is not None:
                    assert verify_cycle(H, closed)
                    return DecisionOutcome(
                        YES,
                        certificate=closed,
                        provenance="rotation",
                        effort=tracker.effort(),
                        best_length=H.n,
                    )
                break  # spanning but unclosable from here; restart
            if tracker.exhausted:
                break
            cycle, better = _improve(H, path, tracker)
            if cycle is not None:
                assert verify_cycle(H, cycle)
                return DecisionOutcome(
                    YES,
                    certificate=cycle,
                    provenance="rotation",
                    effort=tracker.effort(),
                    best_length=H.n,
                )
            if better is None:
                break
            path = better
            best_len = max(best_len, len(path))

    if fallback and H.n <= guard.max_n and H.num_edges <= guard.max_edges:
        cert = exact_hamiltonian(H, guard)
        verdict = YES if cert is not None else NO
        return DecisionOutcome(
            verdict,
            certificate=cert,
            provenance="oracle",
            effort=tracker.effort(),
            best_length=H.n if cert else best_len,
        )
    return DecisionOutcome(
        UNKNOWN, provenance="rotation", effort=tracker.effort(), best_length=best_len
    )


def _finish_spanning(
    H: Hypergraph, path: BergePath, budget: _Budget
) -> Optional[BergeCycle]:
    """Close a spanning path into a Hamilton cycle, rotating both ends to
    hunt for a closable endpoint pair."""
    used = set(path.edge_ids)
    for e in H.edges_with_pair(path.first, path.last):
        if e not in used:
            return close_with(path, e)
    if budget.exhausted:
        return None
    closure_a = _closure(H, path, budget)
    for cand in closure_a.paths.values():
        used = set(cand.edge_ids)
        for e in H.edges_with_pair(cand.first, cand.last):
            if e not in used:
                return close_with(cand, e)
    for cand in closure_a.paths.values():
        if budget.exhausted:
            return None
        closure_b = _closure(H, cand.reverse(), budget)
        for cand2 in closure_b.paths.values():
            used = set(cand2.edge_ids)
            for e in H.edges_with_pair(cand2.first, cand2.last):
                if e not in used:
                    return close_with(cand2, e)
    return None


# -- expander extraction and absorption ---------------------------------------


def default_d0(n: int, eps: float) -> int:
    """Degree cap for extraction; the asymptotic eps^8 * log n is far below
    1 at desk scale, so a floor of 2 keeps the extracted subgraph useful."""
    return max(2, math.ceil(eps**8 * math.log(n)))


def extract_expander(G: Hypergraph, d0: int, seed: int = 0) -> Hypergraph:
    """Sparse spanning subgraph: every vertex keeps all incident edges if
    it has at most d0 of them, otherwise a uniform d0-subset; the union is
    returned (at most n*d0 edges)."""
    if d0 < 1:
        raise ValueError(f"d0 must be at least 1, got {d0}")
    rng = SplitMix64(derive_seed(seed, 0xD0))
    chosen = set()
    for v in range(G.n):
        inc = G.incidence[v]
        if len(inc) <= d0:
            chosen.update(inc)
        else:
            chosen.update(rng.choose(list(inc), d0))
    return G.subgraph(sorted(chosen))


@dataclass
class ConnectOutcome:
    graph: Hypergraph
    connected: bool
    added: tuple = ()
    obstruction: Optional[tuple] = None


def connect_components(G: Hypergraph, gamma: Hypergraph) -> ConnectOutcome:
    """Add crossing edges of G one at a time until gamma is connected;
    reports the obstructing component split if G itself has none (then G
    is disconnected across that split)."""
    added = []
    current = gamma
    while not current.is_connected:
        comp = set(current.components[0])
        crossing = None
        for e in G.edges:
            inside = sum(1 for v in e if v in comp)
            if 0 < inside < len(e) and not current.has_edge(e):
                crossing = e
                break
        if crossing is None:
            rest = tuple(v for v in range(G.n) if v not in comp)
            return ConnectOutcome(
                current,
                connected=False,
                added=tuple(added),
                obstruction=(tuple(sorted(comp)), rest),
            )
        added.append(crossing)
        current = Hypergraph(G.n, G.r, list(current.edges) + [crossing])
    return ConnectOutcome(current, connected=True, added=tuple(added))


def _booster_candidates(G: Hypergraph, gamma: Hypergraph, v: int) -> list:
    """G-edges incident to v and absent from gamma, lexicographically."""
    return sorted(
        G.edges[e] for e in G.incidence[v] if not gamma.has_edge(G.edges[e])
    )


def _pair_boost(
    gamma_plus: Hypergraph, path_vertices: tuple, path_edges: tuple, n: int
) -> Tuple[Optional[BergeCycle], Optional[BergePath]]:
    """Given gamma plus the two candidate edges appended at the end,
    rebuild the covering cycle and reopen it (or report it spanning).
    The candidates occupy the last two edge ids."""
    e_s = gamma_plus.num_edges - 2  # contains first and vertices[j+1]
    e_t = gamma_plus.num_edges - 1  # contains last and vertices[j]
    es_edge = gamma_plus.edges[e_s]
    et_edge = gamma_plus.edges[e_t]
    ell = len(path_vertices)
    for j in range(ell - 1):
        if path_vertices[j + 1] in es_edge and path_vertices[j] in et_edge:
            vs = path_vertices[: j + 1] + path_vertices[: j : -1]
            es = path_edges[:j] + (e_t,) + path_edges[: j : -1] + (e_s,)
            cycle = BergeCycle(vs, es)
            if verify_cycle(gamma_plus, cycle):
                if len(cycle) == n:
                    return cycle, None
                reopened = reopen_cycle(gamma_plus, cycle)
                if reopened is not None:
                    return None, reopened
    return None, None


def _remap_to_host(G: Hypergraph, gamma: Hypergraph, cycle: BergeCycle) -> BergeCycle:
    """Certificates built inside gamma cite gamma-local edge ids; every
    gamma edge is a host edge, so re-key them for host-level verification."""
    return BergeCycle(
        cycle.vertices,
        tuple(G.edge_id_of(gamma.edges[e]) for e in cycle.edge_ids),
    )


def absorption_run(
    G: Hypergraph,
    d0: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    eps: float = 0.1,
    guard: OracleGuard = DEFAULT_GUARD,
) -> Tuple[DecisionOutcome, list]:
    """Extract a sparse subgraph, connect it, then repeatedly absorb edge
    pairs (or single edges) from the host that verifiably lengthen the
    working path or close a Hamilton cycle; at most n absorption steps.

    Returns the decision outcome plus a trace of extraction sizes and every
    absorbed addition.
    """
    if d0 is None:
        d0 = default_d0(G.n, eps)
    tracker = _Budget(budget)
    trace: list = []
    if G.n < 3 or not G.is_connected:
        verdict = NO if not G.is_connected else UNKNOWN
        return (
            DecisionOutcome(verdict, provenance="rotation", effort=tracker.effort()),
            trace,
        )
    if budget <= 0:
        return (
            DecisionOutcome(UNKNOWN, provenance="rotation", effort=tracker.effort()),
            trace,
        )

    gamma0 = extract_expander(G, d0, seed)
    connect = connect_components(G, gamma0)
    gamma = connect.graph
    trace.append(
        {
            "event": "extract",
            "d0": d0,
            "gamma0_edges": gamma0.num_edges,
            "connect_added": [list(e) for e in connect.added],
            "gamma_edges": gamma.num_edges,
        }
    )

    path = initial_path(gamma)
    for step in range(G.n + 1):
        # grow inside gamma as far as rotations allow
        while True:
            path = _grow(gamma, path, tracker)
            if len(path) == gamma.n:
                closed = _finish_spanning(gamma, path, tracker)
                if closed is not None:
                    cert = _remap_to_host(G, gamma, closed)
                    assert verify_cycle(G, cert)
                    trace.append({"event": "hamiltonian", "step": step})
                    return (
                        DecisionOutcome(
                            YES,
                            certificate=cert,
                            provenance="rotation",
                            effort=tracker.effort(),
                            best_length=G.n,
                        ),
                        trace,
                    )
                break  # spanning but unclosable inside gamma; absorb
            if tracker.exhausted:
                return (
                    DecisionOutcome(
                        UNKNOWN,
                        provenance="rotation",
                        effort=tracker.effort(),
                        best_length=len(path),
                    ),
                    trace,
                )
            cycle, better = _improve(gamma, path, tracker)
            if cycle is not None:
                cert = _remap_to_host(G, gamma, cycle)
                assert verify_cycle(G, cert)
                trace.append({"event": "hamiltonian", "step": step})
                return (
                    DecisionOutcome(
                        YES,
                        certificate=cert,
                        provenance="rotation",
                        effort=tracker.effort(),
                        best_length=G.n,
                    ),
                    trace,
                )
            if better is None:
                break
            path = better
        if step == G.n:
            break

        boosted = _absorb_step(G, gamma, path, tracker, trace, step)
        if boosted is None:
            break
        gamma, path = boosted

    return (
        DecisionOutcome(
            UNKNOWN,
            provenance="rotation",
            effort=tracker.effort(),
            best_length=len(path),
        ),
        trace,
    )


def _absorb_step(G, gamma, path, tracker, trace, step):
    """Find host edges outside gamma that improve the stuck path, scanning
    endpoint pairs from rotation closures at both ends. Returns the new
    (gamma, path) or None when nothing improves."""
    target = len(path)
    closure_a = _closure(gamma, path, tracker)
    pairs = list(closure_a.paths.values())
    seen_pairs = set()
    candidates = []
    for cand in pairs:
        candidates.append(cand)
        seen_pairs.add((cand.first, cand.last))
    for cand in pairs:
        if tracker.exhausted:
            break
        closure_b = _closure(gamma, cand.reverse(), tracker)
        for cand2 in closure_b.paths.values():
            key = (cand2.first, cand2.last)
            if key not in seen_pairs:
                seen_pairs.add(key)
                candidates.append(cand2)

    for witness in candidates:
        s, t = witness.first, witness.last
        cands_t = _booster_candidates(G, gamma, t)
        # single-edge absorption: extend at the tip or close through both ends
        for edge in cands_t:
            extends = any(v not in witness.vertices for v in edge)
            closes = s in edge
            if not (extends or closes):
                continue
            gamma2 = Hypergraph(G.n, G.r, list(gamma.edges) + [edge])
            cycle, better = _try_endpoint(gamma2, witness, tracker)
            if cycle is not None:
                trace.append(_absorb_entry(step, [edge], len(cycle), gamma2))
                return gamma2, _cycle_as_path(cycle)
            if better is not None and len(better) > target:
                trace.append(_absorb_entry(step, [edge], len(better), gamma2))
                return gamma2, better
        # paired absorption: one edge at each endpoint, covering a
        # consecutive path pair so the path closes into a cycle
        cands_s = _booster_candidates(G, gamma, s)
        vs = witness.vertices
        for e_s in cands_s:
            if tracker.exhausted:
                return None
            hits_s = set(e_s)
            if not any(vs[j + 1] in hits_s for j in range(len(vs) - 1)):
                continue
            for e_t in cands_t:
                if e_t == e_s:
                    continue
                gamma2 = Hypergraph(
                    G.n, G.r, list(gamma.edges) + [e_s, e_t]
                )
                cycle, better = _pair_boost(
                    gamma2, witness.vertices, witness.edge_ids, G.n
                )
                tracker.extensions += 1
                if cycle is not None:
                    trace.append(_absorb_entry(step, [e_s, e_t], len(cycle), gamma2))
                    return gamma2, _cycle_as_path(cycle)
                if better is not None and len(better) > target:
                    trace.append(_absorb_entry(step, [e_s, e_t], len(better), gamma2))
                    return gamma2, better
    return None


def _absorb_entry(step, edges, new_length, gamma2):
    return {
        "event": "absorb",
        "step": step,
        "added": [list(e) for e in edges],
        "arity": len(edges),
        "new_length": new_length,
        "gamma_edges": gamma2.num_edges,
    }


def _cycle_as_path(cycle: BergeCycle) -> BergePath:
    """Spanning cycle found mid-absorption: keep it as a path so the main
    loop re-closes it inside the updated graph."""
    return BergePath(cycle.vertices, cycle.edge_ids[:-1])
