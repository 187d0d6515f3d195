"""Berge paths and cycles, path rotation, and the rotation closure.

A Berge path alternates distinct vertices and distinct edges, each edge
containing its two flanking vertices. Rotation keeps the first vertex and
the whole vertex set fixed, reverses a suffix around a pivot edge, and
yields a path of the same length with a new endpoint; iterating from a
stuck path harvests many candidate endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .hypergraph import Hypergraph


@dataclass(frozen=True)
class BergePath:
    """Vertex sequence v_0..v_{l-1} with edge_ids[i] covering {v_i, v_i+1}."""

    vertices: tuple
    edge_ids: tuple

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)

    def reverse(self) -> "BergePath":
        return BergePath(self.vertices[::-1], self.edge_ids[::-1])

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edge_ids": list(self.edge_ids),
            "cycle": False,
        }


@dataclass(frozen=True)
class BergeCycle:
    """Cyclic variant: edge_ids[i] covers {v_i, v_(i+1 mod k)}."""

    vertices: tuple
    edge_ids: tuple

    def __len__(self) -> int:
        return len(self.vertices)

    def is_hamiltonian(self, n: int) -> bool:
        return len(self.vertices) == n

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edge_ids": list(self.edge_ids),
            "cycle": True,
        }


def verify_path(H: Hypergraph, path: BergePath, weak: bool = False) -> bool:
    """True iff the path invariants hold in H; weak mode skips only the
    distinct-edge requirement."""
    vs, es = path.vertices, path.edge_ids
    if len(vs) < 1 or len(es) != len(vs) - 1:
        return False
    if len(set(vs)) != len(vs):
        return False
    if not weak and len(set(es)) != len(es):
        return False
    for e in es:
        if not 0 <= e < H.num_edges:
            return False
    for i, e in enumerate(es):
        edge = H.edges[e]
        if vs[i] not in edge or vs[i + 1] not in edge:
            return False
    return True


def verify_cycle(H: Hypergraph, cycle: BergeCycle, weak: bool = False) -> bool:
    vs, es = cycle.vertices, cycle.edge_ids
    k = len(vs)
    if k < 2 or len(es) != k:
        return False
    if len(set(vs)) != k:
        return False
    if not weak and len(set(es)) != k:
        return False
    for e in es:
        if not 0 <= e < H.num_edges:
            return False
    for i, e in enumerate(es):
        edge = H.edges[e]
        if vs[i] not in edge or vs[(i + 1) % k] not in edge:
            return False
    return True


def certificate_from_json(payload: dict) -> Union[BergePath, BergeCycle]:
    cls = BergeCycle if payload.get("cycle") else BergePath
    return cls(tuple(payload["vertices"]), tuple(payload["edge_ids"]))


def _rotated(path: BergePath, e: int, pivot: int) -> BergePath:
    """Apply the suffix-reversal at 0-based pivot position; caller has
    already validated eligibility."""
    vs, es = path.vertices, path.edge_ids
    new_vs = vs[: pivot + 1] + vs[: pivot : -1]
    new_es = es[:pivot] + (e,) + es[: pivot : -1]
    return BergePath(new_vs, new_es)


def rotation_pivots(H: Hypergraph, path: BergePath, e: int) -> list:
    """Eligible 0-based pivot positions for rotating with edge e, which
    must contain the path's last vertex.

    If e is already on the path its own position is the only candidate
    (any other would use it twice). The position just before the endpoint
    is degenerate (the endpoint would not change) and is excluded.
    """
    vs = path.vertices
    ell = len(vs)
    if path.last not in H.edges[e]:
        raise ValueError(f"edge {e} does not contain the endpoint {path.last}")
    if ell < 3:
        return []
    if e in path.edge_ids:
        q = path.edge_ids.index(e)
        return [q] if q < ell - 2 else []
    edge = H.edges[e]
    return [q for q in range(ell - 2) if vs[q] in edge]


def rotate(
    H: Hypergraph, path: BergePath, e: int, pivot: Optional[int] = None
) -> Optional[BergePath]:
    """Single rotation with edge e at the given (or first eligible) pivot;
    None when no eligible pivot exists."""
    pivots = rotation_pivots(H, path, e)
    if pivot is None:
        return _rotated(path, e, pivots[0]) if pivots else None
    return _rotated(path, e, pivot) if pivot in pivots else None


@dataclass
class RotationClosure:
    """Endpoints reachable by rotation sequences fixing the first vertex,
    each with one witness path (all witnesses share vertex set and length)."""

    fixed: int
    paths: dict = field(default_factory=dict)
    rotations_applied: int = 0
    budget_exhausted: bool = False

    def endpoints(self) -> tuple:
        return tuple(self.paths)


def endpoint_closure(
    H: Hypergraph, path: BergePath, budget: Optional[int] = None
) -> RotationClosure:
    """Breadth-first rotation exploration from ``path``, deduplicating by
    endpoint. ``budget`` caps the number of rotate applications; None
    means exhaustive."""
    if not verify_path(H, path):
        raise ValueError("endpoint_closure requires a valid Berge path")
    closure = RotationClosure(fixed=path.first, paths={path.last: path})
    queue = [(path, frozenset(path.edge_ids))]
    edges = H.edges
    incidence = H.incidence
    while queue:
        nxt = []
        for cur, used in queue:
            vs = cur.vertices
            ell = len(vs)
            if ell < 3:
                continue
            for e in incidence[vs[-1]]:
                if e in used:
                    q = cur.edge_ids.index(e)
                    pivots = (q,) if q < ell - 2 else ()
                else:
                    edge = edges[e]
                    pivots = tuple(
                        q for q in range(ell - 2) if vs[q] in edge
                    )
                for q in pivots:
                    if budget is not None and closure.rotations_applied >= budget:
                        closure.budget_exhausted = True
                        return closure
                    closure.rotations_applied += 1
                    rotated = _rotated(cur, e, q)
                    endpoint = rotated.last
                    if endpoint not in closure.paths:
                        closure.paths[endpoint] = rotated
                        if e in used:
                            nxt.append((rotated, used))
                        else:
                            nxt.append(
                                (rotated, used - {cur.edge_ids[q]} | {e})
                            )
        queue = nxt
    return closure


ExtensionResult = Union[BergePath, BergeCycle, None]


def extend_or_close(H: Hypergraph, path: BergePath) -> ExtensionResult:
    """One growth step at the endpoint: prefer extending by a new vertex
    through an unused edge; otherwise close into a cycle on the path's
    vertex set via an unused edge containing both endpoints; None when
    stuck."""
    if not verify_path(H, path):
        raise ValueError("extend_or_close requires a valid Berge path")
    used = set(path.edge_ids)
    on_path = set(path.vertices)
    last = path.last
    for e in H.incidence[last]:
        if e in used:
            continue
        for v in H.edges[e]:
            if v not in on_path:
                return BergePath(path.vertices + (v,), path.edge_ids + (e,))
    if len(path) >= 2:
        first = path.first
        for e in H.incidence[last]:
            if e not in used and first in H.edges[e]:
                return BergeCycle(path.vertices, path.edge_ids + (e,))
    return None


def close_with(path: BergePath, e: int) -> BergeCycle:
    """Close a path into a cycle with edge e covering (last, first)."""
    return BergeCycle(path.vertices, path.edge_ids + (e,))


def reopen_cycle(H: Hypergraph, cycle: BergeCycle) -> Optional[BergePath]:
    """Turn a non-spanning cycle into a strictly longer path using an edge
    that leaves the cycle's vertex set; None when no such edge exists
    (then the cycle's vertices form a union of components).

    If the leaving edge is one of the cycle's own edges, that edge is the
    one removed, which frees it to carry the new endpoint.
    """
    on_cycle = set(cycle.vertices)
    k = len(cycle.vertices)
    position = {v: i for i, v in enumerate(cycle.vertices)}
    cycle_edges = set(cycle.edge_ids)
    for e in range(H.num_edges):
        edge = H.edges[e]
        inside = [v for v in edge if v in on_cycle]
        outside = [v for v in edge if v not in on_cycle]
        if not inside or not outside:
            continue
        w = min(outside)
        if e in cycle_edges:
            j = cycle.edge_ids.index(e)
        else:
            j = min(position[v] for v in inside)
        # drop edge j (covering v_j -> v_j+1); path runs v_j+1 ... v_j
        vs = cycle.vertices[j + 1 :] + cycle.vertices[: j + 1]
        es = cycle.edge_ids[j + 1 :] + cycle.edge_ids[:j]
        return BergePath(vs + (w,), es + (e,))
    return None
