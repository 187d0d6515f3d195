"""r-uniform hypergraphs: representation, degree queries, structural checks.

Vertices are dense integers 0..n-1. Edges are stored as sorted tuples in
construction order; edge identity throughout the package is the index into
``edges`` (subgraph processes permute indices, certificates cite them).
Instances are immutable after construction and safe to share across
workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .rng import SplitMix64


class CapacityError(Exception):
    """An exhaustive check was requested above its size guard."""


class ParseError(ValueError):
    """Malformed hypergraph text; carries the offending 1-based line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class VertexSet:
    """Set of vertices backed by a bitmask over 0..n-1."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        self.n = n
        self.mask = mask

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in vertices:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range 0..{n - 1}")
            mask |= 1 << v
        return cls(n, mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.mask >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & ~other.mask)

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.mask & other.mask == 0

    def __repr__(self) -> str:
        return f"VertexSet({self.n}, {{{', '.join(map(str, self))}}})"


class Hypergraph:
    """Immutable r-uniform hypergraph with a per-vertex incidence index."""

    def __init__(self, n: int, r: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        if r < 2:
            raise ValueError(f"uniformity must be at least 2, got r={r}")
        self.n = n
        self.r = r
        canon = []
        seen = set()
        for e in edges:
            tup = tuple(sorted(e))
            if len(tup) != r or len(set(tup)) != r:
                raise ValueError(f"edge {tuple(e)} does not have {r} distinct vertices")
            if tup[0] < 0 or tup[-1] >= n:
                raise ValueError(f"edge {tup} has a vertex out of range 0..{n - 1}")
            if tup in seen:
                raise ValueError(f"duplicate edge {tup}")
            seen.add(tup)
            canon.append(tup)
        self.edges: tuple = tuple(canon)
        incidence = [[] for _ in range(n)]
        for idx, e in enumerate(self.edges):
            for v in e:
                incidence[v].append(idx)
        self.incidence: tuple = tuple(tuple(lst) for lst in incidence)

    # -- basic queries ----------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        """Number of edges containing v."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")
        return len(self.incidence[v])

    def degrees(self) -> list:
        return [len(inc) for inc in self.incidence]

    def min_degree(self) -> int:
        return min(self.degrees())

    def max_degree(self) -> int:
        return max(self.degrees())

    def codegree(self, u: int, v: int) -> int:
        """Number of edges containing both u and v."""
        if u == v:
            raise ValueError("codegree requires two distinct vertices")
        return len(self.edges_with_pair(u, v))

    def edges_with_pair(self, u: int, v: int) -> tuple:
        """Edge indices whose edge contains both u and v."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"vertex out of range 0..{self.n - 1}")
        key = (u, v) if u < v else (v, u)
        return self._pair_index.get(key, ())

    @cached_property
    def _pair_index(self) -> dict:
        index: dict = {}
        for idx, e in enumerate(self.edges):
            for a, b in combinations(e, 2):
                index.setdefault((a, b), []).append(idx)
        return {k: tuple(v) for k, v in index.items()}

    @cached_property
    def edge_masks(self) -> tuple:
        """Per-edge vertex bitmask; hot-loop companion to ``edges``."""
        masks = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << v
            masks.append(m)
        return tuple(masks)

    @cached_property
    def _edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, vertices: Iterable[int]) -> bool:
        return tuple(sorted(vertices)) in self._edge_index

    def edge_id_of(self, vertices: Iterable[int]) -> int:
        """Index of the edge with this vertex set; KeyError if absent."""
        return self._edge_index[tuple(sorted(vertices))]

    def neighborhood(self, vertices: Iterable[int]) -> VertexSet:
        """Vertices outside S touched by an edge that meets S."""
        s = vertices if isinstance(vertices, VertexSet) else VertexSet.of(self.n, vertices)
        mask = 0
        for v in s:
            for idx in self.incidence[v]:
                mask |= self.edge_masks[idx]
        return VertexSet(self.n, mask & ~s.mask)

    def subgraph(self, edge_ids: Iterable[int]) -> "Hypergraph":
        """New hypergraph on the same vertex set keeping the given edges,
        in the given order (edge identities are re-issued 0,1,2,...)."""
        return Hypergraph(self.n, self.r, [self.edges[i] for i in edge_ids])

    # -- connectivity ------------------------------------------------------

    @cached_property
    def components(self) -> tuple:
        """Connected components as sorted vertex tuples; vertices in no
        edge form singleton components."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            frontier = [start]
            while frontier:
                v = frontier.pop()
                for idx in self.incidence[v]:
                    for u in self.edges[idx]:
                        if not seen[u]:
                            seen[u] = True
                            comp.append(u)
                            frontier.append(u)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    @cached_property
    def is_connected(self) -> bool:
        """True iff every vertex is reachable through shared edges. A host
        with an isolated vertex is disconnected (a spanning cycle must
        visit it)."""
        return len(self.components) == 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.r == other.r
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, m={self.num_edges})"


# -- structured check results ---------------------------------------------

VERIFIED = "verified"
VIOLATED = "violated"
NO_COUNTEREXAMPLE = "no_counterexample"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a universal-property check.

    ``verified`` only ever comes from an exact method; sampled checkers
    report ``no_counterexample`` with the number of draws tried.
    """

    status: str
    witness: object = None
    trials: int = 0
    observed: Optional[float] = None
    bound: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status != VIOLATED

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "trials": self.trials,
            "observed": self.observed,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class MinDegreeReport:
    delta1_ok: bool
    delta2_ok: bool
    min_degree: int
    min_codegree: int
    delta1_bound: float
    delta2_bound: float


# -- expander check ---------------------------------------------------------

EXPANDER_SIZE_GUARD = 16


def is_expander(
    H: Hypergraph,
    k: int,
    alpha: float,
    *,
    exhaustive: bool = True,
    trials: int = 2000,
    seed: int = 0,
    size_guard: int = EXPANDER_SIZE_GUARD,
) -> CheckResult:
    """Check the vertex-expansion property: every X with |X| <= k and
    every disjoint Y with |Y| < alpha|X| leave some edge meeting X exactly
    once and missing Y.

    Exhaustive mode scans all (X, Y) pairs and either verifies or returns
    a violating pair; it refuses hosts above ``size_guard``. Sampled mode
    draws ``trials`` random pairs and can only ever produce a witness or
    report that none was found.
    """
    if not 1 <= k <= H.n:
        raise ValueError(f"k must be in 1..{H.n}, got {k}")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if exhaustive:
        if H.n > size_guard:
            raise CapacityError(
                f"exhaustive expander check needs n <= {size_guard}, got n={H.n}"
            )
        for x_size in range(1, k + 1):
            for X in combinations(range(H.n), x_size):
                witness = _expander_violation(H, X, alpha)
                if witness is not None:
                    return CheckResult(VIOLATED, witness=witness)
        return CheckResult(VERIFIED)
    rng = SplitMix64(seed)
    vertices = list(range(H.n))
    for _ in range(trials):
        x_size = 1 + rng.below(k)
        X = tuple(sorted(rng.choose(vertices, x_size)))
        max_y = _strictly_below(alpha * x_size)
        rest = [v for v in vertices if v not in X]
        y_size = rng.below(min(max_y, len(rest)) + 1)
        Y = tuple(sorted(rng.choose(rest, y_size)))
        if not _has_expanding_edge(H, X, Y):
            return CheckResult(VIOLATED, witness=(X, Y), trials=trials)
    return CheckResult(NO_COUNTEREXAMPLE, trials=trials)


def _strictly_below(bound: float) -> int:
    """Largest integer strictly below a positive real bound."""
    c = math.ceil(bound)
    return c - 1 if c == bound else math.floor(bound)


def _has_expanding_edge(H: Hypergraph, X, Y) -> bool:
    xmask = 0
    for v in X:
        xmask |= 1 << v
    ymask = 0
    for v in Y:
        ymask |= 1 << v
    for emask in H.edge_masks:
        if (emask & xmask).bit_count() == 1 and emask & ymask == 0:
            return True
    return False


def _expander_violation(H: Hypergraph, X, alpha):
    """Smallest-Y violation for this X, or None. A violating Y must hit
    every edge that meets X exactly once, so only vertices of those edges
    matter."""
    xmask = 0
    for v in X:
        xmask |= 1 << v
    touching = [
        emask & ~xmask
        for emask in H.edge_masks
        if (emask & xmask).bit_count() == 1
    ]
    max_y = _strictly_below(alpha * len(X))
    if not touching:
        return (tuple(X), ())
    relevant_mask = 0
    for m in touching:
        relevant_mask |= m
    relevant = list(VertexSet(H.n, relevant_mask))
    for y_size in range(1, min(max_y, len(relevant)) + 1):
        for Y in combinations(relevant, y_size):
            ymask = 0
            for v in Y:
                ymask |= 1 << v
            if all(m & ymask for m in touching):
                return (tuple(X), tuple(Y))
    return None


# -- degree-condition checks -------------------------------------------------


def check_codegree_condition(H: Hypergraph, eps: float) -> CheckResult:
    """Check that every vertex v has at least (1/2 + eps)n partners u with
    codegree(u, v) >= eps * n^(r-2); the failing vertex is the witness."""
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    threshold = eps * H.n ** (H.r - 2)
    need = (0.5 + eps) * H.n
    good = [0] * H.n
    for (u, v), eids in H._pair_index.items():
        if len(eids) >= threshold:
            good[u] += 1
            good[v] += 1
    for v in range(H.n):
        if good[v] < need:
            return CheckResult(VIOLATED, witness=v, observed=good[v], bound=need)
    return CheckResult(VERIFIED, observed=min(good) if H.n else None, bound=need)


def check_min_degree_conditions(H: Hypergraph, eps: float) -> MinDegreeReport:
    """Evaluate the two minimum-degree sufficient conditions: delta_1 against
    (1/2^(r-1) + eps) * C(n-1, r-1) and delta_2 against eps * n^(r-2)."""
    if not 0 < eps < 1:
        raise ValueError(f"eps must be in (0, 1), got {eps}")
    d1_bound = (0.5 ** (H.r - 1) + eps) * math.comb(H.n - 1, H.r - 1)
    d2_bound = eps * H.n ** (H.r - 2)
    min_deg = H.min_degree()
    total_pairs = math.comb(H.n, 2)
    pair_index = H._pair_index
    if len(pair_index) < total_pairs:
        min_codeg = 0
    else:
        min_codeg = min(len(v) for v in pair_index.values())
    return MinDegreeReport(
        delta1_ok=min_deg >= d1_bound,
        delta2_ok=min_codeg >= d2_bound,
        min_degree=min_deg,
        min_codegree=min_codeg,
        delta1_bound=d1_bound,
        delta2_bound=d2_bound,
    )


# -- text format --------------------------------------------------------------
#
# First data line: "n r m"; then m lines of r space-separated vertex ids.
# Lines are UTF-8 with '\n' endings; '#' starts a comment.


def parse(text: str) -> Hypergraph:
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body))
    if not rows:
        raise ParseError(1, "missing header line 'n r m'")
    header_line, header = rows[0]
    parts = header.split()
    if len(parts) != 3:
        raise ParseError(header_line, f"header must be 'n r m', got {header!r}")
    try:
        n, r, m = (int(p) for p in parts)
    except ValueError:
        raise ParseError(header_line, f"header must be three integers, got {header!r}")
    if n < 1 or r < 2 or m < 0:
        raise ParseError(header_line, f"need n >= 1, r >= 2, m >= 0, got {header!r}")
    if len(rows) - 1 != m:
        raise ParseError(
            rows[-1][0], f"expected {m} edge lines, found {len(rows) - 1}"
        )
    edges = []
    seen = {}
    for lineno, body in rows[1:]:
        try:
            verts = tuple(int(p) for p in body.split())
        except ValueError:
            raise ParseError(lineno, f"edge line must be integers, got {body!r}")
        if len(verts) != r or len(set(verts)) != r:
            raise ParseError(lineno, f"edge must have {r} distinct vertices, got {body!r}")
        if min(verts) < 0 or max(verts) >= n:
            raise ParseError(lineno, f"vertex out of range 0..{n - 1} in {body!r}")
        key = tuple(sorted(verts))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key} (first at line {seen[key]})")
        seen[key] = lineno
        edges.append(verts)
    return Hypergraph(n, r, edges)


def serialize(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.r} {H.num_edges}"]
    for e in H.edges:
        lines.append(" ".join(map(str, e)))
    return "\n".join(lines) + "\n"
