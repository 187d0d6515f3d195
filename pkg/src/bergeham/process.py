"""Random subgraph processes, hitting times, and the trial harness.

A process is an ordering of the host's edges; the prefix graph at step t
keeps the first t. Hitting times are computed by a forward degree scan
(minimum degree) or by search over t with monotone predicates (binary or
linear), where probes may be exact or one-sided.
"""

from __future__ import annotations

import io
import math
import multiprocessing
import time
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .engine import NO, UNKNOWN, YES, decide_hamiltonian
from .hypergraph import Hypergraph
from .oracle import DEFAULT_GUARD, OracleGuard, exact_hamiltonian
from .rng import SplitMix64, derive_seed


class NoHitError(Exception):
    """The property never holds, even with every edge present."""


@dataclass(frozen=True)
class SubgraphProcess:
    """Host plus an arrival order (a permutation of its edge indices)."""

    host: Hypergraph
    sigma: tuple

    def __post_init__(self):
        if sorted(self.sigma) != list(range(self.host.num_edges)):
            raise ValueError("sigma must be a permutation of all edge indices")

    @property
    def num_steps(self) -> int:
        return len(self.sigma)

    def prefix(self, t: int) -> Hypergraph:
        """The graph after t arrivals; edges keep arrival order."""
        if not 0 <= t <= self.num_steps:
            raise ValueError(f"step {t} out of range 0..{self.num_steps}")
        return self.host.subgraph(self.sigma[:t])


def random_process(H: Hypergraph, seed: int = 0) -> SubgraphProcess:
    """Uniform edge ordering via Fisher-Yates under the package PRNG."""
    if H.num_edges < 1:
        raise ValueError("cannot run a process on a host with no edges")
    ids = list(range(H.num_edges))
    SplitMix64(seed).shuffle(ids)
    return SubgraphProcess(H, tuple(ids))


def tau_min_degree(proc: SubgraphProcess, k: int) -> int:
    """Smallest t at which every vertex lies in at least k prefix edges."""
    if k <= 0:
        return 0
    host = proc.host
    if host.min_degree() < k:
        raise NoHitError(f"host min degree {host.min_degree()} is below k={k}")
    deg = [0] * host.n
    lacking = host.n
    for t, e in enumerate(proc.sigma, start=1):
        for v in host.edges[e]:
            deg[v] += 1
            if deg[v] == k:
                lacking -= 1
        if lacking == 0:
            return t
    raise AssertionError("unreachable: host min degree was checked")


# -- monotone property search --------------------------------------------------

Probe = Callable[[Hypergraph, int], Tuple[str, str]]
"""A probe maps (prefix graph, step) to (verdict, provenance); verdict is
"yes"/"no"/"unknown" and must depend on the step only, never on probe
order, so binary and linear search agree."""


@dataclass(frozen=True)
class TauSearchResult:
    step: Optional[int]
    conclusive: bool
    bracket: Optional[tuple]
    probes: tuple

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "conclusive": self.conclusive,
            "bracket": list(self.bracket) if self.bracket else None,
            "probes": [list(p) for p in self.probes],
        }


def predicate_probe(pred: Callable[[Hypergraph], bool]) -> Probe:
    """Wrap an exact boolean predicate as a probe."""

    def probe(graph: Hypergraph, t: int) -> Tuple[str, str]:
        return (YES if pred(graph) else NO), "exact"

    return probe


def hamiltonicity_probe(
    budgets: tuple = (50_000, 200_000),
    seed: int = 0,
    guard: OracleGuard = DEFAULT_GUARD,
    use_oracle: bool = True,
) -> Probe:
    """One-sided Berge-Hamiltonicity probe: rotation engine with escalating
    budgets, then the exact oracle when the prefix fits the guard."""

    def probe(graph: Hypergraph, t: int) -> Tuple[str, str]:
        if graph.n < 3 or graph.num_edges < graph.n:
            return NO, "exact"
        for round_no, budget in enumerate(budgets):
            outcome = decide_hamiltonian(
                graph,
                budget=budget,
                seed=derive_seed(seed, t, round_no),
                fallback=False,
            )
            if outcome.verdict != UNKNOWN:
                return outcome.verdict, outcome.provenance
        if use_oracle and graph.n <= guard.max_n and graph.num_edges <= guard.max_edges:
            cert = exact_hamiltonian(graph, guard)
            return (YES if cert is not None else NO), "oracle"
        return UNKNOWN, "rotation"

    return probe


def oracle_probe(guard: OracleGuard = DEFAULT_GUARD) -> Probe:
    def probe(graph: Hypergraph, t: int) -> Tuple[str, str]:
        return (YES if exact_hamiltonian(graph, guard) else NO), "oracle"

    return probe


def tau_property(
    proc: SubgraphProcess, probe: Probe, strategy: str = "binary"
) -> TauSearchResult:
    """Hitting time of a monotone increasing property.

    Probes returning unknown cannot be forced; the search then reports the
    bracketing interval (largest known-no, smallest known-yes) instead of
    a step.
    """
    if strategy not in ("binary", "linear"):
        raise ValueError(f"strategy must be 'binary' or 'linear', got {strategy!r}")
    N = proc.num_steps
    log: list = []

    def run(t: int) -> str:
        verdict, provenance = probe(proc.prefix(t), t)
        log.append((t, verdict, provenance))
        return verdict

    final = run(N)
    if final == NO:
        raise NoHitError("property does not hold even with every edge present")

    lo_no = None  # largest t with verified no
    hi_yes = N if final == YES else None

    if strategy == "binary":
        if final == YES:
            first = run(0)
            if first == YES:
                return TauSearchResult(0, True, (0, 0), tuple(log))
            if first == NO:
                lo_no = 0
            lo = 0
            hi = N
            while hi - lo > 1:
                mid = (lo + hi) // 2
                verdict = run(mid)
                if verdict == YES:
                    hi = mid
                    hi_yes = mid
                elif verdict == NO:
                    lo = mid
                    lo_no = mid
                else:
                    return TauSearchResult(None, False, (lo, hi), tuple(log))
            if lo_no == lo:
                return TauSearchResult(hi, True, (lo, hi), tuple(log))
            return TauSearchResult(None, False, (lo, hi), tuple(log))
        return TauSearchResult(None, False, (0, N), tuple(log))

    # linear scan; monotonicity reconciles any unknowns a later "no" covers
    for t in range(0, N):
        verdict = run(t)
        if verdict == YES:
            hi_yes = t
            break
        if verdict == NO:
            lo_no = t
    if hi_yes is not None and lo_no == hi_yes - 1:
        return TauSearchResult(hi_yes, True, (lo_no, hi_yes), tuple(log))
    if hi_yes == 0:
        return TauSearchResult(0, True, (0, 0), tuple(log))
    return TauSearchResult(
        None, False, (lo_no if lo_no is not None else 0, hi_yes), tuple(log)
    )


# -- trial harness -------------------------------------------------------------


@dataclass(frozen=True)
class TrialConfig:
    min_degree_k: int = 2
    probe: bool = True
    full_tau_bh: bool = False
    budgets: tuple = (50_000, 200_000, 800_000)
    oracle_guard: OracleGuard = DEFAULT_GUARD
    jobs: int = 1


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    tau2: int
    tau_bh: Optional[int]
    coincide: Optional[bool]
    provenance: str
    wall_ms: float

    def __post_init__(self):
        if self.tau_bh is not None and self.tau_bh < self.tau2:
            raise AssertionError(
                f"tau_bh={self.tau_bh} below tau2={self.tau2}: a spanning "
                "cycle forces minimum degree 2"
            )


_WORKER_STATE: dict = {}


def _init_worker(host: Hypergraph, seed_base: int, config: TrialConfig) -> None:
    _WORKER_STATE["args"] = (host, seed_base, config)


def _run_worker(index: int) -> TrialRecord:
    host, seed_base, config = _WORKER_STATE["args"]
    return run_one_trial(host, index, seed_base, config)


def run_one_trial(
    H: Hypergraph, index: int, seed_base: int, config: TrialConfig
) -> TrialRecord:
    started = time.perf_counter()
    seed = seed_base ^ index
    proc = random_process(H, seed)
    tau2 = tau_min_degree(proc, config.min_degree_k)

    tau_bh: Optional[int] = None
    coincide: Optional[bool] = None
    provenance = "none"
    if config.probe:
        probe = hamiltonicity_probe(
            budgets=config.budgets,
            seed=derive_seed(seed, 0xB0),
            guard=config.oracle_guard,
        )
        verdict, provenance = probe(proc.prefix(tau2), tau2)
        if verdict == YES:
            coincide = True
            tau_bh = tau2
        elif verdict == NO:
            coincide = False
        if config.full_tau_bh and tau_bh is None:
            result = tau_property(proc, probe, strategy="binary")
            if result.conclusive:
                tau_bh = result.step
                coincide = tau_bh == tau2
    wall_ms = (time.perf_counter() - started) * 1000.0
    return TrialRecord(index, seed, tau2, tau_bh, coincide, provenance, wall_ms)


def run_trials(
    H: Hypergraph, trials: int, seed_base: int, config: TrialConfig = TrialConfig()
) -> Tuple[list, dict]:
    """Independent trials (trial i uses seed_base XOR i) plus a summary
    that depends only on the record multiset, never on worker count."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    jobs = max(1, config.jobs)
    if jobs == 1 or trials == 1:
        records = [run_one_trial(H, i, seed_base, config) for i in range(trials)]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(
            processes=jobs, initializer=_init_worker, initargs=(H, seed_base, config)
        ) as pool:
            records = pool.map(_run_worker, range(trials))
    records.sort(key=lambda rec: rec.trial)
    return records, summarize(records, seed_base)


def _quantile(sorted_vals: list, q: float) -> float:
    if not sorted_vals:
        return math.nan
    pos = q * (len(sorted_vals) - 1)
    lo = math.floor(pos)
    hi = math.ceil(pos)
    frac = pos - lo
    return sorted_vals[lo] * (1 - frac) + sorted_vals[hi] * frac


def summarize(records: list, seed_base: int) -> dict:
    """Pure function of the record multiset; no timing data so output stays
    byte-reproducible."""
    taus = sorted(rec.tau2 for rec in records)
    n_yes = sum(1 for rec in records if rec.coincide is True)
    n_no = sum(1 for rec in records if rec.coincide is False)
    n_unknown = sum(1 for rec in records if rec.coincide is None)
    probed = n_yes + n_no + n_unknown
    return {
        "trials": len(records),
        "seed_base": seed_base,
        "coincidence_fraction": (n_yes / len(records)) if records else None,
        "coincide_yes": n_yes,
        "coincide_no": n_no,
        "inconclusive": n_unknown if probed else 0,
        "tau2_min": taus[0],
        "tau2_q25": _quantile(taus, 0.25),
        "tau2_median": _quantile(taus, 0.5),
        "tau2_q75": _quantile(taus, 0.75),
        "tau2_max": taus[-1],
    }


CSV_COLUMNS = ("trial", "seed", "tau2", "tauBH", "coincide", "provenance", "millis")


def records_to_csv(records: list, with_timing: bool = False) -> str:
    """CSV per the external contract. The millis column is left blank
    unless timing is requested, so identical seeds give identical bytes."""
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for rec in records:
        coincide = "" if rec.coincide is None else ("1" if rec.coincide else "0")
        millis = f"{rec.wall_ms:.3f}" if with_timing else ""
        out.write(
            f"{rec.trial},{rec.seed},{rec.tau2},"
            f"{'' if rec.tau_bh is None else rec.tau_bh},"
            f"{coincide},{rec.provenance},{millis}\n"
        )
    return out.getvalue()
