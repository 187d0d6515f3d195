import pytest

from bergeham.berge import verify_cycle
from bergeham.engine import (
    absorption_run,
    connect_components,
    decide_hamiltonian,
    default_d0,
    extract_expander,
)
from bergeham.generators import binomial, complete, two_cliques
from bergeham.hypergraph import Hypergraph
from bergeham.oracle import exact_hamiltonian


class TestDecideHamiltonian:
    def test_complete_7_yes_with_certificate(self):
        H = complete(7, 3)
        out = decide_hamiltonian(H)
        assert out.verdict == "yes"
        assert out.provenance == "rotation"
        assert verify_cycle(H, out.certificate, weak=False)
        assert len(out.certificate) == 7

    def test_complete_4_yes(self):
        out = decide_hamiltonian(complete(4, 3))
        assert out.verdict == "yes"
        assert len(out.certificate) == 4

    def test_two_cliques_no_via_disconnection(self):
        out = decide_hamiltonian(two_cliques(8, 3), fallback=True)
        assert out.verdict == "no"

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            decide_hamiltonian(Hypergraph(2, 2, [(0, 1)]))

    def test_deterministic_given_seed(self):
        H = binomial(12, 3, 0.12, seed=3)
        if not H.is_connected:
            pytest.skip("fixture host must be connected")
        a = decide_hamiltonian(H, budget=5000, seed=42)
        b = decide_hamiltonian(H, budget=5000, seed=42)
        assert a.verdict == b.verdict
        assert a.effort == b.effort
        assert a.certificate == b.certificate

    def test_budget_zero_is_unknown_on_connected_host(self):
        out = decide_hamiltonian(complete(6, 3), budget=0)
        assert out.verdict == "unknown"

    def test_oracle_fallback_decides_small_hosts(self):
        # sparse connected host the engine may not crack: fallback must match
        for seed in range(12):
            H = binomial(7, 3, 0.15, seed=seed)
            out = decide_hamiltonian(H, budget=2000, fallback=True)
            expected = exact_hamiltonian(H)
            if out.verdict == "yes":
                assert verify_cycle(H, out.certificate)
                assert expected is not None
            elif out.verdict == "no":
                assert expected is None

    def test_sound_against_oracle(self):
        hits = 0
        for seed in range(40):
            H = binomial(8, 3, 0.3, seed=seed)
            out = decide_hamiltonian(H)
            if out.verdict == "yes":
                hits += 1
                assert verify_cycle(H, out.certificate, weak=False)
                assert exact_hamiltonian(H) is not None
        assert hits > 0


class TestExtractExpander:
    def test_d0_above_max_degree_keeps_everything(self):
        H = complete(7, 3)
        assert extract_expander(H, d0=50, seed=1) == H

    def test_star_like_with_d0_one(self):
        H = Hypergraph(7, 3, [(0, 1, 2), (0, 3, 4), (0, 5, 6)])
        gamma = extract_expander(H, d0=1, seed=2)
        # vertex 0 keeps one edge; every other vertex keeps its only edge
        assert gamma.num_edges == 3

    def test_size_and_degree_bounds(self):
        H = complete(30, 3)
        gamma = extract_expander(H, d0=5, seed=7)
        assert gamma.num_edges <= 30 * 5
        assert gamma.min_degree() >= 5

    def test_deterministic(self):
        H = complete(12, 3)
        assert extract_expander(H, 3, seed=5) == extract_expander(H, 3, seed=5)

    def test_d0_validation(self):
        with pytest.raises(ValueError):
            extract_expander(complete(5, 3), 0)

    def test_default_d0_floor(self):
        assert default_d0(40, 0.1) == 2


class TestConnectComponents:
    def test_connected_gamma_unchanged(self):
        H = complete(6, 3)
        gamma = extract_expander(H, 3, seed=1)
        out = connect_components(H, gamma)
        assert out.connected
        assert out.added == ()
        assert out.graph == gamma

    def test_two_parts_joined_by_one_edge(self):
        H = complete(9, 3)
        gamma = Hypergraph(9, 3, [(0, 1, 2), (2, 3, 4), (5, 6, 7), (6, 7, 8)])
        assert len(gamma.components) == 2
        out = connect_components(H, gamma)
        assert out.connected
        assert len(out.added) == 1
        assert H.has_edge(out.added[0])

    def test_three_parts_joined_by_two_edges(self):
        H = complete(9, 3)
        gamma = Hypergraph(9, 3, [(0, 1, 2), (3, 4, 5), (6, 7, 8)])
        out = connect_components(H, gamma)
        assert out.connected
        assert len(out.added) == 2
        for e in out.added:
            assert H.has_edge(e)

    def test_obstruction_reported(self):
        G = two_cliques(8, 3)
        out = connect_components(G, G)
        assert not out.connected
        U, W = out.obstruction
        assert sorted(U + W) == list(range(8))


class TestAbsorptionRun:
    def test_complete_20_yes_with_short_trace(self):
        G = complete(20, 3)
        outcome, trace = absorption_run(G, d0=8, budget=500_000, seed=3)
        assert outcome.verdict == "yes"
        assert verify_cycle(G, outcome.certificate, weak=False)
        absorbed = [t for t in trace if t["event"] == "absorb"]
        assert len(absorbed) <= G.n

    def test_disconnected_no(self):
        outcome, trace = absorption_run(two_cliques(8, 3), d0=3, budget=1000, seed=1)
        assert outcome.verdict == "no"

    def test_budget_zero_unknown_empty_trace(self):
        outcome, trace = absorption_run(complete(8, 3), d0=3, budget=0, seed=1)
        assert outcome.verdict == "unknown"
        assert trace == []

    def test_absorbed_edges_come_from_outside_gamma(self):
        for seed in range(4):
            G = binomial(14, 3, 0.25, seed=seed)
            if not G.is_connected:
                continue
            outcome, trace = absorption_run(G, d0=2, budget=300_000, seed=seed)
            gamma_sizes = []
            for entry in trace:
                if entry["event"] == "absorb":
                    assert entry["arity"] in (1, 2)
                    for e in entry["added"]:
                        assert G.has_edge(e)
                    gamma_sizes.append(entry["gamma_edges"])
            if outcome.verdict == "yes":
                assert len(outcome.certificate) == G.n

    def test_certificate_verifies_in_host(self):
        G = complete(12, 3)
        outcome, trace = absorption_run(G, d0=4, budget=300_000, seed=9)
        assert outcome.verdict == "yes"
        assert verify_cycle(G, outcome.certificate, weak=False)
        assert len(outcome.certificate) == 12

    def test_paired_absorption_occurs_and_wins(self):
        # frozen host where a single added edge is not enough at some step
        G = binomial(15, 3, 0.2, seed=112)
        assert G.is_connected
        outcome, trace = absorption_run(G, d0=1, budget=200_000, seed=1)
        arities = [t["arity"] for t in trace if t["event"] == "absorb"]
        assert 2 in arities
        assert outcome.verdict == "yes"
        assert verify_cycle(G, outcome.certificate, weak=False)


class TestHigherUniformity:
    def test_decide_complete_4_graph(self):
        H = complete(8, 4)
        out = decide_hamiltonian(H)
        assert out.verdict == "yes"
        assert verify_cycle(H, out.certificate)
        assert len(out.certificate) == 8

    def test_oracle_complete_4_graph(self):
        H = complete(6, 4)
        cert = exact_hamiltonian(H)
        assert cert is not None and len(cert) == 6
