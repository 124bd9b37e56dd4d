import math

import numpy as np
import pytest

from orbnet import (
    BarabasiAlbert,
    DomainError,
    ErdosRenyi,
    RandomPermutations,
    WattsStrogatz,
    betti,
    build_orbital_graph,
    generate_baseline,
    parse_baseline_spec,
)
from orbnet.experiments import alpha_maps
from orbnet.modring import seeded_permutation


class TestParse:
    def test_forms(self):
        assert parse_baseline_spec("er(1001,0.0098)") == ErdosRenyi(1001, 0.0098)
        assert parse_baseline_spec("ws(1001, 8, 0.2)") == WattsStrogatz(1001, 8, 0.2)
        assert parse_baseline_spec("ba(1001,4)") == BarabasiAlbert(1001, 4)
        assert parse_baseline_spec("perm(1001,2)") == RandomPermutations(1001, 2)

    @pytest.mark.parametrize("bad", [
        "er(10,1.5)", "ws(10,3,0.1)", "ws(10,12,0.1)", "ba(10,0)", "perm(10,0)",
        "zz(1,2)", "er(10)", "ws(10,4)",
    ])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            parse_baseline_spec(bad)


class TestErdosRenyi:
    def test_edge_concentration_five_sigma(self):
        n, p = 400, 0.03
        pairs = n * (n - 1) // 2
        mean, sd = pairs * p, math.sqrt(pairs * p * (1 - p))
        for seed in range(12):
            g = generate_baseline(ErdosRenyi(n, p), seed)
            assert abs(g.edge_count - mean) < 5 * sd

    def test_determinism(self):
        a = generate_baseline(ErdosRenyi(150, 0.05), 7)
        b = generate_baseline(ErdosRenyi(150, 0.05), 7)
        assert a == b and a.provenance.seed == 7


class TestWattsStrogatz:
    def test_p_zero_is_exact_ring_lattice(self):
        # Golden comparison with the floor-map family at alpha = 1.
        n, k = 60, 6
        ws = generate_baseline(WattsStrogatz(n, k, 0.0), 3)
        circulant = build_orbital_graph(n, alpha_maps(1.0, k // 2))
        assert ws == circulant

    def test_stays_simple_after_rewiring(self):
        g = generate_baseline(WattsStrogatz(100, 8, 0.4), 11)
        assert g.edge_count == 100 * 4  # rewiring preserves the edge count
        for v in range(g.n):
            row = g.neighbors_of(v).tolist()
            assert v not in row and row == sorted(set(row))


class TestBarabasiAlbert:
    def test_edge_count_and_connected(self):
        n, k = 300, 4
        g = generate_baseline(BarabasiAlbert(n, k), 5)
        assert g.edge_count == k * (n - k - 1) + math.comb(k + 1, 2)
        assert betti(g)[0] == 1

    def test_small_cases(self):
        g = generate_baseline(BarabasiAlbert(5, 4), 1)  # just the seed clique
        assert g.edge_count == math.comb(5, 2)


class TestRandomPermutations:
    def test_single_permutation_components_equal_cycles(self):
        for seed in range(8):
            g = generate_baseline(RandomPermutations(40, 1), seed)
            # cycle count of the identical table drawn from the same stream
            rng = np.random.Generator(np.random.PCG64(seed))
            table = rng.permutation(40)
            seen = [False] * 40
            cycles = 0
            for s in range(40):
                if not seen[s]:
                    cycles += 1
                    x = s
                    while not seen[x]:
                        seen[x] = True
                        x = int(table[x])
            assert betti(g)[0] == cycles

    def test_average_degree_near_2d(self):
        g = generate_baseline(RandomPermutations(500, 2), 42)
        assert 2 * g.edge_count / g.n == pytest.approx(4.0, abs=0.1)


def test_map_grammar_perm_matches_baseline_tables():
    # perm(seed) map specs and seeded_permutation share one generator.
    from orbnet import Permutation
    from orbnet.graph import graph_from_tables

    table = seeded_permutation(9, 23)
    assert build_orbital_graph(23, [Permutation(9)]) == graph_from_tables(23, [table])
