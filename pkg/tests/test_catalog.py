import io
from collections import Counter

from trmatch import write_query_edge_list
from trmatch.catalog import (
    CATALOG_SIZE,
    clique3,
    default_catalog,
    fan_out_fan_in,
    feed_forward,
    isomorphic,
    named_queries,
    query_ok,
    random_queries,
)


class TestNamed:
    def test_fan_out_fan_in_shape(self):
        g = fan_out_fan_in(2, 3)
        assert g.order() == 6
        assert g.size() == 6
        assert g.undirected_diameter() == 3
        outs = Counter(len(g.out_adj[n]) for n in g.nodes)
        ins = Counter(len(g.in_adj[n]) for n in g.nodes)
        assert outs[2] == 1 and ins[2] == 1  # one source, one sink

    def test_feed_forward_shape(self):
        g = feed_forward()
        assert g.order() == 3 and g.size() == 3

    def test_clique_shape(self):
        g = clique3()
        assert g.order() == 3 and g.size() == 3
        assert g.undirected_diameter() == 1

    def test_named_queries_pass_invariants(self):
        for spec in named_queries():
            allow = "clique" in spec.descriptor
            assert query_ok(spec.graph, allow_cycles=allow), spec.id


class TestRandom:
    def test_deterministic(self):
        a = random_queries(seed=42, count=24)
        b = random_queries(seed=42, count=24)
        assert [s.id for s in a] == [s.id for s in b]
        assert [sorted(s.graph.edges) for s in a] == [sorted(s.graph.edges) for s in b]

    def test_all_pass_invariants(self):
        for spec in random_queries(seed=42, count=20):
            assert query_ok(spec.graph)


class TestDefaultCatalog:
    def test_size_and_ids(self):
        cat = default_catalog()
        assert len(cat) == CATALOG_SIZE
        assert [s.id for s in cat] == [f"q{i:02d}" for i in range(1, 31)]

    def test_order_histogram(self):
        cat = default_catalog()
        histogram = Counter(s.graph.order() for s in cat)
        for order in range(3, 9):
            assert histogram[order] >= 3

    def test_pairwise_non_isomorphic(self):
        cat = default_catalog()
        for i in range(len(cat)):
            for j in range(i + 1, len(cat)):
                assert not isomorphic(cat[i].graph, cat[j].graph), (
                    cat[i].id,
                    cat[j].id,
                )

    def test_byte_identical_export(self):
        def export() -> str:
            out = io.StringIO()
            for spec in default_catalog():
                write_query_edge_list(spec.graph, out, header=spec.descriptor)
            return out.getvalue()

        assert export() == export()
